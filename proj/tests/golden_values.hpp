#pragma once

// Frozen outputs of tests/oracles/golden.py (mpmath, 30 digits).
namespace golden {

inline constexpr double gaussian_a1 = 0.1595952669639283657699921;

inline constexpr double a2_a05 = 1.0084779185979199829;
inline constexpr double z2_a05 = 1.0149674406901694123;
inline constexpr double a2_a1 = 0.15959526696392836577;
inline constexpr double z2_a1 = 0.18034059901609622605;
inline constexpr double a2_a2 = 0.0042389592989599914399;
inline constexpr double z2_a2 = 0.0074837203450847061634;

inline constexpr double riesz_s3 = 8.892745100397290766749074;
inline constexpr double riesz_s4 = 5.783359299678672313128803;
inline constexpr double riesz_s6 = 4.141256547203416391254332;
inline constexpr double riesz_s8 = 3.433764267107245245650918;

// (Ψ(σ/2) - Ψ(0)) / (|σ/2|² e^{-πr⋆²}) at α = 1, v = e₁.
inline constexpr double psi_edge_gap_a1 = 19.60320866748541929451693;
inline constexpr double psi_a01_origin = 6.097187066077163782861249e-16;

// ε e₁ on class (0,0) of A₂/2A₂, zero elsewhere.
inline constexpr double perturbed_n2_a2_eps1e3 = 8.330161846563532410857341e-8;
inline constexpr double riesz_perturbed_n2_s4_eps1e3 = 8.153113285735083751994822e-6;

inline constexpr double uniformity_s4_01_10 = 7.349752148356279132263146;

// Worst-case chain endpoint at ρ = r⋆/√3, ᾱ = 0.552.
inline constexpr double kappa_end = 0.3361147166803847928467854;
inline constexpr double I_end = 3.579080477882431252393851;

// Second shell, u at a cell vertex, v ⊥ u, α = 0.1.
inline constexpr double higher_shell_vertex_ratio = 15920037017.23199137684897;

}  // namespace golden
