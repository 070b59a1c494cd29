#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <utility>

#include "hexopt/lattice.hpp"
#include "hexopt/perturbation.hpp"
#include "hexopt/vec2.hpp"

namespace hexopt {

// All weights w_s(k) vanish, i.e. k lies in the reciprocal lattice.
class DegenerateWeights : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// w_s(k) = 2(1 - cos 2πk·s), evaluated as 4 sin²(πk·s).
double shell_weight(Vec2 k, Vec2 s);

// Weights on the independent vertices s₁, s₂, s₃ = s₂ - s₁ of one hexagon.
struct ShellWeights {
    Vec2 k;
    std::array<double, 3> w{};

    double total() const { return w[0] + w[1] + w[2]; }
};

// Independent vertices of the hexagonal orbit that starts at s1.
std::array<Vec2, 3> hexagon_vertices(LatticeIndex s1);

ShellWeights shell_weights(Vec2 k, LatticeIndex s1 = {1, 0});

struct DesignMatrix {
    Sym2 M;
    double lambda_min = 0.0;
};

// M = Σ_s w_s(k) ŝŝᵀ / Σ_s w_s(k) over the six vertices of the shell of the given radius,
// which must be a single hexagon. Throws DegenerateWeights when Σ w <= 1e-15.
DesignMatrix geom_matrix(Vec2 k, double shell_radius = r_star);
// Same matrix in the frame of the first-shell hexagon.
DesignMatrix design_matrix(const ShellWeights& weights);

// (3/4)(w₁w₂ + w₂w₃ + w₁w₃)/(w₁ + w₂ + w₃)².
double design_det(const ShellWeights& weights);

struct WInequality {
    double lhs = 0.0;  // w₁w₂ + w₂w₃ + w₁w₃
    double rhs = 0.0;  // ¼(w₁ + w₂ + w₃)²
    // lhs - rhs = 16 sin²(θ₁/2) sin²(θ₂/2) sin²(θ₃/2) with θⱼ = 2πk·sⱼ, computed independently.
    double trig_gap = 0.0;
};

WInequality w_inequality_check(Vec2 k);

// Max |shell average - circle average| over `trials` random polynomials of total degree
// <= degree (1..5) with coefficients in [-1, 1]. Circle averages use a 64-node trapezoid rule.
double design_moment_check(const Shell& shell, int degree, int trials, std::uint64_t seed = 1);

// |shell average of (s·u)^power - circle average|; negative control for power 6.
double power_moment_deviation(const Shell& shell, Vec2 u, int power);

// Σ_s (s·u)² - (|S|/2) r² |u|².
double two_design_defect(const Shell& shell, Vec2 u);

struct PeriodicDesignCheck {
    double lhs = 0.0;           // Σ_s Σ_{x'} |s·(p_{s+x'} - p_{x'})|²
    double rhs = 0.0;           // ¼ r² Σ_s Σ_{x'} |p_{s+x'} - p_{x'}|²
    double spectral_lhs = 0.0;  // N² Σ_k Σ_s w_s(k) sᵀ Re p̂p̂* s
    double spectral_rhs = 0.0;  // ¼ r² N² Σ_k Σ_s w_s(k) tr Re p̂p̂*

    bool holds() const { return lhs >= rhs - 1e-12 * (1.0 + rhs); }
    bool plancherel_consistent(double tol = 1e-10) const;
};

PeriodicDesignCheck periodic_two_design_check(const PeriodicPerturbation& p, const Shell& shell);

}  // namespace hexopt
