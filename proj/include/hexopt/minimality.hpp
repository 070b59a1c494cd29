#pragma once

#include <map>
#include <string>
#include <vector>

#include "hexopt/energy.hpp"
#include "hexopt/lattice.hpp"
#include "hexopt/vec2.hpp"

namespace hexopt {

struct InequalityConstants {
    double alpha_bar = 0.552;
    double mu_star = 2.73;
    double mu_hat = 1.5;
    double K0;           // π / alpha_bar
    double rho0;         // mu_star · alpha_bar / π
    double r_star_star;  // √3 r⋆, second shell radius

    InequalityConstants();
};

const InequalityConstants& inequality_constants();

// Scan ceiling for α; the threshold is never computed explicitly, so it is fixed here.
inline constexpr double alpha_dagger = 5.0;
// Lower end of the α scan; the gap prefactor e^{-πr⋆²/α} is unresolvable far below it.
inline constexpr double alpha_scan_floor = 0.02;
// Frozen empirical floor for the normalized first-shell gap.
inline constexpr double first_shell_floor = 0.005;

struct PsiEvaluation {
    double value = 0.0;
    SumSide side = SumSide::direct;
    double error_bound = 0.0;
    long terms_used = 0;
};

// Ψ_{α,v}(u) = Σ_{x∈A₂} |(x+u)·v|² e^{-(π/α)|x+u|²}. The dual side sums
// (α²/2π)(1 + Σ_{k≠0} (1 - 2πα(k·v)²) e^{-πα|k|²} cos 2πu·k) over Â₂.
// Automatic picks direct for α <= 1. Throws std::invalid_argument unless |v| = 1 to 1e-12.
PsiEvaluation psi_eval(double alpha, Vec2 v, Vec2 u, SumSide side = SumSide::automatic,
                       double tol = 1e-14);

// (Ψ(u) - Ψ(0)) / (|u|² e^{-πr⋆²/α}), summed termwise without cancellation; u ≠ 0.
// The bound is on the normalized value.
PsiEvaluation psi_gap(double alpha, Vec2 v, Vec2 u, SumSide side = SumSide::automatic,
                      double tol = 1e-10);

// Same normalization restricted to {0} ∪ first shell.
double first_shell_gap(double alpha, Vec2 v, Vec2 u);

struct GapScanResult {
    double min_gap = 0.0;
    double alpha = 0.0;
    double v_angle = 0.0;
    Vec2 u;
    double error_at_min = 0.0;
    double max_relative_error = 0.0;
    long evaluations = 0;
};

// Minimum normalized gap over the product grid; origin points are skipped.
// Throws std::invalid_argument on empty grids or α outside (0, alpha_dagger].
GapScanResult psi_gap_scan(const std::vector<double>& alphas, const std::vector<double>& v_angles,
                           const std::vector<Vec2>& us);

// n log-spaced values on [lo, hi].
std::vector<double> log_grid(double lo, double hi, int n);
// n angles k·π/n, k = 0..n-1.
std::vector<double> half_circle_grid(int n);

// min |a·v| over unit v with |u·v| <= κ|u|, closed form.
double constrained_direction_min(Vec2 u, Vec2 a, double kappa);
// Same minimum by scanning `samples` angles and zooming twice around the best one.
double constrained_direction_min_brute(Vec2 u, Vec2 a, double kappa, int samples = 1000000);

// Functions of the first-shell case analysis. ρ = |u|, θ = angle of u to σ after symmetry
// reduction into [0, π/6], φ = π/3 - θ.
namespace cases {

double b(double alpha, double rho);                  // √3.01 r⋆ e^{(π/2α)(ρ² - r⋆²)}
double kappa(double alpha, double rho);              // b(α, ρ)/ρ
double alpha_m(double rho);                          // min(ᾱ, πρ/μ⋆)
double kappa(double rho);                            // κ(α_m(ρ), ρ)
double log_kappa(double rho);                        // ln κ(ρ), free of underflow
double delta(double rho);                            // arcsin κ(ρ)
double M(double rho, double theta, double alpha);    // min over admissible v of |(s₅+u)·v|
double G(double rho, double theta, double alpha);    // M² e^{(π/α)(2r⋆ρ cos(π/3-θ) - ρ²)}
double N(double rho, double phi);                    // M at α_m(ρ), branchwise
double N_general(double rho, double phi);            // same through |ρ - r⋆cos φ|
double N_low_branch(double rho, double phi);         // r⋆ sin(φ - δ) + ρκ
double N_high_branch(double rho, double phi);        // r⋆ sin(φ + δ) - ρκ
double H(double rho, double phi);                    // N² e^{(π/α_m)(2r⋆ρ cos φ - ρ²)}
double N_tilde(double rho);                          // N(ρ, π/3)
double I(double rho);                                // H(ρ, π/3)
// |(s₅+u)·v|² e^{-(2π/α)s₅·u - (π/α)|u|²} with s₅ = r⋆(-½, -√3/2).
double good_vertex_F(Vec2 u, double alpha, Vec2 v);
// (½ - ρ²/r⋆²) e^{(π/α)(√3 r⋆ρ - ρ²)}.
double higher_shell_F(double alpha, double rho);
// Third-order Taylor lower bound of Σ_s ((s+u)·v)² e^{-2K s·u} on a hexagon of radius r.
double taylor_bound(double K, double r, Vec2 u, Vec2 v);
double taylor_gamma(double K, double r, double y);

}  // namespace cases

// Dihedral symmetry of the hexagon mapping u to polar angle [0, π/6]; applied to both u and v.
struct ReducedPair {
    Vec2 u;
    Vec2 v;
};
ReducedPair reduce_to_sector(Vec2 u, Vec2 v);

enum class FirstShellCase { origin, uv_large, taylor, good_vertex };
const char* to_string(FirstShellCase c);

struct FirstShellAudit {
    FirstShellCase tag = FirstShellCase::origin;
    double gap = 0.0;          // normalized seven-point gap
    double certificate = 0.0;  // regime-specific lower-bound margin, nonnegative when certified
    bool certified = false;
    bool above_floor = false;  // gap >= first_shell_floor
};

// Throws std::invalid_argument unless 0 < α <= ᾱ and |v| = 1.
FirstShellAudit first_shell_case_audit(Vec2 u, double alpha, Vec2 v);

struct ChainRecord {
    double rho = 0.0;
    double phi = 0.0;
    double kappa = 0.0;
    double alpha_m = 0.0;
    double delta = 0.0;
    double N = 0.0;
    double H = 0.0;
    double I = 0.0;
    bool N_positive = false;
    bool H_above_pi3 = false;   // H(ρ, φ) >= H(ρ, π/3)
    bool I_above_end = false;   // I(ρ) >= I(r⋆/√3)
};

// Throws std::invalid_argument for ρ <= 0.
ChainRecord worstcase_chain_eval(double rho, double phi);

struct ShellCheck {
    // Both scaled by e^{(π/α)r²}; one entry per hexagonal orbit of the shell.
    std::vector<double> lhs;
    std::vector<double> rhs;

    double total_lhs() const;
    double total_rhs() const;
    bool holds() const;
};

// Σ_{s∈S} |(s+u)·v|² e^{-(π/α)|s+u|²} against 3r² e^{-(π/α)r²}, per orbit.
// Throws std::invalid_argument when r < √3 r⋆ or v is not unit.
ShellCheck higher_shell_check(double r, double alpha, Vec2 u, Vec2 v);

struct Check {
    std::string name;
    bool passed = false;
    double margin = 0.0;
    std::map<std::string, double> inputs;
};

std::vector<Check> numeric_inequality_suite();

}  // namespace hexopt
