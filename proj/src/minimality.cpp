#include "hexopt/minimality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hexopt/numeric.hpp"

namespace hexopt {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
const double kSqrt3 = std::sqrt(3.0);
const double kB0 = std::sqrt(3.01);

void require_unit(Vec2 v, const char* who) {
    if (!(std::fabs(norm(v) - 1.0) <= 1e-12)) {
        throw std::invalid_argument(std::string(who) + ": v must be a unit vector");
    }
}

void require_alpha(double alpha, const char* who) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument(std::string(who) + ": alpha must be positive");
    }
}

// Smallest radius on a 0.25 grid with bound(R) <= tol; the cached ball caps it.
template <class Bound>
double truncation_radius(double start, double tol, Bound bound) {
    for (double R = start; R <= cached_radius() + 1e-12; R += 0.25) {
        if (bound(R) <= tol) return R;
    }
    throw std::domain_error("psi: tolerance not reachable within the cached ball");
}

SumSide pick_side(SumSide side, double alpha) {
    if (side != SumSide::automatic) return side;
    return alpha <= 1.0 ? SumSide::direct : SumSide::dual;
}

// e^{-K(|x|²-r⋆²)} [((x+u)·v)² expm1(-K(2x·u+|u|²)) + (u·v)(2x·v + u·v)], which is
// (f(x+u) - f(x)) e^{Kr⋆²} for f(y) = (y·v)² e^{-K|y|²}.
double gap_term(Vec2 x, double x2, Vec2 u, Vec2 v, double K) {
    const double uv = dot(u, v);
    const double yv = dot(x + u, v);
    const double inner = yv * yv * std::expm1(-K * (2.0 * dot(x, u) + norm2(u))) +
                         uv * (2.0 * dot(x, v) + uv);
    return std::exp(-K * (x2 - r_star * r_star)) * inner;
}

// Σ_{|k|>R} (1 + 2πα|k|²) e^{-πα|k|²} over Â₂.
double dual_weight_tail(double alpha, double R) {
    const double Kd = M_PI * alpha;
    const double rho = covering_radius(LatticeKind::reciprocal);
    return lattice_tail_bound(Kd, R, 0.0, 0, rho, 1.0) +
           2.0 * M_PI * alpha * lattice_tail_bound(Kd, R, 0.0, 2, rho, 1.0);
}

PsiEvaluation psi_direct(double alpha, Vec2 v, Vec2 u, double tol) {
    const double K = M_PI / alpha;
    const double du = norm(u);
    const double rho = covering_radius(LatticeKind::direct);
    const double R = truncation_radius(du + 2.0 * rho + 0.5, tol, [&](double R) {
        return lattice_tail_bound(K, R, du, 2, rho, 1.0);
    });
    CompensatedSum sum;
    long terms = 0;
    for (const LatticePoint& lp : cached_points(LatticeKind::direct)) {
        if (lp.r2 > R * R) break;
        const Vec2 y = lp.position + u;
        const double d = dot(y, v);
        sum += d * d * std::exp(-K * norm2(y));
        ++terms;
    }
    const double value = sum.value();
    return {value, SumSide::direct,
            lattice_tail_bound(K, R, du, 2, rho, 1.0) + 4.0 * kEps * value, terms};
}

PsiEvaluation psi_dual(double alpha, Vec2 v, Vec2 u, double tol) {
    const double pre = alpha * alpha / (2.0 * M_PI);
    const double rho = covering_radius(LatticeKind::reciprocal);
    const double R = truncation_radius(2.0 * rho + 0.5, tol,
                                       [&](double R) { return pre * dual_weight_tail(alpha, R); });
    CompensatedSum sum;
    double magnitude = 1.0;
    long terms = 0;
    for (const LatticePoint& lp : cached_points(LatticeKind::reciprocal)) {
        if (lp.r2 > R * R) break;
        if (lp.r2 == 0.0) continue;
        const double kv = dot(lp.position, v);
        const double term = (1.0 - 2.0 * M_PI * alpha * kv * kv) * std::exp(-M_PI * alpha * lp.r2) *
                            std::cos(2.0 * M_PI * dot(u, lp.position));
        sum += term;
        magnitude += std::fabs(term);
        ++terms;
    }
    return {pre * (1.0 + sum.value()), SumSide::dual,
            pre * (dual_weight_tail(alpha, R) + 8.0 * kEps * magnitude), terms};
}

PsiEvaluation gap_direct(double alpha, Vec2 v, Vec2 u, double tol) {
    const double K = M_PI / alpha;
    const double du = norm(u);
    const double rho = covering_radius(LatticeKind::direct);
    const double scale = std::exp(K * r_star * r_star) / (du * du);
    auto tail = [&](double R) { return 2.0 * lattice_tail_bound(K, R, du, 2, rho, 1.0) * scale; };
    const double R = truncation_radius(du + 2.0 * rho + 0.5, tol, tail);
    CompensatedSum sum;
    double magnitude = 0.0;
    long terms = 0;
    for (const LatticePoint& lp : cached_points(LatticeKind::direct)) {
        if (lp.r2 > R * R) break;
        const double t = gap_term(lp.position, lp.r2, u, v, K) / (du * du);
        sum += t;
        magnitude += std::fabs(t);
        ++terms;
    }
    return {sum.value(), SumSide::direct, tail(R) + 16.0 * kEps * magnitude, terms};
}

PsiEvaluation gap_dual(double alpha, Vec2 v, Vec2 u, double tol) {
    const double du = norm(u);
    const double rho = covering_radius(LatticeKind::reciprocal);
    const double pre = alpha * alpha / (2.0 * M_PI) * std::exp(M_PI * r_star * r_star / alpha) /
                       (du * du);
    auto tail = [&](double R) { return 2.0 * pre * dual_weight_tail(alpha, R); };
    const double R = truncation_radius(2.0 * rho + 0.5, tol, tail);
    CompensatedSum sum;
    double magnitude = 0.0;
    long terms = 0;
    for (const LatticePoint& lp : cached_points(LatticeKind::reciprocal)) {
        if (lp.r2 > R * R) break;
        if (lp.r2 == 0.0) continue;
        const double kv = dot(lp.position, v);
        const double s = std::sin(M_PI * dot(u, lp.position));
        const double term = (2.0 * M_PI * alpha * kv * kv - 1.0) *
                            std::exp(-M_PI * alpha * lp.r2) * 2.0 * s * s;
        sum += term;
        magnitude += std::fabs(term);
        ++terms;
    }
    return {pre * sum.value(), SumSide::dual, tail(R) + 16.0 * kEps * pre * magnitude, terms};
}

// Reflection across the line through the origin at angle beta.
Vec2 reflect(Vec2 w, double beta) {
    const double c = std::cos(2.0 * beta);
    const double s = std::sin(2.0 * beta);
    return {c * w.x + s * w.y, s * w.x - c * w.y};
}

}  // namespace

InequalityConstants::InequalityConstants()
    : K0(M_PI / alpha_bar), rho0(mu_star * alpha_bar / M_PI), r_star_star(kSqrt3 * r_star) {}

const InequalityConstants& inequality_constants() {
    static const InequalityConstants c;
    return c;
}

PsiEvaluation psi_eval(double alpha, Vec2 v, Vec2 u, SumSide side, double tol) {
    require_alpha(alpha, "psi_eval");
    require_unit(v, "psi_eval");
    return pick_side(side, alpha) == SumSide::direct ? psi_direct(alpha, v, u, tol)
                                                     : psi_dual(alpha, v, u, tol);
}

PsiEvaluation psi_gap(double alpha, Vec2 v, Vec2 u, SumSide side, double tol) {
    require_alpha(alpha, "psi_gap");
    require_unit(v, "psi_gap");
    if (norm2(u) == 0.0) throw std::invalid_argument("psi_gap: u must be nonzero");
    return pick_side(side, alpha) == SumSide::direct ? gap_direct(alpha, v, u, tol)
                                                     : gap_dual(alpha, v, u, tol);
}

double first_shell_gap(double alpha, Vec2 v, Vec2 u) {
    require_alpha(alpha, "first_shell_gap");
    const double K = M_PI / alpha;
    const double u2 = norm2(u);
    if (u2 == 0.0) return 0.0;
    CompensatedSum sum;
    sum += gap_term({0.0, 0.0}, 0.0, u, v, K);
    for (const LatticeIndex& s : first_shell()) {
        sum += gap_term(embed(s), r_star * r_star, u, v, K);
    }
    return sum.value() / u2;
}

GapScanResult psi_gap_scan(const std::vector<double>& alphas, const std::vector<double>& v_angles,
                           const std::vector<Vec2>& us) {
    if (alphas.empty() || v_angles.empty() || us.empty()) {
        throw std::invalid_argument("psi_gap_scan: grids must be nonempty");
    }
    for (double a : alphas) {
        if (!(a > 0.0 && a <= alpha_dagger)) {
            throw std::invalid_argument("psi_gap_scan: alpha outside (0, alpha_dagger]");
        }
    }
    GapScanResult out;
    out.min_gap = std::numeric_limits<double>::infinity();
    for (double a : alphas) {
        for (double t : v_angles) {
            const Vec2 v = unit(t);
            for (const Vec2& u : us) {
                if (norm2(u) == 0.0) continue;
                const PsiEvaluation g = psi_gap(a, v, u);
                ++out.evaluations;
                out.max_relative_error =
                    std::max(out.max_relative_error, g.error_bound / std::fabs(g.value));
                if (g.value < out.min_gap) {
                    out.min_gap = g.value;
                    out.error_at_min = g.error_bound;
                    out.alpha = a;
                    out.v_angle = t;
                    out.u = u;
                }
            }
        }
    }
    return out;
}

std::vector<double> log_grid(double lo, double hi, int n) {
    if (n < 1 || !(lo > 0.0) || !(hi >= lo)) throw std::invalid_argument("log_grid: bad range");
    std::vector<double> out;
    if (n == 1) return {lo};
    for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
    out.back() = hi;
    return out;
}

std::vector<double> half_circle_grid(int n) {
    if (n < 1) throw std::invalid_argument("half_circle_grid: n must be positive");
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back(M_PI * i / n);
    return out;
}

double constrained_direction_min(Vec2 u, Vec2 a, double kappa) {
    const double nu = norm(u);
    if (!(nu > 0.0)) throw std::invalid_argument("constrained_direction_min: u must be nonzero");
    if (!(kappa >= 0.0 && kappa <= 1.0)) {
        throw std::invalid_argument("constrained_direction_min: kappa must lie in [0, 1]");
    }
    const Vec2 z1 = (1.0 / nu) * u;
    const Vec2 z2{-z1.y, z1.x};
    const double a1 = std::fabs(dot(a, z1));
    const double a2 = std::fabs(dot(a, z2));
    return std::max(0.0, a2 * std::sqrt(1.0 - kappa * kappa) - a1 * kappa);
}

double constrained_direction_min_brute(Vec2 u, Vec2 a, double kappa, int samples) {
    const double nu = norm(u);
    if (!(nu > 0.0)) throw std::invalid_argument("constrained_direction_min: u must be nonzero");
    if (samples < 1) throw std::invalid_argument("constrained_direction_min: samples must be positive");
    const double limit = kappa * nu * (1.0 + 1e-14);
    double best = std::numeric_limits<double>::infinity();
    double best_phi = 0.0;
    auto visit = [&](double phi) {
        const Vec2 v = unit(phi);
        if (std::fabs(dot(u, v)) > limit) return;
        const double val = std::fabs(dot(a, v));
        if (val < best) {
            best = val;
            best_phi = phi;
        }
    };
    const double step = 2.0 * M_PI / samples;
    // Unit vectors of the coarse scan, shared across calls with the same sample count.
    static thread_local std::vector<Vec2> table;
    if (static_cast<int>(table.size()) != samples) {
        table.resize(static_cast<std::size_t>(samples));
        for (int i = 0; i < samples; ++i) table[static_cast<std::size_t>(i)] = unit(i * step);
    }
    for (int i = 0; i < samples; ++i) {
        const Vec2 v = table[static_cast<std::size_t>(i)];
        if (std::fabs(dot(u, v)) > limit) continue;
        const double val = std::fabs(dot(a, v));
        if (val < best) {
            best = val;
            best_phi = i * step;
        }
    }
    // The constraint boundary |cos(φ - θ_u)| = κ.
    const double tu = std::atan2(u.y, u.x);
    const double c = std::acos(std::min(1.0, kappa));
    for (double base : {tu, tu + M_PI}) {
        visit(base + c);
        visit(base - c);
    }
    double window = step;
    for (int round = 0; round < 2; ++round) {
        const double centre = best_phi;
        for (int i = -500; i <= 500; ++i) visit(centre + window * i / 500.0);
        window /= 500.0;
    }
    return best;
}

namespace cases {

double b(double alpha, double rho) {
    return kB0 * r_star * std::exp(M_PI / (2.0 * alpha) * (rho * rho - r_star * r_star));
}

double kappa(double alpha, double rho) { return b(alpha, rho) / rho; }

double alpha_m(double rho) {
    const InequalityConstants& c = inequality_constants();
    return std::min(c.alpha_bar, M_PI * rho / c.mu_star);
}

double kappa(double rho) { return kappa(alpha_m(rho), rho); }

double log_kappa(double rho) {
    return std::log(kB0 * r_star / rho) + M_PI / (2.0 * alpha_m(rho)) * (rho * rho - r_star * r_star);
}

double delta(double rho) { return std::asin(std::min(1.0, kappa(rho))); }

double M(double rho, double theta, double alpha) {
    const double k = std::min(1.0, kappa(alpha, rho));
    const double phi = M_PI / 3.0 - theta;
    return std::max(0.0, r_star * std::sin(phi) * std::sqrt(1.0 - k * k) -
                             std::fabs(rho - r_star * std::cos(phi)) * k);
}

double G(double rho, double theta, double alpha) {
    const double m = M(rho, theta, alpha);
    return m * m *
           std::exp(M_PI / alpha * (2.0 * r_star * rho * std::cos(M_PI / 3.0 - theta) - rho * rho));
}

double N_general(double rho, double phi) {
    const double k = kappa(rho);
    return r_star * std::sin(phi) * std::sqrt(1.0 - k * k) - std::fabs(rho - r_star * std::cos(phi)) * k;
}

double N_low_branch(double rho, double phi) {
    return r_star * std::sin(phi - delta(rho)) + rho * kappa(rho);
}

double N_high_branch(double rho, double phi) {
    return r_star * std::sin(phi + delta(rho)) - rho * kappa(rho);
}

double N(double rho, double phi) {
    if (rho <= 0.5 * r_star || phi <= std::acos(std::min(1.0, rho / r_star))) {
        return N_low_branch(rho, phi);
    }
    return N_high_branch(rho, phi);
}

double H(double rho, double phi) {
    const double n = N(rho, phi);
    return n * n * std::exp(M_PI / alpha_m(rho) * (2.0 * r_star * rho * std::cos(phi) - rho * rho));
}

double N_tilde(double rho) {
    const double k = kappa(rho);
    return 0.5 * kSqrt3 * r_star * std::sqrt(1.0 - k * k) - std::fabs(rho - 0.5 * r_star) * k;
}

double I(double rho) {
    const double n = N_tilde(rho);
    return n * n * std::exp(M_PI / alpha_m(rho) * (r_star * rho - rho * rho));
}

double good_vertex_F(Vec2 u, double alpha, Vec2 v) {
    const Vec2 s5{-0.5 * r_star, -0.5 * kSqrt3 * r_star};
    const double d = dot(s5 + u, v);
    return d * d * std::exp(-2.0 * M_PI / alpha * dot(s5, u) - M_PI / alpha * norm2(u));
}

double higher_shell_F(double alpha, double rho) {
    return (0.5 - rho * rho / (r_star * r_star)) *
           std::exp(M_PI / alpha * (kSqrt3 * r_star * rho - rho * rho));
}

double taylor_gamma(double K, double r, double y) {
    const double r2 = r * r;
    return 6.0 + 3.0 * K * K * r2 * r2 * (1.0 - 2.0 * K * y) + 6.0 * K * r2 * (K * y - 2.0);
}

double taylor_bound(double K, double r, Vec2 u, Vec2 v) {
    const double r2 = r * r;
    const double y = norm2(u);
    const double uv = dot(u, v);
    return 3.0 * r2 + 1.5 * K * K * r2 * r2 * y + uv * uv * taylor_gamma(K, r, y);
}

}  // namespace cases

ReducedPair reduce_to_sector(Vec2 u, Vec2 v) {
    double a = std::atan2(u.y, u.x);
    if (a < 0.0) a += 2.0 * M_PI;
    const int k = std::min(5, static_cast<int>(std::floor(a / (M_PI / 3.0))));
    Vec2 ru = rotate(u, -k * M_PI / 3.0);
    Vec2 rv = rotate(v, -k * M_PI / 3.0);
    if (std::atan2(ru.y, ru.x) > M_PI / 6.0) {
        ru = reflect(ru, M_PI / 6.0);
        rv = reflect(rv, M_PI / 6.0);
    }
    return {ru, rv};
}

const char* to_string(FirstShellCase c) {
    switch (c) {
        case FirstShellCase::origin:
            return "origin";
        case FirstShellCase::uv_large:
            return "uv_large";
        case FirstShellCase::taylor:
            return "taylor";
        case FirstShellCase::good_vertex:
            return "good_vertex";
    }
    return "unknown";
}

FirstShellAudit first_shell_case_audit(Vec2 u, double alpha, Vec2 v) {
    const InequalityConstants& c = inequality_constants();
    require_alpha(alpha, "first_shell_case_audit");
    if (alpha > c.alpha_bar) {
        throw std::invalid_argument("first_shell_case_audit: alpha must not exceed alpha_bar");
    }
    require_unit(v, "first_shell_case_audit");
    FirstShellAudit out;
    const double rho = norm(u);
    if (rho == 0.0) {
        // Excluded point: the gap vanishes identically.
        out.certified = true;
        out.above_floor = true;
        return out;
    }
    const double K = M_PI / alpha;
    const double r2 = r_star * r_star;
    const double uv = dot(u, v);
    if (std::fabs(uv) >= cases::b(alpha, rho)) {
        out.tag = FirstShellCase::uv_large;
        out.certificate = uv * uv * std::exp(K * (r2 - rho * rho)) - 3.0 * r2;
        out.certified = out.certificate >= 0.0;
    } else if (K * rho <= c.mu_star) {
        out.tag = FirstShellCase::taylor;
        const double grow = std::exp(K * rho * rho);
        out.certificate = cases::taylor_bound(K, r_star, u, v) - 3.0 * r2 * grow - 0.01 * rho * rho * grow;
        out.certified = out.certificate >= -1e-12 * 3.0 * r2 * grow;
    } else {
        out.tag = FirstShellCase::good_vertex;
        const ReducedPair p = reduce_to_sector(u, v);
        out.certificate = cases::good_vertex_F(p.u, alpha, p.v) - 3.0 * r2;
        out.certified = out.certificate > 0.0;
    }
    out.gap = first_shell_gap(alpha, v, u);
    out.above_floor = out.gap >= first_shell_floor;
    return out;
}

ChainRecord worstcase_chain_eval(double rho, double phi) {
    if (!(rho > 0.0)) throw std::invalid_argument("worstcase_chain_eval: rho must be positive");
    ChainRecord out;
    out.rho = rho;
    out.phi = phi;
    out.kappa = cases::kappa(rho);
    out.alpha_m = cases::alpha_m(rho);
    out.delta = cases::delta(rho);
    out.N = cases::N(rho, phi);
    out.H = cases::H(rho, phi);
    out.I = cases::I(rho);
    out.N_positive = out.N > 0.0;
    out.H_above_pi3 = out.H >= cases::H(rho, M_PI / 3.0) * (1.0 - 1e-12);
    out.I_above_end = out.I >= cases::I(r_star / kSqrt3) * (1.0 - 1e-12);
    return out;
}

double ShellCheck::total_lhs() const {
    double s = 0.0;
    for (double x : lhs) s += x;
    return s;
}

double ShellCheck::total_rhs() const {
    double s = 0.0;
    for (double x : rhs) s += x;
    return s;
}

bool ShellCheck::holds() const {
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        if (lhs[i] < rhs[i] * (1.0 - 1e-12)) return false;
    }
    return true;
}

ShellCheck higher_shell_check(double r, double alpha, Vec2 u, Vec2 v) {
    require_alpha(alpha, "higher_shell_check");
    require_unit(v, "higher_shell_check");
    if (r < inequality_constants().r_star_star - 1e-9) {
        throw std::invalid_argument("higher_shell_check: radius below the second shell");
    }
    const Shell shell = shell_of_radius(r);
    const double K = M_PI / alpha;
    const double rr = shell.radius * shell.radius;
    ShellCheck out;
    for (const auto& orbit : hexagon_orbits(shell)) {
        CompensatedSum s;
        for (const LatticeIndex& idx : orbit) {
            const Vec2 y = embed(idx) + u;
            const double d = dot(y, v);
            s += d * d * std::exp(-K * (norm2(y) - rr));
        }
        out.lhs.push_back(s.value());
        out.rhs.push_back(3.0 * rr);
    }
    return out;
}

std::vector<Check> numeric_inequality_suite() {
    const InequalityConstants& c = inequality_constants();
    const double rs = r_star;
    const double r2 = rs * rs;
    const double r4 = r2 * r2;
    const double end = rs / kSqrt3;
    std::vector<Check> out;
    auto add = [&](std::string name, double margin, std::map<std::string, double> inputs,
                   bool strict = false) {
        out.push_back({std::move(name), strict ? margin > 0.0 : margin >= 0.0, margin,
                       std::move(inputs)});
    };

    add("a_alpha_bar_above_sqrt3_over_pi", c.alpha_bar - kSqrt3 / M_PI,
        {{"alpha_bar", c.alpha_bar}, {"sqrt3_over_pi", kSqrt3 / M_PI}}, true);

    {
        const int n = 10000;
        double min_step = std::numeric_limits<double>::infinity();
        // In log form: κ itself underflows near ρ = 0.
        double prev = cases::log_kappa(end / n);
        for (int i = 2; i <= n; ++i) {
            const double k = cases::log_kappa(end * i / n);
            min_step = std::min(min_step, k - prev);
            prev = k;
        }
        add("b_kappa_increasing", min_step, {{"grid_points", n}}, true);
        add("b_kappa_end_below_0_337", 0.337 - cases::kappa(end), {{"kappa_end", cases::kappa(end)}});
    }

    add("c_rho0_below_half_r_star", 0.5 * rs - c.rho0, {{"rho0", c.rho0}, {"half_r_star", 0.5 * rs}});

    add("d_mu_star_above_inverse_r_star", c.mu_star - 1.0 / rs,
        {{"mu_star", c.mu_star}, {"inverse_r_star", 1.0 / rs}});
    add("d_mu_star_above_sqrt_pi_over_alpha_bar", c.mu_star - std::sqrt(M_PI / c.alpha_bar),
        {{"mu_star", c.mu_star}, {"sqrt_pi_over_alpha_bar", std::sqrt(M_PI / c.alpha_bar)}});

    {
        const double m2 = c.mu_star * c.mu_star;
        const double K0 = c.K0;
        const double lower_gamma = 3.0 * (2.0 + 2.0 * r2 * m2 + r4 * m2 * m2);
        const double v = 3.0 * r2 + 1.5 * r4 * m2 -
                         3.01 * r2 * std::exp(m2 / K0 - K0 * r2) * lower_gamma -
                         3.0 * r2 * std::exp(m2 / K0) - 0.01 * m2 / (K0 * K0) * std::exp(m2 / K0);
        add("e_taylor_endpoint_at_K0", v, {{"K0", K0}, {"mu_star", c.mu_star}});
    }

    {
        const double e = std::exp(c.mu_star * rs * (kSqrt3 - 1.0));
        const double k1 = cases::kappa(0.45 * rs);
        const double q1 = std::sqrt(1.0 - k1 * k1);
        const double ratio1 = (q1 - kSqrt3 * k1) / (kSqrt3 * q1 - k1);
        add("f_phi_endpoints_low_rho", ratio1 * ratio1 * e - 1.0,
            {{"kappa_9r_20", k1}, {"exp_factor", e}});
        const double k2 = cases::kappa(end);
        const double q2 = std::sqrt(1.0 - k2 * k2);
        const double ratio2 = (q2 - (kSqrt3 - 0.9) * k2) / (kSqrt3 * q2);
        add("f_phi_endpoints_high_rho", ratio2 * ratio2 * e - 1.0,
            {{"kappa_end", k2}, {"exp_factor", e}});
    }

    {
        const double k = cases::kappa(end);
        const double first = 2.0 * k - c.mu_star * (0.5 * kSqrt3 * rs * std::sqrt(1.0 - k * k) - 0.5 * rs * k);
        add("g_first_interval_decreasing", -first, {{"kappa_end", k}});
        const double kh = cases::kappa(0.5 * rs);
        const double v = 1.0 - (1.0 / c.rho0) * (M_PI / c.alpha_bar * 0.25 * r2 - 1.0) *
                                   (0.5 * rs - c.rho0 + 0.5 * kSqrt3 * rs * kh / std::sqrt(1.0 - kh * kh));
        add("g_middle_interval_increasing", v, {{"rho0", c.rho0}, {"kappa_half_r_star", kh}});
    }

    {
        const double i0 = cases::I(c.rho0);
        const double ie = cases::I(end);
        add("h_I_rho0_above_I_end", i0 - ie, {{"I_rho0", i0}, {"I_end", ie}}, true);
        add("h_I_end_above_3r2", ie - 3.0 * r2, {{"I_end", ie}, {"three_r_star_sq", 3.0 * r2}}, true);
    }

    {
        const double r = c.r_star_star;
        const double q2 = r * r;
        const double q4 = q2 * q2;
        const double mh2 = c.mu_hat * c.mu_hat;
        const double K0 = c.K0;
        add("i_higher_shell_gamma_nonnegative",
            6.0 + 3.0 * K0 * K0 * q4 - 6.0 * K0 * q4 * mh2 + 6.0 * mh2 * q2 - 12.0 * K0 * q2,
            {{"K0", K0}, {"r_star_star", r}, {"mu_hat", c.mu_hat}});
        add("i_higher_shell_exponential", 1.0 + 0.5 * mh2 * q2 - std::exp(mh2 / K0),
            {{"K0", K0}, {"r_star_star", r}, {"mu_hat", c.mu_hat}});
    }

    {
        const double f1 = cases::higher_shell_F(c.alpha_bar, end);
        add("j_higher_shell_F_at_cell_corner", f1 - 3.0, {{"F", f1}}, true);
        const double ab = c.alpha_bar;
        const double mh = c.mu_hat;
        const double f2 = (0.5 - mh * mh * ab * ab / (M_PI * M_PI * r2)) *
                          std::exp(kSqrt3 * rs * mh - mh * mh * ab / M_PI);
        add("j_higher_shell_F_at_mu_hat", f2 - 3.0, {{"F", f2}}, true);
    }
    return out;
}

}  // namespace hexopt
