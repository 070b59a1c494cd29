#include "hexopt/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "hexopt/numeric.hpp"

namespace hexopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(what);
}

// Points of a lattice kind up to radius R, shared cache when it covers R.
class PointSource {
public:
    PointSource(double R, LatticeKind kind) {
        if (R <= cached_radius()) {
            pts_ = &cached_points(kind);
        } else {
            own_ = ball_points(R, kind);
            pts_ = &own_;
        }
    }
    const std::vector<LatticePoint>& points() const { return *pts_; }

private:
    std::vector<LatticePoint> own_;
    const std::vector<LatticePoint>* pts_ = nullptr;
};

// Smallest radius on a 0.25 grid in [start, cap] with bound(R) <= target.
template <class Bound>
double radius_for(double target, double start, double cap, Bound bound) {
    for (double R = start; R <= cap + 1e-12; R += 0.25) {
        if (bound(R) <= target) return R;
    }
    throw std::domain_error("tolerance not reachable within the supported truncation radius");
}

double gaussian_tail(double alpha, double R, SumSide side, LatticeKind kind) {
    const double rho = covering_radius(kind);
    if (side == SumSide::direct) return lattice_tail_bound(M_PI * alpha, R, 0.0, 0, rho, 1.0);
    return lattice_tail_bound(M_PI / alpha, R, 0.0, 0, rho, 1.0) / alpha;
}

// Floating-point allowance for a compensated sum whose terms have the given absolute total.
double rounding(double magnitude) { return 4.0 * std::numeric_limits<double>::epsilon() * magnitude; }

SumSide resolve(SumSide side, double alpha) {
    if (side != SumSide::automatic) return side;
    return alpha >= 1.0 ? SumSide::direct : SumSide::dual;
}

// Tail of the perturbed direct sum: both configurations, |x + Δ| >= |x| - 2‖p‖.
double perturbed_direct_tail(double alpha, double R, double sup) {
    const double rho = covering_radius(LatticeKind::direct);
    return lattice_tail_bound(M_PI * alpha, R, 2.0 * sup, 0, rho, 1.0) +
           lattice_tail_bound(M_PI * alpha, R, 0.0, 0, rho, 1.0);
}

double perturbed_dual_tail(double alpha, double R, int N) {
    const double rho = covering_radius(LatticeKind::reciprocal) / N;
    return lattice_tail_bound(M_PI / alpha, R, 0.0, 0, rho, 1.0 / (double(N) * N)) / alpha;
}

EnergyValue perturbed_direct(const PeriodicPerturbation& p, double alpha, double R) {
    const int N = p.period();
    const double K = M_PI * alpha;
    PointSource src(R, LatticeKind::direct);
    CompensatedSum sum;
    double magnitude = 0.0;
    long terms = 0;
    for (const LatticePoint& lp : src.points()) {
        if (lp.r2 > R * R) break;
        if (lp.r2 == 0.0) continue;
        const double g = std::exp(-K * lp.r2);
        const TorusIndex shift = torus_class(lp.index, N);
        for (int a = 0; a < N; ++a) {
            for (int b = 0; b < N; ++b) {
                const Vec2 d = p.at(TorusIndex{N, (a + shift.a) % N, (b + shift.b) % N}) -
                               p.at(TorusIndex{N, a, b});
                const double term = g * std::expm1(-K * (2.0 * dot(lp.position, d) + norm2(d)));
                sum += term;
                magnitude += std::fabs(term);
            }
        }
        ++terms;
    }
    return {sum.value() / p.classes(),
            perturbed_direct_tail(alpha, R, p.sup_norm()) + rounding(magnitude / p.classes()), terms};
}

EnergyValue perturbed_dual(const PeriodicPerturbation& p, double alpha, double R) {
    const int N = p.period();
    const double N2 = double(N) * N;
    // The energy is translation invariant; centering keeps the phases small.
    Vec2 mean{0.0, 0.0};
    for (const Vec2& v : p.table()) mean = mean + v;
    mean = (1.0 / N2) * mean;
    std::vector<Vec2> q(p.table());
    for (Vec2& v : q) v = v - mean;

    const double Rn = R * N;
    PointSource src(Rn, LatticeKind::reciprocal);
    const double inv_n = 1.0 / N;
    CompensatedSum sum;
    double magnitude = 0.0;
    long terms = 0;
    for (const LatticePoint& lp : src.points()) {
        if (lp.r2 > Rn * Rn) break;
        const Vec2 k = inv_n * lp.position;
        const double k2 = lp.r2 * inv_n * inv_n;
        const int i = static_cast<int>(((lp.index.m % N) + N) % N);
        const int j = static_cast<int>(((lp.index.n % N) + N) % N);
        double B = 0.0;
        if (i == 0 && j == 0) {
            CompensatedSum re;
            CompensatedSum im;
            for (const Vec2& v : q) {
                const double phi = 2.0 * M_PI * dot(k, v);
                const double s = std::sin(0.5 * phi);
                re += -2.0 * s * s;
                im += std::sin(phi);
            }
            const double zr = re.value() / N2;
            const double zi = im.value() / N2;
            B = 2.0 * zr + zr * zr + zi * zi;
        } else {
            CompensatedSum re;
            CompensatedSum im;
            for (int a = 0; a < N; ++a) {
                for (int b = 0; b < N; ++b) {
                    const Vec2& v = q[static_cast<std::size_t>(a * N + b)];
                    const double base = 2.0 * M_PI * (((i * a + j * b) % N) * inv_n);
                    const double phi = 2.0 * M_PI * dot(k, v);
                    // e^{i base}(e^{i phi} - 1)
                    const double s = std::sin(0.5 * phi);
                    const double er = -2.0 * s * s;
                    const double ei = std::sin(phi);
                    const double cb = std::cos(base);
                    const double sb = std::sin(base);
                    re += cb * er - sb * ei;
                    im += sb * er + cb * ei;
                }
            }
            B = (re.value() * re.value() + im.value() * im.value()) / (N2 * N2);
        }
        const double term = std::exp(-M_PI * k2 / alpha) * B;
        sum += term;
        magnitude += std::fabs(term);
        ++terms;
    }
    return {sum.value() / alpha, perturbed_dual_tail(alpha, R, N) + rounding(magnitude / alpha), terms};
}

// Upper bound on Σ_{x≠0} e^{-K(|x| - d)²} over a lattice kind scaled by 1/scale.
double shifted_gaussian_sum_bound(double K, double d, LatticeKind kind, double scale) {
    const double rho = covering_radius(kind) / scale;
    const double covol = 1.0 / (scale * scale);
    auto tail = [&](double r) { return lattice_tail_bound(K, r, d, 0, rho, covol); };
    const double R = radius_for(1e-18, 1.0 / scale, 400.0 / scale, tail);
    PointSource src(R * scale, kind);
    CompensatedSum s;
    for (const LatticePoint& lp : src.points()) {
        const double r = std::sqrt(lp.r2) / scale;
        if (r > R) break;
        if (lp.r2 == 0.0) continue;
        const double t = std::max(r - d, 0.0);
        s += std::exp(-K * t * t);
    }
    return s.value() + tail(R);
}

double gaussian_energy_diff(const PeriodicPerturbation& p, double alpha, double tol,
                            double* err) {
    const EnergyValue e = perturbed_energy_diff(p, alpha, tol, resolve(SumSide::automatic, alpha));
    *err = e.error_bound;
    return e.value;
}

EnergyValue riesz_cmsd(const PeriodicPerturbation& p, double s, double tol) {
    const int N = p.period();
    const double c = std::exp(0.5 * s * std::log(M_PI) - std::lgamma(0.5 * s));
    const double d = 2.0 * p.sup_norm();

    // Small α: |D(α)| <= α⁻¹ T e^{πκ²} e^{-πκ²/α}, κ = r⋆/N the shortest nonzero dual vector.
    const double kappa2 = r_star * r_star / (double(N) * N);
    const double T = shifted_gaussian_sum_bound(M_PI, 0.0, LatticeKind::reciprocal, N);
    auto low_tail = [&](double a_lo) {
        const double y = M_PI * kappa2;
        return c * T * std::exp(y) * std::pow(y, 0.5 * s - 1.0) * upper_gamma(1.0 - 0.5 * s, y / a_lo);
    };
    // Large α: |D(α)| <= 2 S₁ e^{πq} e^{-πqα}, q = (r⋆ - 2‖p‖)².
    const double q = (r_star - d) * (r_star - d);
    const double S1 = shifted_gaussian_sum_bound(M_PI, d, LatticeKind::direct, 1.0);
    auto high_tail = [&](double a_hi) {
        return 2.0 * c * S1 * std::exp(M_PI * q) * std::pow(M_PI * q, -0.5 * s) *
               upper_gamma(0.5 * s, M_PI * q * a_hi);
    };
    double a_lo = 0.5;
    while (low_tail(a_lo) > tol / 8.0) {
        a_lo *= 0.5;
        if (a_lo < 1e-8) throw std::domain_error("cmsd_energy_diff: lower cutoff not reached");
    }
    double a_hi = 2.0;
    while (high_tail(a_hi) > tol / 8.0) {
        a_hi *= 1.5;
        if (a_hi > 1e6) throw std::domain_error("cmsd_energy_diff: upper cutoff not reached");
    }
    const double t_lo = std::log(a_lo);
    const double t_hi = std::log(a_hi);
    const double span = t_hi - t_lo;

    double node_err = 0.0;
    long terms = 0;
    auto h = [&](double t, double weight) {
        const double a = std::exp(t);
        const double scale = c * std::exp(0.5 * s * t);
        const double inner = tol / (8.0 * span * scale);
        const EnergyValue e = perturbed_energy_diff(p, a, inner, resolve(SumSide::automatic, a));
        node_err += weight * scale * e.error_bound;
        terms += e.terms_used;
        return scale * e.value;
    };

    // Trapezoid in t = ln α with node doubling; endpoint values are negligible but kept.
    int n = 32;
    double step = span / n;
    CompensatedSum acc;
    acc += 0.5 * h(t_lo, 0.5 * step);
    acc += 0.5 * h(t_hi, 0.5 * step);
    for (int i = 1; i < n; ++i) acc += h(t_lo + i * step, step);
    double estimate = step * acc.value();
    double change = kInf;
    while (n < (1 << 16)) {
        for (int i = 1; i < 2 * n; i += 2) acc += h(t_lo + i * step / 2.0, step / 2.0);
        n *= 2;
        step = span / n;
        const double next = step * acc.value();
        change = std::fabs(next - estimate);
        estimate = next;
        if (change < tol / 2.0) break;
    }
    // Nodes from coarser levels were weighted with their coarse step; node_err is an upper bound.
    return {estimate, low_tail(a_lo) + high_tail(a_hi) + change + node_err, terms};
}

void check_window(double alpha0, double alpha1) {
    if (!(alpha0 > 0.0) || !(alpha0 <= 1.0) || !(alpha1 >= 1.0) || !std::isfinite(alpha1)) {
        throw std::invalid_argument("uniformity_ratio: requires 0 < α₀ <= 1 <= α₁");
    }
}

}  // namespace

CmsdPotential CmsdPotential::gaussian(double alpha) {
    require_positive(alpha, "gaussian potential: α must be positive");
    return CmsdPotential(GaussianPotential{alpha});
}

CmsdPotential CmsdPotential::riesz(double s) {
    if (!(s > 2.0) || !std::isfinite(s)) {
        throw std::invalid_argument("riesz potential: energies are infinite for s <= 2");
    }
    return CmsdPotential(RieszPotential{s});
}

CmsdPotential CmsdPotential::mixture(std::vector<MixtureAtom> atoms) {
    if (atoms.empty()) throw std::invalid_argument("mixture: needs at least one atom");
    for (const auto& a : atoms) {
        require_positive(a.alpha, "mixture: α must be positive");
        require_positive(a.weight, "mixture: weights must be positive");
    }
    return CmsdPotential(AtomicMixture{std::move(atoms)});
}

double CmsdPotential::operator()(double r) const {
    if (const auto* g = std::get_if<GaussianPotential>(&v_)) return std::exp(-M_PI * g->alpha * r * r);
    if (const auto* z = std::get_if<RieszPotential>(&v_)) return std::pow(r, -z->s);
    double sum = 0.0;
    for (const auto& a : std::get<AtomicMixture>(v_).atoms) sum += a.weight * std::exp(-M_PI * a.alpha * r * r);
    return sum;
}

double riesz_density(double s, double alpha) {
    return std::exp(0.5 * s * std::log(M_PI) + (0.5 * s - 1.0) * std::log(alpha) - std::lgamma(0.5 * s));
}

EnergyValue gaussian_lattice_energy_radius(double alpha, double R, SumSide side, LatticeKind kind) {
    require_positive(alpha, "gaussian_lattice_energy: α must be positive");
    side = resolve(side, alpha);
    const LatticeKind summed = side == SumSide::direct ? kind : dual_of(kind);
    const double K = side == SumSide::direct ? M_PI * alpha : M_PI / alpha;
    PointSource src(R, summed);
    CompensatedSum sum;
    long terms = 0;
    for (const LatticePoint& lp : src.points()) {
        if (lp.r2 > R * R) break;
        if (lp.r2 == 0.0) continue;
        sum += std::exp(-K * lp.r2);
        ++terms;
    }
    const double tail = gaussian_tail(alpha, R, side, kind);
    if (side == SumSide::direct) return {sum.value(), tail + rounding(sum.value()), terms};
    return {(1.0 / alpha - 1.0) + sum.value() / alpha,
            tail + rounding(1.0 / alpha + 1.0 + sum.value() / alpha), terms};
}

EnergyValue gaussian_lattice_energy(double alpha, double tol, SumSide side, LatticeKind kind) {
    require_positive(alpha, "gaussian_lattice_energy: α must be positive");
    require_positive(tol, "gaussian_lattice_energy: tol must be positive");
    const SumSide s = resolve(side, alpha);
    const double R = radius_for(tol, 1.0, cached_radius(),
                                [&](double r) { return gaussian_tail(alpha, r, s, kind); });
    return gaussian_lattice_energy_radius(alpha, R, s, kind);
}

EnergyValue perturbed_energy_diff_radius(const PeriodicPerturbation& p, double alpha, double R,
                                         SumSide side) {
    require_positive(alpha, "perturbed_energy_diff: α must be positive");
    if (p.is_constant()) return {0.0, 0.0, 0};
    if (side == SumSide::dual) return perturbed_dual(p, alpha, R);
    return perturbed_direct(p, alpha, R);
}

EnergyValue perturbed_energy_diff(const PeriodicPerturbation& p, double alpha, double tol, SumSide side) {
    require_positive(alpha, "perturbed_energy_diff: α must be positive");
    require_positive(tol, "perturbed_energy_diff: tol must be positive");
    if (p.is_constant()) return {0.0, 0.0, 0};
    if (side == SumSide::dual) {
        const int N = p.period();
        const double R = radius_for(tol, 0.5, 400.0 / N,
                                    [&](double r) { return perturbed_dual_tail(alpha, r, N); });
        return perturbed_dual(p, alpha, R);
    }
    const double R = radius_for(tol, 1.0, cached_radius(),
                                [&](double r) { return perturbed_direct_tail(alpha, r, p.sup_norm()); });
    return perturbed_direct(p, alpha, R);
}

EnergyValue riesz_energy_direct(double s, double R) {
    if (!(s > 2.0)) throw std::invalid_argument("riesz_energy: energies are infinite for s <= 2");
    const double rho = covering_radius(LatticeKind::direct);
    if (!(R > 4.0 * rho)) throw std::invalid_argument("riesz_energy_direct: radius too small");
    PointSource src(R, LatticeKind::direct);
    CompensatedSum sum;
    long terms = 0;
    for (const LatticePoint& lp : src.points()) {
        if (lp.r2 > R * R) break;
        if (lp.r2 == 0.0) continue;
        sum += std::pow(lp.r2, -0.5 * s);
        ++terms;
    }
    const double A = R - 2.0 * rho;
    const double B = R + 2.0 * rho;
    const double upper = 2.0 * M_PI * (std::pow(A, 2.0 - s) / (s - 2.0) + rho * std::pow(A, 1.0 - s) / (s - 1.0));
    const double lower = 2.0 * M_PI * (std::pow(B, 2.0 - s) / (s - 2.0) - rho * std::pow(B, 1.0 - s) / (s - 1.0));
    return {sum.value() + 0.5 * (upper + lower), 0.5 * (upper - lower), terms};
}

EnergyValue riesz_energy(double s, double tol, RieszMethod method) {
    if (!(s > 2.0) || !std::isfinite(s)) {
        throw std::invalid_argument("riesz_energy: energies are infinite for s <= 2");
    }
    require_positive(tol, "riesz_energy: tol must be positive");
    if (method == RieszMethod::direct) {
        EnergyValue e{};
        for (double R = 50.0; R <= 400.0; R *= 2.0) {
            e = riesz_energy_direct(s, R);
            if (e.error_bound <= tol) break;
        }
        return e;
    }
    // Theta split: each term is bounded by 3e^{-π|x|²}/(π|x|²) once π|x|² >= s - 2.
    const double pref = std::exp(0.5 * s * std::log(M_PI) - std::lgamma(0.5 * s));
    const double rho = covering_radius(LatticeKind::direct);
    auto tail = [&](double R) {
        if (M_PI * R * R < s - 2.0) return kInf;
        return pref * 3.0 / (M_PI * R * R) * lattice_tail_bound(M_PI, R, 0.0, 0, rho, 1.0);
    };
    const double R = radius_for(tol, 1.0, cached_radius(), tail);
    CompensatedSum sum;
    long terms = 0;
    for (const LatticePoint& lp : cached_points(LatticeKind::direct)) {
        if (lp.r2 > R * R) break;
        if (lp.r2 == 0.0) continue;
        const double y = M_PI * lp.r2;
        sum += std::pow(y, -0.5 * s) * upper_gamma(0.5 * s, y);
        sum += std::pow(y, 0.5 * s - 1.0) * upper_gamma(1.0 - 0.5 * s, y);
        ++terms;
    }
    sum += 2.0 / (s - 2.0) - 2.0 / s;
    return {pref * sum.value(), tail(R), terms};
}

EnergyValue cmsd_energy_diff(const PeriodicPerturbation& p, const CmsdPotential& f, double tol) {
    require_positive(tol, "cmsd_energy_diff: tol must be positive");
    if (p.is_constant()) return {0.0, 0.0, 0};
    const auto& v = f.variant();
    if (const auto* g = std::get_if<GaussianPotential>(&v)) return perturbed_energy_diff(p, g->alpha, tol);
    if (const auto* z = std::get_if<RieszPotential>(&v)) return riesz_cmsd(p, z->s, tol);
    const auto& atoms = std::get<AtomicMixture>(v).atoms;
    double total_w = 0.0;
    for (const auto& a : atoms) total_w += a.weight;
    EnergyValue out{};
    CompensatedSum sum;
    for (const auto& a : atoms) {
        double err = 0.0;
        sum += a.weight * gaussian_energy_diff(p, a.alpha, tol / total_w, &err);
        out.error_bound += a.weight * err;
        ++out.terms_used;
    }
    out.value = sum.value();
    return out;
}

double finite_window_energy(const PeriodicPerturbation& p, const CmsdPotential& f, double r) {
    if (!(r >= 2.0 * r_star) || !std::isfinite(r)) {
        throw std::invalid_argument("finite_window_energy: requires r >= 2r⋆");
    }
    std::vector<Vec2> pts;
    for (const LatticePoint& lp : ball_points(r + 2.0 * p.sup_norm())) {
        const Vec2 y = lp.position + p.at(lp.index);
        if (norm2(y) <= r * r) pts.push_back(y);
    }
    CompensatedSum sum;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (i != j) sum += f(norm(pts[i] - pts[j]));
        }
    }
    return sum.value() / static_cast<double>(pts.size());
}

double uniformity_ratio(const CmsdPotential& f, double alpha0, double alpha1) {
    check_window(alpha0, alpha1);
    const double c = M_PI * r_star * r_star;
    const auto& v = f.variant();
    if (const auto* z = std::get_if<RieszPotential>(&v)) {
        const double h = 0.5 * z->s;
        const double num = std::pow(0.5 * c, -h) * upper_gamma(h, 0.5 * c * alpha1) +
                           std::pow(alpha0, h - 1.0) / (h - 1.0);
        const double den = std::pow(c, -h) * upper_gamma(h, c) + std::pow(c, h) * upper_gamma(-h, c);
        return num / den;
    }
    std::vector<MixtureAtom> atoms;
    if (const auto* g = std::get_if<GaussianPotential>(&v)) {
        atoms.push_back({g->alpha, 1.0});
    } else {
        atoms = std::get<AtomicMixture>(v).atoms;
    }
    double num = 0.0;
    double den = 0.0;
    for (const auto& a : atoms) {
        if (a.alpha >= alpha1) num += a.weight * std::exp(-0.5 * c * a.alpha);
        if (a.alpha <= alpha0) num += a.weight / a.alpha;
        den += a.weight * (a.alpha >= 1.0 ? std::exp(-c * a.alpha) : std::exp(-c / a.alpha));
    }
    return num / den;
}

double uniformity_ratio_quadrature(const CmsdPotential& f, double alpha0, double alpha1) {
    check_window(alpha0, alpha1);
    const auto* z = std::get_if<RieszPotential>(&f.variant());
    if (z == nullptr) return uniformity_ratio(f, alpha0, alpha1);
    const double h = 0.5 * z->s;
    const double c = M_PI * r_star * r_star;
    boost::math::quadrature::tanh_sinh<double> finite;
    boost::math::quadrature::exp_sinh<double> infinite;
    // Integrands in log form so that a → ∞ gives 0 rather than 0·∞.
    auto decay = [h](double rate, double a) {
        return a < kInf ? std::exp(-rate * a + (h - 1.0) * std::log(a)) : 0.0;
    };
    const double n1 = infinite.integrate([&](double a) { return decay(0.5 * c, a); }, alpha1, kInf);
    const double n2 = finite.integrate([&](double a) { return std::pow(a, h - 2.0); }, 0.0, alpha0);
    const double d1 = infinite.integrate([&](double a) { return decay(c, a); }, 1.0, kInf);
    const double d2 = finite.integrate(
        [&](double a) { return a > 0.0 ? std::exp(-c / a) * std::pow(a, h - 1.0) : 0.0; }, 0.0, 1.0);
    return (n1 + n2) / (d1 + d2);
}

}  // namespace hexopt
