#include "hexopt/design.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hexopt/numeric.hpp"
#include "hexopt/rng.hpp"

namespace hexopt {

namespace {

constexpr int kCircleNodes = 64;

double ipow(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

// Monomials x^a y^b with a + b <= degree.
struct Monomial {
    int a;
    int b;
};

std::vector<Monomial> monomials(int degree) {
    std::vector<Monomial> out;
    for (int d = 0; d <= degree; ++d) {
        for (int a = d; a >= 0; --a) out.push_back({a, d - a});
    }
    return out;
}

// Trapezoid rule on the circle; exact for trigonometric degree < kCircleNodes.
template <class F>
double circle_average(double radius, F f) {
    CompensatedSum s;
    for (int i = 0; i < kCircleNodes; ++i) {
        s += f(radius * unit(2.0 * M_PI * i / kCircleNodes));
    }
    return s.value() / kCircleNodes;
}

template <class F>
double shell_average(const Shell& shell, F f) {
    CompensatedSum s;
    for (const Vec2& p : shell.points) s += f(p);
    return s.value() / static_cast<double>(shell.points.size());
}

}  // namespace

double shell_weight(Vec2 k, Vec2 s) {
    const double h = std::sin(M_PI * dot(k, s));
    return 4.0 * h * h;
}

std::array<Vec2, 3> hexagon_vertices(LatticeIndex s1) {
    const LatticeIndex s2 = rotate60(s1);
    const LatticeIndex s3 = rotate60(s2);
    return {embed(s1), embed(s2), embed(s3)};
}

ShellWeights shell_weights(Vec2 k, LatticeIndex s1) {
    const auto v = hexagon_vertices(s1);
    ShellWeights out;
    out.k = k;
    for (int j = 0; j < 3; ++j) out.w[j] = shell_weight(k, v[j]);
    return out;
}

double design_det(const ShellWeights& weights) {
    const auto& w = weights.w;
    const double t = weights.total();
    return 0.75 * (w[0] * w[1] + w[1] * w[2] + w[0] * w[2]) / (t * t);
}

namespace {

// Hexagon with first vertex at polar angle phi.
DesignMatrix build_matrix(const ShellWeights& weights, double phi) {
    const double t = weights.total();
    if (!(t > 1e-15)) throw DegenerateWeights("geom_matrix: all shell weights vanish");
    // Opposite vertices carry equal weight and equal ŝŝᵀ, so three vertices suffice.
    Sym2 M{0.0, 0.0, 0.0};
    for (int j = 0; j < 3; ++j) M = M + (weights.w[j] / t) * outer(unit(phi + j * M_PI / 3.0));
    const double d = design_det(weights);
    return {M, 0.5 * (1.0 - std::sqrt(std::max(0.0, 1.0 - 4.0 * d)))};
}

}  // namespace

DesignMatrix design_matrix(const ShellWeights& weights) { return build_matrix(weights, 0.0); }

DesignMatrix geom_matrix(Vec2 k, double shell_radius) {
    const auto orbits = hexagon_orbits(shell_of_radius(shell_radius));
    if (orbits.size() != 1) {
        throw std::invalid_argument("geom_matrix: shell is not a single hexagon");
    }
    const Vec2 s1 = embed(orbits.front()[0]);
    return build_matrix(shell_weights(k, orbits.front()[0]), std::atan2(s1.y, s1.x));
}

WInequality w_inequality_check(Vec2 k) {
    const ShellWeights sw = shell_weights(k);
    const auto& w = sw.w;
    const double t = sw.total();
    WInequality out;
    out.lhs = w[0] * w[1] + w[1] * w[2] + w[0] * w[2];
    out.rhs = 0.25 * t * t;
    const auto v = hexagon_vertices({1, 0});
    // sin(θ/2) with θ = 2πk·s.
    const double a = std::sin(M_PI * dot(k, v[0]));
    const double b = std::sin(M_PI * dot(k, v[1]));
    const double c = std::sin(M_PI * (dot(k, v[1]) - dot(k, v[0])));
    out.trig_gap = 16.0 * a * a * b * b * c * c;
    return out;
}

double design_moment_check(const Shell& shell, int degree, int trials, std::uint64_t seed) {
    if (degree < 1 || degree > 5) {
        throw std::invalid_argument("design_moment_check: degree must be in 1..5");
    }
    if (shell.points.empty()) throw std::invalid_argument("design_moment_check: empty shell");
    const auto mons = monomials(degree);
    std::vector<double> shell_avg;
    std::vector<double> circle_avg;
    for (const Monomial& m : mons) {
        auto f = [m](Vec2 p) { return ipow(p.x, m.a) * ipow(p.y, m.b); };
        shell_avg.push_back(shell_average(shell, f));
        circle_avg.push_back(circle_average(shell.radius, f));
    }
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        Rng rng(seed, static_cast<std::uint64_t>(t));
        CompensatedSum dev;
        for (std::size_t i = 0; i < mons.size(); ++i) {
            dev += rng.uniform(-1.0, 1.0) * (shell_avg[i] - circle_avg[i]);
        }
        worst = std::max(worst, std::fabs(dev.value()));
    }
    return worst;
}

double power_moment_deviation(const Shell& shell, Vec2 u, int power) {
    auto f = [u, power](Vec2 p) { return ipow(dot(p, u), power); };
    return std::fabs(shell_average(shell, f) - circle_average(shell.radius, f));
}

double two_design_defect(const Shell& shell, Vec2 u) {
    CompensatedSum s;
    for (const Vec2& p : shell.points) {
        const double d = dot(p, u);
        s += d * d;
    }
    const double n = static_cast<double>(shell.points.size());
    s += -0.5 * n * shell.radius * shell.radius * norm2(u);
    return s.value();
}

bool PeriodicDesignCheck::plancherel_consistent(double tol) const {
    const double scale = 1.0 + std::max(std::fabs(lhs), std::fabs(rhs));
    return std::fabs(lhs - spectral_lhs) <= tol * scale &&
           std::fabs(rhs - spectral_rhs) <= tol * scale;
}

PeriodicDesignCheck periodic_two_design_check(const PeriodicPerturbation& p, const Shell& shell) {
    const int N = p.period();
    const double r2 = shell.radius * shell.radius;
    CompensatedSum lhs;
    CompensatedSum all;
    for (std::size_t i = 0; i < shell.indices.size(); ++i) {
        const LatticeIndex s = shell.indices[i];
        const Vec2 sv = shell.points[i];
        for (int a = 0; a < N; ++a) {
            for (int b = 0; b < N; ++b) {
                const LatticeIndex x{a, b};
                const Vec2 d = p.at(s + x) - p.at(x);
                const double proj = dot(sv, d);
                lhs += proj * proj;
                all += norm2(d);
            }
        }
    }
    PeriodicDesignCheck out;
    out.lhs = lhs.value();
    out.rhs = 0.25 * r2 * all.value();

    const SpectralMeasure m = spectral_measure(p).first;
    CompensatedSum slhs;
    CompensatedSum sall;
    for (const SpectralAtom& atom : m.atoms) {
        for (const Vec2& sv : shell.points) {
            const double w = shell_weight(atom.frequency, sv);
            slhs += w * quad_form(atom.matrix, sv);
            sall += w * trace(atom.matrix);
        }
    }
    const double n2 = static_cast<double>(N) * N;
    out.spectral_lhs = n2 * slhs.value();
    out.spectral_rhs = 0.25 * r2 * n2 * sall.value();
    return out;
}

}  // namespace hexopt
