#include "hexopt/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hexopt {

namespace {

constexpr double kSqrt3 = 1.7320508075688772935;

struct Basis {
    Vec2 b1;
    Vec2 b2;
    Vec2 d1;  // dual basis: d_i · b_j = δ_ij
    Vec2 d2;
};

const Basis& basis(LatticeKind kind) {
    static const Basis direct = [] {
        const LatticeGeometry& g = geometry();
        return Basis{g.sigma, g.tau, g.sigma_hat, g.tau_hat};
    }();
    static const Basis reciprocal = [] {
        const LatticeGeometry& g = geometry();
        return Basis{g.sigma_hat, g.tau_hat, g.sigma, g.tau};
    }();
    static const Basis square{{1.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {0.0, 1.0}};
    switch (kind) {
        case LatticeKind::direct:
            return direct;
        case LatticeKind::reciprocal:
            return reciprocal;
        default:
            return square;
    }
}

// Integer squared-norm key; exact ordering of shells.
std::int64_t norm_key(LatticeKind kind, LatticeIndex i) {
    switch (kind) {
        case LatticeKind::direct:
            return i.m * i.m + i.m * i.n + i.n * i.n;
        case LatticeKind::reciprocal:
            return i.m * i.m - i.m * i.n + i.n * i.n;
        default:
            return i.m * i.m + i.n * i.n;
    }
}

bool lex_less(Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

double polar_angle(Vec2 p) {
    double a = std::atan2(p.y, p.x);
    if (a < -1e-12) a += 2.0 * M_PI;
    return std::max(a, 0.0);
}

}  // namespace

TorusIndex torus_class(LatticeIndex idx, int N) {
    auto mod = [N](std::int64_t v) {
        const std::int64_t r = v % N;
        return static_cast<int>(r < 0 ? r + N : r);
    };
    return {N, mod(idx.m), mod(idx.n)};
}

const LatticeGeometry& geometry() {
    static const LatticeGeometry g = [] {
        const double r = r_star;
        LatticeGeometry out{};
        out.r_star = r;
        out.sigma = {r, 0.0};
        out.tau = {0.5 * r, 0.5 * kSqrt3 * r};
        out.sigma_hat = {1.0 / r, -1.0 / (kSqrt3 * r)};
        out.tau_hat = {0.0, 2.0 / (kSqrt3 * r)};
        return out;
    }();
    return g;
}

LatticeKind dual_of(LatticeKind kind) {
    switch (kind) {
        case LatticeKind::direct:
            return LatticeKind::reciprocal;
        case LatticeKind::reciprocal:
            return LatticeKind::direct;
        default:
            return LatticeKind::square;
    }
}

double covering_radius(LatticeKind kind) {
    return kind == LatticeKind::square ? std::sqrt(0.5) : r_star / kSqrt3;
}

Vec2 embed(LatticeIndex idx) { return lattice_point(LatticeKind::direct, idx); }

Vec2 reciprocal_point(LatticeIndex idx) { return lattice_point(LatticeKind::reciprocal, idx); }

Vec2 lattice_point(LatticeKind kind, LatticeIndex idx) {
    const Basis& b = basis(kind);
    const double m = static_cast<double>(idx.m);
    const double n = static_cast<double>(idx.n);
    return {m * b.b1.x + n * b.b2.x, m * b.b1.y + n * b.b2.y};
}

std::vector<LatticePoint> ball_points(double R, LatticeKind kind) {
    if (!std::isfinite(R)) throw std::invalid_argument("ball_points: R must be finite");
    std::vector<LatticePoint> out;
    if (R < 0.0) return out;
    const Basis& b = basis(kind);
    const double reach = R + 1e-12;
    const auto km = static_cast<std::int64_t>(std::ceil(reach * norm(b.d1))) + 1;
    const auto kn = static_cast<std::int64_t>(std::ceil(reach * norm(b.d2))) + 1;
    std::vector<std::pair<std::int64_t, LatticePoint>> keyed;
    for (std::int64_t m = -km; m <= km; ++m) {
        for (std::int64_t n = -kn; n <= kn; ++n) {
            const LatticeIndex idx{m, n};
            const Vec2 x = lattice_point(kind, idx);
            const double r2 = norm2(x);
            if (r2 <= reach * reach) keyed.push_back({norm_key(kind, idx), {idx, x, r2}});
        }
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second.index < b.second.index;
    });
    out.reserve(keyed.size());
    for (auto& k : keyed) out.push_back(k.second);
    return out;
}

std::vector<Shell> enumerate_ball(double R, bool group_by_radius, LatticeKind kind) {
    std::vector<Shell> shells;
    for (const LatticePoint& p : ball_points(R, kind)) {
        const bool same = group_by_radius && !shells.empty() &&
                          std::fabs(shells.back().radius * shells.back().radius - p.r2) <= 1e-9;
        if (!same) shells.push_back({std::sqrt(p.r2), {}, {}});
        shells.back().indices.push_back(p.index);
        shells.back().points.push_back(p.position);
    }
    return shells;
}

double cached_radius() { return 40.0; }

const std::vector<LatticePoint>& cached_points(LatticeKind kind) {
    static const std::vector<LatticePoint> direct = ball_points(cached_radius(), LatticeKind::direct);
    static const std::vector<LatticePoint> reciprocal =
        ball_points(cached_radius(), LatticeKind::reciprocal);
    static const std::vector<LatticePoint> square = ball_points(cached_radius(), LatticeKind::square);
    switch (kind) {
        case LatticeKind::direct:
            return direct;
        case LatticeKind::reciprocal:
            return reciprocal;
        default:
            return square;
    }
}

Vec2 voronoi_reduce(Vec2 u, LatticeKind kind) {
    if (!std::isfinite(u.x) || !std::isfinite(u.y)) {
        throw std::invalid_argument("voronoi_reduce: non-finite input");
    }
    const Basis& b = basis(kind);
    const double m0 = std::round(dot(b.d1, u));
    const double n0 = std::round(dot(b.d2, u));
    Vec2 best = u;
    double best_r2 = std::numeric_limits<double>::infinity();
    for (int i = -2; i <= 2; ++i) {
        for (int j = -2; j <= 2; ++j) {
            const double m = m0 + i;
            const double n = n0 + j;
            const Vec2 w{u.x - (m * b.b1.x + n * b.b2.x), u.y - (m * b.b1.y + n * b.b2.y)};
            const double r2 = norm2(w);
            if (r2 < best_r2 - 1e-12) {
                best = w;
                best_r2 = r2;
            } else if (r2 <= best_r2 + 1e-12 && lex_less(w, best)) {
                best = w;
                best_r2 = std::min(best_r2, r2);
            }
        }
    }
    return best;
}

const std::array<LatticeIndex, 6>& first_shell() {
    static const std::array<LatticeIndex, 6> s{
        LatticeIndex{1, 0}, LatticeIndex{0, 1}, LatticeIndex{-1, 1},
        LatticeIndex{-1, 0}, LatticeIndex{0, -1}, LatticeIndex{1, -1}};
    return s;
}

std::vector<std::array<LatticeIndex, 6>> hexagon_orbits(const Shell& shell) {
    std::vector<LatticeIndex> rest = shell.indices;
    std::vector<std::array<LatticeIndex, 6>> orbits;
    while (!rest.empty()) {
        auto start = std::min_element(rest.begin(), rest.end(), [](LatticeIndex a, LatticeIndex b) {
            return polar_angle(embed(a)) < polar_angle(embed(b));
        });
        std::array<LatticeIndex, 6> orbit{};
        orbit[0] = *start;
        for (int i = 1; i < 6; ++i) orbit[i] = rotate60(orbit[i - 1]);
        for (const LatticeIndex& o : orbit) {
            auto it = std::find(rest.begin(), rest.end(), o);
            if (it == rest.end()) throw std::logic_error("hexagon_orbits: shell not rotation closed");
            rest.erase(it);
        }
        orbits.push_back(orbit);
    }
    return orbits;
}

Shell shell_of_radius(double r) {
    for (Shell& s : enumerate_ball(r + 0.5, true)) {
        if (std::fabs(s.radius * s.radius - r * r) <= 1e-9) return s;
    }
    throw std::invalid_argument("shell_of_radius: no lattice shell at this radius");
}

std::vector<Vec2> cell_grid(int n, LatticeKind kind) {
    if (n < 1) throw std::invalid_argument("cell_grid: n must be positive");
    const Basis& b = basis(kind);
    std::vector<Vec2> out;
    out.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double s = static_cast<double>(i) / n;
            const double t = static_cast<double>(j) / n;
            out.push_back(voronoi_reduce(s * b.b1 + t * b.b2, kind));
        }
    }
    return out;
}

}  // namespace hexopt
