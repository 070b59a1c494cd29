#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "hexopt/lattice.hpp"
#include "hexopt/rng.hpp"

using namespace hexopt;

namespace {

// Brute-force nearest lattice point over a generous index box.
Vec2 brute_reduce(Vec2 u, LatticeKind kind) {
    Vec2 best = u;
    for (int m = -16; m <= 16; ++m) {
        for (int n = -16; n <= 16; ++n) {
            const Vec2 c = u - lattice_point(kind, {m, n});
            if (norm2(c) < norm2(best) - 1e-12) best = c;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("embed basis vectors") {
    const Vec2 s = embed({1, 0});
    CHECK(s.x == doctest::Approx(1.07457).epsilon(1e-5));
    CHECK(s.y == 0.0);
    CHECK(embed({0, 0}) == Vec2{0.0, 0.0});
    const Vec2 t = embed({0, 1});
    CHECK(t.x == doctest::Approx(r_star / 2).epsilon(1e-15));
    CHECK(t.y == doctest::Approx(r_star * std::sqrt(3.0) / 2).epsilon(1e-15));
}

TEST_CASE("geometry invariants") {
    const LatticeGeometry& g = geometry();
    CHECK(norm(g.sigma) == doctest::Approx(r_star).epsilon(1e-15));
    CHECK(norm(g.tau) == doctest::Approx(r_star).epsilon(1e-15));
    CHECK(std::fabs(g.sigma.x * g.tau.y - g.sigma.y * g.tau.x - 1.0) < 1e-14);
    CHECK(std::fabs(dot(g.sigma_hat, g.sigma) - 1.0) < 1e-14);
    CHECK(std::fabs(dot(g.sigma_hat, g.tau)) < 1e-14);
    CHECK(std::fabs(dot(g.tau_hat, g.tau) - 1.0) < 1e-14);
    CHECK(std::fabs(dot(g.tau_hat, g.sigma)) < 1e-14);
}

TEST_CASE("reciprocal points") {
    CHECK(reciprocal_point({0, 0}) == Vec2{0.0, 0.0});
    CHECK(std::fabs(dot(reciprocal_point({1, 0}), embed({1, 0})) - 1.0) < 1e-14);
    CHECK(norm(reciprocal_point({1, 0})) == doctest::Approx(r_star).epsilon(1e-14));
    for (int a = -3; a <= 3; ++a) {
        for (int b = -3; b <= 3; ++b) {
            for (int m = -3; m <= 3; ++m) {
                for (int n = -3; n <= 3; ++n) {
                    const double d = dot(reciprocal_point({a, b}), embed({m, n}));
                    CHECK(std::fabs(d - std::round(d)) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("reciprocal lattice is the direct lattice rotated by a right angle") {
    for (const LatticePoint& p : ball_points(4.0, LatticeKind::reciprocal)) {
        const Vec2 r = rotate(p.position, -M_PI / 2);
        CHECK(norm(voronoi_reduce(r)) < 1e-12);
    }
}

TEST_CASE("enumerate_ball examples") {
    const auto a = enumerate_ball(1.1, false);
    CHECK(a.size() == 7);
    const auto b = enumerate_ball(0.5, false);
    REQUIRE(b.size() == 1);
    CHECK(b[0].radius == 0.0);
    // 2r⋆ ≈ 2.149 lies outside R = 2, so only two nonzero shells fit.
    const auto c = enumerate_ball(2.0, true);
    REQUIRE(c.size() == 3);
    CHECK(c[1].radius == doctest::Approx(r_star));
    CHECK(c[2].radius == doctest::Approx(std::sqrt(3.0) * r_star));
    const auto d = enumerate_ball(2.2, true);
    REQUIRE(d.size() == 4);
    CHECK(d[3].radius == doctest::Approx(2.0 * r_star));
    for (int i = 1; i < 4; ++i) CHECK(d[i].points.size() == 6);
}

TEST_CASE("enumerate_ball matches brute force over an index box") {
    const double R = 6.0;
    std::set<std::pair<long, long>> brute;
    for (int m = -12; m <= 12; ++m) {
        for (int n = -12; n <= 12; ++n) {
            if (norm(embed({m, n})) <= R + 1e-12) brute.insert({m, n});
        }
    }
    std::set<std::pair<long, long>> got;
    for (const LatticePoint& p : ball_points(R)) got.insert({p.index.m, p.index.n});
    CHECK(got == brute);
}

TEST_CASE("every nonzero shell is invariant under rotation and negation") {
    for (const LatticeKind kind : {LatticeKind::direct, LatticeKind::reciprocal}) {
        for (const Shell& s : enumerate_ball(8.0, true, kind)) {
            if (s.radius == 0.0) continue;
            CHECK(s.points.size() % 6 == 0);
            for (const Vec2& p : s.points) {
                for (const Vec2 q : {rotate(p, M_PI / 3), -p}) {
                    bool found = false;
                    for (const Vec2& o : s.points) found = found || norm(o - q) < 1e-9;
                    CHECK(found);
                }
            }
        }
    }
}

TEST_CASE("hexagon orbits partition shells") {
    for (const Shell& s : enumerate_ball(6.0, true)) {
        if (s.radius == 0.0) continue;
        const auto orbits = hexagon_orbits(s);
        CHECK(orbits.size() * 6 == s.points.size());
        for (const auto& o : orbits) {
            for (int j = 0; j < 6; ++j) CHECK(rotate60(o[j]) == o[(j + 1) % 6]);
        }
    }
    CHECK(hexagon_orbits(shell_of_radius(std::sqrt(7.0) * r_star)).size() == 2);
    CHECK_THROWS_AS(shell_of_radius(1.3), std::invalid_argument);
}

TEST_CASE("voronoi_reduce examples") {
    CHECK(voronoi_reduce({0.0, 0.0}) == Vec2{0.0, 0.0});
    CHECK(norm(voronoi_reduce(embed({1, 0}))) < 1e-15);
    const Vec2 u = 0.4 * embed({1, 0});
    const Vec2 r = voronoi_reduce(u);
    CHECK(norm(r - u) < 1e-15);
    for (const LatticePoint& p : ball_points(3.0 * r_star)) CHECK(norm(u) <= norm(u - p.position) + 1e-15);
}

TEST_CASE("voronoi_reduce is idempotent, shrinking, and nearest") {
    Rng rng(5, 0);
    for (const LatticeKind kind : {LatticeKind::direct, LatticeKind::reciprocal}) {
        for (int i = 0; i < 2000; ++i) {
            const Vec2 u{rng.uniform(-6, 6), rng.uniform(-6, 6)};
            const Vec2 r = voronoi_reduce(u, kind);
            CHECK(norm(voronoi_reduce(r, kind) - r) < 1e-12);
            CHECK(norm(r) <= norm(u) + 1e-12);
            CHECK(norm(r) == doctest::Approx(norm(brute_reduce(u, kind))).epsilon(1e-12));
        }
    }
}

TEST_CASE("hexagon membership against the first shells") {
    const Shell dual = enumerate_ball(r_star + 1e-9, true, LatticeKind::reciprocal)[1];
    const Shell direct = shell_of_radius(r_star);
    Rng rng(6, 0);
    double worst = 0.0;
    for (int i = 0; i < 5000; ++i) {
        const Vec2 u = voronoi_reduce({rng.uniform(-3, 3), rng.uniform(-3, 3)});
        for (const Vec2& s : direct.points) CHECK(dot(u, s) <= 0.5 * norm2(s) + 1e-12);
        for (const Vec2& s : dual.points) worst = std::max(worst, std::fabs(dot(u, s)));
    }
    // Reciprocal first-shell vectors point at the cell vertices, where |u·s| = r⋆²/√3 = 2/3.
    CHECK(worst <= 2.0 / 3.0 + 1e-12);
    const Vec2 vertex = (1.0 / 3.0) * (geometry().sigma + geometry().tau);
    CHECK(norm(vertex) == doctest::Approx(covering_radius(LatticeKind::direct)));
    CHECK(norm(voronoi_reduce(vertex)) == doctest::Approx(norm(vertex)));
    CHECK(dot(vertex, reciprocal_point({1, 1})) == doctest::Approx(2.0 / 3.0));
    CHECK(norm(reciprocal_point({1, 1})) == doctest::Approx(r_star));
    // The half bound holds on the inscribed disk of radius 1/(2r⋆).
    for (int i = 0; i < 2000; ++i) {
        const Vec2 u = rng.in_disk(0.5 / r_star);
        for (const Vec2& s : dual.points) CHECK(std::fabs(dot(u, s)) <= 0.5 + 1e-12);
    }
}

TEST_CASE("torus classes") {
    for (const int N : {1, 2, 3, 5}) {
        std::set<int> seen;
        for (int m = -7; m <= 7; ++m) {
            for (int n = -7; n <= 7; ++n) {
                const TorusIndex t = torus_class({m, n}, N);
                CHECK(t.a >= 0);
                CHECK(t.a < N);
                CHECK(t.b >= 0);
                CHECK(t.b < N);
                seen.insert(t.flat());
                const TorusIndex s = torus_class({m + N, n - 2 * N}, N);
                CHECK(s.flat() == t.flat());
            }
        }
        CHECK(static_cast<int>(seen.size()) == N * N);
    }
}

TEST_CASE("cell grid lies in the Voronoi cell") {
    const auto g = cell_grid(20);
    CHECK(g.size() == 400);
    for (const Vec2& u : g) CHECK(norm(voronoi_reduce(u) - u) < 1e-12);
    CHECK(covering_radius(LatticeKind::direct) == doctest::Approx(r_star / std::sqrt(3.0)));
}
