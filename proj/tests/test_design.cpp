#include <doctest.h>

#include <cmath>

#include "hexopt/design.hpp"
#include "hexopt/rng.hpp"

using namespace hexopt;

namespace {

Vec2 sample_k(Rng& rng) {
    const LatticeGeometry& g = geometry();
    return 3.0 * voronoi_reduce(rng.uniform() * g.sigma_hat + rng.uniform() * g.tau_hat, LatticeKind::reciprocal);
}

}  // namespace

TEST_CASE("shell weights are bounded and follow the cosine formula") {
    Rng rng(1, 0);
    for (int i = 0; i < 1000; ++i) {
        const Vec2 k = sample_k(rng);
        const ShellWeights w = shell_weights(k);
        const auto s = hexagon_vertices({1, 0});
        CHECK(norm(s[2] - (s[1] - s[0])) < 1e-15);
        for (int j = 0; j < 3; ++j) {
            CHECK(w.w[j] >= 0.0);
            CHECK(w.w[j] <= 4.0);
            CHECK(std::fabs(w.w[j] - 2.0 * (1.0 - std::cos(2.0 * M_PI * dot(k, s[j])))) < 1e-12);
        }
    }
}

TEST_CASE("second moment of the first shell") {
    const Shell s = shell_of_radius(r_star);
    double total = 0.0;
    for (const Vec2& p : s.points) total += dot(p, {1.0, 0.0}) * dot(p, {1.0, 0.0});
    CHECK(total == doctest::Approx(3.464).epsilon(1e-3));
    CHECK(total == doctest::Approx(3.0 * r_star * r_star).epsilon(1e-14));
}

TEST_CASE("odd moments vanish and low-degree moments match the circle") {
    for (const Shell& s : enumerate_ball(4.0 * r_star + 1e-9, true)) {
        if (s.radius == 0.0) continue;
        for (const int power : {1, 3, 5}) {
            CHECK(power_moment_deviation(s, {0.3, 0.8}, power) < 1e-12);
        }
        CHECK(design_moment_check(s, 5, 30) <= 1e-10);
    }
    for (const Shell& s : enumerate_ball(4.0 * r_star + 1e-9, true, LatticeKind::reciprocal)) {
        if (s.radius == 0.0) continue;
        CHECK(design_moment_check(s, 5, 30, 2) <= 1e-10);
    }
    CHECK_THROWS_AS(design_moment_check(shell_of_radius(r_star), 6, 1), std::invalid_argument);
}

TEST_CASE("degree six negative control") {
    CHECK(power_moment_deviation(shell_of_radius(r_star), {1.0, 0.0}, 6) > 1e-3);
}

TEST_CASE("2-design identity on every shell up to 4 r_star") {
    Rng rng(2, 0);
    for (const Shell& s : enumerate_ball(4.0 * r_star + 1e-9, true)) {
        if (s.radius == 0.0) continue;
        for (int i = 0; i < 100; ++i) CHECK(std::fabs(two_design_defect(s, rng.in_disk(2.0))) < 1e-12);
    }
}

TEST_CASE("geom_matrix examples") {
    // k·σ = 1/3, k·τ = 2/3, k·(τ - σ) = 1/3: all three weights equal 3.
    const LatticeGeometry& g = geometry();
    const Vec2 k = (1.0 / 3.0) * g.sigma_hat + (2.0 / 3.0) * g.tau_hat;
    const ShellWeights w = shell_weights(k);
    CHECK(w.w[0] == doctest::Approx(w.w[1]));
    CHECK(w.w[1] == doctest::Approx(w.w[2]));
    const DesignMatrix m = geom_matrix(k);
    CHECK(m.lambda_min == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::fabs(m.M.xx - 0.5) < 1e-12);
    CHECK(std::fabs(m.M.xy) < 1e-12);
    CHECK(std::fabs(m.M.yy - 0.5) < 1e-12);
    CHECK(design_det(w) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK_THROWS_AS(geom_matrix({0.0, 0.0}), DegenerateWeights);
    CHECK_THROWS_AS(geom_matrix(g.sigma_hat), DegenerateWeights);
    CHECK_THROWS_AS(geom_matrix(k, std::sqrt(7.0) * r_star), std::invalid_argument);
}

TEST_CASE("lambda_min is at least one quarter, trace one, PSD, and matches the det formula") {
    Rng rng(3, 0);
    double lo = 1.0;
    for (int i = 0; i < 20000; ++i) {
        const Vec2 k = sample_k(rng);
        for (const double r : {r_star, std::sqrt(3.0) * r_star, 2.0 * r_star}) {
            const DesignMatrix m = geom_matrix(k, r);
            lo = std::min(lo, m.lambda_min);
            CHECK(m.lambda_min >= 0.25 - 1e-12);
            CHECK(std::fabs(trace(m.M) - 1.0) < 1e-12);
            CHECK(eigen(m.M).lambda1 >= -1e-12);
            CHECK(std::fabs(eigen(m.M).lambda1 - m.lambda_min) < 1e-12);
        }
        const ShellWeights w = shell_weights(k);
        CHECK(std::fabs(det(design_matrix(w).M) - design_det(w)) < 1e-12);
    }
    CHECK(lo < 0.2501);
}

TEST_CASE("w-inequality") {
    const WInequality z = w_inequality_check({0.0, 0.0});
    CHECK(z.lhs == 0.0);
    CHECK(z.rhs == 0.0);
    const LatticeGeometry& g = geometry();
    const Vec2 k = (1.0 / 3.0) * g.sigma_hat + (2.0 / 3.0) * g.tau_hat;
    const WInequality e = w_inequality_check(k);
    const double w = shell_weights(k).w[0];
    CHECK(e.lhs == doctest::Approx(3.0 * w * w));
    CHECK(e.rhs == doctest::Approx(2.25 * w * w));
    CHECK(e.lhs > e.rhs);
    Rng rng(4, 0);
    for (int i = 0; i < 100000; ++i) {
        const WInequality c = w_inequality_check(sample_k(rng));
        CHECK(c.lhs >= c.rhs - 1e-12);
        CHECK(std::fabs((c.lhs - c.rhs) - c.trig_gap) < 1e-12);
    }
}

TEST_CASE("periodic 2-design inequality examples") {
    const Shell first = shell_of_radius(r_star);
    const PeriodicDesignCheck c = periodic_two_design_check(PeriodicPerturbation::constant(3, {0.01, 0.0}), first);
    CHECK(c.lhs == 0.0);
    CHECK(c.rhs == 0.0);
    const PeriodicDesignCheck one = periodic_two_design_check(PeriodicPerturbation(1, {Vec2{0.02, 0.01}}), first);
    CHECK(one.lhs == 0.0);
    CHECK(one.rhs == 0.0);
}

TEST_CASE("periodic 2-design inequality holds and is Plancherel consistent") {
    for (const double r : {r_star, std::sqrt(3.0) * r_star, 2.0 * r_star, std::sqrt(7.0) * r_star}) {
        const Shell shell = shell_of_radius(r);
        for (int t = 0; t < 100; ++t) {
            Rng rng(5, static_cast<std::uint64_t>(t));
            const PeriodicPerturbation p = random_perturbation(2 + t % 7, max_sup_norm, rng);
            const PeriodicDesignCheck c = periodic_two_design_check(p, shell);
            CHECK(c.holds());
            CHECK(c.plancherel_consistent());
        }
    }
}
