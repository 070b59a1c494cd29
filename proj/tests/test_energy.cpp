#include <doctest.h>

#include <cmath>

#include "golden_values.hpp"
#include "hexopt/energy.hpp"
#include "hexopt/rng.hpp"

using namespace hexopt;

namespace {

PeriodicPerturbation n2_example() { return periodize({{LatticeIndex{0, 0}, Vec2{1e-3, 0.0}}}, 2); }

PeriodicPerturbation sample(std::uint64_t stream, int N, double sup) {
    Rng rng(77, stream);
    return random_perturbation(N, sup, rng);
}

}  // namespace

TEST_CASE("Gaussian energy golden and large-alpha limit") {
    const EnergyValue e = gaussian_lattice_energy(1.0, 1e-15);
    CHECK(std::fabs(e.value - golden::gaussian_a1) < 1e-15);
    CHECK(e.error_bound <= 1e-15);
    const EnergyValue big = gaussian_lattice_energy(30.0, 1e-15);
    CHECK(std::fabs(big.value / (6.0 * std::exp(-30.0 * M_PI * r_star * r_star)) - 1.0) < 1e-6);
    CHECK_THROWS_AS(gaussian_lattice_energy(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_lattice_energy(-1.0, 1e-10), std::invalid_argument);
}

TEST_CASE("Gaussian energy at alpha = 1 agrees across sides at radius 8") {
    const EnergyValue d = gaussian_lattice_energy_radius(1.0, 8.0, SumSide::direct);
    const EnergyValue q = gaussian_lattice_energy_radius(1.0, 8.0, SumSide::dual);
    CHECK(std::fabs(d.value - q.value) < 1e-12);
}

TEST_CASE("Poisson self-consistency over alpha in [0.2, 5]") {
    for (double a = 0.2; a <= 5.0 + 1e-12; a *= 1.25) {
        const EnergyValue d = gaussian_lattice_energy(a, 1e-14, SumSide::direct);
        const EnergyValue q = gaussian_lattice_energy(a, 1e-14, SumSide::dual);
        CHECK(std::fabs(d.value - q.value) <= d.error_bound + q.error_bound);
    }
}

TEST_CASE("hexagonal below square lattice against goldens") {
    const double a2[3] = {golden::a2_a05, golden::a2_a1, golden::a2_a2};
    const double z2[3] = {golden::z2_a05, golden::z2_a1, golden::z2_a2};
    const double alphas[3] = {0.5, 1.0, 2.0};
    for (int i = 0; i < 3; ++i) {
        const EnergyValue h = gaussian_lattice_energy(alphas[i], 1e-15);
        const EnergyValue z = gaussian_lattice_energy(alphas[i], 1e-15, SumSide::automatic, LatticeKind::square);
        CHECK(h.value == doctest::Approx(a2[i]).epsilon(1e-13));
        CHECK(z.value == doctest::Approx(z2[i]).epsilon(1e-13));
        CHECK(z.value - h.value > h.error_bound + z.error_bound);
    }
}

TEST_CASE("certified bounds: doubling the radius stays inside the bound") {
    for (const double a : {0.3, 1.0, 3.0}) {
        for (const SumSide side : {SumSide::direct, SumSide::dual}) {
            for (const double R : {2.0, 3.0, 4.0}) {
                const EnergyValue lo = gaussian_lattice_energy_radius(a, R, side);
                const EnergyValue hi = gaussian_lattice_energy_radius(a, 2.0 * R, side);
                CHECK(std::isfinite(lo.error_bound));
                CHECK(std::fabs(hi.value - lo.value) <= lo.error_bound);
            }
        }
    }
    const PeriodicPerturbation p = sample(1, 3, max_sup_norm);
    for (const double a : {0.8, 2.0}) {
        for (const SumSide side : {SumSide::direct, SumSide::dual}) {
            for (const double R : {3.0, 4.0}) {
                const EnergyValue lo = perturbed_energy_diff_radius(p, a, R, side);
                const EnergyValue hi = perturbed_energy_diff_radius(p, a, 2.0 * R, side);
                CHECK(std::fabs(hi.value - lo.value) <= lo.error_bound);
            }
        }
    }
    const EnergyValue r = riesz_energy_direct(4.0, 20.0);
    CHECK(std::fabs(r.value - golden::riesz_s4) <= r.error_bound);
}

TEST_CASE("perturbed energy difference examples") {
    const PeriodicPerturbation c = PeriodicPerturbation::constant(3, {0.01, 0.02});
    CHECK(perturbed_energy_diff(c, 1.0, 1e-14).value == 0.0);
    const EnergyValue e = perturbed_energy_diff(n2_example(), 2.0, 1e-15);
    CHECK(std::fabs(e.value - golden::perturbed_n2_a2_eps1e3) < 1e-12);
    CHECK(std::fabs(e.value - golden::perturbed_n2_a2_eps1e3) <= e.error_bound + 1e-20);
    for (std::uint64_t t = 0; t < 10; ++t) {
        const PeriodicPerturbation p = sample(t, 2 + static_cast<int>(t % 4), max_sup_norm);
        const double base = perturbed_energy_diff(p, 1.5, 1e-14).value;
        const double moved = perturbed_energy_diff(p.relabeled({1, 1}), 1.5, 1e-14).value;
        CHECK(moved == doctest::Approx(base).epsilon(1e-12));
        const EnergyValue d = perturbed_energy_diff(p, 0.8, 1e-14, SumSide::direct);
        const EnergyValue q = perturbed_energy_diff(p, 0.8, 1e-14, SumSide::dual);
        CHECK(std::fabs(d.value - q.value) <= d.error_bound + q.error_bound);
    }
    CHECK_THROWS_AS(perturbed_energy_diff(c, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("quadratic regime: halving p quarters the energy difference") {
    for (std::uint64_t t = 0; t < 10; ++t) {
        const PeriodicPerturbation p = sample(100 + t, 2 + static_cast<int>(t % 5), 1e-4);
        const double full = perturbed_energy_diff(p, 2.0, 1e-15).value;
        const double half = perturbed_energy_diff(p.scaled(0.5), 2.0, 1e-15).value;
        CHECK(std::fabs(half / full - 0.25) < 0.025);
    }
}

TEST_CASE("Riesz energies") {
    const double gold[4] = {golden::riesz_s3, golden::riesz_s4, golden::riesz_s6, golden::riesz_s8};
    const double ss[4] = {3.0, 4.0, 6.0, 8.0};
    for (int i = 0; i < 4; ++i) {
        const EnergyValue t = riesz_energy(ss[i], 1e-12);
        const EnergyValue d = riesz_energy(ss[i], 1e-12, RieszMethod::direct);
        CHECK(std::fabs(t.value - gold[i]) <= std::max(t.error_bound, 1e-13 * gold[i]));
        CHECK(std::fabs(t.value - d.value) <= t.error_bound + d.error_bound);
    }
    const double s = 60.0;
    CHECK(riesz_energy(s, 1e-12).value / (6.0 * std::pow(r_star, -s)) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(riesz_density(4.0, 1.0) == doctest::Approx(M_PI * M_PI).epsilon(1e-15));
    CHECK_THROWS_AS(riesz_energy(2.0, 1e-10), std::invalid_argument);
    CHECK_THROWS_AS(CmsdPotential::riesz(1.5), std::invalid_argument);
    CHECK_THROWS_AS(CmsdPotential::mixture({{1.0, -1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(CmsdPotential::gaussian(0.0), std::invalid_argument);
}

TEST_CASE("c.m.s.d. energy differences") {
    const PeriodicPerturbation p = sample(200, 3, max_sup_norm);
    const double g = perturbed_energy_diff(p, 1.3, 1e-15).value;
    const double one = cmsd_energy_diff(p, CmsdPotential::mixture({{1.3, 0.7}}), 1e-15).value;
    CHECK(std::fabs(one - 0.7 * g) < 1e-12 * std::fabs(g) + 1e-20);
    const double gd = cmsd_energy_diff(p, CmsdPotential::gaussian(1.3), 1e-15).value;
    CHECK(gd == g);
    const PeriodicPerturbation c = PeriodicPerturbation::constant(2, {0.01, 0.0});
    CHECK(cmsd_energy_diff(c, CmsdPotential::riesz(4.0), 1e-12).value == 0.0);
    const EnergyValue r = cmsd_energy_diff(n2_example(), CmsdPotential::riesz(4.0), 1e-13);
    CHECK(std::fabs(r.value - golden::riesz_perturbed_n2_s4_eps1e3) < 1e-10);
}

TEST_CASE("linearity of c.m.s.d. differences in mixture weights") {
    const PeriodicPerturbation p = sample(300, 4, max_sup_norm);
    const double a = cmsd_energy_diff(p, CmsdPotential::mixture({{0.9, 1.0}}), 1e-15).value;
    const double b = cmsd_energy_diff(p, CmsdPotential::mixture({{2.5, 1.0}}), 1e-15).value;
    const double mix = cmsd_energy_diff(p, CmsdPotential::mixture({{0.9, 0.3}, {2.5, 1.7}}), 1e-15).value;
    CHECK(std::fabs(mix - (0.3 * a + 1.7 * b)) < 1e-12 * (std::fabs(a) + std::fabs(b)));
}

TEST_CASE("finite window energy follows the boundary law") {
    const CmsdPotential f = CmsdPotential::gaussian(1.0);
    const PeriodicPerturbation zero = PeriodicPerturbation::zero(1);
    const double full = gaussian_lattice_energy(1.0, 1e-15).value;
    double previous = 0.0;
    for (const double r : {10.0, 20.0, 30.0, 40.0}) {
        const double w = finite_window_energy(zero, f, r);
        const double gap = (full - w) / full;
        // A point within distance d of the boundary keeps only about half its neighbours.
        const double law = 2.0 * r_star / (M_PI * r);
        CHECK(gap == doctest::Approx(law).epsilon(0.1));
        CHECK(w > previous);
        previous = w;
    }
    const double w30 = finite_window_energy(zero, f, 30.0);
    CHECK(std::fabs(w30 - full) / full < 0.025);
    const PeriodicPerturbation c = PeriodicPerturbation::constant(2, {0.02, -0.01});
    CHECK(finite_window_energy(c, f, 12.0) == doctest::Approx(finite_window_energy(PeriodicPerturbation::zero(2), f, 12.0)).epsilon(1e-12));
    CHECK_THROWS_AS(finite_window_energy(zero, f, 1.0), std::invalid_argument);
}

TEST_CASE("uniformity ratio") {
    CHECK(uniformity_ratio(CmsdPotential::gaussian(1.0), 0.5, 2.0) == 0.0);
    const CmsdPotential r4 = CmsdPotential::riesz(4.0);
    const double c = uniformity_ratio(r4, 0.1, 10.0);
    CHECK(c == doctest::Approx(golden::uniformity_s4_01_10).epsilon(1e-12));
    CHECK(std::fabs(c - uniformity_ratio_quadrature(r4, 0.1, 10.0)) / c < 1e-8);
    double prev = uniformity_ratio(r4, 1.0, 1.0);
    for (int i = 1; i <= 10; ++i) {
        const double a0 = std::pow(0.01, i / 10.0);
        const double a1 = std::pow(50.0, i / 10.0);
        const double v = uniformity_ratio(r4, a0, a1);
        CHECK(v <= prev);
        prev = v;
    }
    const CmsdPotential mix = CmsdPotential::mixture({{0.05, 1.0}, {3.0, 2.0}});
    CHECK(uniformity_ratio(mix, 0.5, 2.0) > uniformity_ratio(mix, 0.01, 5.0));
    CHECK_THROWS_AS(uniformity_ratio(r4, 2.0, 3.0), std::invalid_argument);
}
