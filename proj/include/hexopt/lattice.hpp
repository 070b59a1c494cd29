#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "hexopt/vec2.hpp"

namespace hexopt {

// Minimal distance of the unit-covolume hexagonal lattice.
inline const double r_star = std::sqrt(2.0 / std::sqrt(3.0));

struct LatticeIndex {
    std::int64_t m = 0;
    std::int64_t n = 0;
};

constexpr bool operator==(LatticeIndex a, LatticeIndex b) { return a.m == b.m && a.n == b.n; }
constexpr bool operator<(LatticeIndex a, LatticeIndex b) {
    return a.m < b.m || (a.m == b.m && a.n < b.n);
}
constexpr LatticeIndex operator+(LatticeIndex a, LatticeIndex b) { return {a.m + b.m, a.n + b.n}; }
constexpr LatticeIndex operator-(LatticeIndex a) { return {-a.m, -a.n}; }

// Class (a, b) of A₂/NA₂ with 0 <= a, b < N.
struct TorusIndex {
    int N = 1;
    int a = 0;
    int b = 0;
    int flat() const { return a * N + b; }
};

TorusIndex torus_class(LatticeIndex idx, int N);

struct LatticeGeometry {
    double r_star;
    Vec2 sigma;
    Vec2 tau;
    Vec2 sigma_hat;
    Vec2 tau_hat;
};

const LatticeGeometry& geometry();

// direct = A₂, reciprocal = Â₂, square = ℤ² (comparison only).
enum class LatticeKind { direct, reciprocal, square };

LatticeKind dual_of(LatticeKind kind);
double covering_radius(LatticeKind kind);

Vec2 embed(LatticeIndex idx);
Vec2 reciprocal_point(LatticeIndex idx);
Vec2 lattice_point(LatticeKind kind, LatticeIndex idx);

struct LatticePoint {
    LatticeIndex index;
    Vec2 position;
    double r2 = 0.0;
};

struct Shell {
    double radius = 0.0;
    std::vector<LatticeIndex> indices;
    std::vector<Vec2> points;
};

// Points with |x| <= R + 1e-12, ordered by (|x|², m, n).
std::vector<LatticePoint> ball_points(double R, LatticeKind kind = LatticeKind::direct);

// Grouped by squared radius (tolerance 1e-9) when requested; otherwise one entry per point.
std::vector<Shell> enumerate_ball(double R, bool group_by_radius,
                                  LatticeKind kind = LatticeKind::direct);

// Shared ordered point list up to a fixed radius; callers stop at their own cutoff.
const std::vector<LatticePoint>& cached_points(LatticeKind kind);
double cached_radius();

Vec2 voronoi_reduce(Vec2 u, LatticeKind kind = LatticeKind::direct);

// Indices of the first shell of A₂ counterclockwise from σ.
const std::array<LatticeIndex, 6>& first_shell();

// Rotation by π/3 acting on A₂ indices (σ ↦ τ, τ ↦ τ - σ).
constexpr LatticeIndex rotate60(LatticeIndex idx) { return {-idx.n, idx.m + idx.n}; }

// Splits a shell into its hexagonal orbits, each listed counterclockwise.
std::vector<std::array<LatticeIndex, 6>> hexagon_orbits(const Shell& shell);

// Shell of A₂ whose radius matches r to 1e-9; throws if none.
Shell shell_of_radius(double r);

// Grid (i/n)σ + (j/n)τ, i, j in [0, n), reduced into the Voronoi cell.
std::vector<Vec2> cell_grid(int n, LatticeKind kind = LatticeKind::direct);

}  // namespace hexopt
