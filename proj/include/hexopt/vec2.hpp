#pragma once

#include <cmath>

namespace hexopt {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
constexpr Vec2 operator*(double t, Vec2 a) { return {t * a.x, t * a.y}; }
constexpr Vec2 operator*(Vec2 a, double t) { return {t * a.x, t * a.y}; }
constexpr bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double norm2(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

inline Vec2 rotate(Vec2 a, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * a.x - s * a.y, s * a.x + c * a.y};
}

inline Vec2 unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

// Symmetric 2x2 matrix [[xx, xy], [xy, yy]].
struct Sym2 {
    double xx = 0.0;
    double xy = 0.0;
    double yy = 0.0;
};

constexpr Sym2 operator+(Sym2 a, Sym2 b) { return {a.xx + b.xx, a.xy + b.xy, a.yy + b.yy}; }
constexpr Sym2 operator-(Sym2 a, Sym2 b) { return {a.xx - b.xx, a.xy - b.xy, a.yy - b.yy}; }
constexpr Sym2 operator*(double t, Sym2 a) { return {t * a.xx, t * a.xy, t * a.yy}; }

constexpr double trace(Sym2 a) { return a.xx + a.yy; }
constexpr double det(Sym2 a) { return a.xx * a.yy - a.xy * a.xy; }

// Symmetrized outer product (a bᵀ + b aᵀ)/2.
constexpr Sym2 sym_outer(Vec2 a, Vec2 b) {
    return {a.x * b.x, 0.5 * (a.x * b.y + a.y * b.x), a.y * b.y};
}
constexpr Sym2 outer(Vec2 a) { return sym_outer(a, a); }

constexpr double quad_form(Sym2 m, Vec2 v) {
    return m.xx * v.x * v.x + 2.0 * m.xy * v.x * v.y + m.yy * v.y * v.y;
}

inline double max_abs(Sym2 a) {
    return std::fmax(std::fabs(a.xx), std::fmax(std::fabs(a.xy), std::fabs(a.yy)));
}

// lambda1 <= lambda2; v1, v2 orthonormal.
struct Eigen2 {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    Vec2 v1{1.0, 0.0};
    Vec2 v2{0.0, 1.0};
};

Eigen2 eigen(Sym2 a);

}  // namespace hexopt
