#include "hexopt/numeric.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "hexopt/vec2.hpp"

namespace hexopt {

namespace {

constexpr double kTiny = 1e-300;
constexpr double kEps = 1e-16;

// Legendre continued fraction, modified Lentz.
double upper_gamma_cf(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 100000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return std::exp(-x + a * std::log(x)) * h;
}

// Γ(a) - γ(a, x) via the power series of γ, a > 0.
double upper_gamma_series(double a, double x) {
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int n = 0; n < 100000; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kEps) break;
    }
    const double lower = sum * std::exp(-x + a * std::log(x));
    return std::tgamma(a) - lower;
}

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

double upper_gamma(double a, double x) {
    if (!(x > 0.0) || !std::isfinite(a)) {
        throw std::domain_error("upper_gamma: requires x > 0 and finite a");
    }
    // The continued fraction is only reliable past the peak of the integrand.
    if (a > 0.0) return x >= a + 1.0 ? upper_gamma_cf(a, x) : upper_gamma_series(a, x);
    if (x >= 1.0) return upper_gamma_cf(a, x);
    // a <= 0, x < 1: step down from a + n in [0, 1).
    const int n = static_cast<int>(std::ceil(-a));
    const double top = a + n;
    double g = 0.0;
    if (top == 0.0) {
        g = -std::expint(-x);
    } else {
        g = upper_gamma_series(top, x);
    }
    for (int j = n - 1; j >= 0; --j) {
        const double b = a + j;
        g = (g - std::exp(b * std::log(x) - x)) / b;
    }
    return g;
}

double exp_moment_tail(double a, double c) {
    return std::exp((-a - 1.0) * std::log(c)) * upper_gamma(a + 1.0, c);
}

double gaussian_moment_tail(int j, double K, double a) {
    const double e = std::exp(-K * a * a);
    const double j0 = 0.5 * std::sqrt(M_PI / K) * std::erfc(a * std::sqrt(K));
    switch (j) {
        case 0:
            return j0;
        case 1:
            return e / (2.0 * K);
        case 2:
            return a * e / (2.0 * K) + j0 / (2.0 * K);
        case 3:
            return (K * a * a + 1.0) * e / (2.0 * K * K);
        default:
            throw std::invalid_argument("gaussian_moment_tail: j must be in 0..3");
    }
}

double lattice_tail_bound(double K, double R, double d, int m, double covering_radius,
                          double covolume) {
    const double a = R - 2.0 * covering_radius - d;
    if (a < 0.0 || (m > 0 && a * a < m / (2.0 * K))) {
        return std::numeric_limits<double>::infinity();
    }
    const double c = d + covering_radius;
    return 2.0 * M_PI / covolume *
           (gaussian_moment_tail(m + 1, K, a) + c * gaussian_moment_tail(m, K, a));
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ (index * 0xd1b54a32d192ed03ULL + 1));
}

Eigen2 eigen(Sym2 a) {
    const double m = 0.5 * (a.xx + a.yy);
    const double h = 0.5 * (a.xx - a.yy);
    const double r = std::hypot(h, a.xy);
    Eigen2 out;
    out.lambda1 = m - r;
    out.lambda2 = m + r;
    const double d = det(a);
    if (std::fabs(out.lambda2) >= std::fabs(out.lambda1) && out.lambda2 != 0.0) {
        out.lambda1 = d / out.lambda2;
    } else if (out.lambda1 != 0.0) {
        out.lambda2 = d / out.lambda1;
    }
    const double theta = 0.5 * std::atan2(a.xy, h);
    out.v2 = {std::cos(theta), std::sin(theta)};
    out.v1 = {-out.v2.y, out.v2.x};
    return out;
}

}  // namespace hexopt
