#pragma once

#include <cmath>
#include <cstdint>

namespace hexopt {

// Neumaier compensated accumulator; result independent of term count to O(eps).
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::fabs(sum_) >= std::fabs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    CompensatedSum& operator+=(double v) {
        add(v);
        return *this;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Upper incomplete gamma Γ(a, x) for real a and x > 0.
double upper_gamma(double a, double x);

// ∫_1^∞ t^a e^{-c t} dt = c^{-a-1} Γ(a+1, c), c > 0.
double exp_moment_tail(double a, double c);

// ∫_a^∞ t^j e^{-K t²} dt for j in {0,1,2,3}, a >= 0.
double gaussian_moment_tail(int j, double K, double a);

// Bound on Σ_{|x|>R} g(|x| - d) over a planar lattice with the given covering radius
// and covolume, where g(t) = t^m e^{-K t²}, m in {0, 2}. Infinite when g is not yet
// decreasing on the covered range.
double lattice_tail_bound(double K, double R, double d, int m, double covering_radius,
                          double covolume);

// Deterministic uniform double in [0, 1) from a 64-bit word.
inline double unit_interval(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Stream seed for (seed, index) pairs.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace hexopt
