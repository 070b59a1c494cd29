#pragma once

#include <cstdint>
#include <random>

#include "hexopt/numeric.hpp"
#include "hexopt/vec2.hpp"

namespace hexopt {

// Seeded stream; (seed, stream) pairs give independent reproducible sequences.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : gen_(stream_seed(seed, stream)) {}

    double uniform() { return unit_interval(gen_()); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform point in the closed disk of the given radius.
    Vec2 in_disk(double radius) {
        const double r = radius * std::sqrt(uniform());
        const double t = 2.0 * M_PI * uniform();
        return {r * std::cos(t), r * std::sin(t)};
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace hexopt
