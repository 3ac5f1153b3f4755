#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace osn {

/// Seeded random source with hand-rolled variate transforms.
/// std::mt19937_64 output is fully specified by the standard, but the
/// std::*_distribution adaptors are not; rolling the transforms here keeps
/// "same seed, same bytes" true across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Box-Muller transform; consumes two engine draws per variate.
    double normal(double mean, double stddev) {
        const double u1 = 1.0 - uniform01(); // (0, 1], keeps log finite
        const double u2 = uniform01();
        const double z = std::sqrt(-2.0 * std::log(u1)) *
                         std::cos(2.0 * 3.14159265358979323846 * u2);
        return mean + stddev * z;
    }

    /// Exponential with the given rate (events per unit time).
    double exponential(double rate) {
        return -std::log(1.0 - uniform01()) / rate;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace osn
