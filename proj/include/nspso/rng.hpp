#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace nspso {

/// Seeded random source. Wraps std::mt19937_64, whose output sequence is
/// pinned by the standard, and applies explicit uniform/gaussian transforms
/// instead of the (implementation-defined) standard distributions, so a seed
/// reproduces the same stream everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform draw from [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform draw from [lo, hi). Returns lo exactly when lo == hi.
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal draw via Box-Muller.
    double gaussian()
    {
        const double u1 = 1.0 - uniform01(); // (0, 1], keeps the log finite
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    double gaussian(double mean, double sd) { return mean + sd * gaussian(); }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

} // namespace nspso
