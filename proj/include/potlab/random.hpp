#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace potlab {

/// Seeded generator with platform-independent draws. std::mt19937_64 is fully
/// specified by the standard; the distributions below are hand-rolled because
/// the standard ones are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on (0, 1].
    double unit() { return static_cast<double>((engine_() >> 11) + 1) * 0x1p-53; }

    /// Uniform on (lo, hi].
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    /// Uniform integer in [0, n).
    std::size_t below(std::size_t n)
    {
        return static_cast<std::size_t>(engine_() % static_cast<std::uint64_t>(n));
    }

    bool coin() { return (engine_() >> 63) != 0; }

private:
    std::mt19937_64 engine_;
};

} // namespace potlab
