#pragma once

#include <cmath>
#include <cstdint>

namespace bttn {
namespace rng {

// Counter-based per-trial random stream.  The state for trial i is a pure
// function of (seed, i), so any partitioning of trials across threads
// produces the same draws.  Core generator is splitmix64; everything is
// inline because this sits on the Monte Carlo hot path.
class TrialStream {
public:
    TrialStream(std::uint64_t seed, std::uint64_t trial)
        : state_(mix(seed + 0x9E3779B97F4A7C15ULL * (trial + 1))) {}

    std::uint64_t next_u64()
    {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    // uniform in [0, 1), 53-bit resolution
    double next_unit()
    {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Rayleigh amplitude h with E[h^2] = mean_square
    double rayleigh(double mean_square)
    {
        // 1 - u is in (0, 1], so the log is finite
        return std::sqrt(-mean_square * std::log1p(-next_unit()));
    }

    // uniform phase in [0, 2*pi)
    double phase()
    {
        return 6.2831853071795864769 * next_unit();
    }

private:
    static std::uint64_t mix(std::uint64_t z)
    {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

} // namespace rng
} // namespace bttn
