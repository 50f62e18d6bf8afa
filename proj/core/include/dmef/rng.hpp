#pragma once

#include <cmath>
#include <cstdint>

namespace dmef {

// Counter-based generator: every draw is a pure function of (seed, channel,
// counter), so signal realizations are reproducible bit-for-bit regardless of
// evaluation order or threading.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t channel, std::uint64_t k) {
    return splitmix64(splitmix64(splitmix64(seed) ^ channel) ^ k);
}

/// Uniform draw in [0, 1) from 53 high bits.
inline double counter_uniform01(std::uint64_t seed, std::uint64_t channel, std::uint64_t k) {
    return static_cast<double>(counter_bits(seed, channel, k) >> 11) * 0x1.0p-53;
}

/// Uniform draw in [lo, hi).
inline double counter_uniform(std::uint64_t seed, std::uint64_t channel, std::uint64_t k,
                              double lo, double hi) {
    return lo + (hi - lo) * counter_uniform01(seed, channel, k);
}

/// Standard normal draw via Box-Muller on two counter uniforms.
inline double counter_normal(std::uint64_t seed, std::uint64_t channel, std::uint64_t k) {
    double u1 = counter_uniform01(seed, channel, 2 * k);
    double u2 = counter_uniform01(seed, channel, 2 * k + 1);
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

}  // namespace dmef
