// Counter-based uniform draws for Monte Carlo sampling.
//
// Each draw is splitmix64 applied to (seed, counter): output_k =
// finalize(seed + (k+1) * 0x9E3779B97F4A7C15) with the standard two-round
// xor-shift-multiply finalizer. Draws are pure functions of (seed, k), so any
// evaluation order (or thread partition) reproduces the same sample set
// bit for bit.
#pragma once

#include <cstdint>

namespace lvc {

inline std::uint64_t counter_rng(std::uint64_t seed, std::uint64_t k) {
    std::uint64_t z = seed + (k + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Maps 64 random bits to the open interval (0,1): 53-bit mantissa offset by
// half an ulp so 0 and 1 are unreachable.
inline double uniform01(std::uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace lvc
