// Copyright (c) twpad contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace twpad {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Counter-based stream: every (seed, a, b) triple names an independent
/// sequence, so a draw never depends on how many draws other streams made.
class Stream {
  public:
    constexpr Stream(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0) noexcept
        : state_(mix64(mix64(mix64(seed) ^ a) ^ (b * 0xd1342543de82ef95ULL))) {}

    constexpr std::uint64_t next() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    constexpr double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

} // namespace twpad
