/**
 * Copyright 2026, the dualopt authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */

#pragma once

#include <cstdint>

namespace dualopt {

/// Identifier written into shot-file headers; bump on any change to the
/// generator below so old datasets stay reproducible.
inline constexpr const char* kGeneratorId = "splitmix64-ctr-v1";

/// Counter-based deterministic generator: the SplitMix64 finalizer applied
/// to a seed-derived base plus a counter stride. Stateless and randomly
/// addressable, so shot sampling can be partitioned by counter range and
/// merged byte-identically.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed) : base_(mix(seed ^ 0x6a09e667f3bcc909ULL)) {}

    std::uint64_t bits(std::uint64_t counter) const {
        return mix(base_ + (counter + 1) * 0x9e3779b97f4a7c15ULL);
    }

    /// Uniform double in [0, 1) using the top 53 bits.
    double uniform(std::uint64_t counter) const {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n) by scaling; bias is below 2^-53 * n.
    std::uint64_t below(std::uint64_t counter, std::uint64_t n) const {
        auto v = static_cast<std::uint64_t>(uniform(counter) * static_cast<double>(n));
        return v >= n ? n - 1 : v;
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t base_;
};

}  // namespace dualopt
