// Copyright 2026 The expiring authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>

namespace expiring {

using Engine = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of substream `index` under `master_seed`. Streams are independent of
/// execution order, so trials can run in any order or on any thread.
constexpr std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t index) noexcept
{
    return mix64(mix64(master_seed) ^ mix64(index + 0x5851f42d4c957f2dULL));
}

inline Engine substream(std::uint64_t master_seed, std::uint64_t index)
{
    return Engine{substream_seed(master_seed, index)};
}

}  // namespace expiring
