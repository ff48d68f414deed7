// Copyright 2026 The dicore Authors
// SPDX-License-Identifier: Apache-2.0

// Deterministic random streams. Replica j of an experiment always draws from
// make_stream(seed, ..., j), so results never depend on thread count or
// scheduling. The helpers below avoid the implementation-defined std::
// distributions, so a given stream produces the same values with any
// standard library.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <utility>

namespace dicore {

using Rng = std::mt19937_64;

// Independent stream keyed by the master seed and any number of labels.
Rng make_stream(std::uint64_t master_seed, std::initializer_list<std::uint64_t> labels = {});

// Uniform integer in [0, bound); bound > 0.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  // Lemire's nearly-divisionless rejection.
  using u128 = unsigned __int128;
  u128 product = static_cast<u128>(rng()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      product = static_cast<u128>(rng()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

template <typename T>
void shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[uniform_below(rng, i)]);
  }
}

}  // namespace dicore
