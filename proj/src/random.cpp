// Copyright 2026 The dicore Authors
// SPDX-License-Identifier: Apache-2.0

#include "dicore/random.hpp"

#include <vector>

namespace dicore {

Rng make_stream(std::uint64_t master_seed, std::initializer_list<std::uint64_t> labels) {
  std::vector<std::uint32_t> words;
  words.reserve(2 + 2 * labels.size());
  const auto push = [&words](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(master_seed);
  for (const auto label : labels) push(label);
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

}  // namespace dicore
