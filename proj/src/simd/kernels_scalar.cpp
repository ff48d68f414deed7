// Copyright 2026 The dicore Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <limits>

#include "dicore/simd/kernels.hpp"

namespace dicore::simd::scalar {

void convolve_truncated(std::span<const double> a, std::span<const double> b,
                        std::span<double> out) {
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  for (std::size_t n = 0; n < out.size(); ++n) {
    double acc = 0.0;
    if (na > 0 && nb > 0) {
      const std::size_t lo = n >= nb ? n - nb + 1 : 0;
      const std::size_t hi = std::min(n, na - 1);
      for (std::size_t i = lo; i <= hi && lo <= hi; ++i) acc += a[i] * b[n - i];
    }
    out[n] = acc;
  }
}

MinimaxHit minimax_row(double a, double c, std::span<const double> b,
                       std::span<const double> d) {
  MinimaxHit hit{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t j = 0; j < b.size(); ++j) {
    const double v = std::max(a * b[j], c * d[j]);
    if (v < hit.value) hit = {v, j};
  }
  return hit;
}

}  // namespace dicore::simd::scalar
