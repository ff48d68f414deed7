// Copyright 2026 The dicore Authors
// SPDX-License-Identifier: Apache-2.0

#include <arm_neon.h>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "dicore/simd/kernels.hpp"

namespace dicore::simd::neon {
namespace {

double dot(const double* x, const double* y, std::size_t len) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < len; ++i) s += x[i] * y[i];
  return s;
}

}  // namespace

void convolve_truncated(std::span<const double> a, std::span<const double> b,
                        std::span<double> out) {
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  if (na == 0 || nb == 0) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  std::vector<double> rev(b.rbegin(), b.rend());
  for (std::size_t n = 0; n < out.size(); ++n) {
    const std::size_t lo = n >= nb ? n - nb + 1 : 0;
    const std::size_t hi = std::min(n, na - 1);
    if (lo > hi) {
      out[n] = 0.0;
      continue;
    }
    out[n] = dot(a.data() + lo, rev.data() + (nb - 1 - n + lo), hi - lo + 1);
  }
}

MinimaxHit minimax_row(double a, double c, std::span<const double> b,
                       std::span<const double> d) {
  const std::size_t len = b.size();
  const float64x2_t va = vdupq_n_f64(a);
  const float64x2_t vc = vdupq_n_f64(c);
  float64x2_t best = vdupq_n_f64(std::numeric_limits<double>::infinity());
  uint64x2_t best_idx = vdupq_n_u64(0);
  const std::uint64_t init[2] = {0, 1};
  uint64x2_t idx = vld1q_u64(init);
  const uint64x2_t step = vdupq_n_u64(2);
  std::size_t j = 0;
  for (; j + 2 <= len; j += 2) {
    const float64x2_t v = vmaxq_f64(vmulq_f64(va, vld1q_f64(b.data() + j)),
                                    vmulq_f64(vc, vld1q_f64(d.data() + j)));
    const uint64x2_t lt = vcltq_f64(v, best);
    best = vbslq_f64(lt, v, best);
    best_idx = vbslq_u64(lt, idx, best_idx);
    idx = vaddq_u64(idx, step);
  }
  double lane_val[2];
  std::uint64_t lane_idx[2];
  vst1q_f64(lane_val, best);
  vst1q_u64(lane_idx, best_idx);
  MinimaxHit hit{std::numeric_limits<double>::infinity(), 0};
  for (int l = 0; l < 2; ++l) {
    const auto li = static_cast<std::size_t>(lane_idx[l]);
    if (lane_val[l] < hit.value || (lane_val[l] == hit.value && li < hit.index)) {
      hit = {lane_val[l], li};
    }
  }
  for (; j < len; ++j) {
    const double v = std::max(a * b[j], c * d[j]);
    if (v < hit.value) hit = {v, j};
  }
  return hit;
}

}  // namespace dicore::simd::neon
