// Copyright 2026 The dicore Authors
// SPDX-License-Identifier: Apache-2.0

// Compiled with -mavx2 -mfma; only reached when the CPU reports both.

#include <immintrin.h>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "dicore/simd/kernels.hpp"

namespace dicore::simd::avx2 {
namespace {

double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot(const double* x, const double* y, std::size_t len) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= len; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  }
  double s = horizontal_sum(_mm256_add_pd(acc0, acc1));
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
  // b reversed turns every output coefficient into a contiguous dot product.
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
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vc = _mm256_set1_pd(c);
  __m256d best = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  __m256i best_idx = _mm256_setzero_si256();
  __m256i idx = _mm256_setr_epi64x(0, 1, 2, 3);
  const __m256i step = _mm256_set1_epi64x(4);
  std::size_t j = 0;
  for (; j + 4 <= len; j += 4) {
    const __m256d v = _mm256_max_pd(_mm256_mul_pd(va, _mm256_loadu_pd(b.data() + j)),
                                    _mm256_mul_pd(vc, _mm256_loadu_pd(d.data() + j)));
    const __m256d lt = _mm256_cmp_pd(v, best, _CMP_LT_OQ);
    best = _mm256_blendv_pd(best, v, lt);
    best_idx = _mm256_castpd_si256(_mm256_blendv_pd(
        _mm256_castsi256_pd(best_idx), _mm256_castsi256_pd(idx), lt));
    idx = _mm256_add_epi64(idx, step);
  }
  alignas(32) double lane_val[4];
  alignas(32) std::int64_t lane_idx[4];
  _mm256_store_pd(lane_val, best);
  _mm256_store_si256(reinterpret_cast<__m256i*>(lane_idx), best_idx);
  MinimaxHit hit{std::numeric_limits<double>::infinity(), 0};
  for (int l = 0; l < 4; ++l) {
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

}  // namespace dicore::simd::avx2
