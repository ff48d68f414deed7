// Copyright 2026 The dicore Authors
// SPDX-License-Identifier: Apache-2.0

// Data-parallel inner loops. Every kernel has a scalar reference
// implementation plus vectorized variants; the variant is chosen once at
// runtime from the CPU features (override with DICORE_SIMD=scalar|avx2|neon).

#pragma once

#include <cstddef>
#include <span>

namespace dicore::simd {

enum class Isa { kScalar, kAvx2, kNeon };

struct MinimaxHit {
  double value;
  std::size_t index;
};

// out[n] = sum_i a[i] * b[n - i] for n < out.size(), i.e. the product of two
// power series truncated at out.size() terms.
void convolve_truncated(std::span<const double> a, std::span<const double> b,
                        std::span<double> out);

// min over j of max(a * b[j], c * d[j]); ties resolve to the lowest index.
// b and d must have equal, nonzero length.
MinimaxHit minimax_row(double a, double c, std::span<const double> b,
                       std::span<const double> d);

Isa active_isa();
bool isa_available(Isa isa);
const char* isa_name(Isa isa);

// Pins the dispatch to `isa` (must be available). Intended for tests and
// benchmarks; not synchronized with concurrent kernel calls.
void force_isa(Isa isa);

namespace scalar {
void convolve_truncated(std::span<const double> a, std::span<const double> b,
                        std::span<double> out);
MinimaxHit minimax_row(double a, double c, std::span<const double> b,
                       std::span<const double> d);
}  // namespace scalar

#if defined(DICORE_HAVE_AVX2)
namespace avx2 {
void convolve_truncated(std::span<const double> a, std::span<const double> b,
                        std::span<double> out);
MinimaxHit minimax_row(double a, double c, std::span<const double> b,
                       std::span<const double> d);
}  // namespace avx2
#endif

#if defined(DICORE_HAVE_NEON)
namespace neon {
void convolve_truncated(std::span<const double> a, std::span<const double> b,
                        std::span<double> out);
MinimaxHit minimax_row(double a, double c, std::span<const double> b,
                       std::span<const double> d);
}  // namespace neon
#endif

}  // namespace dicore::simd
