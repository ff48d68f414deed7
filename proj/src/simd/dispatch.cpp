// Copyright 2026 The dicore Authors
// SPDX-License-Identifier: Apache-2.0

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dicore/simd/kernels.hpp"

namespace dicore::simd {
namespace {

bool cpu_has_avx2() {
#if defined(DICORE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect() {
  if (const char* env = std::getenv("DICORE_SIMD")) {
    const std::string_view want(env);
    if (want == "scalar") return Isa::kScalar;
    if (want == "avx2" && isa_available(Isa::kAvx2)) return Isa::kAvx2;
    if (want == "neon" && isa_available(Isa::kNeon)) return Isa::kNeon;
  }
  if (isa_available(Isa::kAvx2)) return Isa::kAvx2;
  if (isa_available(Isa::kNeon)) return Isa::kNeon;
  return Isa::kScalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
      return cpu_has_avx2();
    case Isa::kNeon:
#if defined(DICORE_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
    case Isa::kNeon:
      return "neon";
  }
  return "unknown";
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw std::invalid_argument(std::string("instruction set not available: ") + isa_name(isa));
  }
  current().store(isa, std::memory_order_relaxed);
}

void convolve_truncated(std::span<const double> a, std::span<const double> b,
                        std::span<double> out) {
  switch (active_isa()) {
#if defined(DICORE_HAVE_AVX2)
    case Isa::kAvx2:
      return avx2::convolve_truncated(a, b, out);
#endif
#if defined(DICORE_HAVE_NEON)
    case Isa::kNeon:
      return neon::convolve_truncated(a, b, out);
#endif
    default:
      return scalar::convolve_truncated(a, b, out);
  }
}

MinimaxHit minimax_row(double a, double c, std::span<const double> b,
                       std::span<const double> d) {
  switch (active_isa()) {
#if defined(DICORE_HAVE_AVX2)
    case Isa::kAvx2:
      return avx2::minimax_row(a, c, b, d);
#endif
#if defined(DICORE_HAVE_NEON)
    case Isa::kNeon:
      return neon::minimax_row(a, c, b, d);
#endif
    default:
      return scalar::minimax_row(a, c, b, d);
  }
}

}  // namespace dicore::simd
