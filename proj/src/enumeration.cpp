// Copyright 2026 The dicore Authors
// SPDX-License-Identifier: Apache-2.0

#include "dicore/enumeration.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "dicore/error.hpp"
#include "dicore/exact_series.hpp"
#include "dicore/graph_analysis.hpp"
#include "dicore/simd/kernels.hpp"
#include "dicore/truncated_poisson.hpp"

namespace dicore {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// [x^n] base^exponent, with the last product reduced to a single coefficient.
mpq_class power_coefficient(const ExactSeries& base_in, unsigned long exponent, std::size_t n) {
  if (exponent == 0) return n == 0 ? mpq_class(1) : mpq_class(0);
  ExactSeries base = base_in;
  std::optional<ExactSeries> acc;
  while (true) {
    if (exponent & 1UL) {
      if ((exponent >> 1) == 0) {
        return acc ? acc->product_coefficient(base, n) : base.coefficient(n);
      }
      acc = acc ? *acc * base : base;
    }
    exponent >>= 1;
    base = base * base;
  }
}

mpz_class require_integer(const mpq_class& q, const char* what) {
  if (q.get_den() != 1) {
    throw std::logic_error(std::string(what) + ": exact count is not an integer");
  }
  return q.get_num();
}

double log_factorial(std::size_t n) { return std::lgamma(static_cast<double>(n) + 1.0); }

}  // namespace

bool SplitParams::feasible() const {
  if (nu < 0 || nu > n) return false;
  const auto k1u = static_cast<std::size_t>(std::max(k1, 0));
  const auto k2u = static_cast<std::size_t>(std::max(k2, 0));
  const auto a = static_cast<std::size_t>(nu);
  const auto b = static_cast<std::size_t>(n - nu);
  return mu1 >= k1u * a && mu1 + mu12 >= k2u * a && mu12 + mu2 >= k1u * b && mu2 >= k2u * b;
}

mpq_class coeff_tail_power(std::size_t a, int k, std::size_t b) {
  const auto kk = static_cast<std::size_t>(std::max(k, 0));
  if (b == 0) return a == 0 ? mpq_class(1) : mpq_class(0);
  if (a < kk * b) return 0;
  // f_k^b = x^{kb} (f_k / x^k)^b, so only degrees up to a - kb are needed.
  const std::size_t d = a - kk * b;
  return power_coefficient(ExactSeries::shifted_tail_exponential(static_cast<int>(kk), d), b, d);
}

mpz_class sequence_count(int n, std::size_t m, int k1, int k2) {
  if (n < 1) throw PreconditionError("sequence_count: need at least one vertex");
  const auto nb = static_cast<std::size_t>(n);
  const mpq_class in_coeff = coeff_tail_power(m, k1, nb);
  const mpq_class out_coeff =
      std::max(k1, 0) == std::max(k2, 0) ? in_coeff : coeff_tail_power(m, k2, nb);
  const mpz_class mf = factorial(m);
  return require_integer(mpq_class(mf * mf) * in_coeff * out_coeff, "sequence_count");
}

mpz_class split_sequence_count(const SplitParams& p) {
  if (p.n < 1 || p.nu < 0 || p.nu > p.n) {
    throw PreconditionError("split_sequence_count: need 0 <= nu <= N and N >= 1");
  }
  if (!p.feasible()) return 0;
  const auto a = static_cast<std::size_t>(p.nu);
  const auto b = static_cast<std::size_t>(p.n - p.nu);
  const mpq_class coeffs = coeff_tail_power(p.mu1, p.k1, a) * coeff_tail_power(p.mu2, p.k2, b) *
                           coeff_tail_power(p.mu1 + p.mu12, p.k2, a) *
                           coeff_tail_power(p.mu12 + p.mu2, p.k1, b);
  const mpz_class prefactor = factorial(p.m()) * binomial(p.n, a) *
                              factorial(p.mu1 + p.mu12) * factorial(p.mu12 + p.mu2) /
                              factorial(p.mu12);
  return require_integer(mpq_class(prefactor) * coeffs, "split_sequence_count");
}

double saddle_bound_log_ratio(std::size_t a, int k, std::size_t b, double x) {
  if (!(x > 0.0)) throw DomainError("saddle_bound_check: x must be positive");
  const mpq_class c = coeff_tail_power(a, k, b);
  if (c == 0) return std::numeric_limits<double>::infinity();
  const double log_bound = static_cast<double>(b) * log_tail_series(x, k) -
                           static_cast<double>(a) * std::log(x);
  return log_bound - log_of(c);
}

bool saddle_bound_check(std::size_t a, int k, std::size_t b, double x) {
  // Both sides are evaluated in floating point; allow for that rounding.
  const double slack = 64 * kEps * (1.0 + static_cast<double>(a + b));
  return saddle_bound_log_ratio(a, k, b, x) >= -slack;
}

LogValue log_coeff_tail_power(std::size_t a, int k, std::size_t b) {
  const int kk = std::max(k, 0);
  const auto kku = static_cast<std::size_t>(kk);
  const double neg_inf = -std::numeric_limits<double>::infinity();
  if (b == 0) return {a == 0 ? 0.0 : neg_inf, 0.0};
  if (a < kku * b) return {neg_inf, 0.0};
  const std::size_t d = a - kku * b;
  const double bd = static_cast<double>(b);
  if (d == 0) {
    const double v = -bd * std::lgamma(kk + 1.0);
    return {v, 4 * kEps * (1.0 + std::fabs(v))};
  }
  // Exponential tilt at the saddle point s: f_k(s x)^b / f_k(s)^b is the
  // generating function of a sum of b i.i.d. Poi(s|k) variables, whose
  // point mass at a is computed by truncated convolution powers.
  const double s = solve_z(static_cast<double>(a) / bd, kk);
  std::vector<double> base(d + 1);
  base[0] = kk == 0 ? std::exp(-s) : floor_mass(s, kk);
  for (std::size_t j = 1; j <= d; ++j) base[j] = base[j - 1] * s / static_cast<double>(kku + j);

  std::vector<double> acc(d + 1, 0.0);
  acc[0] = 1.0;
  std::vector<double> scratch(d + 1);
  std::size_t convolutions = 0;
  for (std::size_t e = b; e > 0; e >>= 1) {
    if (e & 1) {
      simd::convolve_truncated(acc, base, scratch);
      acc.swap(scratch);
      ++convolutions;
    }
    if (e > 1) {
      simd::convolve_truncated(base, base, scratch);
      base.swap(scratch);
      ++convolutions;
    }
  }
  const double log_f = log_tail_series(s, kk);
  const double log_s = std::log(s);
  const double value = bd * log_f - static_cast<double>(a) * log_s + std::log(acc[d]);
  const double rel = kEps * (static_cast<double>(convolutions) * static_cast<double>(d + 2) +
                             8.0 * (bd * std::fabs(log_f) + static_cast<double>(a) * std::fabs(log_s)) +
                             16.0);
  return {value, rel};
}

LogValue log_sequence_count(int n, std::size_t m, int k1, int k2) {
  if (n < 1) throw PreconditionError("log_sequence_count: need at least one vertex");
  const auto nb = static_cast<std::size_t>(n);
  const LogValue in = log_coeff_tail_power(m, k1, nb);
  const LogValue out = std::max(k1, 0) == std::max(k2, 0) ? in : log_coeff_tail_power(m, k2, nb);
  const double lf = log_factorial(m);
  return {2.0 * lf + in.log + out.log, in.rel_error + out.rel_error + 8 * kEps * (1.0 + lf)};
}

LogValue log_split_sequence_count(const SplitParams& p) {
  if (p.n < 1 || p.nu < 0 || p.nu > p.n) {
    throw PreconditionError("log_split_sequence_count: need 0 <= nu <= N and N >= 1");
  }
  if (!p.feasible()) return {-std::numeric_limits<double>::infinity(), 0.0};
  const auto a = static_cast<std::size_t>(p.nu);
  const auto b = static_cast<std::size_t>(p.n - p.nu);
  const LogValue parts[] = {log_coeff_tail_power(p.mu1, p.k1, a),
                            log_coeff_tail_power(p.mu2, p.k2, b),
                            log_coeff_tail_power(p.mu1 + p.mu12, p.k2, a),
                            log_coeff_tail_power(p.mu12 + p.mu2, p.k1, b)};
  const double prefactor = log_factorial(p.m()) + log_factorial(p.n) - log_factorial(a) -
                           log_factorial(b) + log_factorial(p.mu1 + p.mu12) +
                           log_factorial(p.mu12 + p.mu2) - log_factorial(p.mu12);
  LogValue out{prefactor, 16 * kEps * (1.0 + std::fabs(prefactor))};
  for (const auto& part : parts) {
    out.log += part.log;
    out.rel_error += part.rel_error;
  }
  return out;
}

std::uint64_t brute_force_sequence_count(int n, std::size_t m, int k1, int k2,
                                         const SequencePredicate& pred) {
  if (n < 1) throw PreconditionError("brute_force_sequence_count: need at least one vertex");
  const double size = std::pow(static_cast<double>(n), 2.0 * static_cast<double>(m));
  if (size > kSequenceEnumerationLimit) {
    std::ostringstream os;
    os << "brute_force_sequence_count: refusing to enumerate " << size
       << " sequences (limit " << kSequenceEnumerationLimit << ")";
    throw GuardError(os.str(), size);
  }
  std::vector<Vertex> slots(2 * m, 0);
  std::vector<int> in(n);
  std::vector<int> out(n);
  std::uint64_t count = 0;
  while (true) {
    std::fill(in.begin(), in.end(), 0);
    std::fill(out.begin(), out.end(), 0);
    for (std::size_t r = 0; r < m; ++r) {
      ++out[slots[2 * r]];
      ++in[slots[2 * r + 1]];
    }
    bool admissible = true;
    for (int v = 0; v < n && admissible; ++v) admissible = in[v] >= k1 && out[v] >= k2;
    if (admissible && (!pred || pred(slots, n))) ++count;
    std::size_t pos = 0;
    while (pos < slots.size() && ++slots[pos] == n) slots[pos++] = 0;
    if (pos == slots.size()) break;
  }
  return count;
}

namespace predicates {

bool induces_simple(std::span<const Vertex> slots, int /*n*/) {
  const std::size_t m = slots.size() / 2;
  for (std::size_t r = 0; r < m; ++r) {
    if (slots[2 * r] == slots[2 * r + 1]) return false;
    for (std::size_t q = 0; q < r; ++q) {
      if (slots[2 * q] == slots[2 * r] && slots[2 * q + 1] == slots[2 * r + 1]) return false;
    }
  }
  return true;
}

SequencePredicate has_source_set_of_size(int nu) {
  return [nu](std::span<const Vertex> slots, int n) {
    if (n > 30) throw PreconditionError("has_source_set_of_size: at most 30 vertices");
    const std::size_t m = slots.size() / 2;
    for (std::uint32_t set = 0; set < (1U << n); ++set) {
      if (std::popcount(set) != nu) continue;
      bool source = true;
      for (std::size_t r = 0; r < m && source; ++r) {
        const bool tail_in = (set >> slots[2 * r]) & 1U;
        const bool head_in = (set >> slots[2 * r + 1]) & 1U;
        source = !(head_in && !tail_in);
      }
      if (source) return true;
    }
    return false;
  };
}

}  // namespace predicates

DicoreCensus brute_force_simple_dicores(int n, std::size_t m, int k1, int k2) {
  if (n < 1) throw PreconditionError("brute_force_simple_dicores: need at least one vertex");
  const std::size_t pairs = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1);
  DicoreCensus census;
  if (m > pairs) return census;
  const double size = std::exp(std::lgamma(pairs + 1.0) - std::lgamma(m + 1.0) -
                               std::lgamma(static_cast<double>(pairs - m) + 1.0));
  if (size > kSubsetEnumerationLimit * (1 + 1e-9)) {
    std::ostringstream os;
    os << "brute_force_simple_dicores: refusing to enumerate " << size << " edge sets (limit "
       << kSubsetEnumerationLimit << ")";
    throw GuardError(os.str(), size);
  }
  std::vector<Edge> all;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      if (u != v) all.push_back({u, v});
    }
  }
  std::vector<std::size_t> pick(m);
  for (std::size_t i = 0; i < m; ++i) pick[i] = i;
  std::vector<int> in(n);
  std::vector<int> out(n);
  std::vector<Edge> edges(m);
  while (true) {
    std::fill(in.begin(), in.end(), 0);
    std::fill(out.begin(), out.end(), 0);
    for (std::size_t i = 0; i < m; ++i) {
      edges[i] = all[pick[i]];
      ++out[edges[i].tail];
      ++in[edges[i].head];
    }
    bool dicore = true;
    for (int v = 0; v < n && dicore; ++v) dicore = in[v] >= k1 && out[v] >= k2;
    if (dicore) {
      ++census.total;
      if (is_strongly_connected(LabeledMultiDigraph(n, edges))) ++census.strongly_connected;
    }
    // next m-combination of [pairs]
    std::size_t i = m;
    while (i > 0 && pick[i - 1] == pairs - m + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < m; ++j) pick[j] = pick[j - 1] + 1;
  }
  return census;
}

}  // namespace dicore
