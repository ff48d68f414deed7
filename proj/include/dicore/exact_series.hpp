// Copyright 2026 The dicore Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace dicore {

// Power series with exact rational coefficients, truncated at a fixed degree.
// Stored as integer numerators over one common denominator kept in lowest
// terms, so products never need per-coefficient gcds.
class ExactSeries {
 public:
  // The zero series with coefficients for degrees 0..max_degree.
  explicit ExactSeries(std::size_t max_degree);

  // f_k(x) = sum_{j >= k} x^j / j!, truncated.
  static ExactSeries tail_exponential(int k, std::size_t max_degree);

  // f_k(x) / x^k = sum_{j >= 0} x^j / (j + k)!, truncated.
  static ExactSeries shifted_tail_exponential(int k, std::size_t max_degree);

  std::size_t max_degree() const { return num_.size() - 1; }
  mpq_class coefficient(std::size_t j) const;
  void set_coefficient(std::size_t j, const mpq_class& value);

  // Lowest degree with a nonzero coefficient, or max_degree() + 1 if zero.
  std::size_t valuation() const;

  // Product truncated at min(max_degree(), rhs.max_degree()).
  ExactSeries operator*(const ExactSeries& rhs) const;

  // this^exponent by binary powering; this^0 is the constant 1.
  ExactSeries pow(unsigned long exponent) const;

  // Only the degree-n coefficient of (*this) * rhs.
  mpq_class product_coefficient(const ExactSeries& rhs, std::size_t n) const;

 private:
  void normalize();

  std::vector<mpz_class> num_;
  mpz_class den_ = 1;
};

mpz_class factorial(unsigned long n);
mpz_class binomial(unsigned long n, unsigned long k);

// Natural logarithms of exact values; -inf for zero.
double log_of(const mpz_class& value);
double log_of(const mpq_class& value);

}  // namespace dicore
