// Copyright 2026 The dicore Authors
// SPDX-License-Identifier: Apache-2.0

#include "dicore/exact_series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dicore {

ExactSeries::ExactSeries(std::size_t max_degree) : num_(max_degree + 1) {
  for (auto& c : num_) c = 0;
}

ExactSeries ExactSeries::tail_exponential(int k, std::size_t max_degree) {
  ExactSeries s(max_degree);
  s.den_ = factorial(max_degree);
  // D!/j! computed downward from j = D.
  mpz_class ratio = 1;
  for (std::size_t j = max_degree + 1; j-- > 0;) {
    if (static_cast<long>(j) >= k) s.num_[j] = ratio;
    ratio *= static_cast<unsigned long>(j == 0 ? 1 : j);
  }
  s.normalize();
  return s;
}

ExactSeries ExactSeries::shifted_tail_exponential(int k, std::size_t max_degree) {
  if (k < 0) {
    // f_k = e^x for k <= 0, so dividing by x^k would not give a power series.
    throw std::invalid_argument("shifted_tail_exponential: cutoff must be nonnegative");
  }
  const auto shift = static_cast<unsigned long>(k);
  ExactSeries s(max_degree);
  s.den_ = factorial(max_degree + shift);
  mpz_class ratio = 1;  // (D+shift)! / (j+shift)!
  for (std::size_t j = max_degree + 1; j-- > 0;) {
    s.num_[j] = ratio;
    ratio *= static_cast<unsigned long>(j + shift == 0 ? 1 : j + shift);
  }
  s.normalize();
  return s;
}

mpq_class ExactSeries::coefficient(std::size_t j) const {
  if (j >= num_.size()) throw std::out_of_range("ExactSeries::coefficient: degree beyond truncation");
  mpq_class q(num_[j], den_);
  q.canonicalize();
  return q;
}

void ExactSeries::set_coefficient(std::size_t j, const mpq_class& value) {
  if (j >= num_.size()) throw std::out_of_range("ExactSeries::set_coefficient: degree beyond truncation");
  mpq_class v(value);
  v.canonicalize();
  mpz_class common;
  mpz_lcm(common.get_mpz_t(), den_.get_mpz_t(), v.get_den_mpz_t());
  if (common != den_) {
    const mpz_class scale = common / den_;
    for (auto& c : num_) c *= scale;
    den_ = common;
  }
  num_[j] = v.get_num() * (den_ / v.get_den());
  normalize();
}

std::size_t ExactSeries::valuation() const {
  for (std::size_t j = 0; j < num_.size(); ++j) {
    if (num_[j] != 0) return j;
  }
  return num_.size();
}

void ExactSeries::normalize() {
  mpz_class g = den_;
  for (const auto& c : num_) {
    if (g == 1) break;
    if (c != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  }
  if (g != 1) {
    for (auto& c : num_) {
      if (c != 0) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    }
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

ExactSeries ExactSeries::operator*(const ExactSeries& rhs) const {
  const std::size_t degree = std::min(max_degree(), rhs.max_degree());
  ExactSeries out(degree);
  const std::size_t va = valuation();
  const std::size_t vb = rhs.valuation();
  for (std::size_t n = va + vb; n <= degree; ++n) {
    mpz_class& acc = out.num_[n];
    for (std::size_t i = va; i + vb <= n; ++i) {
      const auto& x = num_[i];
      const auto& y = rhs.num_[n - i];
      if (x != 0 && y != 0) mpz_addmul(acc.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    }
  }
  out.den_ = den_ * rhs.den_;
  out.normalize();
  return out;
}

mpq_class ExactSeries::product_coefficient(const ExactSeries& rhs, std::size_t n) const {
  if (n > max_degree() || n > rhs.max_degree()) {
    throw std::out_of_range("ExactSeries::product_coefficient: degree beyond truncation");
  }
  mpz_class acc = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    const auto& x = num_[i];
    const auto& y = rhs.num_[n - i];
    if (x != 0 && y != 0) mpz_addmul(acc.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  }
  mpq_class q(acc, den_ * rhs.den_);
  q.canonicalize();
  return q;
}

ExactSeries ExactSeries::pow(unsigned long exponent) const {
  ExactSeries result(max_degree());
  result.num_[0] = 1;
  ExactSeries base = *this;
  while (exponent > 0) {
    if (exponent & 1UL) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

mpz_class factorial(unsigned long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

double log_of(const mpz_class& value) {
  if (value == 0) return -std::numeric_limits<double>::infinity();
  if (value < 0) return std::numeric_limits<double>::quiet_NaN();
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, value.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

double log_of(const mpq_class& value) {
  if (value == 0) return -std::numeric_limits<double>::infinity();
  return log_of(mpz_class(value.get_num())) - log_of(mpz_class(value.get_den()));
}

}  // namespace dicore
