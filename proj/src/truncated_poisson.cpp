// Copyright 2026 The dicore Authors
// SPDX-License-Identifier: Apache-2.0

#include "dicore/truncated_poisson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dicore/error.hpp"

namespace dicore {
namespace {

// Below this offset from the cutoff the tail is summed term by term; above it
// e^z dominates the head sum and subtraction loses nothing.
constexpr double kDirectSumWindow = 30.0;

void require_positive(double z, const char* fn) {
  if (!(z > 0.0) || !std::isfinite(z)) {
    std::ostringstream os;
    os << fn << ": rate must be positive and finite, got " << z;
    throw DomainError(os.str());
  }
}

bool direct_regime(double z, int k) { return z <= k + kDirectSumWindow; }

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// sum_{j > k} z^j/j! divided by z^k/k!, i.e. z/(k+1) + z^2/((k+1)(k+2)) + ...
double ratio_above_floor(double z, int k) {
  CompensatedSum s;
  double term = 1.0;
  for (int j = k + 1;; ++j) {
    term *= z / j;
    s.add(term);
    if (term < 1e-18 * (1.0 + s.value())) break;
  }
  return s.value();
}

double log_floor_term(double z, int k) {
  return k * std::log(z) - std::lgamma(static_cast<double>(k) + 1.0);
}

// e^{-z} sum_{j<k} z^j/j! = P(Poisson(z) < k), summed in ascending order.
double head_prob(double z, int k) {
  CompensatedSum s;
  for (int j = 0; j < k; ++j) s.add(std::exp(log_floor_term(z, j) - z));
  return s.value();
}

// r = P(X = k | X >= k) and 1 - r, each without cancellation.
struct FloorSplit {
  double at_floor;
  double above_floor;
};

FloorSplit floor_split(double z, int k) {
  if (direct_regime(z, k)) {
    const double above = ratio_above_floor(z, k);
    return {1.0 / (1.0 + above), above / (1.0 + above)};
  }
  const double r = std::exp(log_floor_term(z, k) - log_tail_series(z, k));
  return {r, 1.0 - r};
}

}  // namespace

double tail_series(double z, int k) {
  require_positive(z, "tail_series");
  if (k <= 0) return std::exp(z);
  if (direct_regime(z, k)) {
    double floor_term = 1.0;
    for (int j = 1; j <= k; ++j) floor_term *= z / j;
    if (floor_term > 0.0) return floor_term * (1.0 + ratio_above_floor(z, k));
    return std::exp(log_tail_series(z, k));
  }
  return std::exp(z) * (1.0 - head_prob(z, k));
}

double log_tail_series(double z, int k) {
  require_positive(z, "log_tail_series");
  if (k <= 0) return z;
  if (direct_regime(z, k)) return log_floor_term(z, k) + std::log1p(ratio_above_floor(z, k));
  return z + std::log1p(-head_prob(z, k));
}

double tail_prob(double z, int k) {
  require_positive(z, "tail_prob");
  if (k <= 0) return 1.0;
  if (direct_regime(z, k)) return std::exp(log_tail_series(z, k) - z);
  return 1.0 - head_prob(z, k);
}

double floor_mass(double z, int k) {
  require_positive(z, "floor_mass");
  if (k < 0) return 0.0;
  return floor_split(z, k).at_floor;
}

double cond_mean(double z, int k) {
  require_positive(z, "cond_mean");
  if (k <= 0) return z;
  // z f_{k-1}/f_k = z (f_k + z^{k-1}/(k-1)!)/f_k = z + k r.
  return z + k * floor_split(z, k).at_floor;
}

double cond_second_factorial_moment(double z, int k) {
  require_positive(z, "cond_second_factorial_moment");
  if (k <= 0) return z * z;
  const double r = floor_split(z, k).at_floor;
  const double kd = k;
  return z * z + (z * kd + kd * (kd - 1.0)) * r;
}

double cond_variance(double z, int k) {
  require_positive(z, "cond_variance");
  if (k <= 0) return z;
  const auto [r, one_minus_r] = floor_split(z, k);
  const double kd = k;
  return z * (1.0 - kd * r) + kd * kd * r * one_minus_r;
}

double solve_z(double mean_target, int k) {
  if (!std::isfinite(mean_target)) {
    throw PreconditionError("solve_z: mean target must be finite");
  }
  if (k <= 0) {
    if (!(mean_target > 0.0)) {
      throw PreconditionError("solve_z: no root, mean target must be positive for cutoff 0");
    }
    return mean_target;
  }
  if (!(mean_target > k)) {
    std::ostringstream os;
    os << "solve_z: no root, mean target " << mean_target << " must exceed cutoff " << k;
    throw PreconditionError(os.str());
  }
  // z <= cond_mean(z) <= z + k brackets the root.
  double lo = std::max(mean_target - k, 0.0);
  double hi = mean_target;
  double z = 0.5 * (lo + hi);
  if (lo == 0.0) z = std::min(z, 0.5 * hi);
  for (int iter = 0; iter < 500; ++iter) {
    const double residual = cond_mean(z, k) - mean_target;
    if (residual == 0.0 || std::fabs(residual) <= 1e-15 * mean_target) return z;
    if (residual > 0.0) {
      hi = z;
    } else {
      lo = z;
    }
    // Newton on the mean uses d mean/dz = Var/z.
    double next = z - residual * z / cond_variance(z, k);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == z || hi - lo <= 4 * std::numeric_limits<double>::epsilon() * hi) {
      return next;
    }
    z = next;
  }
  std::ostringstream os;
  os << "solve_z: did not converge for target " << mean_target << ", k=" << k;
  throw ExhaustedError(os.str(), 500);
}

}  // namespace dicore
