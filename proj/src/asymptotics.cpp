// Copyright 2026 The dicore Authors
// SPDX-License-Identifier: Apache-2.0

#include "dicore/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dicore/error.hpp"
#include "dicore/truncated_poisson.hpp"

namespace dicore {
namespace {

double log_factorial(long long n) { return std::lgamma(static_cast<double>(n) + 1.0); }

// rho log(1/rho) + (1 - rho) log(1/(1 - rho))
double entropy(double rho) { return -rho * std::log(rho) - (1.0 - rho) * std::log1p(-rho); }

void require_fraction(double rho, const char* fn) {
  if (!(rho > 0.0 && rho < 1.0)) {
    std::ostringstream os;
    os << fn << ": rho must lie in (0, 1), got " << rho;
    throw DomainError(os.str());
  }
}

}  // namespace

double AsymptoticCount::sum_of_components() const {
  return log_m_factorial + log_saddle[0] + log_saddle[1] + log_gaussian[0] + log_gaussian[1] +
         simplicity + log_correction;
}

AsymptoticCount dicore_count_asymptotic(int n, long long m, int k1, int k2,
                                        const AsymptoticOptions& opts) {
  if (n < 1 || m < 0 || k1 < 0 || k2 < 0) {
    throw PreconditionError("dicore_count_asymptotic: need N >= 1, M >= 0, k1, k2 >= 0");
  }
  const double sigma = static_cast<double>(m) / n;
  const double floor = std::max(k1, k2) + opts.density_margin;
  if (!(sigma > floor)) {
    std::ostringstream os;
    os << "dicore_count_asymptotic: density M/N = " << sigma
       << " must exceed max(k1,k2) + eps = " << floor;
    throw PreconditionError(os.str());
  }
  AsymptoticCount out;
  out.log_m_factorial = log_factorial(m);
  const std::array<int, 2> ks{k1, k2};
  std::array<double, 2> lower_means{};
  for (int j = 0; j < 2; ++j) {
    const double z = solve_z(sigma, ks[j]);
    out.z[j] = z;
    out.log_saddle[j] = n * log_tail_series(z, ks[j]) - static_cast<double>(m) * std::log(z);
    out.log_gaussian[j] =
        -0.5 * std::log(2.0 * std::numbers::pi * n * cond_variance(z, ks[j]));
    lower_means[j] = cond_mean(z, ks[j] - 1);
  }
  out.simplicity = -sigma - 0.5 * lower_means[0] * lower_means[1];
  out.log_value = out.sum_of_components();
  return out;
}

double strong_core_correction(double z) {
  if (!(z > 0.0)) throw DomainError("strong_core_correction: z must be positive");
  const double r = z / std::expm1(z);
  const double ez = std::exp(-z);
  return (1.0 - r) * (1.0 - r) / (1.0 - r * ez) * std::exp(r * (2.0 - ez));
}

AsymptoticCount scc_core_count_11(int n, long long m, const StrongCoreOptions& opts) {
  if (n < 1 || m <= n) {
    throw PreconditionError("scc_core_count_11: need N >= 1 and M > N");
  }
  const double gap = static_cast<double>(m - n);
  const double required = opts.gap_factor * std::pow(static_cast<double>(n), 2.0 / 3.0);
  if (gap < required) {
    std::ostringstream os;
    os << "scc_core_count_11: M - N = " << gap << " is below " << opts.gap_factor
       << " * N^(2/3) = " << required;
    throw GuardError(os.str(), gap);
  }
  const double sigma = static_cast<double>(m) / n;
  const double z = solve_z(sigma, 1);
  AsymptoticCount out;
  out.z = {z, z};
  out.log_m_factorial = log_factorial(m);
  const double saddle = n * std::log(std::expm1(z)) - static_cast<double>(m) * std::log(z);
  out.log_saddle = {saddle, saddle};
  const double gaussian = -0.5 * std::log(2.0 * std::numbers::pi * n * cond_variance(z, 1));
  out.log_gaussian = {gaussian, gaussian};
  out.simplicity = -sigma - 0.5 * z * z;
  out.log_correction = std::log(strong_core_correction(z));
  out.log_value = out.sum_of_components();
  return out;
}

double chernoff_exponent(double rho, double sigma, int k1) {
  require_fraction(rho, "chernoff_exponent");
  if (k1 < 1 || !(sigma >= k1)) throw DomainError("chernoff_exponent: need sigma >= k1 >= 1");
  const double k = k1;
  const double denom = sigma - k * rho;
  // sigma log((sigma - sigma rho)/(sigma - k1 rho)) = sigma log1p(-rho (sigma - k1)/(sigma - k1 rho))
  const double tilt_term = sigma * std::log1p(-rho * (sigma - k) / denom);
  const double tilt = k * (1.0 - rho) / (rho * denom);
  return entropy(rho) + tilt_term - k * rho * std::log(tilt);
}

double unit_tilt_exponent(double rho, double sigma) {
  require_fraction(rho, "unit_tilt_exponent");
  return entropy(rho) + sigma * std::log1p(-rho * (1.0 - rho));
}

double unit_tilt_curvature(double rho, double sigma) {
  require_fraction(rho, "unit_tilt_curvature");
  const double q = rho * (1.0 - rho);
  return -1.0 / q + sigma * (1.0 + 2.0 * q) / ((1.0 - q) * (1.0 - q));
}

double critical_fraction(double sigma, int k1) {
  if (k1 < 1 || !(sigma >= k1)) throw DomainError("critical_fraction: need sigma >= k1 >= 1");
  const double k = k1;
  return 2.0 * k / (k + sigma + std::sqrt((sigma - k) * (sigma + 3.0 * k)));
}

double optimal_tilt(double rho, double sigma, int k1) {
  require_fraction(rho, "optimal_tilt");
  if (k1 < 1 || !(sigma >= k1)) throw DomainError("optimal_tilt: need sigma >= k1 >= 1");
  return k1 * (1.0 - rho) / (rho * (sigma - k1 * rho));
}

BoundDiagnostics bound_diagnostics(double rho, double sigma, int k1) {
  if (!(rho > 0.0 && rho <= 0.5)) {
    std::ostringstream os;
    os << "bound_diagnostics: rho must lie in (0, 1/2], got " << rho;
    throw DomainError(os.str());
  }
  if (k1 < 1 || !(sigma > k1)) throw DomainError("bound_diagnostics: need sigma > k1 >= 1");
  return {rho,
          sigma,
          k1,
          chernoff_exponent(rho, sigma, k1),
          unit_tilt_exponent(rho, sigma),
          critical_fraction(sigma, k1),
          optimal_tilt(rho, sigma, k1)};
}

NegativityReport scan_negativity(double sigma, int k1, double step) {
  if (k1 < 2 || !(sigma > k1)) throw DomainError("scan_negativity: need sigma > k1 >= 2");
  if (!(step > 0.0 && step <= 1e-3)) throw DomainError("scan_negativity: step must be in (0, 1e-3]");
  NegativityReport rep;
  rep.sigma = sigma;
  rep.k1 = k1;
  rep.step = step;
  rep.rho_star = critical_fraction(sigma, k1);
  rep.chernoff_max = -std::numeric_limits<double>::infinity();
  rep.unit_tilt_max = -std::numeric_limits<double>::infinity();

  const auto note = [&rep](double rho, double value) {
    ++rep.points;
    if (value >= 0.0 && !rep.first_violation) rep.first_violation = rho;
  };

  const double upper = std::min(rep.rho_star, 0.5);
  const auto grid = [step](double lo, double hi) {
    std::vector<double> pts;
    for (long i = 0;; ++i) {
      const double rho = lo + static_cast<double>(i) * step;
      if (rho >= hi) break;
      pts.push_back(rho);
    }
    pts.push_back(hi);
    return pts;
  };

  // Toward zero H vanishes like -(k1 - 1) rho log(1/rho).
  for (int e = 12; e >= 4; --e) {
    const double rho = std::pow(10.0, -e);
    const double h = chernoff_exponent(rho, sigma, k1);
    note(rho, h);
    if (e == 12) {
      rep.small_rho = rho;
      rep.small_rho_slope = h / (rho * std::log(1.0 / rho));
    }
  }
  for (const double rho : grid(step, upper)) {
    const double h = chernoff_exponent(rho, sigma, k1);
    note(rho, h);
    if (h > rep.chernoff_max) {
      rep.chernoff_max = h;
      rep.chernoff_argmax = rho;
    }
  }
  if (sigma > 1.5 * k1) {
    rep.unit_tilt_checked = true;
    for (const double rho : grid(rep.rho_star, 0.5)) {
      const double kv = unit_tilt_exponent(rho, sigma);
      note(rho, kv);
      if (kv > rep.unit_tilt_max) {
        rep.unit_tilt_max = kv;
        rep.unit_tilt_argmax = rho;
      }
    }
  }
  return rep;
}

}  // namespace dicore
