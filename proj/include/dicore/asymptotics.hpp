// Copyright 2026 The dicore Authors
// SPDX-License-Identifier: Apache-2.0

// Leading-order asymptotic counts of (k1,k2)-dicores, in log scale with the
// individual factors kept separately, and the exponent functions that bound
// the expected number of small source sets in a random dicore.

#pragma once

#include <array>
#include <optional>

namespace dicore {

// log_value = log_m_factorial + sum_j (log_saddle[j] + log_gaussian[j])
//             + simplicity + log_correction
struct AsymptoticCount {
  double log_value = 0.0;
  double log_m_factorial = 0.0;
  std::array<double, 2> log_saddle{};    // N log f_{k_j}(z_j) - M log z_j
  std::array<double, 2> log_gaussian{};  // -1/2 log(2 pi N Var(Poi(z_j|k_j)))
  double simplicity = 0.0;               // -M/N - 1/2 prod_j E[Poi(z_j|k_j - 1)]
  double log_correction = 0.0;           // nonzero only for the strongly connected (1,1) count
  std::array<double, 2> z{};             // roots of E[Poi(z_j|k_j)] = M/N

  double sum_of_components() const;
  // Estimate of S_{N,M} / M! (the sequence count before conditioning on simplicity).
  double log_without_simplicity() const { return log_value - simplicity; }
};

struct AsymptoticOptions {
  // Required margin in M/N >= max(k1,k2) + density_margin.
  double density_margin = 0.05;
};

// Number of simple (k1,k2)-dicores on [N] with M edges; for min(k1,k2) >= 2
// this is also the estimate for the k-strongly connected ones.
AsymptoticCount dicore_count_asymptotic(int n, long long m, int k1, int k2,
                                        const AsymptoticOptions& opts = {});

struct StrongCoreOptions {
  // Guard M - N >= gap_factor * N^{2/3}.
  double gap_factor = 5.0;
};

// Number of strongly connected digraphs on [N] with M edges and all in- and
// out-degrees positive.
AsymptoticCount scc_core_count_11(int n, long long m, const StrongCoreOptions& opts = {});

// The (1,1) correction factor (1 - z/f_1)^2 / (1 - z/(e^z f_1)) * exp[(z/f_1)(2 - e^{-z})].
double strong_core_correction(double z);

// --- source-set exponents -------------------------------------------------
// rho = |A|/N, sigma = M/N. The expected number of source sets of size rho N
// is at most exp(N * exponent) up to polynomial factors.

// H(rho, sigma): exponent with the optimal Chernoff tilt u_min.
double chernoff_exponent(double rho, double sigma, int k1);
// K(rho, sigma): exponent with tilt u = 1.
double unit_tilt_exponent(double rho, double sigma);
// Closed form of d^2 K / d rho^2.
double unit_tilt_curvature(double rho, double sigma);
// rho* = 2 k1 / (k1 + sigma + sqrt((sigma - k1)(sigma + 3 k1))); u_min >= 1 iff rho <= rho*.
double critical_fraction(double sigma, int k1);
// u_min = k1 (1 - rho) / (rho (sigma - k1 rho)).
double optimal_tilt(double rho, double sigma, int k1);

struct BoundDiagnostics {
  double rho = 0.0;
  double sigma = 0.0;
  int k1 = 0;
  double chernoff = 0.0;   // H
  double unit_tilt = 0.0;  // K
  double rho_star = 0.0;
  double u_min = 0.0;
};

// DomainError unless rho in (0, 1/2] and sigma > k1 >= 1.
BoundDiagnostics bound_diagnostics(double rho, double sigma, int k1);

struct NegativityReport {
  double sigma = 0.0;
  int k1 = 0;
  double step = 0.0;
  double rho_star = 0.0;
  std::size_t points = 0;

  double chernoff_max = 0.0;  // max H over (0, min(rho*, 1/2)]
  double chernoff_argmax = 0.0;
  bool unit_tilt_checked = false;  // sigma > 3 k1 / 2
  double unit_tilt_max = 0.0;      // max K over [rho*, 1/2]
  double unit_tilt_argmax = 0.0;

  // H(rho)/(rho log(1/rho)) at the smallest refinement point; tends to -(k1 - 1).
  double small_rho_slope = 0.0;
  double small_rho = 0.0;

  std::optional<double> first_violation;  // first rho with a nonnegative exponent

  bool ok() const { return !first_violation.has_value(); }
};

// Grid scan of H on [step, min(rho*, 1/2)] (plus points 10^-4 .. 10^-12 toward
// zero) and, when sigma > 3 k1 / 2, of K on [rho*, 1/2]. Requires sigma > k1
// >= 2 and step <= 1e-3.
NegativityReport scan_negativity(double sigma, int k1, double step = 1e-3);

}  // namespace dicore
