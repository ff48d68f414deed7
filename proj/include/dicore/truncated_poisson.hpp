// Copyright 2026 The dicore Authors
// SPDX-License-Identifier: Apache-2.0

// Poisson(z) conditioned on being at least k, written Poi(z|k) below.
//
//   f_k(z) = sum_{j >= k} z^j / j!     (f_j = e^z for j <= 0)
//   p_k(z) = e^{-z} f_k(z) = P(Poisson(z) >= k)
//
// All functions are pure and throw DomainError for z <= 0.

#pragma once

namespace dicore {

struct TruncatedPoissonParams {
  double z;  // rate, > 0
  int k;     // cutoff, >= 0
};

// f_k(z) to ~1e-14 relative accuracy.
double tail_series(double z, int k);

// log f_k(z); finite for every z > 0, including rates where f_k overflows.
double log_tail_series(double z, int k);

// p_k(z) in (0, 1]; 1 for k <= 0.
double tail_prob(double z, int k);

// P(Poi(z|k) = k) = (z^k / k!) / f_k(z).
double floor_mass(double z, int k);

// E[Poi(z|k)] = z f_{k-1}(z) / f_k(z). Strictly increasing in z, tends to k
// as z -> 0+.
double cond_mean(double z, int k);

// E[X(X-1)] = z^2 f_{k-2}(z) / f_k(z) for X ~ Poi(z|k).
double cond_second_factorial_moment(double z, int k);

// Var(Poi(z|k)) > 0. Also equals z * d/dz cond_mean(z, k).
double cond_variance(double z, int k);

// The unique z > 0 with cond_mean(z, k) = mean_target, to 1e-10 relative.
// Throws PreconditionError when mean_target <= k (or <= 0 when k = 0).
double solve_z(double mean_target, int k);

inline double tail_series(const TruncatedPoissonParams& p) { return tail_series(p.z, p.k); }
inline double tail_prob(const TruncatedPoissonParams& p) { return tail_prob(p.z, p.k); }
inline double cond_mean(const TruncatedPoissonParams& p) { return cond_mean(p.z, p.k); }
inline double cond_variance(const TruncatedPoissonParams& p) { return cond_variance(p.z, p.k); }

}  // namespace dicore
