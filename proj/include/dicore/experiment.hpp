// Copyright 2026 The dicore Authors
// SPDX-License-Identifier: Apache-2.0

// Monte Carlo estimate of how often a uniform simple (k1,k2)-dicore fails to
// be strongly connected, or k-strongly connected, as N grows.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "dicore/sampler.hpp"

namespace dicore {

struct ConnectivityExperimentConfig {
  int k1 = 2;
  int k2 = 2;
  std::vector<int> n_values;
  double ratio = 2.5;  // M = ceil(ratio * N)
  int reps = 0;
  std::uint64_t seed = 0;
  int k = 0;  // 0: min(k1, k2)
  double density_margin = 0.05;
  int threads = 0;
  SamplerLimits limits;
};

struct ConnectivityRow {
  int n = 0;
  std::size_t m = 0;
  int reps = 0;
  int not_strongly_connected = 0;
  int not_k_strong = 0;
  int strongly_connected = 0;
  int k_strong_failures_among_sc = 0;  // strongly connected but not k-strong
  int singleton_certificates = 0;
  int invalid_certificates = 0;  // must stay 0
  double mean_attempts = 0.0;
  double wall_ms = 0.0;

  double fraction_not_sc() const { return reps ? static_cast<double>(not_strongly_connected) / reps : 0.0; }
  double fraction_not_k_strong() const { return reps ? static_cast<double>(not_k_strong) / reps : 0.0; }
  double k_failure_among_sc() const {
    return strongly_connected ? static_cast<double>(k_strong_failures_among_sc) / strongly_connected : 0.0;
  }
};

struct ConnectivitySummary {
  ConnectivityExperimentConfig config;
  int k = 0;
  std::vector<ConnectivityRow> rows;
  // Least-squares slope of log(non-SC fraction) against log N over rows with
  // a positive fraction; empty with fewer than two such rows.
  std::optional<double> slope_not_sc;
  std::optional<double> slope_not_k_strong;
  bool not_sc_nonincreasing = true;
};

// Replica r at size N uses make_stream(seed, {N, M, r}); rows are identical
// for any thread count. Every negative verdict's certificate is re-validated.
ConnectivitySummary connectivity_experiment(const ConnectivityExperimentConfig& cfg);

std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

void write_connectivity_csv(std::ostream& out, const ConnectivitySummary& s,
                            bool include_timing = true);
void write_connectivity_json(std::ostream& out, const ConnectivitySummary& s);

}  // namespace dicore
