// Copyright 2026 The dicore Authors
// SPDX-License-Identifier: Apache-2.0

// (k1,k2)-cores of random multidigraphs and the density c*(k1,k2) at which a
// giant core appears.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "dicore/digraph.hpp"
#include "dicore/random.hpp"

namespace dicore {

// 2m slots drawn independently and uniformly from [n]; edge r is slot 2r -> 2r+1.
LabeledMultiDigraph sample_uniform_multidigraph(int n, std::size_t m, Rng& rng);

enum class LightReason { kInLight, kOutLight };

const char* to_string(LightReason r);

struct PeelStep {
  Vertex vertex;
  LightReason reason;  // in-light takes precedence when both hold
};

struct PeelResult {
  std::vector<Vertex> core_vertices;  // sorted, original labels
  std::size_t core_edges = 0;
  std::size_t rounds = 0;  // vertices deleted
  std::vector<PeelStep> trace;  // filled by peel_core_traced only
};

// Deletes vertices with in-degree < k1 or out-degree < k2 (loops and parallel
// edges count) until none is left. Work-queue order.
PeelResult peel_core(const LabeledMultiDigraph& g, int k1, int k2);

// Same terminal core, deleting a uniformly random light vertex at each step
// and recording the order.
PeelResult peel_core_traced(const LabeledMultiDigraph& g, int k1, int k2, Rng& rng);

LabeledMultiDigraph core_subgraph(const LabeledMultiDigraph& g, const PeelResult& r);

// --- threshold ------------------------------------------------------------

// term1 = z1 / (p_{k1}(z1) p_{k2-1}(z2)),  term2 = z2 / (p_{k1-1}(z1) p_{k2}(z2))
struct ThresholdTerms {
  double term1;
  double term2;
};

ThresholdTerms threshold_terms(double z1, double z2, int k1, int k2);

struct ThresholdOptions {
  double grid_step = 0.01;
  double tolerance = 1e-8;   // on the argmin coordinates
  double z_max = 0.0;        // 0: start at 2 max(k1,k2) + 10
  int max_doublings = 6;     // of z_max while the grid optimum sits on the upper edge
  double ridge_tolerance = 1e-6;
};

enum class ThresholdRegime { kRidge, kTerm1Dominates, kTerm2Dominates };

const char* to_string(ThresholdRegime r);

struct ThresholdResult {
  double c_star = 0.0;
  double z1 = 0.0;
  double z2 = 0.0;
  double gap = 0.0;           // |term1 - term2| at the optimum
  double relative_gap = 0.0;  // gap / c_star
  ThresholdRegime regime = ThresholdRegime::kRidge;
  bool boundary_hit = false;  // optimum on the edge of (0, z_max]^2
  double grid_value = 0.0;
  double z_max = 0.0;
  int refinement_iterations = 0;
};

// PreconditionError unless k1, k2 >= 0 and max(k1,k2) >= 2. ExhaustedError
// (message carries the best iterate) if the refinement fails to converge.
ThresholdResult c_star(int k1, int k2, const ThresholdOptions& opts = {});

// --- peeling experiment -----------------------------------------------------

struct ThresholdExperimentConfig {
  int k1 = 2;
  int k2 = 2;
  std::vector<double> c_values;
  int n = 1000;
  int reps = 1;
  std::uint64_t seed = 0;
  bool check_connectivity = false;  // strong and min(k1,k2)-strong tests on the simplified core
  int threads = 0;
};

struct ThresholdRecord {
  int k1 = 0;
  int k2 = 0;
  double c = 0.0;
  int n = 0;
  int rep = 0;
  std::uint64_t seed = 0;
  std::size_t m = 0;
  std::size_t core_vertices = 0;
  std::size_t core_edges = 0;
  std::optional<bool> strongly_connected;
  std::optional<bool> k_strong;
  double wall_ms = 0.0;
};

// Records ordered by (c index, rep). Replica (c, rep) uses
// make_stream(seed, {bits of c, n, rep}), so results do not depend on threads.
std::vector<ThresholdRecord> threshold_experiment(const ThresholdExperimentConfig& cfg);

void write_threshold_csv(std::ostream& out, const std::vector<ThresholdRecord>& records,
                         bool include_timing = true);

}  // namespace dicore
