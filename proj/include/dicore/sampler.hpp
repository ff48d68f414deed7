// Copyright 2026 The dicore Authors
// SPDX-License-Identifier: Apache-2.0

// Uniform sampling in the sequence model. A sequence of 2M vertex ids is
// read as M edges slots[2r] -> slots[2r+1] (0-based), so even slots hold
// tails (out-endpoints) and odd slots hold heads (in-endpoints). It is
// admissible when every vertex is a head at least k1 times and a tail at
// least k2 times.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "dicore/digraph.hpp"
#include "dicore/random.hpp"

namespace dicore {

struct DegreeSequence {
  std::vector<int> degrees;
  int cutoff = 0;
  std::size_t total = 0;
};

struct AdmissibleSequence {
  int n = 0;
  std::size_t m = 0;
  int k1 = 0;
  int k2 = 0;
  std::vector<Vertex> slots;  // size 2m
};

// Checks the degree cutoffs and slot-count invariants.
bool is_admissible(const AdmissibleSequence& seq);

// Draws from Poi(z|k) by inverse transform over a precomputed table.
class TruncatedPoissonSampler {
 public:
  TruncatedPoissonSampler(double z, int k);

  int operator()(Rng& rng) const;
  double pmf(int j) const;
  double max_pmf() const { return max_pmf_; }

 private:
  double z_;
  int k_;
  std::vector<double> pmf_;  // pmf_[i] = P(X = k + i)
  std::vector<double> cdf_;
  std::vector<std::uint32_t> guide_;  // guide_[g] = first i with cdf_[i] > g / guide_.size()
  double max_pmf_ = 0.0;
};

// Degree sequences with d_i >= k and sum m, with probability proportional
// to m! / prod d_i!. Draws d_1..d_{n-1} i.i.d. from Poi(z|k) with
// z = solve_z(m/n, k), sets d_n = m - sum, and accepts with probability
// P(Poi(z|k) = d_n) / max pmf. This is rejection on {sum = m} with the last
// coordinate integrated out.
class DegreeSequenceSampler {
 public:
  DegreeSequenceSampler(int n, std::size_t m, int k);

  // Throws ExhaustedError after max_attempts rejections.
  void sample(Rng& rng, std::vector<int>& degrees, std::uint64_t max_attempts) const;

  int n() const { return n_; }
  std::size_t m() const { return m_; }
  int cutoff() const { return k_; }

 private:
  int n_;
  std::size_t m_;
  int k_;
  bool forced_;  // m == k n or n == 1: a single admissible sequence
  std::optional<TruncatedPoissonSampler> dist_;
};

struct SamplerLimits {
  std::uint64_t max_degree_attempts = 1'000'000;
  std::uint64_t max_simple_attempts = 100'000;
};

DegreeSequence sample_degree_sequence(int n, std::size_t m, int k, Rng& rng,
                                      std::uint64_t max_attempts = 1'000'000);

// Uniform over admissible sequences.
AdmissibleSequence sample_admissible_sequence(int n, std::size_t m, int k1, int k2, Rng& rng,
                                              const SamplerLimits& limits = {});

LabeledMultiDigraph to_multidigraph(const AdmissibleSequence& seq);

// No loops and no repeated ordered pair.
bool is_simple(const LabeledMultiDigraph& g);

struct SimpleDicoreSample {
  LabeledMultiDigraph graph;  // canonical (sorted) edge list, marked simple
  std::uint64_t attempts = 0;
};

// Reusable sampler for uniform simple (k1,k2)-dicores on [n] with m edges,
// by rejection of admissible sequences that induce loops or parallel edges.
class SimpleDicoreSampler {
 public:
  SimpleDicoreSampler(int n, std::size_t m, int k1, int k2, SamplerLimits limits = {});

  SimpleDicoreSample sample(Rng& rng);

  // One admissible-sequence draw; true if it induced a simple graph. Exposed
  // for acceptance-rate measurements.
  bool try_once(Rng& rng);

  AdmissibleSequence sample_sequence(Rng& rng);

 private:
  void draw_degrees(Rng& rng);

  int n_;
  std::size_t m_;
  int k1_;
  int k2_;
  SamplerLimits limits_;
  DegreeSequenceSampler in_sampler_;
  DegreeSequenceSampler out_sampler_;
  std::vector<int> in_deg_;
  std::vector<int> out_deg_;
  std::vector<Vertex> heads_;
  std::vector<Vertex> tails_;
  std::vector<std::uint64_t> seen_;  // open-addressing set of edge keys
  std::vector<std::uint32_t> stamp_;
  std::uint32_t generation_ = 0;
};

SimpleDicoreSample sample_simple_dicore(int n, std::size_t m, int k1, int k2, Rng& rng,
                                        std::uint64_t max_attempts = 100'000);

}  // namespace dicore
