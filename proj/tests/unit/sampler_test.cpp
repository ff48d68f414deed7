// Copyright 2026 The dicore Authors
// SPDX-License-Identifier: Apache-2.0

#include "dicore/sampler.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include "dicore/error.hpp"
#include "dicore/truncated_poisson.hpp"
#include "oracles.hpp"

namespace dicore {
namespace {

constexpr double kAlpha = 1e-3;

// All admissible sequences of a tiny instance, slot order tail, head, ...
std::vector<std::vector<Vertex>> admissible_support(int n, std::size_t m, int k1, int k2, bool simple_only) {
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> slots(2 * m, 0);
  for (;;) {
    AdmissibleSequence seq{n, m, k1, k2, slots};
    if (is_admissible(seq) && (!simple_only || is_simple(to_multidigraph(seq)))) out.push_back(slots);
    std::size_t i = 0;
    while (i < slots.size() && ++slots[i] == n) slots[i++] = 0;
    if (i == slots.size()) break;
  }
  return out;
}

std::vector<Edge> sorted_edges(const LabeledMultiDigraph& g) {
  std::vector<Edge> e(g.edges().begin(), g.edges().end());
  std::sort(e.begin(), e.end());
  return e;
}

TEST(TruncatedPoissonSampler, PmfSumsToOneAndMatchesLaw) {
  const TruncatedPoissonSampler d(1.3, 2);
  double total = 0.0;
  for (int j = 0; j < 60; ++j) total += d.pmf(j);
  EXPECT_NEAR(total, 1.0, 1e-14);
  EXPECT_EQ(d.pmf(1), 0.0);
  EXPECT_NEAR(d.pmf(4), std::pow(1.3, 4) / 24.0 / tail_series(1.3, 2), 1e-15);
  double mx = 0.0;
  for (int j = 0; j < 60; ++j) mx = std::max(mx, d.pmf(j));
  EXPECT_EQ(d.max_pmf(), mx);
}

TEST(TruncatedPoissonSampler, DrawsFollowPmf) {
  const TruncatedPoissonSampler d(2.2, 3);
  Rng rng = make_stream(17);
  std::vector<double> counts(9, 0.0), prob(9, 0.0);
  for (int i = 0; i < 100000; ++i) {
    const int x = d(rng);
    ASSERT_GE(x, 3);
    counts[std::min(x - 3, 8)] += 1;
  }
  double rest = 1.0;
  for (int i = 0; i < 8; ++i) {
    prob[i] = d.pmf(3 + i);
    rest -= prob[i];
  }
  prob[8] = rest;
  EXPECT_GT(oracle::chi_square_p(counts, prob), kAlpha);
}

TEST(DegreeSequence, SingleVertexIsForced) {
  Rng rng = make_stream(1);
  for (int i = 0; i < 10; ++i) {
    const auto d = sample_degree_sequence(1, 7, 2, rng);
    EXPECT_EQ(d.degrees, std::vector<int>{7});
  }
  const auto tight = sample_degree_sequence(4, 8, 2, rng);
  EXPECT_EQ(tight.degrees, (std::vector<int>{2, 2, 2, 2}));
  EXPECT_THROW(sample_degree_sequence(4, 7, 2, rng), PreconditionError);
}

TEST(DegreeSequence, TwoVerticesThreeEdges) {
  Rng rng = make_stream(2);
  std::vector<double> counts(2, 0.0);
  for (int i = 0; i < 100000; ++i) {
    const auto d = sample_degree_sequence(2, 3, 1, rng);
    ASSERT_EQ(d.degrees[0] + d.degrees[1], 3);
    counts[d.degrees[0] == 1 ? 0 : 1] += 1;
  }
  EXPECT_GT(oracle::chi_square_p(counts, {0.5, 0.5}), kAlpha);
}

TEST(DegreeSequence, RestrictedMultinomialLaw) {
  // P(d) proportional to 1 / prod d_i! over d_i >= 1, sum 5.
  std::map<std::vector<int>, double> weight;
  double total = 0.0;
  for (int a = 1; a <= 3; ++a) {
    for (int b = 1; a + b <= 4; ++b) {
      const int c = 5 - a - b;
      const double w = 1.0 / (std::tgamma(a + 1.0) * std::tgamma(b + 1.0) * std::tgamma(c + 1.0));
      weight[{a, b, c}] = w;
      total += w;
    }
  }
  std::map<std::vector<int>, double> counts;
  Rng rng = make_stream(3);
  for (int i = 0; i < 100000; ++i) counts[sample_degree_sequence(3, 5, 1, rng).degrees] += 1;
  std::vector<double> obs, prob;
  for (const auto& [d, w] : weight) {
    obs.push_back(counts[d]);
    prob.push_back(w / total);
  }
  EXPECT_EQ(counts.size(), weight.size());
  EXPECT_GT(oracle::chi_square_p(obs, prob), kAlpha);
}

TEST(DegreeSequence, ExhaustionCarriesAttempts) {
  Rng rng = make_stream(4);
  const DegreeSequenceSampler s(400, 900, 2);
  std::vector<int> d;
  bool thrown = false;
  for (int i = 0; i < 50 && !thrown; ++i) {
    try {
      s.sample(rng, d, 1);
    } catch (const ExhaustedError& e) {
      EXPECT_EQ(e.attempts(), 1u);
      thrown = true;
    }
  }
  EXPECT_TRUE(thrown);
}

TEST(AdmissibleSequence, UniformOnTwoByTwo) {
  const auto support = admissible_support(2, 2, 1, 1, false);
  ASSERT_EQ(support.size(), 4u);
  std::map<std::vector<Vertex>, double> counts;
  Rng rng = make_stream(5);
  for (int i = 0; i < 100000; ++i) counts[sample_admissible_sequence(2, 2, 1, 1, rng).slots] += 1;
  std::vector<double> obs;
  for (const auto& s : support) obs.push_back(counts[s]);
  EXPECT_EQ(counts.size(), support.size());
  EXPECT_GT(oracle::chi_square_p(obs, std::vector<double>(4, 0.25)), kAlpha);
}

TEST(AdmissibleSequence, UniformOnTinyInstances) {
  for (const auto& [n, m, k1, k2] : {std::tuple{3, 4, 1, 1}, std::tuple{3, 5, 1, 1}, std::tuple{2, 5, 2, 1}}) {
    const auto support = admissible_support(n, m, k1, k2, false);
    std::map<std::vector<Vertex>, double> counts;
    Rng rng = make_stream(6, {static_cast<std::uint64_t>(n), m});
    const int draws = std::max<int>(100000, 50 * static_cast<int>(support.size()));
    for (int i = 0; i < draws; ++i) counts[sample_admissible_sequence(n, m, k1, k2, rng).slots] += 1;
    std::vector<double> obs;
    for (const auto& s : support) obs.push_back(counts[s]);
    EXPECT_EQ(counts.size(), support.size());
    EXPECT_GT(oracle::chi_square_p(obs, std::vector<double>(support.size(), 1.0 / support.size())), kAlpha)
        << n << " " << m;
  }
}

TEST(AdmissibleSequence, OutputsAreAdmissibleAndDegreesMatch) {
  Rng rng = make_stream(7);
  for (int i = 0; i < 1000; ++i) {
    const int n = 5 + i % 20;
    const std::size_t m = static_cast<std::size_t>(3 * n + i % 7);
    const auto seq = sample_admissible_sequence(n, m, 2, 3, rng);
    ASSERT_TRUE(is_admissible(seq));
    const auto g = to_multidigraph(seq);
    ASSERT_EQ(g.edge_count(), m);
    std::vector<int> in(n, 0), out(n, 0);
    for (std::size_t r = 0; r < m; ++r) {
      ++out[seq.slots[2 * r]];
      ++in[seq.slots[2 * r + 1]];
    }
    ASSERT_EQ(g.in_degrees(), in);
    ASSERT_EQ(g.out_degrees(), out);
  }
}

TEST(AdmissibleSequence, InAndOutDegreesUncorrelated) {
  Rng rng = make_stream(8);
  double sx = 0, sy = 0, sxy = 0, sxx = 0, syy = 0;
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) {
    const auto g = to_multidigraph(sample_admissible_sequence(6, 15, 1, 2, rng));
    const double x = g.in_degrees()[0];
    const double y = g.out_degrees()[0];
    sx += x;
    sy += y;
    sxy += x * y;
    sxx += x * x;
    syy += y * y;
  }
  const double cov = sxy / draws - (sx / draws) * (sy / draws);
  const double corr = cov / std::sqrt((sxx / draws - sx * sx / draws / draws) * (syy / draws - sy * sy / draws / draws));
  EXPECT_LT(std::abs(corr), 4.0 / std::sqrt(draws));
}

TEST(ToMultidigraph, Examples) {
  AdmissibleSequence a{2, 2, 1, 1, {0, 1, 1, 0}};
  EXPECT_EQ(sorted_edges(to_multidigraph(a)), (std::vector<Edge>{{0, 1}, {1, 0}}));
  AdmissibleSequence b{2, 2, 1, 1, {0, 0, 1, 1}};
  EXPECT_EQ(sorted_edges(to_multidigraph(b)), (std::vector<Edge>{{0, 0}, {1, 1}}));
}

TEST(IsSimple, Examples) {
  EXPECT_TRUE(is_simple(LabeledMultiDigraph(2, {{0, 1}, {1, 0}})));
  EXPECT_FALSE(is_simple(LabeledMultiDigraph(2, {{0, 0}, {1, 1}})));
  EXPECT_FALSE(is_simple(LabeledMultiDigraph(2, {{0, 1}, {0, 1}})));
}

TEST(SimpleDicore, TwoCycleIsTheOnlyOutcome) {
  Rng rng = make_stream(9);
  for (int i = 0; i < 200; ++i) {
    const auto s = sample_simple_dicore(2, 2, 1, 1, rng);
    EXPECT_EQ(sorted_edges(s.graph), (std::vector<Edge>{{0, 1}, {1, 0}}));
    EXPECT_TRUE(s.graph.marked_simple());
    EXPECT_GE(s.attempts, 1u);
  }
}

TEST(SimpleDicore, ThreeCyclesEquallyLikely) {
  Rng rng = make_stream(10);
  int forward = 0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    const auto e = sorted_edges(sample_simple_dicore(3, 3, 1, 1, rng).graph);
    if (e == std::vector<Edge>{{0, 1}, {1, 2}, {2, 0}}) {
      ++forward;
    } else {
      ASSERT_EQ(e, (std::vector<Edge>{{0, 2}, {1, 0}, {2, 1}}));
    }
  }
  EXPECT_NEAR(forward, draws / 2.0, 3 * std::sqrt(draws / 4.0));
}

TEST(SimpleDicore, UniformOverEnumerableSupports) {
  for (const auto& [n, m, k1, k2] : {std::tuple{3, 4, 1, 1}, std::tuple{3, 5, 1, 1}, std::tuple{4, 5, 1, 1}}) {
    std::map<std::vector<Edge>, double> support;
    for (const auto& slots : admissible_support(n, m, k1, k2, true)) {
      AdmissibleSequence seq{n, m, k1, k2, slots};
      support[sorted_edges(to_multidigraph(seq))] = 0.0;
    }
    ASSERT_GE(support.size(), 2u);
    Rng rng = make_stream(11, {static_cast<std::uint64_t>(n), m, static_cast<std::uint64_t>(k1)});
    SimpleDicoreSampler sampler(n, m, k1, k2);
    for (int i = 0; i < 100000; ++i) {
      const auto e = sorted_edges(sampler.sample(rng).graph);
      ASSERT_TRUE(support.count(e));
      support[e] += 1;
    }
    std::vector<double> obs;
    for (const auto& [e, c] : support) obs.push_back(c);
    EXPECT_GT(oracle::chi_square_p(obs, std::vector<double>(obs.size(), 1.0 / obs.size())), kAlpha)
        << n << " " << m << " " << k1;
  }
}

TEST(SimpleDicore, Preconditions) {
  Rng rng = make_stream(12);
  EXPECT_THROW(sample_simple_dicore(3, 7, 1, 1, rng), PreconditionError);
  EXPECT_THROW(sample_simple_dicore(3, 5, 2, 1, rng), PreconditionError);
}

TEST(SimpleDicore, ExhaustionCarriesAttempts) {
  bool thrown = false;
  for (std::uint64_t seed = 0; seed < 100 && !thrown; ++seed) {
    Rng rng = make_stream(seed);
    try {
      sample_simple_dicore(3, 6, 2, 2, rng, 1);
    } catch (const ExhaustedError& e) {
      EXPECT_EQ(e.attempts(), 1u);
      thrown = true;
    }
  }
  EXPECT_TRUE(thrown);
}

TEST(SimpleDicore, DeterministicUnderSeed) {
  for (std::uint64_t seed : {1u, 99u, 12345u}) {
    Rng a = make_stream(seed, {4});
    Rng b = make_stream(seed, {4});
    const auto ga = sample_simple_dicore(60, 150, 2, 2, a);
    const auto gb = sample_simple_dicore(60, 150, 2, 2, b);
    EXPECT_EQ(ga.graph, gb.graph);
    EXPECT_EQ(ga.attempts, gb.attempts);
    Rng c = make_stream(seed, {5});
    EXPECT_FALSE(sample_simple_dicore(60, 150, 2, 2, c).graph == ga.graph);
  }
  Rng a = make_stream(3), b = make_stream(3);
  EXPECT_EQ(sample_admissible_sequence(40, 100, 2, 2, a).slots, sample_admissible_sequence(40, 100, 2, 2, b).slots);
}

TEST(SimpleDicore, AcceptanceRateMatchesSimplicityExponent) {
  const int n = 120;
  const std::size_t m = 300;
  const double z = solve_z(2.5, 2);
  const double mu = cond_mean(z, 1);
  const double expected = std::exp(-2.5 - 0.5 * mu * mu);
  SimpleDicoreSampler sampler(n, m, 2, 2);
  Rng rng = make_stream(13);
  const int draws = 40000;
  int ok = 0;
  for (int i = 0; i < draws; ++i) ok += sampler.try_once(rng);
  const double rate = static_cast<double>(ok) / draws;
  // Finite-N bias is O(1/N); allow it on top of 4 standard errors.
  EXPECT_NEAR(rate, expected, 4 * std::sqrt(expected * (1 - expected) / draws) + 0.1 * expected);
}

TEST(DegreeMarginals, InDegreeLawWithinTotalVariation) {
  const int n = 200;
  const std::size_t m = 600;
  const double z = solve_z(3.0, 2);
  Rng rng = make_stream(14);
  std::vector<double> counts(64, 0.0);
  double values = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const auto g = to_multidigraph(sample_admissible_sequence(n, m, 2, 2, rng));
    for (const int d : g.in_degrees()) {
      counts[std::min(d, 63)] += 1;
      values += 1;
    }
  }
  const TruncatedPoissonSampler law(z, 2);
  double tv = 0.0;
  for (int j = 0; j < 64; ++j) tv += std::abs(counts[j] / values - law.pmf(j));
  EXPECT_LE(tv / 2, 0.02);
}

}  // namespace
}  // namespace dicore
