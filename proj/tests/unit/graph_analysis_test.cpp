// Copyright 2026 The dicore Authors
// SPDX-License-Identifier: Apache-2.0

#include "dicore/graph_analysis.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>
#include <vector>

#include "dicore/error.hpp"
#include "dicore/random.hpp"
#include "dicore/sampler.hpp"
#include "oracles.hpp"

namespace dicore {
namespace {

LabeledMultiDigraph cycle(int n) {
  std::vector<Edge> e;
  for (int v = 0; v < n; ++v) e.push_back({v, (v + 1) % n});
  return LabeledMultiDigraph(n, e);
}

LabeledMultiDigraph complete(int n) {
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u != v) e.push_back({u, v});
    }
  }
  return LabeledMultiDigraph(n, e);
}

LabeledMultiDigraph random_multigraph(int n, std::size_t m, Rng& rng) {
  std::vector<Edge> e(m);
  for (auto& x : e) {
    x.tail = static_cast<Vertex>(uniform_below(rng, n));
    x.head = static_cast<Vertex>(uniform_below(rng, n));
  }
  return LabeledMultiDigraph(n, e);
}

LabeledMultiDigraph random_simple(int n, double p, Rng& rng) {
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u != v && uniform01(rng) < p) e.push_back({u, v});
    }
  }
  return LabeledMultiDigraph(n, e);
}

// Exhaustive oracle: smallest-first search over deleted sets.
bool oracle_k_strong(const LabeledMultiDigraph& g, int k) {
  const int n = g.vertex_count();
  std::vector<char> removed(n, 0);
  for (int t = 0; t < k; ++t) {
    std::vector<int> pick(n, 0);
    std::fill(pick.end() - t, pick.end(), 1);
    do {
      for (int v = 0; v < n; ++v) removed[v] = static_cast<char>(pick[v]);
      if (!oracle::strongly_connected(g, removed)) return false;
    } while (std::next_permutation(pick.begin(), pick.end()));
  }
  return true;
}

void expect_valid(const LabeledMultiDigraph& g, const ConnectivityVerdict& v) {
  if (v.k_strong) {
    EXPECT_FALSE(v.certificate.has_value());
    return;
  }
  ASSERT_TRUE(v.certificate.has_value());
  const auto check = validate_certificate(g, *v.certificate, v.k_tested);
  EXPECT_TRUE(check.valid) << check.reason;
}

TEST(Scc, CycleIsOneComponent) {
  const auto p = strongly_connected_components(cycle(7));
  EXPECT_EQ(p.count, 1);
  EXPECT_TRUE(is_strongly_connected(cycle(7)));
}

TEST(Scc, SingleEdgeIsTwoComponents) {
  const LabeledMultiDigraph g(2, {{0, 1}});
  const auto p = strongly_connected_components(g);
  EXPECT_EQ(p.count, 2);
  EXPECT_NE(p.component[0], p.component[1]);
  EXPECT_FALSE(is_strongly_connected(g));
  const auto members = p.members();
  EXPECT_EQ(members.size(), 2u);
}

TEST(Scc, MatchesReachabilityOracle) {
  Rng rng = make_stream(21);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = random_multigraph(30, 20 + trial % 50, rng);
    const auto p = strongly_connected_components(g);
    const auto r = oracle::reachability(g);
    std::set<int> ids(p.component.begin(), p.component.end());
    EXPECT_EQ(static_cast<int>(ids.size()), p.count);
    for (int u = 0; u < 30; ++u) {
      for (int v = 0; v < 30; ++v) {
        ASSERT_EQ(p.component[u] == p.component[v], r[u][v] && r[v][u]);
      }
    }
  }
}

TEST(Scc, LoopsAndParallelEdgesIgnored) {
  const LabeledMultiDigraph g(3, {{0, 0}, {0, 1}, {0, 1}, {1, 2}, {2, 0}, {2, 2}});
  EXPECT_TRUE(is_strongly_connected(g));
  EXPECT_TRUE(is_strongly_connected(LabeledMultiDigraph(1, {})));
}

TEST(KStrong, CompleteDigraphOnThree) {
  const auto v = is_k_strongly_connected(complete(3), 2);
  EXPECT_TRUE(v.strongly_connected);
  EXPECT_TRUE(v.k_strong);
  EXPECT_EQ(v.k_tested, 2);
}

TEST(KStrong, FourCycleFailsWithSingletonDeletion) {
  const auto g = cycle(4);
  const auto v = is_k_strongly_connected(g, 2);
  EXPECT_TRUE(v.strongly_connected);
  EXPECT_FALSE(v.k_strong);
  ASSERT_TRUE(v.certificate);
  EXPECT_EQ(v.certificate->removed.size(), 1u);
  expect_valid(g, v);
}

TEST(KStrong, Preconditions) {
  EXPECT_THROW(is_k_strongly_connected(complete(3), 0), PreconditionError);
  EXPECT_THROW(is_k_strongly_connected(complete(3), 3), PreconditionError);
}

TEST(KStrong, NotStronglyConnectedGivesEmptyDeletion) {
  const LabeledMultiDigraph g(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}});
  const auto v = is_k_strongly_connected(g, 2);
  EXPECT_FALSE(v.strongly_connected);
  ASSERT_TRUE(v.certificate);
  EXPECT_TRUE(v.certificate->removed.empty());
  expect_valid(g, v);
}

TEST(KStrong, AgreesWithExhaustiveOracleOnRandomDicores) {
  Rng rng = make_stream(22);
  int negatives = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto g2 = SimpleDicoreSampler(12, 26, 2, 2).sample(rng).graph;
    const auto g3 = trial % 2 ? SimpleDicoreSampler(12, 40, 3, 3).sample(rng).graph : random_simple(12, 0.3, rng);
    for (const auto* g : {&g2, &g3}) {
      for (int k : {2, 3}) {
        const auto v = is_k_strongly_connected(*g, k);
        ASSERT_EQ(v.k_strong, oracle_k_strong(*g, k)) << "trial " << trial << " k=" << k;
        EXPECT_EQ(v.strongly_connected, oracle::strongly_connected(*g));
        expect_valid(*g, v);
        negatives += !v.k_strong;
      }
    }
  }
  EXPECT_GT(negatives, 10);
}

TEST(KStrong, ConsistencyAndMonotonicity) {
  Rng rng = make_stream(23);
  for (int trial = 0; trial < 150; ++trial) {
    const auto g = random_simple(9, 0.2 + 0.004 * trial, rng);
    const auto v1 = is_k_strongly_connected(g, 1);
    EXPECT_EQ(v1.k_strong, is_strongly_connected(g));
    EXPECT_EQ(v1.strongly_connected, v1.k_strong);
    bool previous = true;
    for (int k = 1; k <= 4; ++k) {
      const auto v = is_k_strongly_connected(g, k);
      if (v.k_strong) EXPECT_TRUE(v.strongly_connected);
      if (!previous) EXPECT_FALSE(v.k_strong);
      previous = v.k_strong;
      expect_valid(g, v);
    }
  }
}

TEST(SourceSink, TwoDisjointTriangles) {
  const LabeledMultiDigraph g(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
  const auto s = find_source_or_sink_set(g);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->vertices.size(), 3u);
}

TEST(SourceSink, NoneWhenStronglyConnected) {
  EXPECT_FALSE(find_source_or_sink_set(complete(5)));
  EXPECT_FALSE(find_source_or_sink_set(cycle(6)));
}

TEST(SourceSink, MatchesCondensationOracle) {
  Rng rng = make_stream(24);
  int found = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 20;
    const auto g = random_multigraph(n, 15 + trial % 30, rng);
    const auto r = oracle::reachability(g);
    // Oracle: strong components (mutual reachability classes) that are
    // source (nothing outside reaches them) or sink, sized 2..n/2.
    bool exists = false;
    for (int v = 0; v < n; ++v) {
      std::vector<int> comp;
      for (int u = 0; u < n; ++u) {
        if (r[u][v] && r[v][u]) comp.push_back(u);
      }
      if (comp.size() < 2 || comp.size() > static_cast<std::size_t>(n / 2)) continue;
      bool source = true, sink = true;
      for (int u = 0; u < n; ++u) {
        if (std::find(comp.begin(), comp.end(), u) != comp.end()) continue;
        if (r[u][v]) source = false;
        if (r[v][u]) sink = false;
      }
      exists = exists || source || sink;
    }
    const auto s = find_source_or_sink_set(g);
    ASSERT_EQ(s.has_value(), exists) << "trial " << trial;
    if (!s) continue;
    ++found;
    const auto check = validate_certificate(g, {{}, s->vertices, s->direction}, 1);
    EXPECT_TRUE(check.valid) << check.reason;
    EXPECT_GE(s->vertices.size(), 2u);
    const int a = s->vertices.front();
    for (const int u : s->vertices) EXPECT_TRUE(r[u][a] && r[a][u]);
  }
  EXPECT_GT(found, 5);
}

TEST(Certificate, ValidatorRejectsBadCertificates) {
  const LabeledMultiDigraph g(6, {{0, 1}, {1, 0}, {2, 3}, {3, 2}, {4, 5}, {5, 4}, {0, 2}, {2, 4}});
  EXPECT_TRUE(validate_certificate(g, {{}, {0, 1}, SetDirection::kSource}, 1).valid);
  EXPECT_FALSE(validate_certificate(g, {{}, {0, 1}, SetDirection::kSink}, 1).valid);
  EXPECT_TRUE(validate_certificate(g, {{}, {4, 5}, SetDirection::kSink}, 1).valid);
  EXPECT_FALSE(validate_certificate(g, {{}, {2, 3}, SetDirection::kSource}, 1).valid);
  EXPECT_TRUE(validate_certificate(g, {{0}, {2, 3}, SetDirection::kSource}, 2).valid);
  EXPECT_FALSE(validate_certificate(g, {{0}, {2, 3}, SetDirection::kSource}, 1).valid);  // |T| >= k
  EXPECT_FALSE(validate_certificate(g, {{2}, {2, 3}, SetDirection::kSource}, 2).valid);  // overlap
  EXPECT_FALSE(validate_certificate(g, {{}, {0, 1, 2, 3}, SetDirection::kSource}, 1).valid);  // too large
  EXPECT_FALSE(validate_certificate(g, {{}, {}, SetDirection::kSource}, 1).valid);
  EXPECT_FALSE(validate_certificate(g, {{}, {0, 0}, SetDirection::kSource}, 1).valid);
  EXPECT_FALSE(validate_certificate(g, {{}, {9}, SetDirection::kSource}, 1).valid);
  const auto single = validate_certificate(LabeledMultiDigraph(3, {{0, 1}, {1, 2}, {2, 1}}),
                                           {{}, {0}, SetDirection::kSource}, 1);
  EXPECT_TRUE(single.valid);
  EXPECT_TRUE(single.singleton);
}

TEST(EdgeList, RoundTrip) {
  Rng rng = make_stream(25);
  const auto g = SimpleDicoreSampler(20, 50, 2, 2).sample(rng).graph;
  std::stringstream ss;
  write_edge_list(ss, g, 2, 2);
  const auto f = read_edge_list(ss);
  EXPECT_EQ(f.header.n, 20);
  EXPECT_EQ(f.header.m, 50u);
  EXPECT_EQ(f.header.k1, 2);
  EXPECT_EQ(f.graph, g);
}

TEST(EdgeList, ParseErrors) {
  for (const char* text : {"", "graph 2 1 1 1\n0 1\n", "dicore 2 2 1 1\n0 1\n", "dicore 2 1 1 1\n0 5\n",
                           "dicore 2 1 1 1\n0 1\n1 0\n", "dicore 2 1 1 1\n0 x\n"}) {
    std::stringstream ss(text);
    EXPECT_THROW(read_edge_list(ss), EdgeListParseError) << text;
  }
  std::stringstream ok("# comment\ndicore 2 2 1 1\n0 1\n# inner\n1 0\n");
  EXPECT_EQ(read_edge_list(ok).graph.edge_count(), 2u);
}

}  // namespace
}  // namespace dicore
