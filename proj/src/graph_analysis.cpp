// Copyright 2026 The dicore Authors
// SPDX-License-Identifier: Apache-2.0

#include "dicore/graph_analysis.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "dicore/error.hpp"

namespace dicore {
namespace {

// Tarjan restricted to vertices with removed[v] == 0; removed vertices get
// component -1.
SccPartition scc_masked(const Adjacency& adj, std::span<const char> removed) {
  const int n = adj.n;
  SccPartition part;
  part.component.assign(n, -1);
  std::vector<int> index(n, -1);
  std::vector<int> low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<Vertex> stack;
  struct Frame {
    Vertex v;
    std::size_t pos;
  };
  std::vector<Frame> frames;
  int counter = 0;

  for (Vertex root = 0; root < n; ++root) {
    if (removed[root] || index[root] >= 0) continue;
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    frames.push_back({root, 0});
    while (!frames.empty()) {
      const Vertex v = frames.back().v;
      const auto outs = adj.out(v);
      if (frames.back().pos < outs.size()) {
        const Vertex w = outs[frames.back().pos++];
        if (w == v || removed[w]) continue;
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          part.component[w] = part.count;
        } while (w != v);
        ++part.count;
      }
      frames.pop_back();
      if (!frames.empty()) {
        const Vertex u = frames.back().v;
        low[u] = std::min(low[u], low[v]);
      }
    }
  }
  return part;
}

struct ExtremeComponent {
  std::vector<Vertex> vertices;
  SetDirection direction;
};

// Source and sink components of the condensation.
std::vector<ExtremeComponent> extreme_components(const Adjacency& adj,
                                                 std::span<const char> removed,
                                                 const SccPartition& part) {
  std::vector<char> has_in(part.count, 0);
  std::vector<char> has_out(part.count, 0);
  for (Vertex u = 0; u < adj.n; ++u) {
    if (removed[u]) continue;
    for (const Vertex w : adj.out(u)) {
      if (removed[w]) continue;
      const int cu = part.component[u];
      const int cw = part.component[w];
      if (cu != cw) {
        has_out[cu] = 1;
        has_in[cw] = 1;
      }
    }
  }
  std::vector<std::vector<Vertex>> members(part.count);
  for (Vertex v = 0; v < adj.n; ++v) {
    if (part.component[v] >= 0) members[part.component[v]].push_back(v);
  }
  std::vector<ExtremeComponent> out;
  for (int c = 0; c < part.count; ++c) {
    if (!has_in[c]) out.push_back({members[c], SetDirection::kSource});
    if (!has_out[c]) out.push_back({members[c], SetDirection::kSink});
  }
  return out;
}

// Preference among candidate sets: |A| >= 2 first, then smaller, sources
// before sinks, then by smallest vertex.
bool preferred(const ExtremeComponent& a, const ExtremeComponent& b) {
  const auto key = [](const ExtremeComponent& c) {
    return std::make_tuple(c.vertices.size() < 2, c.vertices.size(),
                           c.direction == SetDirection::kSink, c.vertices.front());
  };
  return key(a) < key(b);
}

std::optional<ExtremeComponent> pick_small_extreme(std::vector<ExtremeComponent> candidates,
                                                   std::size_t remaining, std::size_t min_size) {
  std::optional<ExtremeComponent> best;
  for (auto& c : candidates) {
    if (c.vertices.size() < min_size || 2 * c.vertices.size() > remaining) continue;
    if (!best || preferred(c, *best)) best = std::move(c);
  }
  return best;
}

// Advances `subset` (sorted, values < n) to the next combination; false when exhausted.
bool next_combination(std::vector<Vertex>& subset, int n) {
  const int t = static_cast<int>(subset.size());
  for (int i = t - 1; i >= 0; --i) {
    if (subset[i] < n - t + i) {
      ++subset[i];
      for (int j = i + 1; j < t; ++j) subset[j] = subset[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<std::vector<Vertex>> SccPartition::members() const {
  std::vector<std::vector<Vertex>> out(count);
  for (std::size_t v = 0; v < component.size(); ++v) {
    if (component[v] >= 0) out[component[v]].push_back(static_cast<Vertex>(v));
  }
  return out;
}

SccPartition strongly_connected_components(const LabeledMultiDigraph& g) {
  const Adjacency adj(g);
  const std::vector<char> none(g.vertex_count(), 0);
  return scc_masked(adj, none);
}

bool is_strongly_connected(const LabeledMultiDigraph& g) {
  return strongly_connected_components(g).count <= 1;
}

const char* to_string(SetDirection d) { return d == SetDirection::kSource ? "source" : "sink"; }

ConnectivityVerdict is_k_strongly_connected(const LabeledMultiDigraph& g, int k) {
  const int n = g.vertex_count();
  if (k < 1) throw PreconditionError("is_k_strongly_connected: k must be at least 1");
  if (n < k + 1) {
    std::ostringstream os;
    os << "is_k_strongly_connected: need at least k+1 = " << k + 1 << " vertices, graph has " << n;
    throw PreconditionError(os.str());
  }
  const Adjacency adj(g);
  ConnectivityVerdict verdict;
  verdict.k_tested = k;
  std::vector<char> removed(n, 0);
  for (int t = 0; t < k; ++t) {
    std::vector<Vertex> subset(t);
    for (int i = 0; i < t; ++i) subset[i] = i;
    do {
      for (const Vertex v : subset) removed[v] = 1;
      const SccPartition part = scc_masked(adj, removed);
      if (part.count > 1) {
        auto chosen = pick_small_extreme(extreme_components(adj, removed, part),
                                         static_cast<std::size_t>(n - t), 1);
        verdict.strongly_connected = t > 0;
        verdict.k_strong = false;
        // A condensation always has a source and a sink component whose sizes
        // sum to at most n - t, so `chosen` is always found.
        verdict.certificate = SeparationCertificate{subset, std::move(chosen->vertices),
                                                    chosen->direction};
        return verdict;
      }
      for (const Vertex v : subset) removed[v] = 0;
    } while (t > 0 && next_combination(subset, n));
  }
  verdict.strongly_connected = true;
  verdict.k_strong = true;
  return verdict;
}

std::optional<SourceSinkSet> find_source_or_sink_set(const LabeledMultiDigraph& g) {
  const Adjacency adj(g);
  const std::vector<char> none(g.vertex_count(), 0);
  const SccPartition part = scc_masked(adj, none);
  if (part.count <= 1) return std::nullopt;
  auto chosen = pick_small_extreme(extreme_components(adj, none, part),
                                   static_cast<std::size_t>(g.vertex_count()), 2);
  if (!chosen) return std::nullopt;
  return SourceSinkSet{std::move(chosen->vertices), chosen->direction};
}

CertificateCheck validate_certificate(const LabeledMultiDigraph& g,
                                      const SeparationCertificate& cert, int k) {
  CertificateCheck check;
  const int n = g.vertex_count();
  const auto fail = [&check](std::string why) {
    check.reason = std::move(why);
    return check;
  };
  if (static_cast<int>(cert.removed.size()) >= k) return fail("|T| must be below k");
  // 0 = rest, 1 = removed, 2 = in A
  std::vector<char> role(n, 0);
  for (const Vertex v : cert.removed) {
    if (v < 0 || v >= n) return fail("T contains a vertex outside the graph");
    if (role[v]) return fail("T contains a repeated vertex");
    role[v] = 1;
  }
  if (cert.vertices.empty()) return fail("A is empty");
  for (const Vertex v : cert.vertices) {
    if (v < 0 || v >= n) return fail("A contains a vertex outside the graph");
    if (role[v] == 1) return fail("A intersects T");
    if (role[v] == 2) return fail("A contains a repeated vertex");
    role[v] = 2;
  }
  if (2 * cert.vertices.size() > static_cast<std::size_t>(n) - cert.removed.size()) {
    return fail("|A| exceeds (n - |T|) / 2");
  }
  for (const auto& e : g.edges()) {
    if (e.tail == e.head || role[e.tail] == 1 || role[e.head] == 1) continue;
    const bool from_a = role[e.tail] == 2;
    const bool into_a = role[e.head] == 2;
    if (cert.direction == SetDirection::kSource && into_a && !from_a) {
      return fail("edge enters the claimed source set");
    }
    if (cert.direction == SetDirection::kSink && from_a && !into_a) {
      return fail("edge leaves the claimed sink set");
    }
  }
  check.valid = true;
  check.singleton = cert.vertices.size() == 1;
  return check;
}

}  // namespace dicore
