// Copyright 2026 The dicore Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

namespace dicore {

using Vertex = std::int32_t;

struct Edge {
  Vertex tail;
  Vertex head;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Digraph on vertices 0..n-1 whose edges carry labels 0..m-1 (their position
// in the edge list). Loops and parallel edges are allowed.
class LabeledMultiDigraph {
 public:
  LabeledMultiDigraph() = default;
  // Throws std::out_of_range if an endpoint is not in [0, n).
  LabeledMultiDigraph(int n, std::vector<Edge> edges);

  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }

  std::vector<int> in_degrees() const;
  std::vector<int> out_degrees() const;

  // Set once a rejection step has verified that the graph is simple.
  bool marked_simple() const { return marked_simple_; }
  void mark_simple() { marked_simple_ = true; }

  // Sorts the edge list, discarding the labels.
  void canonicalize();

  // Subgraph induced by `vertices` (sorted, distinct), relabeled 0..|vertices|-1.
  LabeledMultiDigraph induced(std::span<const Vertex> vertices) const;

  friend bool operator==(const LabeledMultiDigraph& a, const LabeledMultiDigraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  bool marked_simple_ = false;
};

// Edge-list text format:
//   dicore N M k1 k2
//   tail head          (M lines, 0-based vertex ids)
// Lines starting with '#' are ignored when reading.
struct EdgeListHeader {
  int n = 0;
  std::size_t m = 0;
  int k1 = 0;
  int k2 = 0;
};

struct EdgeListFile {
  EdgeListHeader header;
  LabeledMultiDigraph graph;
};

class EdgeListParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_edge_list(std::ostream& out, const LabeledMultiDigraph& g, int k1, int k2);
EdgeListFile read_edge_list(std::istream& in);

// Compressed adjacency in both directions; loops are kept, callers that
// ignore them skip v -> v.
struct Adjacency {
  explicit Adjacency(const LabeledMultiDigraph& g);

  std::span<const Vertex> out(Vertex v) const {
    return {out_targets.data() + out_offsets[v], out_targets.data() + out_offsets[v + 1]};
  }
  std::span<const Vertex> in(Vertex v) const {
    return {in_sources.data() + in_offsets[v], in_sources.data() + in_offsets[v + 1]};
  }

  int n;
  std::vector<std::size_t> out_offsets;
  std::vector<Vertex> out_targets;
  std::vector<std::size_t> in_offsets;
  std::vector<Vertex> in_sources;
};

}  // namespace dicore
