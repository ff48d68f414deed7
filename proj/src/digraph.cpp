// Copyright 2026 The dicore Authors
// SPDX-License-Identifier: Apache-2.0

#include "dicore/digraph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace dicore {

LabeledMultiDigraph::LabeledMultiDigraph(int n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw std::out_of_range("LabeledMultiDigraph: negative vertex count");
  for (const auto& e : edges_) {
    if (e.tail < 0 || e.tail >= n || e.head < 0 || e.head >= n) {
      std::ostringstream os;
      os << "LabeledMultiDigraph: edge (" << e.tail << ", " << e.head << ") outside [0, " << n
         << ")";
      throw std::out_of_range(os.str());
    }
  }
}

std::vector<int> LabeledMultiDigraph::in_degrees() const {
  std::vector<int> d(n_, 0);
  for (const auto& e : edges_) ++d[e.head];
  return d;
}

std::vector<int> LabeledMultiDigraph::out_degrees() const {
  std::vector<int> d(n_, 0);
  for (const auto& e : edges_) ++d[e.tail];
  return d;
}

void LabeledMultiDigraph::canonicalize() { std::sort(edges_.begin(), edges_.end()); }

LabeledMultiDigraph LabeledMultiDigraph::induced(std::span<const Vertex> vertices) const {
  std::vector<Vertex> relabel(n_, -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) relabel[vertices[i]] = static_cast<Vertex>(i);
  std::vector<Edge> kept;
  for (const auto& e : edges_) {
    if (relabel[e.tail] >= 0 && relabel[e.head] >= 0) {
      kept.push_back({relabel[e.tail], relabel[e.head]});
    }
  }
  return LabeledMultiDigraph(static_cast<int>(vertices.size()), std::move(kept));
}

void write_edge_list(std::ostream& out, const LabeledMultiDigraph& g, int k1, int k2) {
  out << "dicore " << g.vertex_count() << ' ' << g.edge_count() << ' ' << k1 << ' ' << k2
      << '\n';
  for (const auto& e : g.edges()) out << e.tail << ' ' << e.head << '\n';
}

EdgeListFile read_edge_list(std::istream& in) {
  std::string line;
  const auto next_line = [&]() {
    while (std::getline(in, line)) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next_line()) throw EdgeListParseError("edge list: missing header line");
  EdgeListFile file;
  {
    std::istringstream hs(line);
    std::string tag;
    long long n = -1;
    long long m = -1;
    if (!(hs >> tag >> n >> m >> file.header.k1 >> file.header.k2) || tag != "dicore" || n < 0 ||
        m < 0) {
      throw EdgeListParseError("edge list: header must be 'dicore N M k1 k2', got '" + line + "'");
    }
    file.header.n = static_cast<int>(n);
    file.header.m = static_cast<std::size_t>(m);
  }
  std::vector<Edge> edges;
  edges.reserve(file.header.m);
  while (edges.size() < file.header.m && next_line()) {
    std::istringstream ls(line);
    long long t = -1;
    long long h = -1;
    if (!(ls >> t >> h)) throw EdgeListParseError("edge list: malformed edge line '" + line + "'");
    if (t < 0 || h < 0 || t >= file.header.n || h >= file.header.n) {
      throw EdgeListParseError("edge list: vertex id out of range in '" + line + "'");
    }
    edges.push_back({static_cast<Vertex>(t), static_cast<Vertex>(h)});
  }
  if (edges.size() != file.header.m) {
    std::ostringstream os;
    os << "edge list: header promises " << file.header.m << " edges, found " << edges.size();
    throw EdgeListParseError(os.str());
  }
  if (next_line()) throw EdgeListParseError("edge list: trailing content after last edge");
  file.graph = LabeledMultiDigraph(file.header.n, std::move(edges));
  return file;
}

Adjacency::Adjacency(const LabeledMultiDigraph& g)
    : n(g.vertex_count()), out_offsets(n + 1, 0), in_offsets(n + 1, 0) {
  for (const auto& e : g.edges()) {
    ++out_offsets[e.tail + 1];
    ++in_offsets[e.head + 1];
  }
  for (int v = 0; v < n; ++v) {
    out_offsets[v + 1] += out_offsets[v];
    in_offsets[v + 1] += in_offsets[v];
  }
  out_targets.resize(g.edge_count());
  in_sources.resize(g.edge_count());
  std::vector<std::size_t> out_fill(out_offsets.begin(), out_offsets.end() - 1);
  std::vector<std::size_t> in_fill(in_offsets.begin(), in_offsets.end() - 1);
  for (const auto& e : g.edges()) {
    out_targets[out_fill[e.tail]++] = e.head;
    in_sources[in_fill[e.head]++] = e.tail;
  }
}

}  // namespace dicore
