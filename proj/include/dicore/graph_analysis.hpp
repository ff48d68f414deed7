// Copyright 2026 The dicore Authors
// SPDX-License-Identifier: Apache-2.0

// Strong and k-strong connectivity of (multi)digraphs. Parallel edges and
// loops never affect connectivity and are ignored throughout.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dicore/digraph.hpp"

namespace dicore {

struct SccPartition {
  int count = 0;
  std::vector<int> component;  // component id per vertex, ids in [0, count)

  std::vector<std::vector<Vertex>> members() const;
};

// Tarjan's algorithm, iterative, O(n + m).
SccPartition strongly_connected_components(const LabeledMultiDigraph& g);

bool is_strongly_connected(const LabeledMultiDigraph& g);

enum class SetDirection { kSource, kSink };

const char* to_string(SetDirection d);

// No edge enters (kSource) or leaves (kSink) `vertices` from/to the rest of
// the graph once `removed` is deleted.
struct SeparationCertificate {
  std::vector<Vertex> removed;   // T, |T| < k
  std::vector<Vertex> vertices;  // A, 1 <= |A| <= (n - |T|) / 2
  SetDirection direction = SetDirection::kSource;
};

struct ConnectivityVerdict {
  bool strongly_connected = false;
  int k_tested = 1;
  bool k_strong = false;
  std::optional<SeparationCertificate> certificate;  // present iff !k_strong
};

// k-strong connectivity by exhaustive deletion of every vertex set of size
// <= k-1, smallest sets first in lexicographic order. Requires k >= 1 and
// n >= k + 1 (PreconditionError otherwise).
ConnectivityVerdict is_k_strongly_connected(const LabeledMultiDigraph& g, int k);

struct SourceSinkSet {
  std::vector<Vertex> vertices;
  SetDirection direction;
};

// A source or sink strong component with 2 <= |A| <= n/2, if the graph is
// not strongly connected and one exists.
std::optional<SourceSinkSet> find_source_or_sink_set(const LabeledMultiDigraph& g);

struct CertificateCheck {
  bool valid = false;
  bool singleton = false;  // |A| == 1: impossible in a simple (k1,k2)-dicore with k1,k2 >= 2
  std::string reason;      // why the certificate is invalid
};

// Independent re-check of a certificate against the graph, by direct edge scan.
CertificateCheck validate_certificate(const LabeledMultiDigraph& g,
                                      const SeparationCertificate& cert, int k);

}  // namespace dicore
