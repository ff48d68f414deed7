// Copyright 2026 The dicore Authors
// SPDX-License-Identifier: Apache-2.0

#include "dicore/core_threshold.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "dicore/error.hpp"
#include "dicore/graph_analysis.hpp"
#include "dicore/parallel.hpp"
#include "dicore/simd/kernels.hpp"
#include "dicore/truncated_poisson.hpp"

namespace dicore {

LabeledMultiDigraph sample_uniform_multidigraph(int n, std::size_t m, Rng& rng) {
  if (n < 1) throw PreconditionError("sample_uniform_multidigraph: need n >= 1");
  std::vector<Edge> edges(m);
  const auto bound = static_cast<std::uint64_t>(n);
  for (auto& e : edges) {
    e.tail = static_cast<Vertex>(uniform_below(rng, bound));
    e.head = static_cast<Vertex>(uniform_below(rng, bound));
  }
  return LabeledMultiDigraph(n, std::move(edges));
}

const char* to_string(LightReason r) {
  return r == LightReason::kInLight ? "in-light" : "out-light";
}

namespace {

struct PeelState {
  PeelState(const LabeledMultiDigraph& g, int k1, int k2)
      : adj(g), k1(k1), k2(k2), in(g.vertex_count()), out(g.vertex_count()),
        alive(g.vertex_count(), 1) {
    for (Vertex v = 0; v < adj.n; ++v) {
      in[v] = static_cast<int>(adj.in(v).size());
      out[v] = static_cast<int>(adj.out(v).size());
    }
  }

  bool light(Vertex v) const { return in[v] < k1 || out[v] < k2; }

  // Removes v; calls on_light(w) for each surviving neighbour whose degree dropped.
  template <typename F>
  void remove(Vertex v, F&& on_light) {
    alive[v] = 0;
    for (const Vertex w : adj.out(v)) {
      if (w == v || !alive[w]) continue;
      --in[w];
      if (light(w)) on_light(w);
    }
    for (const Vertex u : adj.in(v)) {
      if (u == v || !alive[u]) continue;
      --out[u];
      if (light(u)) on_light(u);
    }
  }

  PeelResult finish(const LabeledMultiDigraph& g, std::size_t rounds) const {
    PeelResult r;
    r.rounds = rounds;
    for (Vertex v = 0; v < adj.n; ++v) {
      if (alive[v]) r.core_vertices.push_back(v);
    }
    for (const auto& e : g.edges()) {
      if (alive[e.tail] && alive[e.head]) ++r.core_edges;
    }
    return r;
  }

  Adjacency adj;
  int k1;
  int k2;
  std::vector<int> in;
  std::vector<int> out;
  std::vector<char> alive;
};

}  // namespace

PeelResult peel_core(const LabeledMultiDigraph& g, int k1, int k2) {
  PeelState st(g, k1, k2);
  const int n = g.vertex_count();
  std::vector<char> queued(n, 0);
  std::vector<Vertex> work;
  for (Vertex v = 0; v < n; ++v) {
    if (st.light(v)) {
      queued[v] = 1;
      work.push_back(v);
    }
  }
  std::size_t rounds = 0;
  while (!work.empty()) {
    const Vertex v = work.back();
    work.pop_back();
    ++rounds;
    st.remove(v, [&](Vertex w) {
      if (!queued[w]) {
        queued[w] = 1;
        work.push_back(w);
      }
    });
  }
  return st.finish(g, rounds);
}

PeelResult peel_core_traced(const LabeledMultiDigraph& g, int k1, int k2, Rng& rng) {
  PeelState st(g, k1, k2);
  const int n = g.vertex_count();
  std::vector<Vertex> light;
  std::vector<std::ptrdiff_t> pos(n, -1);
  const auto add = [&](Vertex w) {
    if (pos[w] >= 0) return;
    pos[w] = static_cast<std::ptrdiff_t>(light.size());
    light.push_back(w);
  };
  for (Vertex v = 0; v < n; ++v) {
    if (st.light(v)) add(v);
  }
  std::vector<PeelStep> trace;
  while (!light.empty()) {
    const auto i = static_cast<std::size_t>(uniform_below(rng, light.size()));
    const Vertex v = light[i];
    light[i] = light.back();
    pos[light[i]] = static_cast<std::ptrdiff_t>(i);
    light.pop_back();
    trace.push_back({v, st.in[v] < k1 ? LightReason::kInLight : LightReason::kOutLight});
    st.remove(v, add);
  }
  PeelResult r = st.finish(g, trace.size());
  r.trace = std::move(trace);
  return r;
}

LabeledMultiDigraph core_subgraph(const LabeledMultiDigraph& g, const PeelResult& r) {
  return g.induced(r.core_vertices);
}

// --- threshold --------------------------------------------------------------

ThresholdTerms threshold_terms(double z1, double z2, int k1, int k2) {
  return {z1 / (tail_prob(z1, k1) * tail_prob(z2, k2 - 1)),
          z2 / (tail_prob(z1, k1 - 1) * tail_prob(z2, k2))};
}

const char* to_string(ThresholdRegime r) {
  switch (r) {
    case ThresholdRegime::kRidge:
      return "ridge";
    case ThresholdRegime::kTerm1Dominates:
      return "term1";
    case ThresholdRegime::kTerm2Dominates:
      return "term2";
  }
  return "?";
}

namespace {

struct GridHit {
  double value;
  std::size_t i;
  std::size_t j;
};

GridHit grid_search(int k1, int k2, double h, std::size_t count) {
  std::vector<double> a(count), b(count), c(count), d(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double z = static_cast<double>(i + 1) * h;
    a[i] = z / tail_prob(z, k1);
    c[i] = 1.0 / tail_prob(z, k1 - 1);
    b[i] = 1.0 / tail_prob(z, k2 - 1);
    d[i] = z / tail_prob(z, k2);
  }
  GridHit best{std::numeric_limits<double>::infinity(), 0, 0};
  for (std::size_t i = 0; i < count; ++i) {
    const auto hit = simd::minimax_row(a[i], c[i], b, d);
    if (hit.value < best.value) best = {hit.value, i, hit.index};
  }
  return best;
}

struct GoldenResult {
  double x;
  double value;
  int iterations;
  bool converged;
};

template <typename F>
GoldenResult golden_minimize(F&& f, double lo, double hi, double tol, int max_iter = 300) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  int it = 0;
  while (hi - lo > tol && it < max_iter) {
    ++it;
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? GoldenResult{x1, f1, it, hi - lo <= tol}
                  : GoldenResult{x2, f2, it, hi - lo <= tol};
}

}  // namespace

ThresholdResult c_star(int k1, int k2, const ThresholdOptions& opts) {
  if (k1 < 0 || k2 < 0 || std::max(k1, k2) < 2) {
    throw PreconditionError("c_star: need k1, k2 >= 0 and max(k1, k2) >= 2");
  }
  if (!(opts.grid_step > 0.0) || !(opts.tolerance > 0.0)) {
    throw PreconditionError("c_star: grid step and tolerance must be positive");
  }
  const double h = opts.grid_step;
  double z_max = opts.z_max > 0.0 ? opts.z_max : 2.0 * std::max(k1, k2) + 10.0;
  std::size_t count = 0;
  GridHit grid{};
  for (int doubling = 0;; ++doubling) {
    count = static_cast<std::size_t>(std::llround(z_max / h));
    grid = grid_search(k1, k2, h, count);
    const bool upper_edge = grid.i + 1 == count || grid.j + 1 == count;
    if (!upper_edge || doubling >= opts.max_doublings) break;
    z_max *= 2.0;
  }
  ThresholdResult res;
  res.grid_value = grid.value;
  res.z_max = z_max;
  res.boundary_hit = grid.i == 0 || grid.j == 0 || grid.i + 1 == count || grid.j + 1 == count;

  const double lo = h * 1e-3;
  const auto objective = [&](double z1, double z2) {
    const auto t = threshold_terms(z1, z2, k1, k2);
    return std::max(t.term1, t.term2);
  };
  // For fixed z1 the first term decreases and the second is quasi-convex in
  // z2, so their max is quasi-convex and a golden search over all of (0, z_max] is safe.
  int inner_iterations = 0;
  bool inner_converged = true;
  const auto inner = [&](double z1) {
    const auto r =
        golden_minimize([&](double z2) { return objective(z1, z2); }, lo, z_max, opts.tolerance * 1e-2);
    inner_iterations += r.iterations;
    inner_converged = inner_converged && r.converged;
    return r;
  };
  const double z1_grid = static_cast<double>(grid.i + 1) * h;
  const auto outer = golden_minimize([&](double z1) { return inner(z1).value; },
                                     std::max(lo, z1_grid - 2.0 * h),
                                     std::min(z_max, z1_grid + 2.0 * h), opts.tolerance * 0.1);
  const auto best_inner = inner(outer.x);
  res.refinement_iterations = outer.iterations;

  double z1 = outer.x;
  double z2 = best_inner.x;
  double value = best_inner.value;
  if (!(value <= grid.value * (1.0 + 1e-12))) {
    // Only possible if the outer profile is not unimodal near the grid optimum.
    std::ostringstream os;
    os.precision(12);
    os << "c_star: refinement did not improve on the grid; best iterate z1=" << z1_grid
       << " z2=" << (grid.j + 1) * h << " value=" << grid.value;
    throw ExhaustedError(os.str(), static_cast<std::uint64_t>(outer.iterations));
  }
  if (!outer.converged || !inner_converged) {
    std::ostringstream os;
    os.precision(12);
    os << "c_star: refinement did not converge; best iterate z1=" << z1 << " z2=" << z2
       << " value=" << value;
    throw ExhaustedError(os.str(), static_cast<std::uint64_t>(outer.iterations));
  }
  const auto t = threshold_terms(z1, z2, k1, k2);
  res.c_star = value;
  res.z1 = z1;
  res.z2 = z2;
  res.gap = std::abs(t.term1 - t.term2);
  res.relative_gap = res.gap / value;
  if (res.relative_gap <= opts.ridge_tolerance) {
    res.regime = ThresholdRegime::kRidge;
  } else {
    res.regime = t.term1 > t.term2 ? ThresholdRegime::kTerm1Dominates
                                   : ThresholdRegime::kTerm2Dominates;
  }
  return res;
}

// --- experiment ---------------------------------------------------------------

namespace {

LabeledMultiDigraph simplified(const LabeledMultiDigraph& g) {
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const auto& e : g.edges()) {
    if (e.tail != e.head) edges.push_back(e);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return LabeledMultiDigraph(g.vertex_count(), std::move(edges));
}

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

std::vector<ThresholdRecord> threshold_experiment(const ThresholdExperimentConfig& cfg) {
  if (cfg.n < 1 || cfg.reps < 0 || cfg.k1 < 0 || cfg.k2 < 0) {
    throw PreconditionError("threshold_experiment: need n >= 1, reps >= 0, k1, k2 >= 0");
  }
  for (const double c : cfg.c_values) {
    if (!(c >= 0.0)) throw PreconditionError("threshold_experiment: c must be nonnegative");
  }
  const auto reps = static_cast<std::size_t>(cfg.reps);
  std::vector<ThresholdRecord> records(cfg.c_values.size() * reps);
  parallel_for(records.size(), thread_budget(cfg.threads), [&](std::size_t idx) {
    const auto start = std::chrono::steady_clock::now();
    const double c = cfg.c_values[idx / reps];
    const int rep = static_cast<int>(idx % reps);
    ThresholdRecord& rec = records[idx];
    rec.k1 = cfg.k1;
    rec.k2 = cfg.k2;
    rec.c = c;
    rec.n = cfg.n;
    rec.rep = rep;
    rec.seed = cfg.seed;
    rec.m = static_cast<std::size_t>(std::floor(c * cfg.n));
    Rng rng = make_stream(cfg.seed, {std::bit_cast<std::uint64_t>(c),
                                     static_cast<std::uint64_t>(cfg.n),
                                     static_cast<std::uint64_t>(rep)});
    const auto g = sample_uniform_multidigraph(cfg.n, rec.m, rng);
    const auto peeled = peel_core(g, cfg.k1, cfg.k2);
    rec.core_vertices = peeled.core_vertices.size();
    rec.core_edges = peeled.core_edges;
    if (cfg.check_connectivity && !peeled.core_vertices.empty()) {
      const auto core = simplified(core_subgraph(g, peeled));
      rec.strongly_connected = is_strongly_connected(core);
      const int k = std::min(cfg.k1, cfg.k2);
      if (k >= 1 && core.vertex_count() >= k + 1) {
        rec.k_strong = is_k_strongly_connected(core, k).k_strong;
      }
    }
    rec.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
  });
  return records;
}

void write_threshold_csv(std::ostream& out, const std::vector<ThresholdRecord>& records,
                         bool include_timing) {
  const auto flag = [](const std::optional<bool>& b) -> std::string {
    return b ? (*b ? "1" : "0") : "";
  };
  out << "# schema=1\n";
  out << "k1,k2,c,n,rep,seed,core_vertices,core_edges,strongly_connected,k_strong";
  if (include_timing) out << ",wall_ms";
  out << '\n';
  for (const auto& r : records) {
    out << r.k1 << ',' << r.k2 << ',' << format_real(r.c) << ',' << r.n << ',' << r.rep << ','
        << r.seed << ',' << r.core_vertices << ',' << r.core_edges << ','
        << flag(r.strongly_connected) << ',' << flag(r.k_strong);
    if (include_timing) out << ',' << format_real(r.wall_ms);
    out << '\n';
  }
}

}  // namespace dicore
