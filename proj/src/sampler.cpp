// Copyright 2026 The dicore Authors
// SPDX-License-Identifier: Apache-2.0

#include "dicore/sampler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "dicore/error.hpp"
#include "dicore/truncated_poisson.hpp"

namespace dicore {
namespace {

void require_feasible(int n, std::size_t m, int k, const char* fn) {
  if (n < 1) {
    throw PreconditionError(std::string(fn) + ": need at least one vertex");
  }
  const std::size_t floor = static_cast<std::size_t>(std::max(k, 0)) * static_cast<std::size_t>(n);
  if (m < floor) {
    std::ostringstream os;
    os << fn << ": m = " << m << " is below k*n = " << floor;
    throw PreconditionError(os.str());
  }
}

}  // namespace

bool is_admissible(const AdmissibleSequence& seq) {
  if (seq.slots.size() != 2 * seq.m || seq.n < 1) return false;
  std::vector<int> in(seq.n, 0);
  std::vector<int> out(seq.n, 0);
  for (std::size_t r = 0; r < seq.m; ++r) {
    const Vertex t = seq.slots[2 * r];
    const Vertex h = seq.slots[2 * r + 1];
    if (t < 0 || t >= seq.n || h < 0 || h >= seq.n) return false;
    ++out[t];
    ++in[h];
  }
  for (int v = 0; v < seq.n; ++v) {
    if (in[v] < seq.k1 || out[v] < seq.k2) return false;
  }
  return true;
}

TruncatedPoissonSampler::TruncatedPoissonSampler(double z, int k) : z_(z), k_(std::max(k, 0)) {
  double p = k_ == 0 ? std::exp(-z) : floor_mass(z, k_);
  double cum = 0.0;
  for (int i = 0;; ++i) {
    if (i > 0) p *= z / (k_ + i);
    pmf_.push_back(p);
    cum += p;
    cdf_.push_back(cum);
    max_pmf_ = std::max(max_pmf_, p);
    if (k_ + i > z && (p < 1e-20 * max_pmf_ || 1.0 - cum < 1e-17)) break;
  }
  guide_.resize(std::bit_ceil(4 * cdf_.size()));
  std::uint32_t i = 0;
  for (std::size_t g = 0; g < guide_.size(); ++g) {
    const double u = static_cast<double>(g) / static_cast<double>(guide_.size());
    while (i + 1 < cdf_.size() && cdf_[i] <= u) ++i;
    guide_[g] = i;
  }
}

int TruncatedPoissonSampler::operator()(Rng& rng) const {
  const double u = uniform01(rng);
  auto i = static_cast<std::size_t>(guide_[static_cast<std::size_t>(u * static_cast<double>(guide_.size()))]);
  while (i < cdf_.size() && cdf_[i] <= u) ++i;
  if (i < cdf_.size()) return k_ + static_cast<int>(i);
  // Beyond the table: continue the recursion (mass below 1e-17).
  int j = k_ + static_cast<int>(pmf_.size()) - 1;
  double p = pmf_.back();
  double cum = cdf_.back();
  while (cum <= u && p > 0.0) {
    ++j;
    p *= z_ / j;
    cum += p;
  }
  return j;
}

double TruncatedPoissonSampler::pmf(int j) const {
  if (j < k_) return 0.0;
  const auto i = static_cast<std::size_t>(j - k_);
  if (i < pmf_.size()) return pmf_[i];
  return std::exp(j * std::log(z_) - std::lgamma(j + 1.0) - log_tail_series(z_, k_));
}

DegreeSequenceSampler::DegreeSequenceSampler(int n, std::size_t m, int k)
    : n_(n), m_(m), k_(std::max(k, 0)) {
  require_feasible(n, m, k_, "sample_degree_sequence");
  forced_ = n == 1 || m == static_cast<std::size_t>(k_) * static_cast<std::size_t>(n);
  if (!forced_) {
    dist_.emplace(solve_z(static_cast<double>(m) / n, k_), k_);
  }
}

void DegreeSequenceSampler::sample(Rng& rng, std::vector<int>& degrees,
                                   std::uint64_t max_attempts) const {
  degrees.assign(n_, k_);
  if (forced_) {
    if (n_ == 1) degrees[0] = static_cast<int>(m_);
    return;
  }
  const auto target = static_cast<long long>(m_);
  const long long reserve_last = k_;
  for (std::uint64_t attempt = 0; attempt < max_attempts; ++attempt) {
    long long sum = 0;
    bool overflow = false;
    for (int i = 0; i + 1 < n_; ++i) {
      degrees[i] = (*dist_)(rng);
      sum += degrees[i];
      if (sum > target - reserve_last) {
        overflow = true;
        break;
      }
    }
    if (overflow) continue;
    const auto last = static_cast<int>(target - sum);
    if (uniform01(rng) * dist_->max_pmf() < dist_->pmf(last)) {
      degrees[n_ - 1] = last;
      return;
    }
  }
  std::ostringstream os;
  os << "sample_degree_sequence: no sequence with sum " << m_ << " after " << max_attempts
     << " attempts";
  throw ExhaustedError(os.str(), max_attempts);
}

DegreeSequence sample_degree_sequence(int n, std::size_t m, int k, Rng& rng,
                                      std::uint64_t max_attempts) {
  const DegreeSequenceSampler sampler(n, m, k);
  DegreeSequence seq;
  seq.cutoff = sampler.cutoff();
  seq.total = m;
  sampler.sample(rng, seq.degrees, max_attempts);
  return seq;
}

LabeledMultiDigraph to_multidigraph(const AdmissibleSequence& seq) {
  std::vector<Edge> edges(seq.m);
  for (std::size_t r = 0; r < seq.m; ++r) edges[r] = {seq.slots[2 * r], seq.slots[2 * r + 1]};
  return LabeledMultiDigraph(seq.n, std::move(edges));
}

bool is_simple(const LabeledMultiDigraph& g) {
  std::vector<Edge> sorted(g.edges().begin(), g.edges().end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i].tail == sorted[i].head) return false;
    if (i > 0 && sorted[i] == sorted[i - 1]) return false;
  }
  return true;
}

SimpleDicoreSampler::SimpleDicoreSampler(int n, std::size_t m, int k1, int k2,
                                         SamplerLimits limits)
    : n_(n),
      m_(m),
      k1_(std::max(k1, 0)),
      k2_(std::max(k2, 0)),
      limits_(limits),
      in_sampler_(n, m, k1_),
      out_sampler_(n, m, k2_) {
  const std::size_t slots = std::bit_ceil(std::max<std::size_t>(4 * m, 16));
  seen_.assign(slots, 0);
  stamp_.assign(slots, 0);
}

void SimpleDicoreSampler::draw_degrees(Rng& rng) {
  in_sampler_.sample(rng, in_deg_, limits_.max_degree_attempts);
  out_sampler_.sample(rng, out_deg_, limits_.max_degree_attempts);
  const auto expand = [](const std::vector<int>& deg, std::vector<Vertex>& list) {
    list.clear();
    for (std::size_t v = 0; v < deg.size(); ++v) list.insert(list.end(), deg[v], static_cast<Vertex>(v));
  };
  expand(in_deg_, heads_);
  expand(out_deg_, tails_);
}

AdmissibleSequence SimpleDicoreSampler::sample_sequence(Rng& rng) {
  draw_degrees(rng);
  shuffle(std::span<Vertex>(heads_), rng);
  shuffle(std::span<Vertex>(tails_), rng);
  AdmissibleSequence seq{n_, m_, k1_, k2_, std::vector<Vertex>(2 * m_)};
  for (std::size_t r = 0; r < m_; ++r) {
    seq.slots[2 * r] = tails_[r];
    seq.slots[2 * r + 1] = heads_[r];
  }
  return seq;
}

bool SimpleDicoreSampler::try_once(Rng& rng) {
  draw_degrees(rng);
  shuffle(std::span<Vertex>(heads_), rng);
  if (++generation_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    generation_ = 1;
  }
  const std::size_t mask = seen_.size() - 1;
  const int shift = 64 - std::countr_zero(seen_.size());
  // Tails are shuffled lazily, edge by edge, so a loop or repeated pair
  // stops the attempt early; the prefix has the same law as a full shuffle.
  for (std::size_t r = 0; r < m_; ++r) {
    const std::size_t j = r + uniform_below(rng, m_ - r);
    std::swap(tails_[r], tails_[j]);
    const Vertex t = tails_[r];
    const Vertex h = heads_[r];
    if (t == h) return false;
    const std::uint64_t key = static_cast<std::uint64_t>(t) * static_cast<std::uint64_t>(n_) +
                              static_cast<std::uint64_t>(h);
    std::size_t slot = static_cast<std::size_t>((key * 0x9E3779B97F4A7C15ULL) >> shift) & mask;
    while (stamp_[slot] == generation_) {
      if (seen_[slot] == key) return false;
      slot = (slot + 1) & mask;
    }
    stamp_[slot] = generation_;
    seen_[slot] = key;
  }
  return true;
}

SimpleDicoreSample SimpleDicoreSampler::sample(Rng& rng) {
  for (std::uint64_t attempt = 1; attempt <= limits_.max_simple_attempts; ++attempt) {
    if (!try_once(rng)) continue;
    std::vector<Edge> edges(m_);
    for (std::size_t r = 0; r < m_; ++r) edges[r] = {tails_[r], heads_[r]};
    SimpleDicoreSample out{LabeledMultiDigraph(n_, std::move(edges)), attempt};
    out.graph.canonicalize();
    out.graph.mark_simple();
    return out;
  }
  std::ostringstream os;
  os << "sample_simple_dicore: no simple graph after " << limits_.max_simple_attempts
     << " attempts";
  throw ExhaustedError(os.str(), limits_.max_simple_attempts);
}

AdmissibleSequence sample_admissible_sequence(int n, std::size_t m, int k1, int k2, Rng& rng,
                                              const SamplerLimits& limits) {
  SimpleDicoreSampler sampler(n, m, k1, k2, limits);
  return sampler.sample_sequence(rng);
}

SimpleDicoreSample sample_simple_dicore(int n, std::size_t m, int k1, int k2, Rng& rng,
                                        std::uint64_t max_attempts) {
  const auto pairs = static_cast<std::size_t>(n) * static_cast<std::size_t>(std::max(n - 1, 0));
  if (m > pairs) {
    std::ostringstream os;
    os << "sample_simple_dicore: m = " << m << " exceeds n(n-1) = " << pairs;
    throw PreconditionError(os.str());
  }
  SamplerLimits limits;
  limits.max_simple_attempts = max_attempts;
  SimpleDicoreSampler sampler(n, m, k1, k2, limits);
  return sampler.sample(rng);
}

}  // namespace dicore
