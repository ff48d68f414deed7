// Copyright 2026 The dicore Authors
// SPDX-License-Identifier: Apache-2.0

#include "dicore/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "dicore/error.hpp"
#include "dicore/graph_analysis.hpp"
#include "dicore/parallel.hpp"

namespace dicore {
namespace {

struct ReplicaOutcome {
  bool strongly_connected = false;
  bool k_strong = false;
  bool singleton = false;
  bool invalid = false;
  std::uint64_t attempts = 0;
};

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0) pts.emplace_back(std::log(x[i]), std::log(y[i]));
  }
  if (pts.size() < 2) return std::nullopt;
  double mx = 0.0, my = 0.0;
  for (const auto& [u, v] : pts) {
    mx += u;
    my += v;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [u, v] : pts) {
    sxx += (u - mx) * (u - mx);
    sxy += (u - mx) * (v - my);
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

ConnectivitySummary connectivity_experiment(const ConnectivityExperimentConfig& cfg) {
  if (cfg.k1 < 0 || cfg.k2 < 0 || cfg.reps < 0 || !(cfg.ratio > 0.0)) {
    throw PreconditionError("connectivity_experiment: need k1, k2, reps >= 0 and ratio > 0");
  }
  ConnectivitySummary s;
  s.config = cfg;
  s.k = cfg.k > 0 ? cfg.k : std::min(cfg.k1, cfg.k2);
  if (s.k < 1) throw PreconditionError("connectivity_experiment: k must be at least 1");
  for (const int n : cfg.n_values) {
    const auto m = static_cast<std::size_t>(std::ceil(cfg.ratio * n));
    std::ostringstream os;
    if (n < s.k + 1) {
      os << "connectivity_experiment: N = " << n << " is below k + 1";
    } else if (static_cast<double>(m) / n < std::max(cfg.k1, cfg.k2) + cfg.density_margin) {
      os << "connectivity_experiment: M/N = " << static_cast<double>(m) / n
         << " is below max(k1,k2) + eps at N = " << n;
    } else if (m > static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1)) {
      os << "connectivity_experiment: M exceeds N(N-1) at N = " << n;
    }
    if (!os.str().empty()) throw PreconditionError(os.str());
  }

  const int threads = thread_budget(cfg.threads);
  for (const int n : cfg.n_values) {
    const auto start = std::chrono::steady_clock::now();
    const auto m = static_cast<std::size_t>(std::ceil(cfg.ratio * n));
    std::vector<ReplicaOutcome> outcomes(static_cast<std::size_t>(cfg.reps));
    parallel_for(outcomes.size(), threads, [&](std::size_t r) {
      Rng rng = make_stream(cfg.seed, {static_cast<std::uint64_t>(n), m, r});
      SimpleDicoreSampler sampler(n, m, cfg.k1, cfg.k2, cfg.limits);
      const auto sample = sampler.sample(rng);
      const auto verdict = is_k_strongly_connected(sample.graph, s.k);
      ReplicaOutcome& o = outcomes[r];
      o.attempts = sample.attempts;
      o.strongly_connected = verdict.strongly_connected;
      o.k_strong = verdict.k_strong;
      if (verdict.certificate) {
        const auto check = validate_certificate(sample.graph, *verdict.certificate, s.k);
        o.invalid = !check.valid;
        o.singleton = check.singleton;
      }
    });
    ConnectivityRow row;
    row.n = n;
    row.m = m;
    row.reps = cfg.reps;
    double attempts = 0.0;
    for (const auto& o : outcomes) {
      row.not_strongly_connected += !o.strongly_connected;
      row.not_k_strong += !o.k_strong;
      row.strongly_connected += o.strongly_connected;
      row.k_strong_failures_among_sc += o.strongly_connected && !o.k_strong;
      row.singleton_certificates += o.singleton;
      row.invalid_certificates += o.invalid;
      attempts += static_cast<double>(o.attempts);
    }
    row.mean_attempts = cfg.reps ? attempts / cfg.reps : 0.0;
    row.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    s.rows.push_back(row);
  }

  std::vector<double> ns, not_sc, not_k;
  for (const auto& row : s.rows) {
    if (row.reps == 0) continue;
    ns.push_back(row.n);
    not_sc.push_back(row.fraction_not_sc());
    not_k.push_back(row.fraction_not_k_strong());
  }
  s.slope_not_sc = loglog_slope(ns, not_sc);
  s.slope_not_k_strong = loglog_slope(ns, not_k);
  std::vector<std::size_t> order(ns.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ns[a] < ns[b]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (not_sc[order[i]] > not_sc[order[i - 1]]) s.not_sc_nonincreasing = false;
  }
  return s;
}

void write_connectivity_csv(std::ostream& out, const ConnectivitySummary& s, bool include_timing) {
  const auto& c = s.config;
  out << "# schema=1\n";
  out << "k1,k2,k,N,M,reps,seed,not_strongly_connected,not_k_strong,sc_not_k_strong,"
         "frac_not_sc,frac_not_k_strong,mean_attempts";
  if (include_timing) out << ",wall_ms";
  out << '\n';
  for (const auto& r : s.rows) {
    if (r.reps == 0) continue;
    out << c.k1 << ',' << c.k2 << ',' << s.k << ',' << r.n << ',' << r.m << ',' << r.reps << ','
        << c.seed << ',' << r.not_strongly_connected << ',' << r.not_k_strong << ','
        << r.k_strong_failures_among_sc << ',' << format_real(r.fraction_not_sc()) << ','
        << format_real(r.fraction_not_k_strong()) << ',' << format_real(r.mean_attempts);
    if (include_timing) out << ',' << format_real(r.wall_ms);
    out << '\n';
  }
}

void write_connectivity_json(std::ostream& out, const ConnectivitySummary& s) {
  using nlohmann::json;
  const auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json rows = json::array();
  for (const auto& r : s.rows) {
    rows.push_back({{"N", r.n},
                    {"M", r.m},
                    {"reps", r.reps},
                    {"not_strongly_connected", r.not_strongly_connected},
                    {"not_k_strong", r.not_k_strong},
                    {"sc_not_k_strong", r.k_strong_failures_among_sc},
                    {"k_failure_among_sc", r.k_failure_among_sc()},
                    {"singleton_certificates", r.singleton_certificates},
                    {"invalid_certificates", r.invalid_certificates},
                    {"mean_attempts", r.mean_attempts}});
  }
  const json doc = {{"schema", 1},
                    {"k1", s.config.k1},
                    {"k2", s.config.k2},
                    {"k", s.k},
                    {"ratio", s.config.ratio},
                    {"seed", s.config.seed},
                    {"rows", rows},
                    {"slope_not_sc", opt(s.slope_not_sc)},
                    {"slope_not_k_strong", opt(s.slope_not_k_strong)},
                    {"not_sc_nonincreasing", s.not_sc_nonincreasing}};
  out << doc.dump(2) << '\n';
}

}  // namespace dicore
