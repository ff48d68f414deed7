// Copyright 2026 The dicore Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Exit codes: 0 success, 1 usage or I/O error,
// 2 precondition/domain error, 3 guard refusal, 4 attempt budget exhausted.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dicore/asymptotics.hpp"
#include "dicore/core_threshold.hpp"
#include "dicore/digraph.hpp"
#include "dicore/enumeration.hpp"
#include "dicore/exact_series.hpp"
#include "dicore/error.hpp"
#include "dicore/experiment.hpp"
#include "dicore/graph_analysis.hpp"
#include "dicore/sampler.hpp"
#include "dicore/simd/kernels.hpp"

using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kPrecondition = 2, kGuard = 3, kExhausted = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::istringstream is(item);
    T v{};
    if (!(is >> v) || !(is >> std::ws).eof()) {
      throw UsageError(std::string("cannot parse ") + what + " entry '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

// Output sink: a file when a path is given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("cannot open " + path + " for writing");
    }
  }
  std::ostream& get() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

dicore::EdgeListFile read_graph(const std::string& path) {
  if (path.empty() || path == "-") return dicore::read_edge_list(std::cin);
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return dicore::read_edge_list(in);
}

json count_json(const dicore::AsymptoticCount& a) {
  return {{"log_value", a.log_value},
          {"log_m_factorial", a.log_m_factorial},
          {"log_saddle", a.log_saddle},
          {"log_gaussian", a.log_gaussian},
          {"simplicity", a.simplicity},
          {"log_correction", a.log_correction},
          {"log_without_simplicity", a.log_without_simplicity()},
          {"z", a.z}};
}

json certificate_json(const dicore::SeparationCertificate& c) {
  return {{"removed", c.removed},
          {"set", c.vertices},
          {"direction", dicore::to_string(c.direction)}};
}

// Turns a JSON config object into "--key value" tokens. Arrays become
// comma-separated lists; booleans become bare flags when true.
std::vector<std::string> config_tokens(const json& cfg, std::string& command) {
  std::vector<std::string> tokens;
  for (const auto& [key, value] : cfg.items()) {
    if (key == "command") {
      command = value.get<std::string>();
      continue;
    }
    if (value.is_boolean()) {
      if (value.get<bool>()) tokens.push_back("--" + key);
      continue;
    }
    tokens.push_back("--" + key);
    if (value.is_array()) {
      std::string joined;
      for (const auto& v : value) {
        if (!joined.empty()) joined += ',';
        joined += v.is_string() ? v.get<std::string>() : v.dump();
      }
      tokens.push_back(joined);
    } else {
      tokens.push_back(value.is_string() ? value.get<std::string>() : value.dump());
    }
  }
  return tokens;
}

// Splices a --config file into argv: file values go right after the
// subcommand so that later command-line flags win.
std::vector<std::string> expand_config(int argc, char** argv, const std::vector<std::string>& commands) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config " + path);
  json cfg;
  try {
    in >> cfg;
  } catch (const json::exception& e) {
    throw UsageError("config " + path + ": " + e.what());
  }
  if (!cfg.is_object()) throw UsageError("config " + path + ": expected a JSON object");
  std::string command;
  const auto tokens = config_tokens(cfg, command);
  std::size_t pos = args.size();
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (std::find(commands.begin(), commands.end(), args[i]) != commands.end()) {
      pos = i;
      break;
    }
  }
  if (pos == args.size()) {
    if (command.empty()) throw UsageError("no subcommand on the command line or in the config");
    args.insert(args.begin(), command);
    pos = 0;
  }
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(pos) + 1, tokens.begin(), tokens.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counting and sampling of (k1,k2)-dicores"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON file of flag values; command-line flags override it");
  std::string simd = "";
  app.add_option("--simd", simd, "Force a kernel variant: scalar, avx2, neon");

  int N = 0, M = 0, k1 = 1, k2 = 1;
  std::uint64_t seed = 0;
  std::string out_path, summary_path, in_path;
  int threads = 0;
  bool timing = true;

  const auto add_nmk = [&](CLI::App* sub) {
    sub->add_option("--N", N, "Number of vertices")->required()->check(CLI::PositiveNumber);
    sub->add_option("--M", M, "Number of edges")->required()->check(CLI::NonNegativeNumber);
    sub->add_option("--k1", k1, "Minimum in-degree")->check(CLI::NonNegativeNumber);
    sub->add_option("--k2", k2, "Minimum out-degree")->check(CLI::NonNegativeNumber);
  };

  // count-exact
  auto* count_exact = app.add_subcommand("count-exact", "Exact number of admissible sequences S_{N,M}");
  add_nmk(count_exact);
  std::optional<int> nu;
  std::size_t mu1 = 0, mu12 = 0, mu2 = 0;
  bool brute = false, as_log = false;
  count_exact->add_option("--nu", nu, "Source-set size: count split sequences instead");
  count_exact->add_option("--mu1", mu1, "Edges inside the source set");
  count_exact->add_option("--mu12", mu12, "Edges from the source set to the rest");
  count_exact->add_option("--mu2", mu2, "Edges inside the rest");
  count_exact->add_flag("--brute", brute, "Also enumerate [N]^{2M} (refused beyond 1e8 sequences)");
  count_exact->add_flag("--log", as_log, "Print the natural log instead");

  // count-asym
  auto* count_asym = app.add_subcommand("count-asym", "Asymptotic number of simple (k1,k2)-dicores");
  add_nmk(count_asym);
  double eps = 0.05;
  count_asym->add_option("--eps", eps, "Density margin over max(k1,k2)");

  // c11
  auto* c11 = app.add_subcommand("c11", "Asymptotic number of strongly connected (1,1)-cores");
  c11->add_option("--N", N, "Number of vertices")->required()->check(CLI::PositiveNumber);
  c11->add_option("--M", M, "Number of edges")->required()->check(CLI::NonNegativeNumber);
  double gap_factor = 5.0;
  c11->add_option("--gap-factor", gap_factor, "Require M - N >= factor * N^(2/3)");

  // sample
  auto* sample = app.add_subcommand("sample", "Uniform simple (k1,k2)-dicore as an edge list");
  add_nmk(sample);
  sample->add_option("--seed", seed, "Master seed")->required();
  sample->add_option("--out", out_path, "Edge-list output path (default stdout)");
  std::uint64_t max_attempts = 100'000;
  bool multigraph = false;
  sample->add_option("--max-attempts", max_attempts, "Rejection budget for simplicity");
  sample->add_flag("--multigraph", multigraph, "Emit the multidigraph of one admissible sequence instead");

  // check
  auto* check = app.add_subcommand("check", "Strong and k-strong connectivity of an edge-list graph");
  check->add_option("--in", in_path, "Edge-list input path (default stdin)");
  int k_conn = 1;
  check->add_option("--k", k_conn, "Connectivity to test")->check(CLI::PositiveNumber);

  // peel
  auto* peel = app.add_subcommand("peel", "(k1,k2)-core of an edge-list graph or of a uniform multidigraph");
  peel->add_option("--in", in_path, "Edge-list input path");
  int n_small = 0;
  std::size_t m_small = 0;
  peel->add_option("--n", n_small, "Sample a uniform multidigraph on n vertices instead");
  peel->add_option("--m", m_small, "Edges of the sampled multidigraph");
  peel->add_option("--seed", seed, "Seed (required with --n)");
  peel->add_option("--k1", k1)->check(CLI::NonNegativeNumber);
  peel->add_option("--k2", k2)->check(CLI::NonNegativeNumber);
  bool trace = false;
  peel->add_flag("--trace", trace, "Random deletion order, recorded");
  peel->add_option("--out", out_path, "Write the core as an edge list");

  // cstar
  auto* cstar = app.add_subcommand("cstar", "Core emergence threshold c*(k1,k2)");
  cstar->add_option("--k1", k1)->check(CLI::NonNegativeNumber);
  cstar->add_option("--k2", k2)->check(CLI::NonNegativeNumber);
  dicore::ThresholdOptions topts;
  cstar->add_option("--step", topts.grid_step, "Coarse grid step");
  cstar->add_option("--tol", topts.tolerance, "Argmin tolerance");
  cstar->add_option("--zmax", topts.z_max, "Initial upper edge of the search box");

  // connectivity-experiment
  auto* conn = app.add_subcommand("connectivity-experiment",
                                  "Non-connectivity frequency of uniform simple dicores versus N");
  std::string n_list = "50,100,200";
  double ratio = 2.5;
  int reps = 0;
  int k_exp = 0;
  conn->add_option("--k1", k1)->check(CLI::NonNegativeNumber);
  conn->add_option("--k2", k2)->check(CLI::NonNegativeNumber);
  conn->add_option("--N-list", n_list, "Comma-separated vertex counts");
  conn->add_option("--ratio", ratio, "M = ceil(ratio * N)");
  conn->add_option("--reps", reps, "Samples per N")->check(CLI::NonNegativeNumber);
  conn->add_option("--k", k_exp, "Connectivity to test (default min(k1,k2))");
  conn->add_option("--eps", eps, "Density margin over max(k1,k2)");
  conn->add_option("--seed", seed, "Master seed")->required();
  conn->add_option("--threads", threads, "Worker threads (capped by DICORE_THREADS)");
  conn->add_option("--out", out_path, "CSV output path (default stdout)");
  conn->add_option("--summary", summary_path, "JSON summary path");
  conn->add_flag("!--no-timing", timing, "Omit the wall_ms column");

  // threshold-experiment
  auto* thr = app.add_subcommand("threshold-experiment", "Core sizes of D(n, m = floor(c n)) across c");
  std::string c_list;
  int n_thr = 1000;
  bool relative = false, connectivity = false;
  thr->add_option("--k1", k1)->check(CLI::NonNegativeNumber);
  thr->add_option("--k2", k2)->check(CLI::NonNegativeNumber);
  thr->add_option("--c-list", c_list, "Comma-separated densities")->required();
  thr->add_flag("--relative", relative, "Densities are offsets from c*(k1,k2)");
  thr->add_option("--n", n_thr, "Number of vertices")->check(CLI::PositiveNumber);
  thr->add_option("--reps", reps, "Replicas per density")->check(CLI::NonNegativeNumber);
  thr->add_option("--seed", seed, "Master seed")->required();
  thr->add_option("--threads", threads, "Worker threads (capped by DICORE_THREADS)");
  thr->add_flag("--connectivity", connectivity, "Test the simplified core for strong and min(k1,k2)-strong connectivity");
  thr->add_option("--out", out_path, "CSV output path (default stdout)");
  thr->add_flag("!--no-timing", timing, "Omit the wall_ms column");

  // diagnostics
  auto* diag = app.add_subcommand("diagnostics", "Source-set exponents H, K and their negativity scan");
  double sigma = 3.0, step = 1e-3;
  std::optional<double> rho;
  diag->add_option("--sigma", sigma, "M/N")->required();
  diag->add_option("--k1", k1)->check(CLI::PositiveNumber);
  diag->add_option("--rho", rho, "Evaluate at one fraction instead of scanning");
  diag->add_option("--step", step, "Scan step");

  std::vector<std::string> commands;
  for (const auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
    commands.push_back(sub->get_name());
  }

  try {
    auto args = expand_config(argc, argv, commands);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (!simd.empty()) {
      const dicore::simd::Isa isa = simd == "scalar" ? dicore::simd::Isa::kScalar
                                    : simd == "avx2" ? dicore::simd::Isa::kAvx2
                                    : simd == "neon" ? dicore::simd::Isa::kNeon
                                                     : throw UsageError("unknown --simd " + simd);
      if (!dicore::simd::isa_available(isa)) throw UsageError("kernel variant " + simd + " not available");
      dicore::simd::force_isa(isa);
    }
    const auto m = static_cast<std::size_t>(M);

    if (count_exact->parsed()) {
      if (nu) {
        dicore::SplitParams p{N, *nu, mu1, mu12, mu2, k1, k2};
        if (*nu < 0 || *nu > N) throw dicore::PreconditionError("--nu must lie in [0, N]");
        if (p.m() != m) throw dicore::PreconditionError("mu1 + mu12 + mu2 must equal M");
        const auto v = dicore::split_sequence_count(p);
        if (as_log) {
          std::cout << dicore::log_of(v) << '\n';
        } else {
          std::cout << v.get_str() << '\n';
        }
        return kOk;
      }
      const auto v = dicore::sequence_count(N, m, k1, k2);
      if (as_log) {
        std::cout << dicore::log_of(v) << '\n';
      } else {
        std::cout << v.get_str() << '\n';
      }
      if (brute) {
        const auto b = dicore::brute_force_sequence_count(N, m, k1, k2);
        std::cerr << "brute force: " << b << (mpz_class(b) == v ? " (agrees)" : " (DISAGREES)") << '\n';
        if (mpz_class(b) != v) return kExhausted;
      }
    } else if (count_asym->parsed()) {
      dicore::AsymptoticOptions opts;
      opts.density_margin = eps;
      std::cout << count_json(dicore::dicore_count_asymptotic(N, M, k1, k2, opts)).dump(2) << '\n';
    } else if (c11->parsed()) {
      dicore::StrongCoreOptions opts;
      opts.gap_factor = gap_factor;
      std::cout << count_json(dicore::scc_core_count_11(N, M, opts)).dump(2) << '\n';
    } else if (sample->parsed()) {
      dicore::Rng rng = dicore::make_stream(seed);
      Sink sink(out_path);
      if (multigraph) {
        const auto seq = dicore::sample_admissible_sequence(N, m, k1, k2, rng);
        dicore::write_edge_list(sink.get(), dicore::to_multidigraph(seq), k1, k2);
      } else {
        const auto s = dicore::sample_simple_dicore(N, m, k1, k2, rng, max_attempts);
        dicore::write_edge_list(sink.get(), s.graph, k1, k2);
        std::cerr << "attempts: " << s.attempts << '\n';
      }
    } else if (check->parsed()) {
      const auto file = read_graph(in_path);
      const auto verdict = dicore::is_k_strongly_connected(file.graph, k_conn);
      json j = {{"n", file.graph.vertex_count()},
                {"m", file.graph.edge_count()},
                {"strongly_connected", verdict.strongly_connected},
                {"k", verdict.k_tested},
                {"k_strong", verdict.k_strong}};
      if (verdict.certificate) {
        const auto cc = dicore::validate_certificate(file.graph, *verdict.certificate, k_conn);
        j["certificate"] = certificate_json(*verdict.certificate);
        j["certificate_valid"] = cc.valid;
        j["certificate_singleton"] = cc.singleton;
        if (!cc.valid) j["certificate_problem"] = cc.reason;
      }
      std::cout << j.dump(2) << '\n';
    } else if (peel->parsed()) {
      dicore::LabeledMultiDigraph g;
      dicore::Rng rng = dicore::make_stream(seed);
      if (n_small > 0) {
        if (peel->count("--seed") == 0) throw UsageError("--seed is required with --n");
        g = dicore::sample_uniform_multidigraph(n_small, m_small, rng);
      } else {
        g = read_graph(in_path).graph;
      }
      const auto r = trace ? dicore::peel_core_traced(g, k1, k2, rng) : dicore::peel_core(g, k1, k2);
      json j = {{"n", g.vertex_count()},
                {"m", g.edge_count()},
                {"core_vertices", r.core_vertices.size()},
                {"core_edges", r.core_edges},
                {"rounds", r.rounds}};
      if (trace) {
        json steps = json::array();
        for (const auto& s : r.trace) steps.push_back({s.vertex, dicore::to_string(s.reason)});
        j["trace"] = steps;
      }
      std::cout << j.dump(2) << '\n';
      if (!out_path.empty()) {
        Sink sink(out_path);
        dicore::write_edge_list(sink.get(), dicore::core_subgraph(g, r), k1, k2);
      }
    } else if (cstar->parsed()) {
      const auto r = dicore::c_star(k1, k2, topts);
      json j = {{"k1", k1},
                {"k2", k2},
                {"c_star", r.c_star},
                {"z1", r.z1},
                {"z2", r.z2},
                {"gap", r.gap},
                {"relative_gap", r.relative_gap},
                {"regime", dicore::to_string(r.regime)},
                {"boundary_hit", r.boundary_hit},
                {"grid_value", r.grid_value},
                {"z_max", r.z_max}};
      std::cout << j.dump(2) << '\n';
    } else if (conn->parsed()) {
      dicore::ConnectivityExperimentConfig cfg;
      cfg.k1 = k1;
      cfg.k2 = k2;
      cfg.n_values = parse_list<int>(n_list, "--N-list");
      cfg.ratio = ratio;
      cfg.reps = reps;
      cfg.seed = seed;
      cfg.k = k_exp;
      cfg.density_margin = eps;
      cfg.threads = threads;
      const auto s = dicore::connectivity_experiment(cfg);
      Sink sink(out_path);
      dicore::write_connectivity_csv(sink.get(), s, timing);
      if (!summary_path.empty()) {
        Sink js(summary_path);
        dicore::write_connectivity_json(js.get(), s);
      }
    } else if (thr->parsed()) {
      dicore::ThresholdExperimentConfig cfg;
      cfg.k1 = k1;
      cfg.k2 = k2;
      cfg.c_values = parse_list<double>(c_list, "--c-list");
      if (relative) {
        const double base = dicore::c_star(k1, k2).c_star;
        for (auto& c : cfg.c_values) c += base;
      }
      cfg.n = n_thr;
      cfg.reps = reps;
      cfg.seed = seed;
      cfg.check_connectivity = connectivity;
      cfg.threads = threads;
      const auto records = dicore::threshold_experiment(cfg);
      Sink sink(out_path);
      dicore::write_threshold_csv(sink.get(), records, timing);
    } else if (diag->parsed()) {
      if (rho) {
        const auto d = dicore::bound_diagnostics(*rho, sigma, k1);
        std::cout << json{{"rho", d.rho},           {"sigma", d.sigma}, {"k1", d.k1},
                          {"H", d.chernoff},        {"K", d.unit_tilt}, {"rho_star", d.rho_star},
                          {"u_min", d.u_min}}
                         .dump(2)
                  << '\n';
      } else {
        const auto r = dicore::scan_negativity(sigma, k1, step);
        json j = {{"sigma", r.sigma},
                  {"k1", r.k1},
                  {"step", r.step},
                  {"rho_star", r.rho_star},
                  {"points", r.points},
                  {"H_max", r.chernoff_max},
                  {"H_argmax", r.chernoff_argmax},
                  {"K_checked", r.unit_tilt_checked},
                  {"small_rho", r.small_rho},
                  {"small_rho_slope", r.small_rho_slope},
                  {"negative", r.ok()}};
        if (r.unit_tilt_checked) {
          j["K_max"] = r.unit_tilt_max;
          j["K_argmax"] = r.unit_tilt_argmax;
        }
        if (r.first_violation) j["first_violation"] = *r.first_violation;
        std::cout << j.dump(2) << '\n';
        if (!r.ok()) return kExhausted;
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const dicore::EdgeListParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const dicore::GuardError& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kGuard;
  } catch (const dicore::PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << '\n';
    return kPrecondition;
  } catch (const dicore::DomainError& e) {
    std::cerr << "domain: " << e.what() << '\n';
    return kPrecondition;
  } catch (const dicore::ExhaustedError& e) {
    std::cerr << "exhausted: " << e.what() << '\n';
    return kExhausted;
  } catch (const std::out_of_range& e) {
    std::cerr << "precondition: " << e.what() << '\n';
    return kPrecondition;
  }
  return kOk;
}
