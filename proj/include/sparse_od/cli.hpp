// Copyright 2026 The sparse_od Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Every subcommand first resolves its flags (and an
// optional --config JSON) into one config object, then execute() runs that
// object. The config is written next to the output as <output>.manifest.json,
// and `rerun` feeds it back through execute().

#ifndef SPARSE_OD_CLI_HPP_
#define SPARSE_OD_CLI_HPP_

#include <chrono>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sparse_od/estimator.hpp"
#include "sparse_od/experiments.hpp"
#include "sparse_od/fixtures.hpp"
#include "sparse_od/io.hpp"
#include "sparse_od/version.hpp"

namespace sparse_od::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 2,
  kValidation = 3,
  kInfeasible = 4,
  kIterationLimit = 5,
};

// Bad flag combinations found after parsing (missing delta, delta < 0, ...).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kSeedEnv = "SPARSE_OD_SEED";
inline constexpr std::uint64_t kDefaultSeed = 1;

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

namespace detail {

inline std::string timestamp_utc() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Fixture names pass through; files become absolute so manifests rerun from
// any directory.
inline std::string resolve_input(const std::string& s) {
  if (s.empty() || is_fixture_name(s)) return s;
  return std::filesystem::absolute(s).lexically_normal().string();
}

inline std::uint64_t default_seed() {
  if (const char* env = std::getenv(kSeedEnv)) {
    return static_cast<std::uint64_t>(parse_int(env, kSeedEnv));
  }
  return kDefaultSeed;
}

inline Json read_json_file(const std::string& path) {
  return parse_json(read_text_file(path), path);
}

struct Inputs {
  Fixture fx;  // network, paths and all links
};

inline Inputs load_inputs(const Json& cfg, bool need_paths = true) {
  Inputs in;
  const std::string net = cfg.value("network", std::string());
  const std::string paths = cfg.value("paths", std::string());
  if (net.empty()) throw UsageError("--network is required");
  if (is_fixture_name(net)) {
    in.fx = fixture_by_name(net);
  } else {
    in.fx.name = net;
    in.fx.network = network_from_json(read_json_file(net));
    for (const auto& l : in.fx.network.links()) in.fx.links.push_back(l.id);
    if (paths.empty() && need_paths) {
      throw UsageError("--paths is required with a network file");
    }
  }
  if (!paths.empty()) {
    in.fx.paths = is_fixture_name(paths)
                      ? fixture_by_name(paths).paths
                      : paths_from_json(in.fx.network, read_json_file(paths));
    if (is_fixture_name(paths)) {
      // Re-validate against the chosen network.
      in.fx.paths = PathTable(in.fx.network, in.fx.paths.paths());
    }
  }
  return in;
}

inline Support support_from_json(const Json& a, std::size_t num_paths) {
  Support s;
  for (const auto& v : a) {
    const long long p = v.get<long long>();
    if (p < 1 || p > static_cast<long long>(num_paths)) {
      throw Error(ErrorCode::SOutOfRange, "support path " + std::to_string(p) +
                                              " outside 1.." + std::to_string(num_paths));
    }
    s.push_back(static_cast<std::size_t>(p - 1));
  }
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
    throw Error(ErrorCode::InvalidArgument, "support lists a path twice");
  }
  return s;
}

inline FlowRange flow_range_from(const Json& cfg) {
  if (!cfg.contains("flow_range")) return kDefaultFlowRange;
  const Json& r = cfg.at("flow_range");
  FlowRange fr{r.at(0).get<double>(), r.at(1).get<double>()};
  if (!(fr.first > 0.0 && fr.second >= fr.first)) {
    throw Error(ErrorCode::InvalidArgument, "flow_range must satisfy 0 < lo <= hi");
  }
  return fr;
}

inline std::vector<std::size_t> size_list(const Json& a, const char* what) {
  std::vector<std::size_t> out;
  for (const auto& v : a) {
    const long long x = v.get<long long>();
    if (x < 0) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be >= 0");
    out.push_back(static_cast<std::size_t>(x));
  }
  return out;
}

// "1-10", "5,6,8" or "2-4,9" -> list.
inline std::vector<long long> parse_range_list(const std::string& s) {
  std::vector<long long> out;
  std::istringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto dash = part.find('-', 1);
    if (dash == std::string::npos) {
      out.push_back(parse_int(part, "list"));
    } else {
      const long long a = parse_int(part.substr(0, dash), "range");
      const long long b = parse_int(part.substr(dash + 1), "range");
      if (b < a) throw UsageError("empty range '" + part + "'");
      for (long long v = a; v <= b; ++v) out.push_back(v);
    }
  }
  return out;
}

inline int exit_for(Status s) {
  switch (s) {
    case Status::Optimal: return kSuccess;
    case Status::Infeasible:
    case Status::Unbounded: return kInfeasible;
    case Status::IterationLimit: return kIterationLimit;
  }
  return kValidation;
}

inline std::string output_path(const Json& cfg) {
  const std::string out = cfg.value("output", std::string());
  if (out.empty()) throw UsageError("--output is required");
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// commands; each takes a fully resolved config

inline int cmd_enumerate(const Json& cfg, Streams io) {
  const detail::Inputs in = detail::load_inputs(cfg, false);
  PathFilter filter;
  if (cfg.contains("max_links")) filter.max_links = cfg["max_links"].get<int>();
  if (cfg.contains("max_turns")) filter.max_turns = cfg["max_turns"].get<int>();
  if (cfg.contains("max_length_ratio")) {
    filter.max_length_ratio = cfg["max_length_ratio"].get<double>();
  }
  std::vector<OdPair> ods;
  for (const auto& od : cfg.value("od", Json::array())) {
    ods.push_back({od.at(0).get<std::string>(), od.at(1).get<std::string>()});
  }
  if (ods.empty()) {
    if (!is_fixture_name(cfg.value("network", std::string()))) {
      throw UsageError("--od is required with a network file");
    }
    ods = in.fx.paths.od_pairs();
  }
  std::vector<Path> all;
  std::vector<std::string> notes;
  for (const OdPair& od : ods) {
    auto found = enumerate_paths(in.fx.network, od, filter, &notes);
    if (found.empty()) {
      io.err << "warning: no path for " << od.origin << " -> " << od.destination
             << " passes the filters\n";
    }
    all.insert(all.end(), found.begin(), found.end());
  }
  std::sort(notes.begin(), notes.end());
  notes.erase(std::unique(notes.begin(), notes.end()), notes.end());
  for (const auto& n : notes) io.err << "note: " << n << "\n";
  if (all.empty()) io.err << "warning: filters excluded every path\n";
  const PathTable pt(in.fx.network, std::move(all));
  write_text_file(detail::output_path(cfg), dump_json(paths_to_json(pt)));
  io.out << "K=" << pt.num_od_pairs() << " N=" << pt.num_paths() << "\n";
  return kSuccess;
}

namespace detail {

inline MeasurementSystem system_for(const Inputs& in, const Json& cfg, Measurements& m) {
  const bool dynamic = cfg.value("dynamic", false);
  if (!dynamic) {
    if (m.dynamic) {
      throw Error(ErrorCode::Parse, "measurements have a time column; pass --dynamic");
    }
    return build_static_incidence(in.fx.paths, m.links);
  }
  if (!m.dynamic) {
    throw Error(ErrorCode::Parse, "--dynamic needs a link_id,time,count file");
  }
  if (cfg.contains("times") && !cfg["times"].empty()) {
    m = restrict_times(m, cfg["times"].get<std::vector<int>>());
  }
  return build_dynamic_system(in.fx.paths, in.fx.network, m.links, m.times);
}

}  // namespace detail

inline int cmd_estimate(const Json& cfg, Streams io) {
  const std::string method = cfg.value("method", std::string("l1"));
  const bool noisy = method == "l1-noisy" || method == "l2-noisy";
  if (noisy && !cfg.contains("delta")) throw UsageError(method + " needs --delta");
  if (cfg.contains("delta") && !(cfg["delta"].get<double>() >= 0.0)) {
    throw UsageError("--delta must be nonnegative");
  }
  if (method == "weighted" && !cfg.contains("weights")) {
    throw UsageError("weighted needs --weights");
  }
  if (cfg.value("measurements", std::string()).empty()) {
    throw UsageError("--measurements is required");
  }
  const detail::Inputs in = detail::load_inputs(cfg);
  Measurements m = measurements_from_csv(read_text_file(cfg["measurements"]));
  const MeasurementSystem ms = detail::system_for(in, cfg, m);
  const Eigen::VectorXd& y = m.counts;

  EstimationResult r;
  if (method == "l1") {
    r = estimate_l1(ms, y);
  } else if (method == "l2") {
    r = estimate_l2(ms, y);
  } else if (method == "l1-noisy") {
    r = estimate_l1_noisy(ms, y, cfg["delta"].get<double>());
  } else if (method == "l2-noisy") {
    r = estimate_l2_noisy(ms, y, cfg["delta"].get<double>());
  } else if (method == "weighted") {
    const Eigen::VectorXd w = path_values_from_csv(
        read_text_file(cfg["weights"]), "weight", in.fx.paths.num_paths());
    r = estimate_weighted_l1(ms, y, column_lengths(ms, w));
  } else if (method == "reweighted") {
    r = reweighted_l1(ms, y, cfg.value("iterations", 4));
  } else {
    throw UsageError("unknown method '" + method + "'");
  }

  Json j = result_to_json(r, ms);
  if (cfg.contains("delta")) j["delta"] = json_number(cfg["delta"].get<double>());
  if (cfg.contains("truth")) {
    if (ms.mode != SystemMode::Static) {
      throw UsageError("--truth is only supported for static estimates");
    }
    const Eigen::VectorXd truth = path_values_from_csv(
        read_text_file(cfg["truth"]), "flow", in.fx.paths.num_paths());
    const double tol = cfg.value("tol", 1e-6);
    const RecoveryCheck c = check_recovery(r.x, truth, in.fx.paths, tol);
    j["recovery"] = {{"tol", json_number(tol)},
                     {"path_alloc", c.path_alloc},
                     {"od_flow", c.od_flow},
                     {"total_flow", c.total_flow},
                     {"error", json_number(c.error)}};
  }
  write_text_file(detail::output_path(cfg), dump_json(j));
  io.out << method << ": " << to_string(r.status) << ", objective "
         << format_double(r.objective) << ", " << r.sparsity << " nonzero\n";
  if (!r.optimal()) io.err << "error: solver status " << to_string(r.status) << "\n";
  return detail::exit_for(r.status);
}

inline int cmd_vmt(const Json& cfg, Streams io) {
  if (cfg.value("measurements", std::string()).empty()) {
    throw UsageError("--measurements is required");
  }
  const bool unit = cfg.value("unit", false);
  if (unit && cfg.contains("lengths")) throw UsageError("--unit and --lengths conflict");
  const detail::Inputs in = detail::load_inputs(cfg);
  Measurements m = measurements_from_csv(read_text_file(cfg["measurements"]));
  const MeasurementSystem ms = detail::system_for(in, cfg, m);
  Eigen::VectorXd v;
  if (unit) {
    v = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(in.fx.paths.num_paths()));
  } else if (cfg.contains("lengths")) {
    v = path_values_from_csv(read_text_file(cfg["lengths"]), "length",
                             in.fx.paths.num_paths());
  } else {
    v = path_lengths(in.fx.network, in.fx.paths);
  }
  const VmtBounds b = vmt_bounds(ms, m.counts, column_lengths(ms, v));
  write_text_file(detail::output_path(cfg), dump_json(vmt_to_json(b, ms)));
  io.out << "lower " << format_double(b.vmt_lower) << " (" << to_string(b.status_lower)
         << "), upper " << format_double(b.vmt_upper) << " (" << to_string(b.status_upper)
         << ")\n";
  if (b.status_upper == Status::Unbounded || b.status_lower == Status::Unbounded) {
    io.err << "error: Unbounded";
    for (std::size_t c : b.unbounded_columns) {
      io.err << " p" << ms.cols[c].path + 1 << " crosses no measured link;";
    }
    io.err << "\n";
    return kInfeasible;
  }
  return std::max(detail::exit_for(b.status_lower), detail::exit_for(b.status_upper));
}

inline int cmd_sweep(const Json& cfg, Streams io) {
  const detail::Inputs in = detail::load_inputs(cfg);
  SweepConfig sc;
  for (const auto& s : cfg.at("supports")) {
    SupportSpec spec;
    if (s.contains("paths")) {
      spec.fixed = detail::support_from_json(s["paths"], in.fx.paths.num_paths());
    } else {
      spec.sparsity = s.at("sparsity").get<std::size_t>();
    }
    sc.supports.push_back(spec);
  }
  sc.m_grid = detail::size_list(cfg.at("m"), "m");
  sc.trials = cfg.value("trials", std::size_t{500});
  sc.seed = cfg.at("seed").get<std::uint64_t>();
  sc.flow_range = detail::flow_range_from(cfg);
  sc.tol = cfg.value("tol", 1e-6);
  sc.threads = cfg.value("threads", 0u);
  const RecoveryReport r = run_recovery_sweep(in.fx, sc);
  write_text_file(detail::output_path(cfg), sweep_to_csv(r, sc));
  io.out << r.points.size() << " grid points x " << sc.trials << " trials\n";
  return kSuccess;
}

inline int cmd_noisy_cdf(const Json& cfg, Streams io) {
  const detail::Inputs in = detail::load_inputs(cfg);
  NoisyCdfConfig nc;
  nc.support = detail::support_from_json(cfg.at("support"), in.fx.paths.num_paths());
  nc.nu = cfg.at("nu").get<double>();
  nc.M = cfg.value("M", std::size_t{0});
  if (cfg.contains("delta")) nc.delta = cfg["delta"].get<double>();
  nc.trials = cfg.value("trials", std::size_t{1000});
  nc.seed = cfg.at("seed").get<std::uint64_t>();
  nc.flow_range = detail::flow_range_from(cfg);
  nc.threads = cfg.value("threads", 0u);
  const NoisyCdfReport r = run_noisy_cdf(in.fx, nc);
  write_text_file(detail::output_path(cfg), cdf_to_csv(r));
  io.out << "delta " << format_double(r.delta) << ", M " << r.M << ", median l1 "
         << format_double(empirical_quantile(r.l1_errors, 0.5)) << ", median l2 "
         << format_double(empirical_quantile(r.l2_errors, 0.5)) << ", infeasible "
         << r.infeasible << "\n";
  return kSuccess;
}

inline int cmd_vmt_sweep(const Json& cfg, Streams io) {
  const detail::Inputs in = detail::load_inputs(cfg);
  VmtSweepConfig vc;
  vc.m_grid = detail::size_list(cfg.at("m"), "m");
  vc.trials = cfg.value("trials", std::size_t{500});
  vc.seed = cfg.at("seed").get<std::uint64_t>();
  vc.flow_range = detail::flow_range_from(cfg);
  vc.tol = cfg.value("tol", 1e-3);
  const std::string crit = cfg.value("criterion", std::string("allocation"));
  if (crit == "allocation") {
    vc.criterion = VmtCriterion::Allocation;
  } else if (crit == "vmt") {
    vc.criterion = VmtCriterion::Scalar;
  } else {
    throw UsageError("criterion must be allocation or vmt");
  }
  vc.threads = cfg.value("threads", 0u);
  const Eigen::VectorXd v =
      cfg.contains("lengths")
          ? path_values_from_csv(read_text_file(cfg["lengths"]), "length",
                                 in.fx.paths.num_paths())
          : path_lengths(in.fx.network, in.fx.paths);
  const VmtReport r = run_vmt_sweep(in.fx, v, vc);
  write_text_file(detail::output_path(cfg), vmt_sweep_to_csv(r));
  std::size_t violations = 0;
  for (const auto& p : r.points) violations += p.sandwich_violations;
  io.out << r.points.size() << " M values x " << vc.trials << " trials, "
         << violations << " sandwich violations\n";
  return kSuccess;
}

inline int cmd_grid(const Json& cfg, Streams io) {
  std::vector<GridReport> rows;
  for (const auto& n : cfg.at("n")) {
    for (const auto& a : cfg.at("alpha")) {
      rows.push_back(grid_report(n.get<int>(), a.get<double>()));
    }
  }
  const std::string csv = grid_to_csv(rows);
  write_text_file(detail::output_path(cfg), csv);
  io.out << csv;
  return kSuccess;
}

inline int cmd_fixture(const Json& cfg, Streams io) {
  const std::string name = cfg.at("name").get<std::string>();
  if (!is_fixture_name(name)) throw UsageError("unknown fixture '" + name + "'");
  const Fixture f = fixture_by_name(name);
  const std::filesystem::path dir = cfg.value("output_dir", std::string("."));
  std::filesystem::create_directories(dir);
  write_text_file((dir / (name + ".network.json")).string(),
                  dump_json(network_to_json(f.network)));
  write_text_file((dir / (name + ".paths.json")).string(),
                  dump_json(paths_to_json(f.paths)));
  io.out << name << ": " << f.network.nodes().size() << " nodes, "
         << f.network.links().size() << " links, " << f.paths.num_od_pairs()
         << " OD pairs, " << f.paths.num_paths() << " paths\n";
  return kSuccess;
}

inline int execute(const std::string& command, const Json& cfg, Streams io) {
  if (command == "enumerate") return cmd_enumerate(cfg, io);
  if (command == "estimate") return cmd_estimate(cfg, io);
  if (command == "vmt") return cmd_vmt(cfg, io);
  if (command == "sweep") return cmd_sweep(cfg, io);
  if (command == "noisy-cdf") return cmd_noisy_cdf(cfg, io);
  if (command == "vmt-sweep") return cmd_vmt_sweep(cfg, io);
  if (command == "grid") return cmd_grid(cfg, io);
  if (command == "fixture") return cmd_fixture(cfg, io);
  throw UsageError("unknown command '" + command + "'");
}

// Where the manifest for a config goes.
inline std::string manifest_path(const std::string& command, const Json& cfg) {
  if (command == "fixture") {
    const std::filesystem::path dir = cfg.value("output_dir", std::string("."));
    return (dir / (cfg.at("name").get<std::string>() + ".manifest.json")).string();
  }
  return cfg.at("output").get<std::string>() + ".manifest.json";
}

inline Json make_manifest(const std::string& command, const Json& cfg) {
  Json m;
  m["tool"] = "sparse_od";
  m["version"] = kVersion;
  m["command"] = command;
  m["seed"] = cfg.contains("seed") ? cfg["seed"] : Json(nullptr);
  m["config"] = cfg;
  m["created"] = detail::timestamp_utc();
  return m;
}

// Runs a command and writes its manifest (also when the solver reported
// infeasibility; the result file exists in that case too).
inline int execute_and_record(const std::string& command, const Json& cfg, Streams io) {
  const int code = execute(command, cfg, io);
  if (code == kSuccess || code == kInfeasible || code == kIterationLimit) {
    write_text_file(manifest_path(command, cfg), dump_json(make_manifest(command, cfg)));
  }
  return code;
}

// Manifest config with outputs moved into `dir` (empty: unchanged).
inline Json relocate_outputs(const Json& cfg, const std::string& dir) {
  Json c = cfg;
  if (dir.empty()) return c;
  std::filesystem::create_directories(dir);
  if (c.contains("output")) {
    c["output"] = (std::filesystem::path(dir) /
                   std::filesystem::path(c["output"].get<std::string>()).filename())
                      .string();
  }
  if (c.contains("output_dir")) c["output_dir"] = dir;
  return c;
}

// ---------------------------------------------------------------------------
// argument parsing

namespace detail {

// Flag values override the --config file.
struct ConfigBuilder {
  Json cfg = Json::object();
  std::string config_file;

  void load_base() {
    if (config_file.empty()) return;
    Json base = read_json_file(config_file);
    if (!base.is_object()) throw Error(ErrorCode::Parse, "config must be a JSON object");
    for (auto& [k, v] : base.items()) {
      if (!cfg.contains(k)) cfg[k] = v;
    }
  }
};

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, Streams io) {
  CLI::App app{"Sparse path-allocation recovery from link counts", "sparse_od"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string command;
  detail::ConfigBuilder b;
  Json& cfg = b.cfg;

  // shared option storage
  std::string network, paths, measurements, output, weights, lengths, truth, method,
      criterion, output_dir, manifest, name;
  std::vector<std::string> od, supports, sparsities;
  std::string m_list, n_list, alpha_list, times_list;
  double delta = 0, nu = 0, tol = 0, max_ratio = 0;
  int max_links = 0, max_turns = 0, iterations = 0;
  std::size_t trials = 0, M = 0;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool dynamic = false, unit = false;
  std::vector<double> flow_range;

  auto add_inputs = [&](CLI::App* s, bool with_paths) {
    s->add_option("--network", network, "network JSON file or fixture name (fig1, fig2, nguyen)");
    if (with_paths) s->add_option("--paths", paths, "paths JSON file or fixture name");
  };
  auto add_common_experiment = [&](CLI::App* s) {
    s->add_option("--config", b.config_file, "JSON config; flags override its keys");
    s->add_option("--trials", trials, "trials per grid point");
    s->add_option("--seed", seed, std::string("base seed (default $") + kSeedEnv + " or 1)");
    s->add_option("--flow-range", flow_range, "OD flow range lo hi")->expected(2);
    s->add_option("--threads", threads, "worker threads (0 = hardware)");
    s->add_option("-o,--output", output, "output CSV");
  };

  CLI::App* en = app.add_subcommand("enumerate", "enumerate loopless paths for OD pairs");
  add_inputs(en, false);
  en->add_option("--od", od, "OD pair origin:destination (repeatable)");
  en->add_option("--max-links", max_links, "maximum links per path");
  en->add_option("--max-turns", max_turns, "maximum turns (needs node coordinates)");
  en->add_option("--max-length-ratio", max_ratio, "maximum length / shortest length");
  en->add_option("-o,--output", output, "output paths JSON")->required();

  CLI::App* es = app.add_subcommand("estimate", "estimate the path allocation");
  add_inputs(es, true);
  es->add_option("--measurements", measurements, "counts CSV")->required();
  es->add_option("--method", method, "estimator")
      ->check(CLI::IsMember({"l1", "l2", "l1-noisy", "l2-noisy", "weighted", "reweighted"}));
  es->add_option("--delta", delta, "noise radius for the noisy methods");
  es->add_option("--weights", weights, "path,weight CSV for --method weighted");
  es->add_option("--iterations", iterations, "reweighting solves (reweighted)");
  es->add_flag("--dynamic", dynamic, "time-delayed model (link_id,time,count file)");
  es->add_option("--times", times_list, "count times to use, e.g. 1-3");
  es->add_option("--truth", truth, "path,flow CSV; adds a recovery check");
  es->add_option("--tol", tol, "recovery tolerance for --truth");
  es->add_option("-o,--output", output, "result JSON")->required();

  CLI::App* vm = app.add_subcommand("vmt", "bound vehicle-miles traveled");
  add_inputs(vm, true);
  vm->add_option("--measurements", measurements, "counts CSV")->required();
  vm->add_option("--lengths", lengths, "path,length CSV (default: network lengths)");
  vm->add_flag("--unit", unit, "all path lengths 1 (vehicle-count bounds)");
  vm->add_flag("--dynamic", dynamic, "time-delayed model");
  vm->add_option("--times", times_list, "count times to use");
  vm->add_option("-o,--output", output, "bounds JSON")->required();

  CLI::App* sw = app.add_subcommand("sweep", "recovery rate over measurement counts");
  add_inputs(sw, true);
  sw->add_option("--support", supports, "fixed support, 1-based, e.g. 5,9,13 (repeatable)");
  sw->add_option("--sparsity", sparsities, "random support of this size (repeatable)");
  sw->add_option("--m", m_list, "measurement counts, e.g. 1-10");
  sw->add_option("--tol", tol, "relative recovery tolerance");
  add_common_experiment(sw);

  CLI::App* nc = app.add_subcommand("noisy-cdf", "error CDFs of the noisy estimators");
  add_inputs(nc, true);
  nc->add_option("--support", supports, "fixed support, 1-based, e.g. 5,9,13");
  nc->add_option("--nu", nu, "noise standard deviation");
  nc->add_option("--M", M, "measured links (0 = all)");
  nc->add_option("--delta", delta, "ball radius (default nu * sqrt(M))");
  add_common_experiment(nc);

  CLI::App* vs = app.add_subcommand("vmt-sweep", "VMT bound recovery over measurement counts");
  add_inputs(vs, true);
  vs->add_option("--m", m_list, "measurement counts");
  vs->add_option("--lengths", lengths, "path,length CSV (default: network lengths)");
  vs->add_option("--tol", tol, "recovery tolerance");
  vs->add_option("--criterion", criterion, "allocation: ||x_hat - x|| <= tol; vmt: |v'x_hat - v'x| <= tol")
      ->check(CLI::IsMember({"allocation", "vmt"}));
  add_common_experiment(vs);

  CLI::App* gr = app.add_subcommand("grid", "count turn-limited grid paths");
  gr->add_option("--config", b.config_file, "JSON config");
  gr->add_option("--n", n_list, "even grid sizes, e.g. 50");
  gr->add_option("--alpha", alpha_list, "turn fractions, e.g. 0.1,0.2");
  gr->add_option("-o,--output", output, "output CSV");

  CLI::App* fx = app.add_subcommand("fixture", "write a built-in fixture as JSON files");
  fx->add_option("name", name, "fig1, fig2 or nguyen")->required();
  fx->add_option("--output-dir", output_dir, "directory (default .)");

  CLI::App* rr = app.add_subcommand("rerun", "repeat the run recorded in a manifest");
  rr->add_option("manifest", manifest, "manifest JSON")->required();
  rr->add_option("--output-dir", output_dir, "write outputs here instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, io.out, io.err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    command = sub->get_name();
    auto given = [&](const char* flag) {
      const CLI::Option* opt = sub->get_option_no_throw(flag);
      return opt != nullptr && opt->count() > 0;
    };

    if (command == "rerun") {
      const Json man = detail::read_json_file(manifest);
      const Json c = relocate_outputs(man.at("config"), output_dir);
      return execute_and_record(man.at("command").get<std::string>(), c, io);
    }

    if (given("--network")) cfg["network"] = detail::resolve_input(network);
    if (given("--paths")) {
      cfg["paths"] = detail::resolve_input(paths);
    }
    if (given("--output")) cfg["output"] = detail::resolve_input(output);
    if (given("--trials")) cfg["trials"] = trials;
    if (given("--seed")) cfg["seed"] = seed;
    if (given("--threads")) cfg["threads"] = threads;
    if (given("--flow-range")) {
      cfg["flow_range"] = flow_range;
    }
    if (given("--tol")) cfg["tol"] = tol;
    if (given("--measurements")) {
      cfg["measurements"] = detail::resolve_input(measurements);
    }
    if (sub->get_option_no_throw("--dynamic") && dynamic) cfg["dynamic"] = true;
    if (given("--times")) {
      cfg["times"] = detail::parse_range_list(times_list);
    }
    if (given("--lengths")) {
      cfg["lengths"] = detail::resolve_input(lengths);
    }
    if (given("--m")) {
      cfg["m"] = detail::parse_range_list(m_list);
    }

    if (command == "enumerate") {
      Json ods = Json::array();
      for (const auto& s : od) {
        const auto colon = s.find(':');
        if (colon == std::string::npos) throw UsageError("--od expects origin:destination");
        ods.push_back({s.substr(0, colon), s.substr(colon + 1)});
      }
      if (!ods.empty()) cfg["od"] = ods;
      if (given("--max-links")) cfg["max_links"] = max_links;
      if (given("--max-turns")) cfg["max_turns"] = max_turns;
      if (given("--max-length-ratio")) cfg["max_length_ratio"] = max_ratio;
    } else if (command == "estimate") {
      cfg["method"] = given("--method") ? method : std::string("l1");
      if (given("--delta")) cfg["delta"] = delta;
      if (given("--weights")) cfg["weights"] = detail::resolve_input(weights);
      if (given("--iterations")) cfg["iterations"] = iterations;
      if (given("--truth")) cfg["truth"] = detail::resolve_input(truth);
    } else if (command == "vmt") {
      if (unit) cfg["unit"] = true;
    } else if (command == "sweep") {
      b.load_base();
      if (given("--support") || given("--sparsity")) {
        Json s = Json::array();
        for (const auto& sup : supports) s.push_back({{"paths", detail::parse_range_list(sup)}});
        for (const auto& k : sparsities) s.push_back({{"sparsity", parse_int(k, "sparsity")}});
        cfg["supports"] = s;
      }
      if (!cfg.contains("network")) cfg["network"] = "fig2";
      if (!cfg.contains("paths") && is_fixture_name(cfg["network"].get<std::string>())) {
        cfg["paths"] = cfg["network"];
      }
      if (!cfg.contains("supports")) {
        cfg["supports"] = Json::array({Json{{"paths", {5, 9, 13}}},
                                       Json{{"paths", {2, 8, 11, 14}}}});
      }
      if (!cfg.contains("m")) cfg["m"] = detail::parse_range_list("1-10");
      if (!cfg.contains("trials")) cfg["trials"] = 500;
      if (!cfg.contains("tol")) cfg["tol"] = 1e-6;
    } else if (command == "noisy-cdf") {
      b.load_base();
      if (given("--support")) cfg["support"] = detail::parse_range_list(supports.at(0));
      if (given("--nu")) cfg["nu"] = nu;
      if (given("--M")) cfg["M"] = M;
      if (given("--delta")) cfg["delta"] = delta;
      if (!cfg.contains("network")) cfg["network"] = "fig2";
      if (!cfg.contains("paths") && is_fixture_name(cfg["network"].get<std::string>())) {
        cfg["paths"] = cfg["network"];
      }
      if (!cfg.contains("support")) cfg["support"] = {5, 9, 13};
      if (!cfg.contains("nu")) cfg["nu"] = 0.1;
      if (!cfg.contains("M")) cfg["M"] = 0;
      if (!cfg.contains("trials")) cfg["trials"] = 1000;
    } else if (command == "vmt-sweep") {
      b.load_base();
      if (given("--criterion")) cfg["criterion"] = criterion;
      if (!cfg.contains("network")) cfg["network"] = "nguyen";
      if (!cfg.contains("paths") && is_fixture_name(cfg["network"].get<std::string>())) {
        cfg["paths"] = cfg["network"];
      }
      if (!cfg.contains("m")) cfg["m"] = {10, 14, 18, 22, 26, 30, 34, 38};
      if (!cfg.contains("trials")) cfg["trials"] = 500;
      if (!cfg.contains("tol")) cfg["tol"] = 1e-3;
      if (!cfg.contains("criterion")) cfg["criterion"] = "allocation";
    } else if (command == "grid") {
      b.load_base();
      if (given("--n")) cfg["n"] = detail::parse_range_list(n_list);
      if (given("--alpha")) {
        Json a = Json::array();
        std::istringstream ss(alpha_list);
        std::string part;
        while (std::getline(ss, part, ',')) a.push_back(parse_double(part, "alpha"));
        cfg["alpha"] = a;
      }
      if (!cfg.contains("n")) cfg["n"] = {50};
      if (!cfg.contains("alpha")) cfg["alpha"] = {0.1, 0.2};
    } else if (command == "fixture") {
      cfg["name"] = name;
      cfg["output_dir"] = given("--output-dir") ? output_dir : std::string(".");
    }

    const bool seeded = command == "sweep" || command == "noisy-cdf" || command == "vmt-sweep";
    if (seeded && !cfg.contains("seed")) cfg["seed"] = detail::default_seed();
    if (cfg.contains("output") && command != "fixture") detail::output_path(cfg);
    if (command != "fixture" && !cfg.contains("output")) {
      throw UsageError("--output is required");
    }
    return execute_and_record(command, cfg, io);
  } catch (const UsageError& e) {
    io.err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    io.err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const Json::exception& e) {
    io.err << "error: config: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << "\n";
    return kValidation;
  }
}

}  // namespace sparse_od::cli

#endif  // SPARSE_OD_CLI_HPP_
