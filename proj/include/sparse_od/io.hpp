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

// File formats. All are documented in README.md; floating-point values are
// written with 12 significant digits so reruns compare byte for byte.
//
//   network.json   {"nodes": [...], "links": [{"id", "tail", "head",
//                   "length", "travel_time"}...], "coords": {node: [x, y]}}
//   paths.json     [{"od": [o, d], "links": [id...]}...]
//   counts.csv     link_id,count          (static)
//                  link_id,time,count     (dynamic)
//   weights.csv    path,weight            (1-based path index)
//   lengths.csv    path,length

#ifndef SPARSE_OD_IO_HPP_
#define SPARSE_OD_IO_HPP_

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "sparse_od/error.hpp"
#include "sparse_od/estimator.hpp"
#include "sparse_od/experiments.hpp"
#include "sparse_od/network.hpp"

namespace sparse_od {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// numbers

inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// Rounded to 12 significant digits; the JSON writer then prints the shortest
// representation of the rounded value.
inline Json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::strtod(format_double(v).c_str(), nullptr);
}

inline double parse_double(const std::string& s, const std::string& what) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw Error(ErrorCode::Parse, what + ": not a number: '" + s + "'");
  }
  return v;
}

inline long long parse_int(const std::string& s, const std::string& what) {
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw Error(ErrorCode::Parse, what + ": not an integer: '" + s + "'");
  }
  return v;
}

// ---------------------------------------------------------------------------
// files

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Parse, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  out << text;
}

inline Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Parse, what + ": " + e.what());
  }
}

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// csv

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t");
    const auto e = cell.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline CsvTable parse_csv(const std::string& text, const std::string& what) {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto cells = split_csv_line(line);
    if (t.header.empty()) {
      t.header = std::move(cells);
      continue;
    }
    if (cells.size() != t.header.size()) {
      throw Error(ErrorCode::Parse, what + ":" + std::to_string(lineno) + ": expected " +
                                        std::to_string(t.header.size()) + " fields");
    }
    t.rows.push_back(std::move(cells));
  }
  if (t.header.empty()) throw Error(ErrorCode::Parse, what + ": empty file");
  return t;
}

// ---------------------------------------------------------------------------
// network and paths

inline Json network_to_json(const Network& net) {
  Json j;
  j["nodes"] = net.nodes();
  Json links = Json::array();
  for (const auto& l : net.links()) {
    links.push_back({{"id", l.id},
                     {"tail", l.tail},
                     {"head", l.head},
                     {"length", json_number(l.length)},
                     {"travel_time", l.travel_time}});
  }
  j["links"] = links;
  if (!net.coords().empty()) {
    Json coords = Json::object();
    for (const auto& [node, p] : net.coords()) {
      coords[node] = {json_number(p.x), json_number(p.y)};
    }
    j["coords"] = coords;
  }
  return j;
}

namespace detail {

inline std::string id_string(const Json& v, const std::string& what) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw Error(ErrorCode::Parse, what + ": ids must be strings or integers");
}

}  // namespace detail

inline Network network_from_json(const Json& j) {
  try {
    NetworkDescription d;
    for (const auto& n : j.at("nodes")) d.nodes.push_back(detail::id_string(n, "nodes"));
    for (const auto& l : j.at("links")) {
      Link link;
      link.id = detail::id_string(l.at("id"), "link id");
      link.tail = detail::id_string(l.at("tail"), "link tail");
      link.head = detail::id_string(l.at("head"), "link head");
      link.length = l.value("length", 1.0);
      link.travel_time = l.value("travel_time", 1);
      d.links.push_back(link);
    }
    if (j.contains("coords")) {
      for (const auto& [node, xy] : j.at("coords").items()) {
        if (!xy.is_array() || xy.size() != 2) {
          throw Error(ErrorCode::Parse, "coords of '" + node + "' must be [x, y]");
        }
        d.coords[node] = {xy[0].get<double>(), xy[1].get<double>()};
      }
    }
    return validate_network(d);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("network: ") + e.what());
  }
}

inline Json paths_to_json(const PathTable& pt) {
  Json arr = Json::array();
  for (const auto& p : pt.paths()) {
    arr.push_back({{"od", {p.od.origin, p.od.destination}}, {"links", p.links}});
  }
  return arr;
}

inline PathTable paths_from_json(const Network& net, const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::Parse, "paths: expected a list");
  try {
    std::vector<Path> paths;
    for (const auto& e : j) {
      const Json& od = e.at("od");
      if (!od.is_array() || od.size() != 2) {
        throw Error(ErrorCode::Parse, "paths: od must be [origin, destination]");
      }
      Path p;
      p.od = {detail::id_string(od[0], "od"), detail::id_string(od[1], "od")};
      for (const auto& l : e.at("links")) p.links.push_back(detail::id_string(l, "links"));
      paths.push_back(std::move(p));
    }
    return PathTable(net, std::move(paths));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("paths: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// link counts

struct Measurements {
  bool dynamic = false;
  std::vector<LinkId> links;  // first-appearance order
  std::vector<int> times;     // ascending; {0} when static
  Eigen::VectorXd counts;     // static: per link; dynamic: time-major rows
};

inline Measurements measurements_from_csv(const std::string& text) {
  const CsvTable t = parse_csv(text, "measurements");
  Measurements m;
  if (t.header == std::vector<std::string>{"link_id", "count"}) {
    std::set<LinkId> seen;
    std::vector<double> y;
    for (const auto& r : t.rows) {
      if (!seen.insert(r[0]).second) {
        throw Error(ErrorCode::Parse, "measurements: link '" + r[0] + "' listed twice");
      }
      m.links.push_back(r[0]);
      y.push_back(parse_double(r[1], "count"));
    }
    m.times = {0};
    m.counts = Eigen::Map<Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()));
    return m;
  }
  if (t.header != std::vector<std::string>{"link_id", "time", "count"}) {
    throw Error(ErrorCode::Parse,
                "measurements: header must be 'link_id,count' or 'link_id,time,count'");
  }
  m.dynamic = true;
  std::map<std::pair<LinkId, int>, double> cell;
  std::set<int> times;
  for (const auto& r : t.rows) {
    const int time = static_cast<int>(parse_int(r[1], "time"));
    if (std::find(m.links.begin(), m.links.end(), r[0]) == m.links.end()) {
      m.links.push_back(r[0]);
    }
    times.insert(time);
    if (!cell.emplace(std::make_pair(r[0], time), parse_double(r[2], "count")).second) {
      throw Error(ErrorCode::Parse, "measurements: duplicate (" + r[0] + ", " +
                                        std::to_string(time) + ")");
    }
  }
  m.times.assign(times.begin(), times.end());
  m.counts.resize(static_cast<Eigen::Index>(m.times.size() * m.links.size()));
  Eigen::Index i = 0;
  for (int time : m.times) {
    for (const auto& id : m.links) {
      auto it = cell.find({id, time});
      if (it == cell.end()) {
        throw Error(ErrorCode::Parse, "measurements: no count for link '" + id +
                                          "' at time " + std::to_string(time));
      }
      m.counts[i++] = it->second;
    }
  }
  return m;
}

// Keeps only the given count times (dynamic files).
inline Measurements restrict_times(const Measurements& m, const std::vector<int>& keep) {
  Measurements out = m;
  out.times.clear();
  std::vector<double> y;
  for (int time : keep) {
    auto it = std::find(m.times.begin(), m.times.end(), time);
    if (it == m.times.end()) {
      throw Error(ErrorCode::InvalidArgument,
                  "count time " + std::to_string(time) + " not in measurements");
    }
    out.times.push_back(time);
    const auto base = static_cast<std::size_t>(it - m.times.begin()) * m.links.size();
    for (std::size_t l = 0; l < m.links.size(); ++l) {
      y.push_back(m.counts[static_cast<Eigen::Index>(base + l)]);
    }
  }
  out.counts = Eigen::Map<Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()));
  return out;
}

inline std::string measurements_to_csv(const Measurements& m) {
  std::string s = m.dynamic ? "link_id,time,count\n" : "link_id,count\n";
  for (std::size_t t = 0; t < m.times.size(); ++t) {
    for (std::size_t l = 0; l < m.links.size(); ++l) {
      const double y = m.counts[static_cast<Eigen::Index>(t * m.links.size() + l)];
      s += m.links[l] + ",";
      if (m.dynamic) s += std::to_string(m.times[t]) + ",";
      s += format_double(y) + "\n";
    }
  }
  return s;
}

// path,<value> file -> vector over paths. Every path must appear exactly once.
inline Eigen::VectorXd path_values_from_csv(const std::string& text,
                                            const std::string& column,
                                            std::size_t num_paths) {
  const CsvTable t = parse_csv(text, column + "s");
  if (t.header != std::vector<std::string>{"path", column}) {
    throw Error(ErrorCode::Parse, column + "s: header must be 'path," + column + "'");
  }
  Eigen::VectorXd v = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(num_paths),
                                                std::numeric_limits<double>::quiet_NaN());
  for (const auto& r : t.rows) {
    const long long p = parse_int(r[0], "path");
    if (p < 1 || p > static_cast<long long>(num_paths)) {
      throw Error(ErrorCode::Parse, column + "s: path " + r[0] + " out of range");
    }
    if (!std::isnan(v[p - 1])) {
      throw Error(ErrorCode::Parse, column + "s: path " + r[0] + " listed twice");
    }
    v[p - 1] = parse_double(r[1], column);
  }
  for (Eigen::Index n = 0; n < v.size(); ++n) {
    if (std::isnan(v[n])) {
      throw Error(ErrorCode::Parse, column + "s: missing path " + std::to_string(n + 1));
    }
  }
  return v;
}

inline std::string path_values_to_csv(const Eigen::VectorXd& v, const std::string& column) {
  std::string s = "path," + column + "\n";
  for (Eigen::Index n = 0; n < v.size(); ++n) {
    s += std::to_string(n + 1) + "," + format_double(v[n]) + "\n";
  }
  return s;
}

// ---------------------------------------------------------------------------
// results

inline Status status_from_string(const std::string& s) {
  for (Status st : {Status::Optimal, Status::Infeasible, Status::Unbounded,
                    Status::IterationLimit}) {
    if (to_string(st) == s) return st;
  }
  throw Error(ErrorCode::Parse, "unknown status '" + s + "'");
}

inline Json od_json(const OdPair& od) { return {od.origin, od.destination}; }

inline Json result_to_json(const EstimationResult& r, const MeasurementSystem& ms) {
  Json j;
  j["method"] = r.method;
  j["status"] = std::string(to_string(r.status));
  j["mode"] = ms.mode == SystemMode::Static ? "static" : "dynamic";
  j["objective"] = json_number(r.objective);
  j["residual"] = json_number(r.residual);
  j["iterations"] = r.iterations;
  j["sparsity"] = r.sparsity;
  Json alloc = Json::array();
  for (std::size_t c = 0; c < ms.cols.size(); ++c) {
    const ColumnLabel& col = ms.cols[c];
    alloc.push_back({{"path", col.path + 1},
                     {"od", od_json(ms.od_pairs[col.od])},
                     {"departure", col.departure},
                     {"flow", json_number(r.x[static_cast<Eigen::Index>(c)])},
                     {"split", r.splits[c] ? json_number(*r.splits[c]) : Json(nullptr)}});
  }
  j["allocation"] = alloc;
  Json flows = Json::array();
  for (const OdFlow& f : r.od_flows) {
    flows.push_back({{"od", od_json(ms.od_pairs[f.od])},
                     {"departure", f.departure},
                     {"flow", json_number(f.flow)}});
  }
  j["od_flows"] = flows;
  if (!r.objective_trace.empty()) {
    Json trace = Json::array();
    for (double v : r.objective_trace) trace.push_back(json_number(v));
    j["objective_trace"] = trace;
  }
  return j;
}

// Reads back the fields of result_to_json that define an EstimationResult.
// OD indices refer to the order in which pairs first appear in "allocation".
inline EstimationResult result_from_json(const Json& j) {
  try {
    EstimationResult r;
    r.method = j.at("method").get<std::string>();
    r.status = status_from_string(j.at("status").get<std::string>());
    r.objective = j.at("objective").get<double>();
    r.residual = j.at("residual").get<double>();
    r.iterations = j.at("iterations").get<int>();
    r.sparsity = j.at("sparsity").get<std::size_t>();
    const Json& alloc = j.at("allocation");
    r.x.resize(static_cast<Eigen::Index>(alloc.size()));
    std::map<std::pair<std::string, std::string>, std::size_t> od_index;
    auto od_of = [&](const Json& od) {
      auto key = std::make_pair(od[0].get<std::string>(), od[1].get<std::string>());
      return od_index.emplace(key, od_index.size()).first->second;
    };
    for (std::size_t c = 0; c < alloc.size(); ++c) {
      r.x[static_cast<Eigen::Index>(c)] = alloc[c].at("flow").get<double>();
      od_of(alloc[c].at("od"));
      const Json& s = alloc[c].at("split");
      r.splits.push_back(s.is_null() ? std::nullopt : std::optional<double>(s.get<double>()));
    }
    for (const auto& f : j.at("od_flows")) {
      r.od_flows.push_back({od_of(f.at("od")), f.at("departure").get<int>(),
                            f.at("flow").get<double>()});
    }
    if (j.contains("objective_trace")) {
      r.objective_trace = j.at("objective_trace").get<std::vector<double>>();
    }
    return r;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("result: ") + e.what());
  }
}

inline Json vmt_to_json(const VmtBounds& b, const MeasurementSystem& ms) {
  Json j;
  j["status_lower"] = std::string(to_string(b.status_lower));
  j["status_upper"] = std::string(to_string(b.status_upper));
  j["vmt_lower"] = json_number(b.vmt_lower);
  j["vmt_upper"] = json_number(b.vmt_upper);  // null when unbounded
  auto vec = [](const Eigen::VectorXd& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(json_number(v[i]));
    return a;
  };
  j["x_min"] = vec(b.x_min);
  j["x_max"] = vec(b.x_max);
  Json unb = Json::array();
  for (std::size_t c : b.unbounded_columns) unb.push_back(ms.cols[c].path + 1);
  j["unbounded_paths"] = unb;
  return j;
}

// ---------------------------------------------------------------------------
// experiment reports

inline std::string support_label(const SupportSpec& s) {
  if (!s.fixed) return "random";
  std::string out;
  for (std::size_t i = 0; i < s.fixed->size(); ++i) {
    if (i) out += " ";
    out += std::to_string((*s.fixed)[i] + 1);
  }
  return out;
}

// S,M,criterion,rate,stderr,trials,seed plus a trailing support label, since
// two supports of the same size would otherwise produce identical keys.
inline std::string sweep_to_csv(const RecoveryReport& r, const SweepConfig& cfg) {
  std::string s = "S,M,criterion,rate,stderr,trials,seed,support\n";
  for (const SweepPoint& p : r.points) {
    for (Criterion c : {Criterion::PathAllocation, Criterion::OdFlow, Criterion::TotalFlow}) {
      s += std::to_string(p.S) + "," + std::to_string(p.M) + "," + to_string(c) + "," +
           format_double(p.rate(c)) + "," + format_double(p.stderr_of(c)) + "," +
           std::to_string(p.trials) + "," + std::to_string(r.seed) + "," +
           support_label(cfg.supports[p.support_index]) + "\n";
    }
  }
  return s;
}

// Empirical CDF: the i-th smallest error (1-based) has cdf i / n.
inline std::string cdf_to_csv(const NoisyCdfReport& r) {
  std::string s = "method,error,cdf\n";
  auto emit = [&](const char* method, const std::vector<double>& errs) {
    const double n = static_cast<double>(errs.size());
    for (std::size_t i = 0; i < errs.size(); ++i) {
      s += std::string(method) + "," + format_double(errs[i]) + "," +
           format_double(static_cast<double>(i + 1) / n) + "\n";
    }
  };
  emit("l1", r.l1_errors);
  emit("l2", r.l2_errors);
  return s;
}

inline std::string vmt_sweep_to_csv(const VmtReport& r) {
  std::string s = "M,rate_min,rate_max,mean_ratio_min,mean_ratio_max,unbounded_count\n";
  for (const VmtPoint& p : r.points) {
    s += std::to_string(p.M) + "," + format_double(p.rate_min()) + "," +
         format_double(p.rate_max()) + "," + format_double(p.mean_ratio_min) + "," +
         format_double(p.mean_ratio_max) + "," + std::to_string(p.unbounded) + "\n";
  }
  return s;
}

inline std::string grid_to_csv(const std::vector<GridReport>& rows) {
  std::string s = "N,alpha,max_turns,limited,total,fraction,bound\n";
  for (const GridReport& g : rows) {
    s += std::to_string(g.N) + "," + format_double(g.alpha) + "," +
         std::to_string(g.max_turns) + "," + std::to_string(g.limited) + "," +
         std::to_string(g.total) + "," + format_double(g.fraction) + "," +
         format_double(g.bound) + "\n";
  }
  return s;
}

}  // namespace sparse_od

#endif  // SPARSE_OD_IO_HPP_
