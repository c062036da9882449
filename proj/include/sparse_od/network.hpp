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

// Traffic networks, path catalogs, and the link-count measurement systems
// built from them.
//
// A measurement system maps the path allocation vector x (vehicles per path,
// x_n = w_{k,n} f_k) to link counts y = A x. In the static model A is the
// binary link/path incidence matrix restricted to the measured links. In the
// dynamic model every column is a (path, departure time) pair and every row a
// (link, count time) pair; a vehicle departing at time s on path n is counted
// on link l at s + d, where d is the summed travel time of the links that
// precede l on n.

#ifndef SPARSE_OD_NETWORK_HPP_
#define SPARSE_OD_NETWORK_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sparse_od/error.hpp"

namespace sparse_od {

using NodeId = std::string;
using LinkId = std::string;

struct Link {
  LinkId id;
  NodeId tail;
  NodeId head;
  double length = 1.0;  // miles
  int travel_time = 1;  // whole measurement periods
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// Unchecked network as read from a file or assembled by hand.
struct NetworkDescription {
  std::vector<NodeId> nodes;
  std::vector<Link> links;
  std::map<NodeId, Point2> coords;  // optional; enables turn counting
};

struct OdPair {
  NodeId origin;
  NodeId destination;

  friend bool operator==(const OdPair&, const OdPair&) = default;
  friend auto operator<=>(const OdPair&, const OdPair&) = default;
};

struct Path {
  OdPair od;
  std::vector<LinkId> links;

  friend bool operator==(const Path&, const Path&) = default;
};

// Validated, immutable network with link lookup.
class Network {
 public:
  Network() = default;

  const std::vector<NodeId>& nodes() const { return nodes_; }
  const std::vector<Link>& links() const { return links_; }
  const std::map<NodeId, Point2>& coords() const { return coords_; }
  bool has_coords() const {
    return !nodes_.empty() && coords_.size() == nodes_.size();
  }

  bool has_node(const NodeId& id) const { return node_set_.count(id) != 0; }
  bool has_link(const LinkId& id) const { return link_index_.count(id) != 0; }

  const Link& link(const LinkId& id) const {
    auto it = link_index_.find(id);
    if (it == link_index_.end()) {
      throw Error(ErrorCode::UnknownLink, "link '" + id + "' not in network");
    }
    return links_[it->second];
  }

  std::size_t link_position(const LinkId& id) const {
    auto it = link_index_.find(id);
    if (it == link_index_.end()) {
      throw Error(ErrorCode::UnknownLink, "link '" + id + "' not in network");
    }
    return it->second;
  }

  // Outgoing link positions per node, in link declaration order.
  const std::vector<std::size_t>& out_links(const NodeId& node) const {
    static const std::vector<std::size_t> kEmpty;
    auto it = out_.find(node);
    return it == out_.end() ? kEmpty : it->second;
  }

  NetworkDescription describe() const { return {nodes_, links_, coords_}; }

 private:
  friend Network validate_network(const NetworkDescription& desc);

  std::vector<NodeId> nodes_;
  std::vector<Link> links_;
  std::map<NodeId, Point2> coords_;
  std::unordered_set<NodeId> node_set_;
  std::unordered_map<LinkId, std::size_t> link_index_;
  std::unordered_map<NodeId, std::vector<std::size_t>> out_;
};

inline Network validate_network(const NetworkDescription& desc) {
  Network net;
  for (const auto& node : desc.nodes) {
    if (!net.node_set_.insert(node).second) {
      throw Error(ErrorCode::DuplicateNode, "node '" + node + "' declared twice");
    }
  }
  for (std::size_t i = 0; i < desc.links.size(); ++i) {
    const Link& l = desc.links[i];
    if (!net.node_set_.count(l.tail) || !net.node_set_.count(l.head)) {
      throw Error(ErrorCode::DanglingEndpoint,
                  "link '" + l.id + "' references an undeclared node");
    }
    if (l.tail == l.head) {
      throw Error(ErrorCode::SelfLoop, "link '" + l.id + "' is a self-loop");
    }
    if (!(l.length >= 0.0) || l.travel_time < 0) {
      throw Error(ErrorCode::NegativeAttribute,
                  "link '" + l.id + "' has negative length or travel time");
    }
    if (!net.link_index_.emplace(l.id, i).second) {
      throw Error(ErrorCode::DuplicateLinkId, "link id '" + l.id + "' repeated");
    }
    net.out_[l.tail].push_back(i);
  }
  for (const auto& [node, pt] : desc.coords) {
    if (!net.node_set_.count(node)) {
      throw Error(ErrorCode::DanglingEndpoint,
                  "coordinates given for undeclared node '" + node + "'");
    }
  }
  net.nodes_ = desc.nodes;
  net.links_ = desc.links;
  net.coords_ = desc.coords;
  return net;
}

inline Path validate_path(const Network& net, const Path& p) {
  if (p.links.empty()) {
    throw Error(ErrorCode::EmptyPath, "path has no links");
  }
  std::vector<const Link*> chain;
  chain.reserve(p.links.size());
  for (const auto& id : p.links) {
    if (!net.has_link(id)) {
      throw Error(ErrorCode::UnknownLink, "path uses unknown link '" + id + "'");
    }
    chain.push_back(&net.link(id));
  }
  for (std::size_t t = 0; t + 1 < chain.size(); ++t) {
    if (chain[t]->head != chain[t + 1]->tail) {
      throw Error(ErrorCode::BrokenChain, "links '" + chain[t]->id + "' and '" +
                                              chain[t + 1]->id +
                                              "' are not contiguous");
    }
  }
  if (chain.front()->tail != p.od.origin ||
      chain.back()->head != p.od.destination) {
    throw Error(ErrorCode::WrongEndpoints,
                "path does not run from '" + p.od.origin + "' to '" +
                    p.od.destination + "'");
  }
  std::unordered_set<NodeId> seen{chain.front()->tail};
  for (const Link* l : chain) {
    if (!seen.insert(l->head).second) {
      throw Error(ErrorCode::RepeatedNode,
                  "path revisits node '" + l->head + "'");
    }
  }
  return p;
}

// Canonical ordering of paths within one OD pair: fewer links first, then
// lexicographic link-id sequence.
inline bool canonical_path_less(const Path& a, const Path& b) {
  if (a.links.size() != b.links.size()) return a.links.size() < b.links.size();
  return a.links < b.links;
}

inline double path_length(const Network& net, const Path& p) {
  double total = 0.0;
  for (const auto& id : p.links) total += net.link(id).length;
  return total;
}

// Number of heading changes at interior nodes. Requires coordinates.
inline int path_turns(const Network& net, const Path& p) {
  int turns = 0;
  for (std::size_t t = 0; t + 1 < p.links.size(); ++t) {
    const Link& a = net.link(p.links[t]);
    const Link& b = net.link(p.links[t + 1]);
    const Point2& a0 = net.coords().at(a.tail);
    const Point2& a1 = net.coords().at(a.head);
    const Point2& b1 = net.coords().at(b.head);
    const double ux = a1.x - a0.x, uy = a1.y - a0.y;
    const double vx = b1.x - a1.x, vy = b1.y - a1.y;
    const double cross = ux * vy - uy * vx;
    const double dot = ux * vx + uy * vy;
    const double scale = std::hypot(ux, uy) * std::hypot(vx, vy);
    if (std::abs(cross) > 1e-9 * scale || dot < 0.0) ++turns;
  }
  return turns;
}

struct PathFilter {
  int max_links = std::numeric_limits<int>::max();
  int max_turns = std::numeric_limits<int>::max();
  double max_length_ratio = std::numeric_limits<double>::infinity();
};

namespace detail {

inline bool reachable(const Network& net, const NodeId& from, const NodeId& to) {
  std::unordered_set<NodeId> seen{from};
  std::queue<NodeId> frontier;
  frontier.push(from);
  while (!frontier.empty()) {
    NodeId u = frontier.front();
    frontier.pop();
    if (u == to) return true;
    for (std::size_t li : net.out_links(u)) {
      const NodeId& v = net.links()[li].head;
      if (seen.insert(v).second) frontier.push(v);
    }
  }
  return false;
}

inline double shortest_length(const Network& net, const NodeId& from,
                              const NodeId& to) {
  using Entry = std::pair<double, NodeId>;
  std::unordered_map<NodeId, double> dist{{from, 0.0}};
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  heap.emplace(0.0, from);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    if (u == to) return d;
    for (std::size_t li : net.out_links(u)) {
      const Link& l = net.links()[li];
      const double nd = d + l.length;
      auto it = dist.find(l.head);
      if (it == dist.end() || nd < it->second) {
        dist[l.head] = nd;
        heap.emplace(nd, l.head);
      }
    }
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace detail

// All simple paths from od.origin to od.destination that satisfy the filter,
// in canonical order. Throws NoPathExists only when the pair is disconnected;
// a filter that rejects everything yields an empty result. When the network
// has no coordinates a finite max_turns is ignored and a note is appended to
// `diagnostics` (if given).
inline std::vector<Path> enumerate_paths(const Network& net, const OdPair& od,
                                         const PathFilter& filter = {},
                                         std::vector<std::string>* diagnostics =
                                             nullptr) {
  if (!net.has_node(od.origin) || !net.has_node(od.destination)) {
    throw Error(ErrorCode::UnknownNode, "OD endpoint not in network");
  }
  if (od.origin == od.destination) {
    throw Error(ErrorCode::InvalidArgument, "origin equals destination");
  }
  if (!detail::reachable(net, od.origin, od.destination)) {
    throw Error(ErrorCode::NoPathExists,
                od.origin + " -> " + od.destination + " is disconnected");
  }
  const bool use_turns =
      filter.max_turns != std::numeric_limits<int>::max() && net.has_coords();
  if (filter.max_turns != std::numeric_limits<int>::max() && !use_turns &&
      diagnostics != nullptr) {
    diagnostics->push_back(
        "max_turns ignored: network has no node coordinates");
  }
  double length_bound = std::numeric_limits<double>::infinity();
  if (std::isfinite(filter.max_length_ratio)) {
    length_bound = filter.max_length_ratio *
                   detail::shortest_length(net, od.origin, od.destination);
    length_bound += 1e-9 * std::max(1.0, length_bound);
  }

  std::vector<Path> found;
  Path current{od, {}};
  std::unordered_set<NodeId> on_path{od.origin};

  // Depth-first search over simple paths; length and link-count bounds prune.
  auto dfs = [&](auto&& self, const NodeId& u, double length) -> void {
    if (u == od.destination) {
      if (!use_turns || path_turns(net, current) <= filter.max_turns) {
        found.push_back(current);
      }
      return;
    }
    if (static_cast<int>(current.links.size()) >= filter.max_links) return;
    for (std::size_t li : net.out_links(u)) {
      const Link& l = net.links()[li];
      if (on_path.count(l.head)) continue;
      const double next_length = length + l.length;
      if (next_length > length_bound) continue;
      current.links.push_back(l.id);
      on_path.insert(l.head);
      self(self, l.head, next_length);
      on_path.erase(l.head);
      current.links.pop_back();
    }
  };
  dfs(dfs, od.origin, 0.0);
  std::sort(found.begin(), found.end(), canonical_path_less);
  return found;
}

// Ordered catalog of OD pairs and their paths. Column n of every matrix built
// from the table corresponds to paths()[n].
class PathTable {
 public:
  PathTable() = default;

  // Validates every path against `net`. OD pairs are indexed by first
  // appearance; path order is preserved.
  PathTable(const Network& net, std::vector<Path> paths) {
    std::map<OdPair, std::size_t> od_index;
    for (auto& p : paths) {
      validate_path(net, p);
      auto [it, inserted] = od_index.emplace(p.od, od_pairs_.size());
      if (inserted) od_pairs_.push_back(p.od);
      od_of_path_.push_back(it->second);
    }
    paths_ = std::move(paths);
    for (const auto& l : net.links()) network_links_.insert(l.id);
    paths_of_od_.assign(od_pairs_.size(), {});
    for (std::size_t n = 0; n < paths_.size(); ++n) {
      paths_of_od_[od_of_path_[n]].push_back(n);
    }
  }

  std::size_t num_od_pairs() const { return od_pairs_.size(); }
  std::size_t num_paths() const { return paths_.size(); }
  const std::vector<OdPair>& od_pairs() const { return od_pairs_; }
  const std::vector<Path>& paths() const { return paths_; }
  const Path& path(std::size_t n) const { return paths_.at(n); }
  std::size_t od_of_path(std::size_t n) const { return od_of_path_.at(n); }
  const std::vector<std::size_t>& paths_of_od(std::size_t k) const {
    return paths_of_od_.at(k);
  }
  bool network_has_link(const LinkId& id) const {
    return network_links_.count(id) != 0;
  }

  // Same catalog re-sorted into canonical order: OD pairs by first
  // appearance, then canonical_path_less within each pair.
  PathTable canonicalized(const Network& net) const {
    std::vector<Path> sorted;
    sorted.reserve(paths_.size());
    for (std::size_t k = 0; k < od_pairs_.size(); ++k) {
      std::vector<Path> group;
      for (std::size_t n : paths_of_od_[k]) group.push_back(paths_[n]);
      std::sort(group.begin(), group.end(), canonical_path_less);
      sorted.insert(sorted.end(), group.begin(), group.end());
    }
    return PathTable(net, std::move(sorted));
  }

 private:
  std::vector<OdPair> od_pairs_;
  std::vector<Path> paths_;
  std::vector<std::size_t> od_of_path_;
  std::vector<std::vector<std::size_t>> paths_of_od_;
  std::unordered_set<LinkId> network_links_;
};

enum class SystemMode { Static, Dynamic };

struct RowLabel {
  LinkId link;
  int time = 0;  // count time; 0 in static mode

  friend bool operator==(const RowLabel&, const RowLabel&) = default;
};

struct ColumnLabel {
  std::size_t path = 0;  // index into the PathTable
  std::size_t od = 0;    // OD index of that path
  int departure = 0;     // departure time; 0 in static mode

  friend bool operator==(const ColumnLabel&, const ColumnLabel&) = default;
};

struct MeasurementSystem {
  Eigen::MatrixXd matrix;
  std::vector<RowLabel> rows;
  std::vector<ColumnLabel> cols;
  SystemMode mode = SystemMode::Static;
  std::vector<OdPair> od_pairs;

  Eigen::Index num_rows() const { return matrix.rows(); }
  Eigen::Index num_cols() const { return matrix.cols(); }
};

inline MeasurementSystem build_static_incidence(
    const PathTable& pt, const std::vector<LinkId>& measured_links) {
  if (measured_links.empty()) {
    throw Error(ErrorCode::InvalidArgument, "no measured links");
  }
  const auto m = static_cast<Eigen::Index>(measured_links.size());
  const auto n = static_cast<Eigen::Index>(pt.num_paths());
  MeasurementSystem ms;
  ms.mode = SystemMode::Static;
  ms.od_pairs = pt.od_pairs();
  ms.matrix = Eigen::MatrixXd::Zero(m, n);
  std::unordered_map<LinkId, Eigen::Index> row_of;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (!pt.network_has_link(measured_links[i])) {
      throw Error(ErrorCode::UnknownLink,
                  "measured link '" + measured_links[i] + "' unknown");
    }
    if (!row_of.emplace(measured_links[i], i).second) {
      throw Error(ErrorCode::InvalidArgument,
                  "measured link '" + measured_links[i] + "' listed twice");
    }
    ms.rows.push_back({measured_links[i], 0});
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    for (const auto& id : pt.path(j).links) {
      auto it = row_of.find(id);
      if (it != row_of.end()) ms.matrix(it->second, j) = 1.0;
    }
    ms.cols.push_back({static_cast<std::size_t>(j), pt.od_of_path(j), 0});
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    if (ms.matrix.row(i).sum() == 0.0) {
      throw Error(ErrorCode::UselessRow, "measured link '" + measured_links[i] +
                                             "' lies on no catalogued path");
    }
  }
  return ms;
}

// Summed travel time of the links strictly before `link` on `p`.
inline int path_prefix_delay(const Path& p, const LinkId& link,
                             const Network& net) {
  int delay = 0;
  for (const auto& id : p.links) {
    if (id == link) return delay;
    delay += net.link(id).travel_time;
  }
  throw Error(ErrorCode::LinkNotOnPath, "link '" + link + "' not on path");
}

// Time-stacked system. Rows are (count time, measured link) in time-major
// order; columns are every (path, departure) pair that some row observes,
// ordered by path index then departure time.
inline MeasurementSystem build_dynamic_system(
    const PathTable& pt, const Network& net,
    const std::vector<LinkId>& measured_links,
    const std::vector<int>& count_times) {
  if (count_times.empty()) {
    throw Error(ErrorCode::EmptyWindow, "no count times");
  }
  if (measured_links.empty()) {
    throw Error(ErrorCode::InvalidArgument, "no measured links");
  }
  std::set<int> unique_times(count_times.begin(), count_times.end());
  if (unique_times.size() != count_times.size()) {
    throw Error(ErrorCode::InvalidArgument, "count times repeat");
  }
  std::set<LinkId> unique_links(measured_links.begin(), measured_links.end());
  if (unique_links.size() != measured_links.size()) {
    throw Error(ErrorCode::InvalidArgument, "measured links repeat");
  }
  for (const auto& id : measured_links) {
    if (!net.has_link(id)) {
      throw Error(ErrorCode::UnknownLink, "measured link '" + id + "' unknown");
    }
  }

  // delay[n][link] for measured links on path n.
  std::vector<std::vector<std::pair<LinkId, int>>> hits(pt.num_paths());
  for (std::size_t n = 0; n < pt.num_paths(); ++n) {
    for (const auto& id : measured_links) {
      const auto& links = pt.path(n).links;
      if (std::find(links.begin(), links.end(), id) != links.end()) {
        hits[n].emplace_back(id, path_prefix_delay(pt.path(n), id, net));
      }
    }
  }
  for (const auto& id : measured_links) {
    bool used = false;
    for (const auto& h : hits) {
      for (const auto& [lid, d] : h) used = used || lid == id;
    }
    if (!used) {
      throw Error(ErrorCode::UselessRow,
                  "measured link '" + id + "' lies on no catalogued path");
    }
  }

  std::set<std::pair<std::size_t, int>> columns;
  for (std::size_t n = 0; n < pt.num_paths(); ++n) {
    for (const auto& [id, d] : hits[n]) {
      for (int t : unique_times) columns.emplace(n, t - d);
    }
  }

  MeasurementSystem ms;
  ms.mode = SystemMode::Dynamic;
  ms.od_pairs = pt.od_pairs();
  std::map<std::pair<std::size_t, int>, Eigen::Index> col_of;
  for (const auto& [n, s] : columns) {
    col_of.emplace(std::make_pair(n, s), static_cast<Eigen::Index>(ms.cols.size()));
    ms.cols.push_back({n, pt.od_of_path(n), s});
  }
  for (int t : unique_times) {
    for (const auto& id : measured_links) ms.rows.push_back({id, t});
  }
  ms.matrix = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(ms.rows.size()),
                                    static_cast<Eigen::Index>(ms.cols.size()));
  for (Eigen::Index i = 0; i < ms.matrix.rows(); ++i) {
    const RowLabel& row = ms.rows[i];
    for (std::size_t n = 0; n < pt.num_paths(); ++n) {
      for (const auto& [id, d] : hits[n]) {
        if (id == row.link) ms.matrix(i, col_of.at({n, row.time - d})) = 1.0;
      }
    }
  }
  return ms;
}

struct DecodedAllocation {
  std::vector<double> od_flows;               // f_k
  std::vector<std::optional<double>> splits;  // w_{k,n}; empty when f_k = 0
};

// f_k = sum of x_n over paths of OD k; w_{k,n} = x_n / f_k where f_k > 0.
inline DecodedAllocation decode_allocation(const Eigen::VectorXd& x,
                                           const PathTable& pt) {
  if (static_cast<std::size_t>(x.size()) != pt.num_paths()) {
    throw Error(ErrorCode::DimensionMismatch,
                "allocation length differs from path count");
  }
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] < 0.0) {
      throw Error(ErrorCode::NegativeEntry,
                  "allocation entry " + std::to_string(i) + " is negative");
    }
  }
  DecodedAllocation out;
  out.od_flows.assign(pt.num_od_pairs(), 0.0);
  out.splits.assign(pt.num_paths(), std::nullopt);
  for (std::size_t n = 0; n < pt.num_paths(); ++n) {
    out.od_flows[pt.od_of_path(n)] += x[static_cast<Eigen::Index>(n)];
  }
  for (std::size_t n = 0; n < pt.num_paths(); ++n) {
    const double f = out.od_flows[pt.od_of_path(n)];
    if (f > 0.0) out.splits[n] = x[static_cast<Eigen::Index>(n)] / f;
  }
  return out;
}

// Inverse of decode_allocation: x_n = w_{k,n} f_k (absent splits give 0).
inline Eigen::VectorXd encode_allocation(const DecodedAllocation& d,
                                         const PathTable& pt) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(
      static_cast<Eigen::Index>(pt.num_paths()));
  for (std::size_t n = 0; n < pt.num_paths(); ++n) {
    if (d.splits[n]) {
      x[static_cast<Eigen::Index>(n)] =
          *d.splits[n] * d.od_flows[pt.od_of_path(n)];
    }
  }
  return x;
}

// Per-path lengths v_n = sum of link lengths.
inline Eigen::VectorXd path_lengths(const Network& net, const PathTable& pt) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(pt.num_paths()));
  for (std::size_t n = 0; n < pt.num_paths(); ++n) {
    v[static_cast<Eigen::Index>(n)] = path_length(net, pt.path(n));
  }
  return v;
}

}  // namespace sparse_od

#endif  // SPARSE_OD_NETWORK_HPP_
