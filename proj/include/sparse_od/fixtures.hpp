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

// Built-in networks: the 3-node triangle, the 4-zone network with its 14
// catalogued paths, and Nguyen-Dupuis.

#ifndef SPARSE_OD_FIXTURES_HPP_
#define SPARSE_OD_FIXTURES_HPP_

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "sparse_od/error.hpp"
#include "sparse_od/network.hpp"

namespace sparse_od {

struct Fixture {
  std::string name;
  Network network;
  PathTable paths;
  // All links, in the row order used by the reference matrices.
  std::vector<LinkId> links;
};

namespace detail {

inline Link unit_link(const std::string& tail, const std::string& head) {
  return Link{tail + "-" + head, tail, head, 1.0, 1};
}

inline Path chain(const std::string& o, const std::string& d,
                  std::vector<LinkId> links) {
  return Path{{o, d}, std::move(links)};
}

inline std::vector<LinkId> link_ids(const Network& net) {
  std::vector<LinkId> out;
  for (const auto& l : net.links()) out.push_back(l.id);
  return out;
}

}  // namespace detail

inline Fixture fig1_fixture() {
  using detail::chain;
  using detail::unit_link;
  NetworkDescription d;
  d.nodes = {"1", "2", "3"};
  d.links = {unit_link("1", "2"), unit_link("1", "3"), unit_link("2", "3"),
             unit_link("3", "1")};
  Fixture f;
  f.name = "fig1";
  f.network = validate_network(d);
  f.paths = PathTable(f.network,
                      {chain("1", "2", {"1-2"}),
                       chain("1", "3", {"1-2", "2-3"}),
                       chain("1", "3", {"1-3"}),
                       chain("2", "1", {"2-3", "3-1"}),
                       chain("2", "3", {"2-3"}),
                       chain("3", "1", {"3-1"}),
                       chain("3", "2", {"3-1", "1-2"})});
  f.links = detail::link_ids(f.network);
  return f;
}

inline Fixture fig2_fixture() {
  using detail::chain;
  using detail::unit_link;
  NetworkDescription d;
  d.nodes = {"1", "2", "3", "4"};
  d.links = {unit_link("1", "2"), unit_link("1", "3"), unit_link("2", "1"),
             unit_link("2", "4"), unit_link("3", "1"), unit_link("3", "2"),
             unit_link("3", "4"), unit_link("4", "1"), unit_link("4", "2"),
             unit_link("4", "3")};
  Fixture f;
  f.name = "fig2";
  f.network = validate_network(d);
  f.paths = PathTable(
      f.network,
      {chain("3", "1", {"3-1"}),
       chain("3", "1", {"3-2", "2-1"}),
       chain("3", "1", {"3-2", "2-4", "4-1"}),
       chain("3", "1", {"3-4", "4-1"}),
       chain("3", "1", {"3-4", "4-2", "2-1"}),
       chain("3", "2", {"3-1", "1-2"}),
       chain("3", "2", {"3-2"}),
       chain("3", "2", {"3-4", "4-1", "1-2"}),
       chain("3", "2", {"3-4", "4-2"}),
       chain("4", "2", {"4-1", "1-2"}),
       chain("4", "2", {"4-1", "1-3", "3-2"}),
       chain("4", "2", {"4-2"}),
       chain("4", "2", {"4-3", "3-1", "1-2"}),
       chain("4", "2", {"4-3", "3-2"})});
  f.links = detail::link_ids(f.network);
  return f;
}

// 13 nodes, 38 links (19 two-way streets). The 50-path catalogue holds every
// simple path of the one-way orientation for 1-2, 1-3, 4-2, 4-3 and the
// reversal of each for 2-1, 3-1, 2-4, 3-4.
inline Fixture nguyen_fixture() {
  using detail::unit_link;
  static const std::pair<const char*, const char*> kStreets[] = {
      {"1", "5"},   {"1", "12"}, {"4", "5"},   {"4", "9"},   {"5", "6"},
      {"5", "9"},   {"6", "7"},  {"6", "10"},  {"7", "8"},   {"7", "11"},
      {"8", "2"},   {"9", "10"}, {"9", "13"},  {"10", "11"}, {"11", "2"},
      {"11", "3"},  {"12", "6"}, {"12", "8"},  {"13", "3"}};
  NetworkDescription one_way;
  NetworkDescription full;
  for (int i = 1; i <= 13; ++i) {
    one_way.nodes.push_back(std::to_string(i));
    full.nodes.push_back(std::to_string(i));
  }
  for (const auto& [a, b] : kStreets) {
    one_way.links.push_back(unit_link(a, b));
    full.links.push_back(unit_link(a, b));
  }
  for (const auto& [a, b] : kStreets) full.links.push_back(unit_link(b, a));
  const Network forward = validate_network(one_way);

  auto reversed = [](const Path& p) {
    Path r{{p.od.destination, p.od.origin}, {}};
    for (auto it = p.links.rbegin(); it != p.links.rend(); ++it) {
      const auto dash = it->find('-');
      r.links.push_back(it->substr(dash + 1) + "-" + it->substr(0, dash));
    }
    return r;
  };

  const std::vector<OdPair> order = {{"1", "2"}, {"1", "3"}, {"2", "1"},
                                     {"2", "4"}, {"3", "1"}, {"3", "4"},
                                     {"4", "2"}, {"4", "3"}};
  std::vector<Path> all;
  for (const auto& od : order) {
    const bool is_forward = od.origin == "1" || od.origin == "4";
    std::vector<Path> group;
    if (is_forward) {
      group = enumerate_paths(forward, od);
    } else {
      for (const auto& p :
           enumerate_paths(forward, {od.destination, od.origin})) {
        group.push_back(reversed(p));
      }
      std::sort(group.begin(), group.end(), canonical_path_less);
    }
    all.insert(all.end(), group.begin(), group.end());
  }

  Fixture f;
  f.name = "nguyen";
  f.network = validate_network(full);
  f.paths = PathTable(f.network, std::move(all));
  f.links = detail::link_ids(f.network);
  return f;
}

inline Fixture fixture_by_name(const std::string& name) {
  if (name == "fig1") return fig1_fixture();
  if (name == "fig2") return fig2_fixture();
  if (name == "nguyen") return nguyen_fixture();
  throw Error(ErrorCode::InvalidArgument, "unknown fixture '" + name + "'");
}

inline bool is_fixture_name(const std::string& name) {
  return name == "fig1" || name == "fig2" || name == "nguyen";
}

}  // namespace sparse_od

#endif  // SPARSE_OD_FIXTURES_HPP_
