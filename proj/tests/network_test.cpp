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

#include <map>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "sparse_od/fixtures.hpp"
#include "sparse_od/network.hpp"

namespace sparse_od {
namespace {

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

Eigen::MatrixXd from_rows(std::initializer_list<std::initializer_list<double>> r) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(r.size()),
                    static_cast<Eigen::Index>(r.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : r) {
    Eigen::Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

TEST(ValidateNetwork, Fig1IsValid) {
  const Fixture f = fig1_fixture();
  EXPECT_EQ(f.network.nodes().size(), 3u);
  EXPECT_EQ(f.network.links().size(), 4u);
}

TEST(ValidateNetwork, EmptyIsValid) {
  const Network net = validate_network({});
  EXPECT_TRUE(net.links().empty());
}

TEST(ValidateNetwork, Rejections) {
  NetworkDescription d;
  d.nodes = {"a", "b"};
  d.links = {{"x", "a", "a"}};
  EXPECT_EQ(code_of([&] { validate_network(d); }), ErrorCode::SelfLoop);
  d.links = {{"x", "a", "c"}};
  EXPECT_EQ(code_of([&] { validate_network(d); }), ErrorCode::DanglingEndpoint);
  d.links = {{"x", "a", "b"}, {"x", "b", "a"}};
  EXPECT_EQ(code_of([&] { validate_network(d); }), ErrorCode::DuplicateLinkId);
  d.links = {{"x", "a", "b", -1.0, 1}};
  EXPECT_EQ(code_of([&] { validate_network(d); }), ErrorCode::NegativeAttribute);
  d.links = {};
  d.nodes = {"a", "a"};
  EXPECT_EQ(code_of([&] { validate_network(d); }), ErrorCode::DuplicateNode);
}

TEST(ValidatePath, Fig1Cases) {
  const Fixture f = fig1_fixture();
  EXPECT_NO_THROW(validate_path(f.network, {{"1", "3"}, {"1-2", "2-3"}}));
  EXPECT_NO_THROW(validate_path(f.network, {{"1", "3"}, {"1-3"}}));
  EXPECT_EQ(code_of([&] { validate_path(f.network, {{"1", "1"}, {"1-2", "3-1"}}); }),
            ErrorCode::BrokenChain);
  EXPECT_EQ(code_of([&] { validate_path(f.network, {{"1", "2"}, {"1-3"}}); }),
            ErrorCode::WrongEndpoints);
  EXPECT_EQ(code_of([&] { validate_path(f.network, {{"1", "2"}, {"9-9"}}); }),
            ErrorCode::UnknownLink);
  EXPECT_EQ(code_of([&] { validate_path(f.network, {{"1", "2"}, {}}); }),
            ErrorCode::EmptyPath);
  EXPECT_EQ(code_of([&] {
              validate_path(f.network, {{"1", "2"}, {"1-3", "3-1", "1-2"}});
            }),
            ErrorCode::RepeatedNode);
}

TEST(EnumeratePaths, Fig1) {
  const Fixture f = fig1_fixture();
  auto p13 = enumerate_paths(f.network, {"1", "3"});
  ASSERT_EQ(p13.size(), 2u);
  EXPECT_EQ(p13[0].links, std::vector<LinkId>{"1-3"});
  EXPECT_EQ(p13[1].links, (std::vector<LinkId>{"1-2", "2-3"}));
  auto p21 = enumerate_paths(f.network, {"2", "1"});
  ASSERT_EQ(p21.size(), 1u);
  EXPECT_EQ(p21[0].links, (std::vector<LinkId>{"2-3", "3-1"}));

  std::size_t total = 0;
  for (const auto& o : f.network.nodes()) {
    for (const auto& d : f.network.nodes()) {
      if (o != d) total += enumerate_paths(f.network, {o, d}).size();
    }
  }
  EXPECT_EQ(total, 7u);
}

TEST(EnumeratePaths, Fig2MatchesCatalogue) {
  const Fixture f = fig2_fixture();
  std::set<std::vector<LinkId>> enumerated;
  for (const auto& od : f.paths.od_pairs()) {
    for (const auto& p : enumerate_paths(f.network, od)) enumerated.insert(p.links);
  }
  std::set<std::vector<LinkId>> catalogue;
  for (const auto& p : f.paths.paths()) catalogue.insert(p.links);
  EXPECT_EQ(enumerated, catalogue);
  EXPECT_EQ(enumerated.size(), 14u);
}

TEST(EnumeratePaths, FiltersAndErrors) {
  const Fixture f = fig2_fixture();
  PathFilter filter;
  filter.max_links = 1;
  auto short_only = enumerate_paths(f.network, {"3", "1"}, filter);
  ASSERT_EQ(short_only.size(), 1u);
  filter.max_links = 2;
  EXPECT_EQ(enumerate_paths(f.network, {"3", "1"}, filter).size(), 3u);
  filter = {};
  filter.max_length_ratio = 1.0;
  EXPECT_EQ(enumerate_paths(f.network, {"3", "1"}, filter).size(), 1u);

  // Turns need coordinates; without them the filter is skipped with a note.
  filter = {};
  filter.max_turns = 0;
  std::vector<std::string> notes;
  EXPECT_EQ(enumerate_paths(f.network, {"3", "1"}, filter, &notes).size(), 5u);
  EXPECT_FALSE(notes.empty());

  NetworkDescription d;
  d.nodes = {"a", "b", "c"};
  d.links = {{"ab", "a", "b"}};
  const Network net = validate_network(d);
  EXPECT_EQ(code_of([&] { enumerate_paths(net, {"a", "c"}); }),
            ErrorCode::NoPathExists);
  EXPECT_EQ(code_of([&] { enumerate_paths(net, {"a", "z"}); }),
            ErrorCode::UnknownNode);
}

TEST(EnumeratePaths, TurnFilterWithCoordinates) {
  // 2x2 block grid, east/north links only.
  NetworkDescription d;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const std::string id = std::to_string(i) + std::to_string(j);
      d.nodes.push_back(id);
      d.coords[id] = {static_cast<double>(i), static_cast<double>(j)};
      if (i < 2) d.links.push_back({id + "e", id, std::to_string(i + 1) + std::to_string(j)});
      if (j < 2) d.links.push_back({id + "n", id, std::to_string(i) + std::to_string(j + 1)});
    }
  }
  const Network net = validate_network(d);
  EXPECT_EQ(enumerate_paths(net, {"00", "22"}).size(), 6u);
  PathFilter filter;
  filter.max_turns = 1;
  EXPECT_EQ(enumerate_paths(net, {"00", "22"}, filter).size(), 2u);
  filter.max_turns = 2;
  EXPECT_EQ(enumerate_paths(net, {"00", "22"}, filter).size(), 4u);
}

TEST(StaticIncidence, Fig1Matrix) {
  const Fixture f = fig1_fixture();
  const MeasurementSystem ms = build_static_incidence(f.paths, f.links);
  const Eigen::MatrixXd expected = from_rows({{1, 1, 0, 0, 0, 0, 1},
                                              {0, 0, 1, 0, 0, 0, 0},
                                              {0, 1, 0, 1, 1, 0, 0},
                                              {0, 0, 0, 1, 0, 1, 1}});
  EXPECT_EQ(ms.matrix, expected);
}

TEST(StaticIncidence, Fig2Matrix) {
  const Fixture f = fig2_fixture();
  const MeasurementSystem ms = build_static_incidence(f.paths, f.links);
  const Eigen::MatrixXd expected =
      from_rows({{0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 0, 1, 0},
                 {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0},
                 {0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0},
                 {0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
                 {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0},
                 {0, 1, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1},
                 {0, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 0},
                 {0, 0, 1, 1, 0, 0, 0, 1, 0, 1, 1, 0, 0, 0},
                 {0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0, 0},
                 {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1}});
  EXPECT_EQ(ms.matrix, expected);
}

TEST(StaticIncidence, ColumnCountsAndErrors) {
  const Fixture f = fig2_fixture();
  const MeasurementSystem ms = build_static_incidence(f.paths, f.links);
  for (std::size_t n = 0; n < f.paths.num_paths(); ++n) {
    EXPECT_EQ(ms.matrix.col(static_cast<Eigen::Index>(n)).sum(),
              static_cast<double>(f.paths.path(n).links.size()));
  }
  EXPECT_EQ(code_of([&] { build_static_incidence(f.paths, {"9-9"}); }),
            ErrorCode::UnknownLink);
  EXPECT_EQ(code_of([&] { build_static_incidence(f.paths, {}); }),
            ErrorCode::InvalidArgument);

  const Fixture g = fig1_fixture();
  const PathTable single(g.network, {{{"1", "3"}, {"1-3"}}});
  const MeasurementSystem one = build_static_incidence(single, {"1-3"});
  EXPECT_EQ(one.matrix, Eigen::MatrixXd::Ones(1, 1));
  EXPECT_EQ(code_of([&] { build_static_incidence(single, {"1-2"}); }),
            ErrorCode::UselessRow);
}

TEST(PrefixDelay, Cases) {
  const Fixture f = fig1_fixture();
  const Path p7 = f.paths.path(6);
  EXPECT_EQ(path_prefix_delay(p7, "1-2", f.network), 1);
  EXPECT_EQ(path_prefix_delay(p7, "3-1", f.network), 0);
  EXPECT_EQ(code_of([&] { path_prefix_delay(p7, "1-3", f.network); }),
            ErrorCode::LinkNotOnPath);

  NetworkDescription d;
  d.nodes = {"a", "b", "c", "e"};
  d.links = {{"ab", "a", "b", 1.0, 2}, {"bc", "b", "c", 1.0, 3},
             {"ce", "c", "e", 1.0, 1}};
  const Network net = validate_network(d);
  EXPECT_EQ(path_prefix_delay({{"a", "e"}, {"ab", "bc", "ce"}}, "ce", net), 5);
}

TEST(DynamicSystem, Fig1MatchesReferencePattern) {
  const Fixture f = fig1_fixture();
  const MeasurementSystem ms = build_dynamic_system(f.paths, f.network, f.links, {0});
  ASSERT_EQ(ms.matrix.rows(), 4);
  ASSERT_EQ(ms.matrix.cols(), 10);
  // Reference columns: f1(t), w22 f2(t), w23 f2(t), w22 f2(t-1), f3(t), f3(t-1),
  // f4(t), f5(t), f6(t), f6(t-1), as (path, departure).
  const std::vector<std::pair<std::size_t, int>> reference_cols = {
      {0, 0}, {1, 0}, {2, 0}, {1, -1}, {3, 0}, {3, -1}, {4, 0}, {5, 0}, {6, 0}, {6, -1}};
  const Eigen::MatrixXd reference = from_rows({{1, 1, 0, 0, 0, 0, 0, 0, 0, 1},
                                           {0, 0, 1, 0, 0, 0, 0, 0, 0, 0},
                                           {0, 0, 0, 1, 1, 0, 1, 0, 0, 0},
                                           {0, 0, 0, 0, 0, 1, 0, 1, 1, 0}});
  std::set<std::pair<std::size_t, int>> built_labels;
  for (Eigen::Index j = 0; j < ms.matrix.cols(); ++j) {
    const auto& c = ms.cols[j];
    built_labels.emplace(c.path, c.departure);
    const auto it = std::find(reference_cols.begin(), reference_cols.end(),
                              std::make_pair(c.path, c.departure));
    ASSERT_NE(it, reference_cols.end());
    EXPECT_EQ(ms.matrix.col(j), reference.col(it - reference_cols.begin()));
  }
  EXPECT_EQ(built_labels.size(), 10u);
}

TEST(DynamicSystem, ZeroDelaysCollapseToStatic) {
  NetworkDescription d = fig2_fixture().network.describe();
  for (auto& l : d.links) l.travel_time = 0;
  const Network net = validate_network(d);
  const Fixture f = fig2_fixture();
  const PathTable pt(net, f.paths.paths());
  const MeasurementSystem dyn = build_dynamic_system(pt, net, f.links, {4});
  const MeasurementSystem st = build_static_incidence(pt, f.links);
  EXPECT_EQ(dyn.matrix, st.matrix);
  EXPECT_EQ(code_of([&] { build_dynamic_system(pt, net, f.links, {}); }),
            ErrorCode::EmptyWindow);
}

// Places x_j vehicles on each (path, departure) column, walks them along their
// paths link by link, and counts them per (link, time).
Eigen::VectorXd simulate_counts(const MeasurementSystem& ms, const PathTable& pt,
                                const Network& net, const Eigen::VectorXd& x) {
  std::map<std::pair<LinkId, int>, double> counts;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    int clock = ms.cols[j].departure;
    for (const auto& id : pt.path(ms.cols[j].path).links) {
      counts[{id, clock}] += x[j];
      clock += net.link(id).travel_time;
    }
  }
  Eigen::VectorXd y(ms.matrix.rows());
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    y[i] = counts[{ms.rows[i].link, ms.rows[i].time}];
  }
  return y;
}

// Static counts ignore timing: every vehicle on a path crosses each of its links
// within the period.
Eigen::VectorXd simulate_static(const MeasurementSystem& ms, const PathTable& pt,
                                const Eigen::VectorXd& x) {
  std::map<LinkId, double> counts;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    for (const auto& id : pt.path(ms.cols[j].path).links) counts[id] += x[j];
  }
  Eigen::VectorXd y(ms.matrix.rows());
  for (Eigen::Index i = 0; i < y.size(); ++i) y[i] = counts[ms.rows[i].link];
  return y;
}

TEST(DynamicSystem, SimulationOracle) {
  std::mt19937 gen(7);
  std::uniform_int_distribution<int> vehicles(0, 9);
  std::uniform_int_distribution<int> tt(0, 2);
  for (const Fixture& base : {fig1_fixture(), fig2_fixture(), nguyen_fixture()}) {
    NetworkDescription d = base.network.describe();
    for (auto& l : d.links) l.travel_time = tt(gen);
    const Network net = validate_network(d);
    const PathTable pt(net, base.paths.paths());
    std::vector<LinkId> used;
    for (const auto& id : base.links) {
      for (const auto& p : pt.paths()) {
        if (std::find(p.links.begin(), p.links.end(), id) != p.links.end()) {
          used.push_back(id);
          break;
        }
      }
    }
    const MeasurementSystem ms = build_dynamic_system(pt, net, used, {3, 4, 6});
    Eigen::VectorXd x(ms.matrix.cols());
    for (Eigen::Index j = 0; j < x.size(); ++j) x[j] = vehicles(gen);
    EXPECT_EQ(ms.matrix * x, simulate_counts(ms, pt, net, x)) << base.name;

    const MeasurementSystem st = build_static_incidence(pt, used);
    Eigen::VectorXd xs(st.matrix.cols());
    for (Eigen::Index j = 0; j < xs.size(); ++j) xs[j] = vehicles(gen);
    EXPECT_EQ(st.matrix * xs, simulate_static(st, pt, xs))
        << base.name;
  }
}

TEST(DynamicSystem, TwoCountTimesOnePath) {
  NetworkDescription d;
  d.nodes = {"a", "b", "c"};
  d.links = {{"ab", "a", "b"}, {"bc", "b", "c"}};
  const Network net = validate_network(d);
  const PathTable pt(net, {{{"a", "c"}, {"ab", "bc"}}});
  const MeasurementSystem ms = build_dynamic_system(pt, net, {"ab", "bc"}, {0, 1});
  EXPECT_EQ(ms.matrix.rows(), 4);
  EXPECT_EQ(ms.matrix.cols(), 3);  // departures -1, 0, 1
  const Eigen::VectorXd x = Eigen::Vector3d(2, 3, 5);
  EXPECT_EQ(ms.matrix * x, simulate_counts(ms, pt, net, x));
}

TEST(Decode, Cases) {
  const Fixture f = fig1_fixture();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(7);
  x[1] = 3;
  x[2] = 1;
  const DecodedAllocation d = decode_allocation(x, f.paths);
  EXPECT_DOUBLE_EQ(d.od_flows[1], 4.0);
  EXPECT_DOUBLE_EQ(*d.splits[1], 0.75);
  EXPECT_DOUBLE_EQ(*d.splits[2], 0.25);
  EXPECT_FALSE(d.splits[0].has_value());

  const DecodedAllocation z = decode_allocation(Eigen::VectorXd::Zero(7), f.paths);
  for (double v : z.od_flows) EXPECT_EQ(v, 0.0);
  for (const auto& s : z.splits) EXPECT_FALSE(s.has_value());

  x.setZero();
  x[0] = 7;
  EXPECT_DOUBLE_EQ(*decode_allocation(x, f.paths).splits[0], 1.0);

  x[3] = -1;
  EXPECT_EQ(code_of([&] { decode_allocation(x, f.paths); }), ErrorCode::NegativeEntry);
  EXPECT_EQ(code_of([&] { decode_allocation(Eigen::VectorXd::Zero(3), f.paths); }),
            ErrorCode::DimensionMismatch);
}

TEST(Decode, RoundTrip) {
  const Fixture f = nguyen_fixture();
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int rep = 0; rep < 20; ++rep) {
    Eigen::VectorXd x(static_cast<Eigen::Index>(f.paths.num_paths()));
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = (i % 3 == rep % 3) ? 0.0 : u(gen);
    const Eigen::VectorXd back = encode_allocation(decode_allocation(x, f.paths), f.paths);
    EXPECT_LE((back - x).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Fixtures, NguyenShape) {
  const Fixture f = nguyen_fixture();
  EXPECT_EQ(f.network.nodes().size(), 13u);
  EXPECT_EQ(f.network.links().size(), 38u);
  EXPECT_EQ(f.paths.num_od_pairs(), 8u);
  EXPECT_EQ(f.paths.num_paths(), 50u);
  const std::vector<OdPair> order = {{"1", "2"}, {"1", "3"}, {"2", "1"}, {"2", "4"},
                                     {"3", "1"}, {"3", "4"}, {"4", "2"}, {"4", "3"}};
  EXPECT_EQ(f.paths.od_pairs(), order);
}

TEST(Fixtures, CanonicalizedKeepsPathSet) {
  const Fixture f = fig2_fixture();
  const PathTable c = f.paths.canonicalized(f.network);
  ASSERT_EQ(c.num_paths(), 14u);
  EXPECT_EQ(c.path(0).links, std::vector<LinkId>{"3-1"});
  EXPECT_EQ(c.path(1).links, (std::vector<LinkId>{"3-2", "2-1"}));
  EXPECT_EQ(c.path(2).links, (std::vector<LinkId>{"3-4", "4-1"}));
}

}  // namespace
}  // namespace sparse_od
