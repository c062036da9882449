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

#include <random>

#include <gtest/gtest.h>

#include "sparse_od/estimator.hpp"
#include "sparse_od/experiments.hpp"
#include "sparse_od/fixtures.hpp"
#include "sparse_od/solver/lp_oracle.hpp"

namespace sparse_od {
namespace {

// fig2 truth used in the l1 vs l2 example: p2, p8, p11 = 0.25 f3,
// p14 = 0.75 f3 (0-based 1, 7, 10, 13).
Eigen::VectorXd example_truth(double f1, double f2, double f3) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(14);
  x[1] = f1;
  x[7] = f2;
  x[10] = 0.25 * f3;
  x[13] = 0.75 * f3;
  return x;
}

const std::vector<LinkId> kExampleLinks = {"1-2", "1-3", "2-1", "3-2", "3-4", "4-3"};
const std::vector<LinkId> kWeightedLinks = {"1-2", "1-3", "3-2", "3-4", "4-2", "4-3"};

double rel_error(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).norm() / b.norm();
}

TEST(EstimateL1, ExampleRecovers) {
  const Fixture f = fig2_fixture();
  const MeasurementSystem ms = build_static_incidence(f.paths, kExampleLinks);
  const Eigen::VectorXd x = example_truth(10, 20, 40);
  const EstimationResult r = estimate_l1(ms, ms.matrix * x);
  ASSERT_TRUE(r.optimal());
  EXPECT_LE(rel_error(r.x, x), 1e-6);
  EXPECT_EQ(r.sparsity, 4u);
  EXPECT_LE(r.objective, x.sum() + 1e-9);
}

TEST(EstimateL2, ExampleFails) {
  const Fixture f = fig2_fixture();
  const MeasurementSystem ms = build_static_incidence(f.paths, kExampleLinks);
  const Eigen::VectorXd x = example_truth(10, 20, 40);
  const EstimationResult r = estimate_l2(ms, ms.matrix * x);
  ASSERT_TRUE(r.optimal());
  EXPECT_GT(rel_error(r.x, x), 0.1);
  EXPECT_GT(r.sparsity, 4u);
}

TEST(Estimate, ZeroCounts) {
  const Fixture f = fig2_fixture();
  const MeasurementSystem ms = build_static_incidence(f.paths, f.links);
  const Eigen::VectorXd y = Eigen::VectorXd::Zero(10);
  EXPECT_EQ(estimate_l1(ms, y).x, Eigen::VectorXd::Zero(14));
  EXPECT_LE(estimate_l2(ms, y).x.norm(), 1e-12);
}

TEST(EstimateL2, MinimumNormSplit) {
  MeasurementSystem ms;
  ms.matrix = Eigen::MatrixXd::Ones(1, 2);
  ms.rows = {{"l", 0}};
  ms.cols = {{0, 0, 0}, {1, 0, 0}};
  ms.od_pairs = {{"a", "b"}};
  const EstimationResult r = estimate_l2(ms, Eigen::VectorXd::Constant(1, 2.0));
  EXPECT_LE((r.x - Eigen::Vector2d(1, 1)).norm(), 1e-6);
  ASSERT_EQ(r.od_flows.size(), 1u);
  EXPECT_NEAR(r.od_flows[0].flow, 2.0, 1e-6);
  EXPECT_NEAR(*r.splits[0], 0.5, 1e-6);
}

TEST(EstimateNoisy, DegenerateBalls) {
  const Fixture f = fig2_fixture();
  const MeasurementSystem ms = build_static_incidence(f.paths, kExampleLinks);
  const Eigen::VectorXd y = ms.matrix * example_truth(10, 20, 40);
  const EstimationResult l1 = estimate_l1(ms, y);
  const EstimationResult l1n = estimate_l1_noisy(ms, y, 0.0);
  ASSERT_TRUE(l1n.optimal());
  EXPECT_LE((l1n.x - l1.x).norm(), 1e-6 * std::max(1.0, l1.x.norm()));
  const EstimationResult l2 = estimate_l2(ms, y);
  const EstimationResult l2n = estimate_l2_noisy(ms, y, 0.0);
  EXPECT_LE((l2n.x - l2.x).norm(), 1e-6 * std::max(1.0, l2.x.norm()));

  EXPECT_EQ(estimate_l1_noisy(ms, y, y.norm()).x, Eigen::VectorXd::Zero(14));
  EXPECT_EQ(estimate_l2_noisy(ms, y, y.norm() + 1).x, Eigen::VectorXd::Zero(14));
}

TEST(EstimateNoisy, ObjectiveMonotoneInDelta) {
  const Fixture f = fig2_fixture();
  const MeasurementSystem ms = build_static_incidence(f.paths, f.links);
  const Eigen::VectorXd y = ms.matrix * example_truth(10, 20, 40);
  const double exact = estimate_l1(ms, y).objective;
  double previous = -1.0;
  for (double delta : {1e-1, 1e-3, 1e-6}) {
    const EstimationResult r = estimate_l1_noisy(ms, y, delta);
    ASSERT_TRUE(r.optimal());
    EXPECT_LE(r.objective, exact + 1e-6 * exact);
    if (previous >= 0.0) EXPECT_GE(r.objective, previous - 1e-6 * exact);
    previous = r.objective;
  }
  EXPECT_NEAR(previous, exact, 1e-5 * exact);
}

TEST(EstimateNoisy, InfeasibleBall) {
  const Fixture f = fig1_fixture();
  const MeasurementSystem ms = build_static_incidence(f.paths, f.links);
  const Eigen::VectorXd y = Eigen::Vector4d(-5, -5, -5, -5);
  EXPECT_EQ(estimate_l1_noisy(ms, y, 1.0).status, Status::Infeasible);
  EXPECT_EQ(estimate_l2_noisy(ms, y, 1.0).status, Status::Infeasible);
}

TEST(EstimateWeighted, UnitWeightsAndScaling) {
  const Fixture f = fig2_fixture();
  const MeasurementSystem ms = build_static_incidence(f.paths, kExampleLinks);
  const Eigen::VectorXd y = ms.matrix * example_truth(10, 20, 40);
  const EstimationResult l1 = estimate_l1(ms, y);
  EXPECT_EQ(estimate_weighted_l1(ms, y, Eigen::VectorXd::Ones(14)).x, l1.x);

  Eigen::VectorXd lambda = Eigen::VectorXd::LinSpaced(14, 1.0, 3.0);
  const EstimationResult a = estimate_weighted_l1(ms, y, lambda);
  const EstimationResult b = estimate_weighted_l1(ms, y, 7.5 * lambda);
  EXPECT_LE((a.x - b.x).norm(), 1e-9);
  EXPECT_NEAR(b.objective, 7.5 * a.objective, 1e-8 * b.objective);
}

TEST(EstimateWeighted, PriorWeightsRecoverWherePlainL1IsAmbiguous) {
  const Fixture f = fig2_fixture();
  const MeasurementSystem ms = build_static_incidence(f.paths, kWeightedLinks);
  const Eigen::VectorXd x = example_truth(10, 20, 40);
  const Eigen::VectorXd y = ms.matrix * x;

  Eigen::VectorXd lambda = Eigen::VectorXd::Ones(14);
  for (int i : {1, 7, 10, 13}) lambda[i] = 0.1;
  const EstimationResult w = estimate_weighted_l1(ms, y, lambda);
  ASSERT_TRUE(w.optimal());
  EXPECT_LE(rel_error(w.x, x), 1e-6);

  // Plain l1: the truth is optimal but so is a point far from it. Maximize the
  // mass off the true support over the optimal face {Ax = y, 1'x = opt}.
  const EstimationResult plain = estimate_l1(ms, y);
  Eigen::MatrixXd A(7, 14);
  A.topRows(6) = ms.matrix;
  A.row(6).setOnes();
  Eigen::VectorXd b(7);
  b.head(6) = y;
  b[6] = plain.objective;
  Eigen::VectorXd c = Eigen::VectorXd::Ones(14);
  for (int i : {1, 7, 10, 13}) c[i] = 0.0;
  const Solution far = solve_lp({c, A, b, Sense::Maximize});
  ASSERT_EQ(far.status, Status::Optimal);
  EXPECT_GT(far.objective, 1.0);
  EXPECT_NEAR(plain.objective, x.sum(), 1e-9 * x.sum());
}

TEST(Reweighted, OneIterationIsPlainL1) {
  const Fixture f = fig2_fixture();
  const MeasurementSystem ms = build_static_incidence(f.paths, kWeightedLinks);
  const Eigen::VectorXd y = ms.matrix * example_truth(10, 20, 40);
  const EstimationResult r = reweighted_l1(ms, y, 1);
  EXPECT_EQ(r.x, estimate_l1(ms, y).x);
  EXPECT_EQ(r.objective_trace.size(), 1u);
  EXPECT_THROW(reweighted_l1(ms, y, 0), Error);
}

TEST(Reweighted, FixedPointOnRecoveredInstance) {
  const Fixture f = fig2_fixture();
  const MeasurementSystem ms = build_static_incidence(f.paths, kExampleLinks);
  const Eigen::VectorXd x = example_truth(10, 20, 40);
  const EstimationResult r = reweighted_l1(ms, ms.matrix * x, 4);
  ASSERT_TRUE(r.optimal());
  EXPECT_EQ(r.objective_trace.size(), 4u);
  EXPECT_LE((r.x - x).norm(), 1e-6);
}

TEST(Reweighted, AtLeastAsGoodAsPlainL1) {
  const Fixture f = fig2_fixture();
  const MeasurementSystem ms = build_static_incidence(f.paths, kWeightedLinks);
  int plain_ok = 0, reweighted_ok = 0;
  for (std::size_t t = 0; t < 200; ++t) {
    Rng rng(99, t);
    const Eigen::VectorXd x = sample_allocation(f.paths, {1, 7, 10, 13}, rng);
    const Eigen::VectorXd y = ms.matrix * x;
    plain_ok += rel_error(estimate_l1(ms, y).x, x) <= 1e-6;
    reweighted_ok += rel_error(reweighted_l1(ms, y, 4).x, x) <= 1e-6;
  }
  EXPECT_GE(reweighted_ok, plain_ok);
}

TEST(Vmt, FullyMeasuredFig1) {
  const Fixture f = fig1_fixture();
  const MeasurementSystem ms = build_static_incidence(f.paths, f.links);
  // Only p3 crosses 1-3 and the other counts are zero, so x is the single
  // feasible point.
  Eigen::VectorXd x = Eigen::VectorXd::Zero(7);
  x << 0, 0, 5, 0, 0, 0, 0;
  const Eigen::VectorXd y = ms.matrix * x;
  const VmtBounds b = vmt_bounds(ms, y, Eigen::VectorXd::Ones(7));
  ASSERT_EQ(b.status_lower, Status::Optimal);
  ASSERT_EQ(b.status_upper, Status::Optimal);
  EXPECT_NEAR(b.vmt_lower, 5.0, 1e-3);
  EXPECT_NEAR(b.vmt_upper, 5.0, 1e-3);
}

TEST(Vmt, UnmeasuredPathIsUnbounded) {
  const Fixture f = fig2_fixture();
  const MeasurementSystem ms = build_static_incidence(f.paths, {"3-1", "3-2"});
  const Eigen::VectorXd v = path_lengths(f.network, f.paths);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(14);
  x[0] = 3;
  const VmtBounds b = vmt_bounds(ms, ms.matrix * x, v);
  EXPECT_EQ(b.status_upper, Status::Unbounded);
  EXPECT_FALSE(b.unbounded_columns.empty());
  // p4 = 3-4 -> 4-1 avoids both measured links.
  EXPECT_NE(std::find(b.unbounded_columns.begin(), b.unbounded_columns.end(), 3u),
            b.unbounded_columns.end());
  EXPECT_EQ(b.status_lower, Status::Optimal);
}

TEST(Vmt, SandwichOnRandomInstances) {
  const Fixture f = nguyen_fixture();
  const Eigen::VectorXd v = path_lengths(f.network, f.paths);
  for (std::size_t t = 0; t < 100; ++t) {
    Rng rng(5, t);
    const Support s = sample_one_path_per_od(f.paths, rng);
    const Eigen::VectorXd x = sample_allocation(f.paths, s, rng);
    const auto links = sample_measurements(f.links, 10 + t % 28, rng);
    const MeasurementSystem ms = build_static_incidence(f.paths, links);
    const VmtBounds b = vmt_bounds(ms, ms.matrix * x, v);
    ASSERT_EQ(b.status_lower, Status::Optimal);
    EXPECT_LE(b.vmt_lower - 1e-6, v.dot(x));
    if (b.status_upper == Status::Optimal) EXPECT_GE(b.vmt_upper + 1e-6, v.dot(x));
    else EXPECT_EQ(b.status_upper, Status::Unbounded);
  }
}

TEST(Estimate, DecodeConsistency) {
  const Fixture f = fig2_fixture();
  const MeasurementSystem ms = build_static_incidence(f.paths, kExampleLinks);
  const EstimationResult r = estimate_l2(ms, ms.matrix * example_truth(3, 4, 5));
  const DecodedAllocation d = decode_allocation(r.x, f.paths);
  ASSERT_EQ(r.od_flows.size(), d.od_flows.size());
  for (std::size_t k = 0; k < d.od_flows.size(); ++k) {
    EXPECT_EQ(r.od_flows[k].od, k);
    EXPECT_DOUBLE_EQ(r.od_flows[k].flow, d.od_flows[k]);
  }
  for (std::size_t n = 0; n < 14; ++n) {
    ASSERT_EQ(r.splits[n].has_value(), d.splits[n].has_value());
    if (d.splits[n]) EXPECT_DOUBLE_EQ(*r.splits[n], *d.splits[n]);
  }
}

TEST(Estimate, DynamicGroupsByDeparture) {
  const Fixture f = fig1_fixture();
  const MeasurementSystem ms = build_dynamic_system(f.paths, f.network, f.links, {0, 1});
  Eigen::VectorXd x = Eigen::VectorXd::Zero(ms.num_cols());
  for (Eigen::Index j = 0; j < x.size(); ++j) x[j] = 1.0 + static_cast<double>(j % 3);
  const EstimationResult r = estimate_l2(ms, ms.matrix * x);
  ASSERT_TRUE(r.optimal());
  double total = 0.0;
  for (const auto& g : r.od_flows) total += g.flow;
  EXPECT_NEAR(total, r.x.sum(), 1e-9);
  std::set<std::pair<std::size_t, int>> keys;
  for (const auto& g : r.od_flows) keys.emplace(g.od, g.departure);
  EXPECT_EQ(keys.size(), r.od_flows.size());
}

TEST(Estimate, PreconditionErrors) {
  const Fixture f = fig2_fixture();
  const MeasurementSystem ms = build_static_incidence(f.paths, kExampleLinks);
  Eigen::VectorXd y = Eigen::VectorXd::Ones(6);
  EXPECT_THROW(estimate_l1(ms, Eigen::VectorXd::Ones(5)), Error);
  y[0] = -1;
  EXPECT_THROW(estimate_l1(ms, y), Error);
  EXPECT_THROW(estimate_l2(ms, y), Error);
  EXPECT_NO_THROW(estimate_l1_noisy(ms, y, 10.0));
  EXPECT_THROW(estimate_l1_noisy(ms, y, -1.0), Error);
  EXPECT_THROW(estimate_weighted_l1(ms, Eigen::VectorXd::Ones(6), Eigen::VectorXd::Zero(14)),
               Error);
  EXPECT_THROW(vmt_bounds(ms, Eigen::VectorXd::Ones(6), -Eigen::VectorXd::Ones(14)), Error);
}

TEST(EstimateL1, SingleSparseMatchesOracle) {
  const Fixture f = fig2_fixture();
  for (std::size_t n = 0; n < 14; ++n) {
    for (const auto& link : f.paths.path(n).links) {
      const MeasurementSystem ms = build_static_incidence(f.paths, {link});
      Eigen::VectorXd x = Eigen::VectorXd::Zero(14);
      x[static_cast<Eigen::Index>(n)] = 4.0;
      const Eigen::VectorXd y = ms.matrix * x;
      const EstimationResult r = estimate_l1(ms, y);
      const Solution o = lp_oracle({Eigen::VectorXd::Ones(14), ms.matrix, y, Sense::Minimize});
      EXPECT_NEAR(r.objective, o.objective, 1e-9);
    }
  }
}

}  // namespace
}  // namespace sparse_od
