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

// Monte Carlo harness: random sparse allocations, random measurement
// subsets, recovery sweeps, noisy error distributions, VMT bound studies,
// and the lattice-path counting used to argue that plausible paths are rare.
//
// Every trial draws from its own Rng substream, so results do not depend on
// how trials are scheduled across threads.

#ifndef SPARSE_OD_EXPERIMENTS_HPP_
#define SPARSE_OD_EXPERIMENTS_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sparse_od/error.hpp"
#include "sparse_od/estimator.hpp"
#include "sparse_od/fixtures.hpp"
#include "sparse_od/network.hpp"
#include "sparse_od/parallel.hpp"
#include "sparse_od/rng.hpp"

namespace sparse_od {

using Support = std::vector<std::size_t>;  // sorted, 0-based path indices
using FlowRange = std::pair<double, double>;

inline constexpr FlowRange kDefaultFlowRange{1.0, 100.0};

// ---------------------------------------------------------------- sampling

// Uniformly random permutation of 0..n-1 (Fisher-Yates, last slot first).
inline std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) {
    std::swap(p[i - 1], p[rng.below(i)]);
  }
  return p;
}

inline Support sample_support(const PathTable& pt, std::size_t S, Rng& rng) {
  if (S < 1 || S > pt.num_paths()) {
    throw Error(ErrorCode::SOutOfRange,
                "sparsity " + std::to_string(S) + " outside [1, " +
                    std::to_string(pt.num_paths()) + "]");
  }
  auto perm = random_permutation(pt.num_paths(), rng);
  Support s(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(S));
  std::sort(s.begin(), s.end());
  return s;
}

// Flows f_k ~ Uniform(flow_range) for every OD pair the support touches and
// splits from the flat Dirichlet over that pair's supported paths.
inline Eigen::VectorXd sample_allocation(const PathTable& pt, const Support& support,
                                         Rng& rng,
                                         FlowRange flow_range = kDefaultFlowRange) {
  std::vector<char> on(pt.num_paths(), 0);
  for (std::size_t n : support) {
    if (n >= pt.num_paths()) {
      throw Error(ErrorCode::SOutOfRange, "support index out of range");
    }
    on[n] = 1;
  }
  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(pt.num_paths()));
  for (std::size_t k = 0; k < pt.num_od_pairs(); ++k) {
    std::vector<std::size_t> active;
    for (std::size_t n : pt.paths_of_od(k)) {
      if (on[n]) active.push_back(n);
    }
    if (active.empty()) continue;
    const double f = rng.uniform(flow_range.first, flow_range.second);
    std::vector<double> e(active.size());
    double total = 0.0;
    for (double& v : e) {
      v = -std::log(1.0 - rng.uniform());
      total += v;
    }
    for (std::size_t i = 0; i < active.size(); ++i) {
      x[static_cast<Eigen::Index>(active[i])] = f * (e[i] / total);
    }
  }
  return x;
}

// First M entries of `perm`, returned in the order of `all_links`.
inline std::vector<LinkId> measurement_prefix(const std::vector<LinkId>& all_links,
                                              const std::vector<std::size_t>& perm,
                                              std::size_t M) {
  if (M < 1 || M > all_links.size()) {
    throw Error(ErrorCode::MOutOfRange,
                "M = " + std::to_string(M) + " outside [1, " +
                    std::to_string(all_links.size()) + "]");
  }
  std::vector<std::size_t> chosen(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(M));
  std::sort(chosen.begin(), chosen.end());
  std::vector<LinkId> out;
  for (std::size_t i : chosen) out.push_back(all_links[i]);
  return out;
}

inline std::vector<LinkId> sample_measurements(const std::vector<LinkId>& all_links,
                                               std::size_t M, Rng& rng) {
  if (M < 1 || M > all_links.size()) {
    throw Error(ErrorCode::MOutOfRange,
                "M = " + std::to_string(M) + " outside [1, " +
                    std::to_string(all_links.size()) + "]");
  }
  return measurement_prefix(all_links, random_permutation(all_links.size(), rng), M);
}

// Adds iid N(0, nu^2); values are not clipped.
inline Eigen::VectorXd add_noise(const Eigen::VectorXd& y, double nu, Rng& rng) {
  if (!(nu >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "noise sd must be nonnegative");
  }
  Eigen::VectorXd out = y;
  if (nu == 0.0) return out;
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] += nu * rng.normal();
  return out;
}

// Links crossed by at least one catalogued path, in `links` order. Only these
// can be measurement rows.
inline std::vector<LinkId> measurable_links(const PathTable& pt,
                                            const std::vector<LinkId>& links) {
  std::vector<LinkId> out;
  for (const auto& id : links) {
    for (const auto& p : pt.paths()) {
      if (std::find(p.links.begin(), p.links.end(), id) != p.links.end()) {
        out.push_back(id);
        break;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- recovery

struct RecoveryCheck {
  bool path_alloc = false;
  bool od_flow = false;
  bool total_flow = false;
  double error = 0.0;  // ||x_hat - x|| / ||x||
};

// path_alloc: relative l2 error <= tol. od_flow: max_k |f_hat_k - f_k| <=
// tol * max_k f_k. total_flow: |sum f_hat - sum f| <= tol * sum f. Each
// criterion also passes whenever a stricter one does.
inline RecoveryCheck check_recovery(const Eigen::VectorXd& x_hat,
                                    const Eigen::VectorXd& x_true,
                                    const PathTable& pt, double tol) {
  if (x_hat.size() != x_true.size() ||
      static_cast<std::size_t>(x_true.size()) != pt.num_paths()) {
    throw Error(ErrorCode::DimensionMismatch, "allocation lengths differ");
  }
  RecoveryCheck r;
  const double scale = x_true.norm();
  r.error = (x_hat - x_true).norm() / (scale > 0.0 ? scale : 1.0);
  r.path_alloc = r.error <= tol;

  std::vector<double> f_hat(pt.num_od_pairs(), 0.0), f(pt.num_od_pairs(), 0.0);
  for (std::size_t n = 0; n < pt.num_paths(); ++n) {
    f_hat[pt.od_of_path(n)] += x_hat[static_cast<Eigen::Index>(n)];
    f[pt.od_of_path(n)] += x_true[static_cast<Eigen::Index>(n)];
  }
  double f_max = 0.0, gap = 0.0, total = 0.0, total_hat = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    f_max = std::max(f_max, std::abs(f[k]));
    gap = std::max(gap, std::abs(f_hat[k] - f[k]));
    total += f[k];
    total_hat += f_hat[k];
  }
  r.od_flow = r.path_alloc || gap <= tol * (f_max > 0.0 ? f_max : 1.0);
  r.total_flow = r.od_flow ||
                 std::abs(total_hat - total) <= tol * (total > 0.0 ? total : 1.0);
  return r;
}

// One family of trials in a sweep: a fixed support, or a fresh random
// support of size S each trial.
struct SupportSpec {
  std::optional<Support> fixed;
  std::size_t sparsity = 0;

  std::size_t size() const { return fixed ? fixed->size() : sparsity; }
};

struct SweepConfig {
  std::vector<SupportSpec> supports;
  std::vector<std::size_t> m_grid;
  std::size_t trials = 500;
  std::uint64_t seed = 0;
  FlowRange flow_range = kDefaultFlowRange;
  double tol = 1e-6;
  unsigned threads = 0;
};

enum class Criterion { PathAllocation = 0, OdFlow = 1, TotalFlow = 2 };

inline const char* to_string(Criterion c) {
  switch (c) {
    case Criterion::PathAllocation: return "path";
    case Criterion::OdFlow: return "od";
    case Criterion::TotalFlow: return "total";
  }
  return "?";
}

struct SweepPoint {
  std::size_t support_index = 0;
  std::size_t S = 0;
  std::size_t M = 0;
  std::size_t trials = 0;
  std::array<std::size_t, 3> successes{};
  std::vector<double> errors;  // per trial; +inf when the solve failed

  double rate(Criterion c) const {
    return trials ? static_cast<double>(successes[static_cast<int>(c)]) /
                        static_cast<double>(trials)
                  : 0.0;
  }
  double stderr_of(Criterion c) const {
    const double p = rate(c);
    return trials ? std::sqrt(p * (1.0 - p) / static_cast<double>(trials)) : 0.0;
  }
};

struct RecoveryReport {
  std::vector<SweepPoint> points;  // support-major, then M grid order
  std::uint64_t seed = 0;
};

// Substream for trial t of support family s.
inline std::uint64_t trial_stream(std::size_t family, std::size_t trial) {
  return (static_cast<std::uint64_t>(family) << 32) | static_cast<std::uint64_t>(trial);
}

inline RecoveryReport run_recovery_sweep(const Fixture& fx, const SweepConfig& cfg) {
  if (cfg.trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  const std::vector<LinkId> links = measurable_links(fx.paths, fx.links);
  for (std::size_t M : cfg.m_grid) {
    if (M < 1 || M > links.size()) {
      throw Error(ErrorCode::MOutOfRange, "M = " + std::to_string(M) + " outside [1, " +
                                              std::to_string(links.size()) + "]");
    }
  }
  for (const auto& spec : cfg.supports) {
    if (spec.size() < 1 || spec.size() > fx.paths.num_paths()) {
      throw Error(ErrorCode::SOutOfRange, "support size out of range");
    }
  }
  const MeasurementSystem full = build_static_incidence(fx.paths, links);

  RecoveryReport report;
  report.seed = cfg.seed;
  for (std::size_t s = 0; s < cfg.supports.size(); ++s) {
    const SupportSpec& spec = cfg.supports[s];
    using TrialOut = std::vector<RecoveryCheck>;
    const auto outcomes = parallel_map(
        cfg.trials,
        [&](std::size_t t) -> TrialOut {
          Rng rng(cfg.seed, trial_stream(s, t));
          const Support support =
              spec.fixed ? *spec.fixed : sample_support(fx.paths, spec.sparsity, rng);
          const Eigen::VectorXd x = sample_allocation(fx.paths, support, rng, cfg.flow_range);
          const Eigen::VectorXd y_all = full.matrix * x;
          const auto perm = random_permutation(links.size(), rng);
          TrialOut out;
          for (std::size_t M : cfg.m_grid) {
            std::vector<std::size_t> rows(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(M));
            std::sort(rows.begin(), rows.end());
            std::vector<LinkId> measured;
            Eigen::VectorXd y(static_cast<Eigen::Index>(M));
            for (std::size_t i = 0; i < rows.size(); ++i) {
              measured.push_back(links[rows[i]]);
              y[static_cast<Eigen::Index>(i)] = y_all[static_cast<Eigen::Index>(rows[i])];
            }
            const MeasurementSystem ms = build_static_incidence(fx.paths, measured);
            const EstimationResult est = estimate_l1(ms, y);
            if (est.optimal()) {
              out.push_back(check_recovery(est.x, x, fx.paths, cfg.tol));
            } else {
              RecoveryCheck fail;
              fail.error = std::numeric_limits<double>::infinity();
              out.push_back(fail);
            }
          }
          return out;
        },
        cfg.threads);
    for (std::size_t g = 0; g < cfg.m_grid.size(); ++g) {
      SweepPoint pt;
      pt.support_index = s;
      pt.S = spec.size();
      pt.M = cfg.m_grid[g];
      pt.trials = cfg.trials;
      for (const auto& trial : outcomes) {
        const RecoveryCheck& c = trial[g];
        pt.successes[0] += c.path_alloc;
        pt.successes[1] += c.od_flow;
        pt.successes[2] += c.total_flow;
        pt.errors.push_back(c.error);
      }
      report.points.push_back(std::move(pt));
    }
  }
  return report;
}

// ---------------------------------------------------------------- noisy CDF

struct NoisyCdfConfig {
  Support support;
  double nu = 0.1;
  std::size_t M = 0;               // 0 = every measurable link
  std::optional<double> delta;     // default nu * sqrt(M)
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  FlowRange flow_range = kDefaultFlowRange;
  unsigned threads = 0;
};

struct NoisyCdfReport {
  double delta = 0.0;
  std::size_t M = 0;
  std::vector<double> l1_errors;  // sorted ascending; +inf for infeasible trials
  std::vector<double> l2_errors;
  std::size_t infeasible = 0;     // trials where the ball misses the image
};

inline NoisyCdfReport run_noisy_cdf(const Fixture& fx, const NoisyCdfConfig& cfg) {
  if (!(cfg.nu >= 0.0)) throw Error(ErrorCode::InvalidArgument, "nu must be >= 0");
  if (cfg.trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  const std::vector<LinkId> links = measurable_links(fx.paths, fx.links);
  const std::size_t M = cfg.M == 0 ? links.size() : cfg.M;
  if (M < 1 || M > links.size()) {
    throw Error(ErrorCode::MOutOfRange, "M out of range");
  }
  const MeasurementSystem full = build_static_incidence(fx.paths, links);
  NoisyCdfReport report;
  report.M = M;
  report.delta = cfg.delta ? *cfg.delta : cfg.nu * std::sqrt(static_cast<double>(M));
  if (!(report.delta >= 0.0)) throw Error(ErrorCode::InvalidArgument, "delta must be >= 0");

  const auto outcomes = parallel_map(
      cfg.trials,
      [&](std::size_t t) {
        Rng rng(cfg.seed, trial_stream(0, t));
        const Eigen::VectorXd x = sample_allocation(fx.paths, cfg.support, rng, cfg.flow_range);
        const auto perm = random_permutation(links.size(), rng);
        const auto measured = measurement_prefix(links, perm, M);
        const MeasurementSystem ms = build_static_incidence(fx.paths, measured);
        const Eigen::VectorXd y = add_noise(ms.matrix * x, cfg.nu, rng);
        const auto err = [&](const EstimationResult& r) {
          return r.optimal() ? (r.x - x).norm() / x.norm()
                             : std::numeric_limits<double>::infinity();
        };
        return std::make_pair(err(estimate_l1_noisy(ms, y, report.delta)),
                              err(estimate_l2_noisy(ms, y, report.delta)));
      },
      cfg.threads);
  for (const auto& [a, b] : outcomes) {
    report.l1_errors.push_back(a);
    report.l2_errors.push_back(b);
    if (std::isinf(a) || std::isinf(b)) ++report.infeasible;
  }
  std::sort(report.l1_errors.begin(), report.l1_errors.end());
  std::sort(report.l2_errors.begin(), report.l2_errors.end());
  return report;
}

// Empirical quantile (lower order statistic) of sorted samples.
inline double empirical_quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
  const auto n = sorted.size();
  auto idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
  idx = std::clamp<std::size_t>(idx, 1, n);
  return sorted[idx - 1];
}

// ---------------------------------------------------------------- VMT sweep

enum class VmtCriterion {
  Allocation,  // ||x_hat - x||_2 <= tol
  Scalar,      // |v'x_hat - v'x| <= tol
};

struct VmtSweepConfig {
  std::vector<std::size_t> m_grid;
  std::size_t trials = 500;
  std::uint64_t seed = 0;
  FlowRange flow_range = kDefaultFlowRange;
  double tol = 1e-3;
  VmtCriterion criterion = VmtCriterion::Allocation;
  unsigned threads = 0;
};

struct VmtPoint {
  std::size_t M = 0;
  std::size_t trials = 0;
  std::size_t recovered_min = 0;
  std::size_t recovered_max = 0;
  std::size_t unbounded = 0;
  std::size_t sandwich_violations = 0;
  double mean_ratio_min = std::numeric_limits<double>::quiet_NaN();
  double mean_ratio_max = std::numeric_limits<double>::quiet_NaN();
  std::size_t failures_min = 0;  // failures contributing to mean_ratio_min
  std::size_t failures_max = 0;  // bounded failures contributing to mean_ratio_max

  double rate_min() const { return trials ? double(recovered_min) / double(trials) : 0.0; }
  double rate_max() const { return trials ? double(recovered_max) / double(trials) : 0.0; }
};

struct VmtReport {
  std::vector<VmtPoint> points;
  std::uint64_t seed = 0;
};

// One path per OD pair chosen uniformly; flow f_k ~ Uniform(flow_range).
inline Support sample_one_path_per_od(const PathTable& pt, Rng& rng) {
  Support s;
  for (std::size_t k = 0; k < pt.num_od_pairs(); ++k) {
    const auto& group = pt.paths_of_od(k);
    s.push_back(group[rng.below(group.size())]);
  }
  std::sort(s.begin(), s.end());
  return s;
}

inline VmtReport run_vmt_sweep(const Fixture& fx, const Eigen::VectorXd& path_v,
                               const VmtSweepConfig& cfg) {
  if (cfg.trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  if (static_cast<std::size_t>(path_v.size()) != fx.paths.num_paths()) {
    throw Error(ErrorCode::DimensionMismatch, "one length per path required");
  }
  const std::vector<LinkId> links = measurable_links(fx.paths, fx.links);
  for (std::size_t M : cfg.m_grid) {
    if (M < 1 || M > links.size()) {
      throw Error(ErrorCode::MOutOfRange, "M out of range");
    }
  }
  const MeasurementSystem full = build_static_incidence(fx.paths, links);

  struct Obs {
    bool ok_min = false, ok_max = false, unbounded = false, violation = false;
    double ratio_min = 0.0, ratio_max = 0.0;
    bool has_ratio_min = false, has_ratio_max = false;
  };
  const auto outcomes = parallel_map(
      cfg.trials,
      [&](std::size_t t) {
        Rng rng(cfg.seed, trial_stream(0, t));
        const Support support = sample_one_path_per_od(fx.paths, rng);
        const Eigen::VectorXd x = sample_allocation(fx.paths, support, rng, cfg.flow_range);
        const Eigen::VectorXd y_all = full.matrix * x;
        const auto perm = random_permutation(links.size(), rng);
        const double vmt = path_v.dot(x);
        std::vector<Obs> out;
        for (std::size_t M : cfg.m_grid) {
          std::vector<std::size_t> rows(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(M));
          std::sort(rows.begin(), rows.end());
          std::vector<LinkId> measured;
          Eigen::VectorXd y(static_cast<Eigen::Index>(M));
          for (std::size_t i = 0; i < rows.size(); ++i) {
            measured.push_back(links[rows[i]]);
            y[static_cast<Eigen::Index>(i)] = y_all[static_cast<Eigen::Index>(rows[i])];
          }
          const MeasurementSystem ms = build_static_incidence(fx.paths, measured);
          const VmtBounds b = vmt_bounds(ms, y, path_v);
          Obs o;
          auto recovered = [&](const Eigen::VectorXd& xh) {
            return cfg.criterion == VmtCriterion::Allocation
                       ? (xh - x).norm() <= cfg.tol
                       : std::abs(path_v.dot(xh) - vmt) <= cfg.tol;
          };
          if (b.status_lower == Status::Optimal) {
            o.ok_min = recovered(b.x_min);
            if (!o.ok_min) {
              o.has_ratio_min = true;
              o.ratio_min = b.vmt_lower / vmt;
            }
          }
          o.unbounded = b.status_upper == Status::Unbounded;
          if (b.status_upper == Status::Optimal) {
            o.ok_max = recovered(b.x_max);
            if (!o.ok_max) {
              o.has_ratio_max = true;
              o.ratio_max = b.vmt_upper / vmt;
            }
          }
          const bool lower_ok = b.status_lower == Status::Optimal && b.vmt_lower - 1e-6 <= vmt;
          const bool upper_ok = o.unbounded ||
                                (b.status_upper == Status::Optimal && vmt <= b.vmt_upper + 1e-6);
          o.violation = !(lower_ok && upper_ok);
          out.push_back(o);
        }
        return out;
      },
      cfg.threads);

  VmtReport report;
  report.seed = cfg.seed;
  for (std::size_t g = 0; g < cfg.m_grid.size(); ++g) {
    VmtPoint p;
    p.M = cfg.m_grid[g];
    p.trials = cfg.trials;
    double sum_min = 0.0, sum_max = 0.0;
    for (const auto& trial : outcomes) {
      const Obs& o = trial[g];
      p.recovered_min += o.ok_min;
      p.recovered_max += o.ok_max;
      p.unbounded += o.unbounded;
      p.sandwich_violations += o.violation;
      if (o.has_ratio_min) {
        sum_min += o.ratio_min;
        ++p.failures_min;
      }
      if (o.has_ratio_max) {
        sum_max += o.ratio_max;
        ++p.failures_max;
      }
    }
    if (p.failures_min) p.mean_ratio_min = sum_min / double(p.failures_min);
    if (p.failures_max) p.mean_ratio_max = sum_max / double(p.failures_max);
    report.points.push_back(p);
  }
  return report;
}

// ---------------------------------------------------------------- lattice paths

inline void check_grid_n(int N) {
  if (N < 0 || N % 2 != 0 || N > 60) {
    throw Error(ErrorCode::NOutOfRange, "N must be even and in [0, 60]");
  }
}

// Monotone lattice paths across an (N/2) x (N/2) block grid: C(N, N/2).
inline std::uint64_t grid_path_count(int N) {
  check_grid_n(N);
  unsigned __int128 c = 1;
  const int k = N / 2;
  for (int i = 1; i <= k; ++i) {
    c = c * static_cast<unsigned>(N - k + i) / static_cast<unsigned>(i);
  }
  return static_cast<std::uint64_t>(c);
}

// Paths with at most t direction changes, by DP over (east steps, north
// steps, heading, turns used).
inline std::uint64_t grid_paths_max_turns(int N, int t) {
  check_grid_n(N);
  if (t < 0) throw Error(ErrorCode::InvalidArgument, "turn budget must be >= 0");
  const int h = N / 2;
  if (h == 0) return 1;
  const int T = std::min(t, N);
  // ways[i][j][d][u]: reach (i, j) with last step in direction d (0 = east,
  // 1 = north) having used u turns.
  std::vector<std::uint64_t> ways(static_cast<std::size_t>((h + 1) * (h + 1) * 2 * (T + 1)), 0);
  auto at = [&](int i, int j, int d, int u) -> std::uint64_t& {
    return ways[static_cast<std::size_t>(((i * (h + 1) + j) * 2 + d) * (T + 1) + u)];
  };
  at(1, 0, 0, 0) = 1;
  at(0, 1, 1, 0) = 1;
  for (int i = 0; i <= h; ++i) {
    for (int j = 0; j <= h; ++j) {
      for (int d = 0; d < 2; ++d) {
        for (int u = 0; u <= T; ++u) {
          const std::uint64_t w = at(i, j, d, u);
          if (w == 0) continue;
          if (i < h) {
            const int nu = u + (d == 0 ? 0 : 1);
            if (nu <= T) at(i + 1, j, 0, nu) += w;
          }
          if (j < h) {
            const int nu = u + (d == 1 ? 0 : 1);
            if (nu <= T) at(i, j + 1, 1, nu) += w;
          }
        }
      }
    }
  }
  std::uint64_t total = 0;
  for (int d = 0; d < 2; ++d) {
    for (int u = 0; u <= T; ++u) total += at(h, h, d, u);
  }
  return total;
}

// Hoeffding bound on the fraction of paths with at most alpha * N turns.
inline double hoeffding_fraction_bound(double alpha, int N) {
  if (!(alpha > 0.0 && alpha < 0.5)) {
    throw Error(ErrorCode::AlphaOutOfRange, "alpha must lie in (0, 0.5)");
  }
  if (N < 0) throw Error(ErrorCode::NOutOfRange, "N must be >= 0");
  return std::exp(-2.0 * (0.5 - alpha) * (0.5 - alpha) * N);
}

struct GridReport {
  int N = 0;
  double alpha = 0.0;
  int max_turns = 0;
  std::uint64_t limited = 0;
  std::uint64_t total = 0;
  double fraction = 0.0;
  double bound = 0.0;
};

inline GridReport grid_report(int N, double alpha) {
  GridReport r;
  r.N = N;
  r.alpha = alpha;
  r.bound = hoeffding_fraction_bound(alpha, N);
  r.max_turns = static_cast<int>(std::floor(alpha * N + 1e-9));
  r.limited = grid_paths_max_turns(N, r.max_turns);
  r.total = grid_path_count(N);
  r.fraction = static_cast<double>(r.limited) / static_cast<double>(r.total);
  return r;
}

}  // namespace sparse_od

#endif  // SPARSE_OD_EXPERIMENTS_HPP_
