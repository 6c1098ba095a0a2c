// Copyright 2026 The cavmems Authors
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

#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "cavmems/analytic.hpp"
#include "cavmems/frontier.hpp"
#include "cavmems/trajectory.hpp"
#include "support/oracles.hpp"

namespace cavmems {
namespace {

TEST(WernerCurveTest, EndpointsAndMidpoint) {
  const auto c = werner_curve(301);
  ASSERT_EQ(c.points.size(), 301u);
  EXPECT_NEAR(c.points.front().m, 0.0, 1e-12);
  EXPECT_NEAR(c.points.front().value, 1.0, 1e-12);
  EXPECT_NEAR(c.points.back().m, 8.0 / 9.0, 1e-12);
  EXPECT_NEAR(c.points.back().value, 0.0, 1e-12);
  EXPECT_NO_THROW(c.validate());
  EXPECT_DOUBLE_EQ(werner_linear_entropy(0.5), 0.75);
  EXPECT_DOUBLE_EQ(werner_concurrence(0.5), 0.25);
  EXPECT_THROW(werner_curve(1), ValidationError);
}

TEST(WernerCurveTest, PointsMatchMeasuredWernerStates) {
  const auto c = werner_curve(91);
  for (const auto& pt : c.points) {
    const double p = std::sqrt(1.0 - pt.m);
    const TwoQubitState s(werner_state(p));
    EXPECT_NEAR(linear_entropy(s), pt.m, 1e-12);
    EXPECT_NEAR(wootters_concurrence(s), pt.value, 1e-12);
  }
  // Separability threshold
  EXPECT_NEAR(wootters_concurrence(TwoQubitState(werner_state(1.0 / 3.0))), 0.0, 1e-12);
}

TEST(MemsCurveTest, EndpointsAndBranchContinuity) {
  const auto c = mems_curve(301);
  EXPECT_NEAR(c.points.front().m, 0.0, 1e-12);
  EXPECT_EQ(c.points.front().value, 1.0);
  EXPECT_NEAR(c.points.back().m, 8.0 / 9.0, 1e-12);
  EXPECT_EQ(c.points.back().value, 0.0);
  const double upper = 8.0 / 3.0 * (2.0 / 3.0) * (1.0 / 3.0);
  const double lower = 8.0 / 9.0 - 2.0 / 3.0 * (4.0 / 9.0);
  EXPECT_NEAR(upper, 16.0 / 27.0, 1e-12);
  EXPECT_NEAR(lower, 16.0 / 27.0, 1e-12);
  EXPECT_NEAR(mems_linear_entropy(2.0 / 3.0), 16.0 / 27.0, 1e-12);
  EXPECT_NEAR(mems_linear_entropy(std::nextafter(2.0 / 3.0, 0.0)), 16.0 / 27.0, 1e-12);
  EXPECT_NO_THROW(c.validate());
}

TEST(MemsCurveTest, PointsMatchMeasuredMemsStates) {
  for (const auto& pt : mems_curve(301).points) {
    const TwoQubitState s(mems_state(pt.value));
    EXPECT_NEAR(linear_entropy(s), pt.m, 1e-12);
    EXPECT_NEAR(wootters_concurrence(s), pt.value, 1e-12);
    EXPECT_NEAR(mems_concurrence_at(pt.m), pt.value, 1e-7);
  }
}

TEST(MemsCurveTest, InverseMatchesIndependentFormula) {
  for (double m = 0.0; m <= 1.0; m += 1e-3) EXPECT_NEAR(mems_concurrence_at(m), oracle::mems_c_of_m(m), 1e-14);
}

TEST(MemsCurveTest, DominatesWernerAndRandomStates) {
  for (const auto& pt : werner_curve(301).points) EXPECT_GE(mems_concurrence_at(pt.m) + 1e-9, pt.value);
  std::mt19937_64 rng(21);
  double worst = -1.0;
  for (int i = 0; i < 100000; ++i) {
    const TwoQubitState s(random_mixed_state(rng));
    worst = std::max(worst, wootters_concurrence(s) - mems_concurrence_at(linear_entropy(s)));
  }
  EXPECT_LE(worst, 1e-9);
}

TEST(MemsCurveTest, OptimizationOracleFindsNoExcess) {
  const auto r = oracle::mems_optimization_oracle(20000, 22, 20, 300);
  EXPECT_LE(r.worst, 1e-3) << "at M = " << r.m_at_worst;
  // The search does get close to the frontier inside the entangled region.
  EXPECT_GT(r.closest, -0.02) << "at M = " << r.m_at_closest;
}

TEST(BellFrontierTest, ShapeAndDeterminism) {
  const auto a = bell_frontier(51, 100000, 7);
  ASSERT_EQ(a.points.size(), 51u);
  EXPECT_NEAR(a.points.front().value, kTsirelson, 1e-9);
  EXPECT_EQ(a.points.front().m, 0.0);
  for (std::size_t i = 1; i < a.points.size(); ++i) EXPECT_LE(a.points[i].value, a.points[i - 1].value);
  EXPECT_NO_THROW(a.validate());
  const auto b = bell_frontier(51, 100000, 7);
  for (std::size_t i = 0; i < a.points.size(); ++i) EXPECT_EQ(a.points[i].value, b.points[i].value);
  // Werner states lie under it.
  for (double p = 0.0; p <= 1.0; p += 0.01) {
    const auto pt = bell_plane_point(werner_state(p));
    EXPECT_LE(pt.value, a.envelope_at(pt.m) + 1e-9);
  }
  EXPECT_THROW(bell_frontier(51, 99999, 7), ValidationError);
  EXPECT_THROW(bell_frontier(1, 100000, 7), ValidationError);
}

TEST(BellFrontierTest, DominanceAuditOnRandomStates) {
  const auto env = bell_frontier(101, 100000, 7);
  std::mt19937_64 rng(23);
  double worst = -10.0;
  for (int i = 0; i < 100000; ++i) {
    const ComplexMatrix rho = (i % 2 == 0) ? random_mixed_state(rng) : oracle::random_rank_state(rng, 1 + i % 4);
    const auto pt = bell_plane_point(rho);
    worst = std::max(worst, pt.value - env.envelope_at(pt.m));
  }
  EXPECT_LE(worst, 1e-3);
}

TEST(BellFrontierTest, TrajectoriesBeyondCrossingDoNotViolate) {
  const auto env = bell_frontier(101, 100000, 7);
  double m_cross = 1.0;
  for (const auto& pt : env.points)
    if (pt.value <= 2.0) {
      m_cross = pt.m;
      break;
    }
  for (double delta : {0.01, 0.5, 5.0}) {
    const auto traj = sweep(SystemParams::in_units_of_g(delta, 1.0), 500.0, 50001, Source::kAnalytic);
    for (const auto& tp : traj.points) {
      if (tp.linear_entropy >= m_cross) {
        EXPECT_LE(tp.bell_max, 2.0 + 1e-9);
      }
      EXPECT_LE(tp.bell_max, env.envelope_at(tp.linear_entropy) + 1e-3);
    }
  }
}

TEST(CoverageTest, CurveAgainstItself) {
  const auto c = mems_curve(101);
  const auto rep = coverage(std::span<const PlanePoint>(c.points), c, 0.02);
  EXPECT_EQ(rep.min_distance, 0.0);
  EXPECT_DOUBLE_EQ(rep.fraction_covered, 1.0);
  EXPECT_EQ(rep.epsilon, 0.02);
}

TEST(CoverageTest, HandComputedSegment) {
  // Segment (0,0)-(1,0); one point at (0.5, 0.03), eps 0.05 covers
  // half-width sqrt(0.05^2 - 0.03^2) = 0.04 on each side.
  FrontierCurve c{FrontierKind::kMemsCm, {{0.0, 0.0}, {1.0, 0.0}}};
  const std::vector<PlanePoint> q{{0.5, 0.03}};
  const auto rep = coverage(q, c, 0.05);
  EXPECT_NEAR(rep.min_distance, 0.03, 1e-15);
  EXPECT_NEAR(rep.fraction_covered, 0.08, 1e-14);
  EXPECT_EQ(coverage(q, c, 0.01).fraction_covered, 0.0);
}

TEST(CoverageTest, MonotoneInEpsilon) {
  const auto traj = sweep(SystemParams::in_units_of_g(0.5, 1.0), 100.0, 10001, Source::kAnalytic);
  const auto curve = mems_curve(301);
  double prev = 0.0;
  double dist = -1.0;
  for (double eps : {0.001, 0.005, 0.01, 0.02, 0.05, 0.1, 0.5}) {
    const auto rep = coverage(traj, curve, eps);
    EXPECT_GE(rep.fraction_covered, prev);
    if (dist >= 0.0) {
      EXPECT_EQ(rep.min_distance, dist);
    }
    prev = rep.fraction_covered;
    dist = rep.min_distance;
  }
  EXPECT_DOUBLE_EQ(prev, 1.0);
}

TEST(CoverageTest, Errors) {
  const auto c = mems_curve(11);
  const std::vector<PlanePoint> none;
  const std::vector<PlanePoint> one{{0.1, 0.1}};
  EXPECT_THROW(coverage(none, c, 0.1), ValidationError);
  EXPECT_THROW(coverage(one, c, 0.0), ValidationError);
}

TEST(CoverageTest, ResonantTrajectoryStaysAwayFromMems) {
  const auto traj = sweep(SystemParams::in_units_of_g(0.0, 1.0), 500.0, 50001, Source::kAnalytic);
  EXPECT_GT(coverage(traj, mems_curve(301), 0.02).min_distance, 0.0);
}

TEST(ConvergentsTest, LowestTermsAndIncreasingDenominators) {
  for (double x : {0.17407765595569785, std::numbers::pi, 0.5, 1.0 / 3.0, 0.0, -0.75, 2.718281828}) {
    const auto cs = continued_fraction_convergents(x);
    ASSERT_FALSE(cs.empty());
    for (std::size_t i = 0; i < cs.size(); ++i) {
      EXPECT_EQ(std::gcd(cs[i].p, cs[i].q), 1);
      if (i > 0) {
        EXPECT_GT(cs[i].q, cs[i - 1].q);
      }
    }
    EXPECT_NEAR(static_cast<double>(cs.back().p) / static_cast<double>(cs.back().q), x, 1e-12);
  }
  const auto pi = continued_fraction_convergents(std::numbers::pi);
  EXPECT_EQ(pi[1], (Fraction{22, 7}));
  EXPECT_EQ(pi[2], (Fraction{333, 106}));
  EXPECT_EQ(pi[3], (Fraction{355, 113}));
}

TEST(ClassifyRatioTest, ExactHalf) {
  const auto rep = classify_ratio(SystemParams::in_units_of_g(std::sqrt(8.0 / 3.0), 1.0), 1e-6, 1000);
  EXPECT_NEAR(rep.ratio, 0.5, 1e-15);
  EXPECT_NE(std::find(rep.convergents.begin(), rep.convergents.end(), Fraction{1, 2}), rep.convergents.end());
  EXPECT_EQ(rep.best, (Fraction{1, 2}));
  EXPECT_EQ(rep.classification, Rationality::kEffectivelyRational);
}

TEST(ClassifyRatioTest, ResonantIsZero) {
  const auto rep = classify_ratio(SystemParams::in_units_of_g(0.0, 1.0), 1e-6, 1000);
  EXPECT_EQ(rep.ratio, 0.0);
  EXPECT_EQ(rep.best, (Fraction{0, 1}));
  EXPECT_EQ(rep.classification, Rationality::kEffectivelyRational);
}

TEST(ClassifyRatioTest, HalfCouplingDetuning) {
  const auto p = SystemParams::in_units_of_g(0.5, 1.0);
  const auto rep = classify_ratio(p, 1e-6, 1000);
  EXPECT_NEAR(rep.ratio, 0.5 / std::sqrt(8.25), 1e-16);
  const auto brute = oracle::brute_force_best(rep.ratio, 1e-6, 1000000);
  EXPECT_EQ(rep.best, brute);
  EXPECT_GT(rep.best.q, 1000);
  EXPECT_EQ(rep.classification, Rationality::kEffectivelyIrrational);
  EXPECT_EQ(classify_ratio(p, 1e-3, 1000).classification, Rationality::kEffectivelyRational);
}

TEST(ClassifyRatioTest, AgreesWithBruteForce) {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> d(-5.0, 5.0);
  for (int i = 0; i < 300; ++i) {
    const auto p = SystemParams::in_units_of_g(d(rng), 1.0);
    for (double tol : {1e-2, 1e-4, 1e-6}) {
      const auto rep = classify_ratio(p, tol, 1000);
      const auto brute = oracle::brute_force_best(rep.ratio, tol, 200000);
      if (brute.q != 0) {
        EXPECT_EQ(rep.best, brute) << rep.ratio << ' ' << tol;
      } else {
        EXPECT_GT(rep.best.q, 200000);
      }
    }
  }
}

TEST(ClassifyRatioTest, Errors) {
  const auto p = SystemParams::in_units_of_g(0.5, 1.0);
  EXPECT_THROW(classify_ratio(p, 0.0, 1000), ValidationError);
  EXPECT_THROW(classify_ratio(p, 1e-6, 1), ValidationError);
}

// Distinct C_k values for a ratio p/q are at most 2q.
TEST(RecurrenceValueSetTest, FiniteForRationalRatios) {
  struct Case {
    double delta;
    long long q;
  };
  // Delta/Omega = 1/2, 1/3, 2/5 for Delta^2 = 8/3, 1, 32/21.
  for (const auto& c : {Case{std::sqrt(8.0 / 3.0), 2}, Case{1.0, 3}, Case{std::sqrt(32.0 / 21.0), 5}}) {
    const auto rows = recurrence_concurrences(SystemParams::in_units_of_g(c.delta, 1.0), 10000);
    std::set<long long> seen;
    for (const auto& r : rows) seen.insert(std::llround(r.concurrence * 1e8));
    EXPECT_LE(static_cast<long long>(seen.size()), 2 * c.q);
  }
}

}  // namespace
}  // namespace cavmems
