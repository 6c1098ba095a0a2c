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

#include <numbers>
#include <set>

#include "cavmems/analytic.hpp"
#include "cavmems/evolution.hpp"
#include "cavmems/metrics.hpp"
#include "support/oracles.hpp"

namespace cavmems {
namespace {

constexpr double kPi = std::numbers::pi;

SystemParams params(double delta, double lambda, double gamma = 0.0) {
  return SystemParams::in_units_of_g(delta, lambda, gamma);
}

// Scaled time at which Omega t equals `phase`.
double gt_at_phase(const SystemParams& p, double phase) { return p.g * phase / p.omega(); }

TEST(RhoSAnalyticTest, InitialValueIsAtomicMarginal) {
  for (double lambda : {0.0, 0.3, 0.6, 1.0}) {
    const auto s = rho_s_analytic(params(0.5, lambda), 0.0);
    ComplexMatrix expect(4);
    expect(basis::kEG, basis::kEG) = lambda;
    expect(basis::kGG, basis::kGG) = 1.0 - lambda;
    EXPECT_LE(max_abs_diff(s.matrix(), expect), 1e-15);
  }
}

TEST(RhoSAnalyticTest, ResonantHalfPeriod) {
  const auto p = params(0.0, 1.0);
  const auto s = rho_s_analytic(p, gt_at_phase(p, kPi));
  ComplexMatrix expect = 0.5 * ComplexMatrix::outer(basis::bell_minus(), basis::bell_minus());
  expect(basis::kGG, basis::kGG) += 0.5;
  EXPECT_LE(max_abs_diff(s.matrix(), expect), 1e-14);
}

TEST(RhoSAnalyticTest, PureAtRecurrenceTimes) {
  for (double delta : {0.0, 0.5, 1.0, 5.0}) {
    const auto p = params(delta, 1.0);
    for (int k = 1; k <= 50; ++k) {
      EXPECT_GT(purity(rho_s_analytic(p, gt_at_phase(p, 2.0 * k * kPi))), 1.0 - 1e-10);
    }
  }
}

TEST(RhoSAnalyticTest, MatchesExactAmplitudes) {
  // lambda = 1: reduced state is |psi><psi| + |c|^2 |gg><gg| with psi from
  // the two-mode amplitudes.
  for (double delta : {0.0, 0.01, 0.5, 1.0, 5.0, -2.0}) {
    const auto p = params(delta, 1.0);
    for (double gt : {0.0, 0.3, 1.7, 12.5, 49.9, 333.3}) {
      const auto a = oracle::single_excitation_amplitudes(p.delta, p.g, p.time_of(gt));
      ComplexMatrix expect(4);
      const std::vector<Complex> psi{0.0, a.eg, a.ge, 0.0};
      expect += ComplexMatrix::outer(psi, psi);
      expect(basis::kGG, basis::kGG) += std::norm(a.cav);
      // Equal up to the dark/bright relative phase convention of the frame.
      const auto got = rho_s_analytic(p, gt).matrix();
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(std::abs(got(i, j)), std::abs(expect(i, j)), 1e-12);
      EXPECT_NEAR(concurrence_closed(p, gt), 2.0 * std::abs(a.eg * a.ge), 1e-12);
    }
  }
}

TEST(RhoFullAnalyticTest, InitialStateAndTrace) {
  for (double lambda : {0.0, 0.5, 1.0}) {
    const auto p = params(0.5, lambda);
    EXPECT_LE(max_abs_diff(rho_full_analytic(p, 0.0), initial_state(p)), 1e-15);
    for (double gt : {0.1, 3.0, 47.0}) {
      const auto r = rho_full_analytic(p, gt);
      EXPECT_NEAR(r.trace().real(), 1.0, 1e-10);
      EXPECT_LE(max_abs_diff(trace_out_cavity(r), rho_s_analytic(p, gt).matrix()), 1e-12);
    }
  }
}

TEST(RhoFullAnalyticTest, CavityPopulationAtResonantHalfPeriod) {
  const auto p = params(0.0, 1.0);
  const auto r = rho_full_analytic(p, gt_at_phase(p, kPi));
  const auto a = ops::annihilation(p.cavity_dim());
  const auto n = ops::embed(matmul(adjoint(a), a), pauli::identity(), pauli::identity());
  EXPECT_NEAR(trace_of_product(n, r).real(), 0.5, 1e-14);
  // Numeric evolution agrees.
  EXPECT_NEAR(trace_of_product(n, evolve_spectral(p, gt_at_phase(p, kPi))).real(), 0.5, 1e-12);
}

TEST(RhoFullAnalyticTest, MatchesSpectralSolutionWithAndWithoutDephasing) {
  for (double delta : {0.0, 0.5, 1.0, 5.0}) {
    for (double lambda : {0.6, 1.0}) {
      for (double gamma : {0.0, 0.01, 0.3}) {
        const auto p = params(delta, lambda, gamma);
        const SpectralPropagator prop(p);
        for (double gt : {0.7, 13.0, 250.0}) {
          EXPECT_LE(max_abs_diff(rho_full_analytic(p, gt), prop.state_at(gt)), 1e-9)
              << delta << ' ' << lambda << ' ' << gamma << ' ' << gt;
        }
      }
    }
  }
}

TEST(ConcurrenceClosedTest, Examples) {
  EXPECT_EQ(concurrence_closed(params(0.5, 1.0), 0.0), 0.0);
  const auto p = params(0.0, 1.0);
  for (double gt : {0.2, 1.0, 2.5, 17.0}) {
    const double wt = p.omega() * p.time_of(gt);
    EXPECT_NEAR(concurrence_closed(p, gt), (1.0 - std::cos(wt)) / 4.0, 1e-14);
  }
  EXPECT_NEAR(concurrence_closed(p, gt_at_phase(p, kPi)), 0.5, 1e-15);
  for (double delta : {0.5, 1.0, 5.0}) {
    const auto q = params(delta, 1.0);
    for (int k = 1; k <= 20; ++k) {
      EXPECT_NEAR(concurrence_closed(q, gt_at_phase(q, 2.0 * k * kPi)),
                  std::abs(std::sin(delta * k * kPi / q.omega())), 1e-12);
    }
  }
}

TEST(ConcurrenceClosedTest, AgreesWithWoottersIncludingPartialExcitation) {
  for (double delta : {0.0, 0.5, 5.0}) {
    for (double lambda : {0.6, 0.7, 0.9, 1.0}) {
      const auto p = params(delta, lambda);
      for (double gt : {0.4, 2.2, 9.9, 123.4}) {
        const auto s = rho_s_analytic(p, gt);
        EXPECT_NEAR(wootters_concurrence(s), concurrence_closed(p, gt), 1e-12);
        EXPECT_NEAR(oracle::x_state_concurrence(s.matrix()), concurrence_closed(p, gt), 1e-12);
      }
    }
  }
}

TEST(ConcurrenceDephasedTest, ReducesToUndampedForZeroGamma) {
  for (double delta : {0.0, 0.5, 5.0})
    for (double gt = 0.0; gt < 60.0; gt += 1.37) {
      const auto p = params(delta, 0.8);
      EXPECT_EQ(concurrence_dephased(p, gt), concurrence_closed(p, gt));
      const auto t = closed_form_terms(p, gt);
      EXPECT_EQ(t.A_gamma, t.A);
      EXPECT_EQ(t.B_gamma, t.B);
    }
}

TEST(ConcurrenceDephasedTest, LongTimeLimit) {
  const auto p = params(0.0, 1.0, 0.01);
  // gamma t Omega^2 / 2 >= 40  <=>  t >= 80 / (gamma Omega^2)
  const double gt = 80.0 / (p.gamma * p.omega() * p.omega());
  EXPECT_NEAR(concurrence_dephased(p, gt * 1.01), 0.25, 1e-6);
  for (double delta : {0.5, 1.0, 3.0}) {
    const auto q = params(delta, 0.7, 0.5);
    const double t_long = 200.0 / (q.gamma * std::pow(q.omega() - std::abs(q.delta), 2));
    EXPECT_NEAR(concurrence_dephased(q, t_long), 2.0 * 0.7 / (q.omega() * q.omega()), 1e-6);
  }
}

TEST(ConcurrenceDephasedTest, ResonantBoundedByHalf) {
  for (double gamma : {0.001, 0.01, 0.1, 1.0}) {
    const auto p = params(0.0, 1.0, gamma);
    double sup = 0.0;
    for (double gt = 0.0; gt <= 500.0; gt += 0.01) sup = std::max(sup, concurrence_dephased(p, gt));
    EXPECT_LE(sup, 0.5);
  }
}

TEST(SigmaZetaTest, Examples) {
  const auto p = params(0.0, 1.0);
  const auto z0 = sigma_zeta(p, 0.0);
  EXPECT_NEAR(z0.sigma_var, 0.0, 1e-15);
  EXPECT_NEAR(z0.zeta, 1.0, 1e-15);
  const auto zp = sigma_zeta(p, gt_at_phase(p, kPi));
  EXPECT_NEAR(zp.sigma_var, 0.25, 1e-15);
  EXPECT_NEAR(zp.zeta, 0.0, 1e-15);
  EXPECT_NEAR(bell_max_closed(p, 0.0), 2.0, 1e-15);
  EXPECT_NEAR(bell_max_closed(p, gt_at_phase(p, kPi)), std::sqrt(2.0), 1e-14);
}

TEST(SigmaZetaTest, RequiresUnitLambda) {
  EXPECT_THROW(sigma_zeta(params(0.5, 0.9), 1.0), ValidationError);
  EXPECT_THROW(bell_max_closed(params(0.5, 0.9), 1.0), ValidationError);
}

TEST(BellMaxClosedTest, TsirelsonAndResonantBound) {
  for (double delta : {0.0, 0.01, 0.5, 5.0}) {
    const auto p = params(delta, 1.0);
    for (double gt = 0.0; gt <= 50.0; gt += 0.05) {
      const double b = bell_max_closed(p, gt);
      EXPECT_LE(b, 2.0 * std::sqrt(2.0) + 1e-9);
      if (delta == 0.0) {
        EXPECT_LE(b, 2.0 + 1e-12);
      }
      EXPECT_NEAR(b, bell_max_general(rho_s_analytic(p, gt)), 1e-9);
    }
  }
}

TEST(RecurrenceTest, Examples) {
  const auto zero = recurrence_concurrences(params(0.0, 1.0), 30);
  ASSERT_EQ(zero.size(), 30u);
  for (const auto& r : zero) EXPECT_EQ(r.concurrence, 0.0);
  // Delta / Omega = 1/2 when Delta^2 = 8 g^2 / 3.
  const auto p = params(std::sqrt(8.0 / 3.0), 1.0);
  const auto half = recurrence_concurrences(p, 40);
  for (const auto& r : half) {
    EXPECT_NEAR(r.concurrence, r.k % 2 == 1 ? 1.0 : 0.0, 1e-12);
    EXPECT_NEAR(r.gt, 2.0 * r.k * kPi * p.g / p.omega(), 1e-12);
  }
  EXPECT_THROW(recurrence_concurrences(p, 0), ValidationError);
}

TEST(RecurrenceTest, DistinctValuesGrowForGenericDetuning) {
  const auto rows = recurrence_concurrences(params(0.5, 1.0), 10000);
  auto distinct = [&](std::size_t upto) {
    std::set<long long> seen;
    for (std::size_t i = 0; i < upto; ++i) seen.insert(std::llround(rows[i].concurrence * 1e9));
    return seen.size();
  };
  const auto d100 = distinct(100), d1000 = distinct(1000), d10000 = distinct(10000);
  EXPECT_LT(d100, d1000);
  EXPECT_LT(d1000, d10000);
  EXPECT_GT(d10000, 5000u);
}

TEST(StationaryConcurrenceTest, Examples) {
  EXPECT_NEAR(stationary_concurrence(params(0.0, 1.0, 0.01)), 0.25, 1e-15);
  EXPECT_EQ(stationary_concurrence(params(0.5, 0.0, 0.01)), 0.0);
  double prev = 1.0;
  for (double delta : {0.0, 0.5, 1.0, 5.0, 50.0, 5000.0}) {
    const double c = stationary_concurrence(params(delta, 1.0, 0.01));
    EXPECT_LT(c, prev);
    prev = c;
  }
  EXPECT_LT(prev, 1e-6);
  EXPECT_THROW(stationary_concurrence(params(0.0, 1.0, 0.0)), ValidationError);
}

}  // namespace
}  // namespace cavmems
