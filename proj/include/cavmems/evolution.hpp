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

// Numerical solution of d rho/dt = -i[H, rho] - (gamma/2)[H, [H, rho]].
//
// The spectral path is exact for the time-independent H: in the eigenbasis
// of H, rho_mn(t) = rho_mn(0) exp(-i w_mn t - gamma w_mn^2 t / 2) with
// w_mn = E_m - E_n. The fixed-step RK4 path integrates the same equation
// independently and is used to cross-check it.

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "cavmems/linalg.hpp"
#include "cavmems/metrics.hpp"
#include "cavmems/model.hpp"
#include "cavmems/state.hpp"

namespace cavmems {

/// Raised when RK4 step halving changes the result by more than the
/// allowed discrepancy.
class StepSizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Eigendecomposition of H cached for repeated evaluation at arbitrary times.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const SystemParams& p)
      : params_(p), eig_(herm_eig(hamiltonian(p))), rho0_eigen_(to_eigenbasis(initial_state(p))) {}

  const SystemParams& params() const noexcept { return params_; }
  const std::vector<double>& energies() const noexcept { return eig_.values; }

  ComplexMatrix to_eigenbasis(const ComplexMatrix& m) const {
    return adjoint(eig_.vectors) * m * eig_.vectors;
  }
  ComplexMatrix from_eigenbasis(const ComplexMatrix& m) const {
    return eig_.vectors * m * adjoint(eig_.vectors);
  }

  /// Full-space state at scaled time gt.
  ComplexMatrix state_at(double gt) const {
    if (!(gt >= 0.0) || !std::isfinite(gt)) throw ValidationError("scaled time must be finite and >= 0");
    const double t = params_.time_of(gt);
    const std::size_t n = rho0_eigen_.dim();
    const auto& e = eig_.values;
    ComplexMatrix r(n);
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t k = 0; k < n; ++k) {
        const Complex c = rho0_eigen_(m, k);
        if (c == Complex{}) continue;
        const double w = e[m] - e[k];
        r(m, k) = c * std::polar(std::exp(-0.5 * params_.gamma * w * w * t), -w * t);
      }
    return from_eigenbasis(r);
  }

 private:
  SystemParams params_;
  HermitianEigen eig_;
  ComplexMatrix rho0_eigen_;
};

inline ComplexMatrix evolve_spectral(const SystemParams& p, double gt) {
  return SpectralPropagator(p).state_at(gt);
}

/// -i[H, rho] - (gamma/2)[H, [H, rho]]
inline ComplexMatrix dephasing_rhs(const ComplexMatrix& h, double gamma, const ComplexMatrix& rho) {
  const ComplexMatrix c = commutator(h, rho);
  ComplexMatrix out = Complex{0.0, -1.0} * c;
  if (gamma != 0.0) out -= (0.5 * gamma) * commutator(h, c);
  return out;
}

/// Classical fixed-step fourth-order Runge-Kutta for the dephasing equation.
class Rk4Integrator {
 public:
  /// `dt` is the maximal step in unscaled time.
  Rk4Integrator(const SystemParams& p, double dt) : h_(hamiltonian(p)), gamma_(p.gamma), dt_(dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("RK4 step must be finite and > 0");
  }

  double max_step() const noexcept { return dt_; }

  /// Advances rho by `duration` (unscaled) using ceil(duration / dt) equal steps.
  void advance(ComplexMatrix& rho, double duration) const {
    if (duration <= 0.0) return;
    const auto steps = static_cast<long>(std::ceil(duration / dt_ - 1e-12));
    const double step = duration / static_cast<double>(std::max(1L, steps));
    for (long s = 0; s < std::max(1L, steps); ++s) single_step(rho, step);
  }

  void single_step(ComplexMatrix& rho, double step) const {
    const ComplexMatrix k1 = dephasing_rhs(h_, gamma_, rho);
    const ComplexMatrix k2 = dephasing_rhs(h_, gamma_, rho + (0.5 * step) * k1);
    const ComplexMatrix k3 = dephasing_rhs(h_, gamma_, rho + (0.5 * step) * k2);
    const ComplexMatrix k4 = dephasing_rhs(h_, gamma_, rho + step * k3);
    rho += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

 private:
  ComplexMatrix h_;
  double gamma_;
  double dt_;
};

/// Default RK4 step in unscaled time.
inline double default_rk4_step(const SystemParams& p) { return 0.005 / p.omega(); }

inline constexpr double kStepHalvingTolerance = 1e-4;

/// Integrates from rho(0) to scaled time gt with step dt (unscaled), no
/// verification.
inline ComplexMatrix integrate_rk4(const SystemParams& p, double gt, double dt) {
  if (!(gt >= 0.0) || !std::isfinite(gt)) throw ValidationError("scaled time must be finite and >= 0");
  ComplexMatrix rho = initial_state(p);
  Rk4Integrator(p, dt).advance(rho, p.time_of(gt));
  return rho;
}

/// RK4 solution at gt. Runs with dt and dt/2, throws StepSizeError if they
/// differ by more than 1e-4 in any entry, and returns the dt/2 result.
inline ComplexMatrix evolve_rk4(const SystemParams& p, double gt, double dt) {
  const ComplexMatrix coarse = integrate_rk4(p, gt, dt);
  ComplexMatrix fine = integrate_rk4(p, gt, 0.5 * dt);
  const double gap = max_abs_diff(coarse, fine);
  if (!(gap <= kStepHalvingTolerance)) {
    throw StepSizeError("evolve_rk4: step-halving discrepancy " + std::to_string(gap) +
                        " exceeds tolerance; reduce dt");
  }
  return fine;
}

inline ComplexMatrix evolve_rk4(const SystemParams& p, double gt) {
  return evolve_rk4(p, gt, default_rk4_step(p));
}

/// Wootters concurrence of the cavity-traced spectral solution.
inline double dephased_concurrence_oracle(const SystemParams& p, double gt) {
  return wootters_concurrence(TwoQubitState(trace_out_cavity(evolve_spectral(p, gt))));
}

enum class EvolutionMethod { kSpectral, kRk4 };

struct EvolutionResult {
  std::vector<double> times;          // scaled, increasing
  std::vector<ComplexMatrix> states;  // full space
  double leakage = 0.0;               // max population outside the single-excitation sector
};

/// Tolerances for numerically evolved states; positivity is looser than
/// for constructed states since integration error accumulates.
inline constexpr StateTolerances kEvolvedStateTolerances{1e-10, 1e-9, -1e-8};

/// Evaluates the solution on an increasing grid of scaled times and checks
/// every state against kEvolvedStateTolerances.
inline EvolutionResult evolve_grid(const SystemParams& p, std::vector<double> gts,
                                   EvolutionMethod method = EvolutionMethod::kSpectral) {
  for (std::size_t i = 0; i < gts.size(); ++i) {
    if (!(gts[i] >= 0.0) || (i > 0 && !(gts[i] > gts[i - 1]))) {
      throw ValidationError("evolve_grid: times must be >= 0 and strictly increasing");
    }
  }
  EvolutionResult out;
  out.times = std::move(gts);
  out.states.reserve(out.times.size());
  if (method == EvolutionMethod::kSpectral) {
    const SpectralPropagator prop(p);
    for (double gt : out.times) out.states.push_back(prop.state_at(gt));
  } else {
    const Rk4Integrator rk(p, default_rk4_step(p));
    ComplexMatrix rho = initial_state(p);
    double now = 0.0;
    for (double gt : out.times) {
      rk.advance(rho, p.time_of(gt) - p.time_of(now));
      now = gt;
      out.states.push_back(rho);
    }
  }
  for (const auto& rho : out.states) {
    require_density_matrix(rho, kEvolvedStateTolerances, "evolve_grid");
    out.leakage = std::max(out.leakage, single_excitation_leakage(rho));
  }
  return out;
}

}  // namespace cavmems
