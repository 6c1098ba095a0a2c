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

// Closed-form dynamics of the cavity model for the initial state
// |0><0| (x) [lambda|e><e| + (1-lambda)|g><g|] (x) |g><g|.
//
// The printed operator expansions end in "+ h.c."; they are evaluated as
// rho = X + X^dagger over the whole term list, which doubles the Hermitian
// (diagonal) terms. That is the only reading with Tr rho = 1 and with rho(0)
// equal to the initial state.
//
// With gamma > 0 every oscillating factor exp(i nu t) is multiplied by
// exp(-gamma nu^2 t / 2), the decay of the corresponding coherence between
// Hamiltonian eigenstates under double-commutator dephasing. For gamma = 0
// the factors are exactly 1.

#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "cavmems/linalg.hpp"
#include "cavmems/metrics.hpp"
#include "cavmems/model.hpp"
#include "cavmems/state.hpp"

namespace cavmems {

struct ClosedFormTerms {
  double A = 0.0;
  double B = 0.0;
  double A_gamma = 0.0;
  double B_gamma = 0.0;
  double sigma_var = 0.0;  // varsigma
  double zeta = 0.0;
};

namespace detail {

struct Phases {
  double t;       // unscaled time
  double omega;   // Omega
  double delta;   // Delta
  double ratio;   // Delta / Omega
  double gamma;

  double damp(double nu) const { return std::exp(-0.5 * gamma * nu * nu * t); }
  Complex osc(double nu) const { return std::polar(damp(nu), nu * t); }
};

inline Phases phases(const SystemParams& p, double gt) {
  p.validate();
  if (!(gt >= 0.0) || !std::isfinite(gt)) throw ValidationError("scaled time must be finite and >= 0");
  const double omega = p.omega();
  return {p.time_of(gt), omega, p.delta, p.delta / omega, p.gamma};
}

inline void add_outer(ComplexMatrix& m, Complex coeff, const std::vector<Complex>& ket,
                      const std::vector<Complex>& bra) {
  m += coeff * ComplexMatrix::outer(ket, bra);
}

/// Embeds an atomic ket into the cavity-number-n sector of the full space.
inline std::vector<Complex> with_photons(std::size_t n, const std::vector<Complex>& atomic,
                                         std::size_t full_dim) {
  std::vector<Complex> v(full_dim, 0.0);
  for (std::size_t k = 0; k < basis::kAtomDim; ++k) v.at(basis::full_index(n, k)) = atomic[k];
  return v;
}

}  // namespace detail

/// A, B of the undamped concurrence, their damped counterparts, and the
/// varsigma/zeta pair entering the maximal CHSH value at lambda = 1.
inline ClosedFormTerms closed_form_terms(const SystemParams& p, double gt) {
  const auto ph = detail::phases(p, gt);
  const double t = ph.t;
  const double w = ph.omega;
  const double d = ph.delta;
  const double r2 = ph.ratio * ph.ratio;
  const double cos_wt = std::cos(w * t);
  const double s_plus = std::sin((w + d) * t / 2.0);
  const double s_minus = std::sin((w - d) * t / 2.0);

  ClosedFormTerms c;
  c.A = r2 / 4.0 - 0.25 + 0.25 * (1.0 - r2) * cos_wt;
  c.B = 0.5 * (1.0 - ph.ratio) * s_plus - 0.5 * (1.0 + ph.ratio) * s_minus;
  c.A_gamma = r2 / 4.0 - 0.25 + 0.25 * (1.0 - r2) * cos_wt * std::exp(-ph.gamma * t * w * w / 2.0);
  c.B_gamma = 0.5 * (1.0 - ph.ratio) * s_plus * std::exp(-ph.gamma * t * (w + d) * (w + d) / 8.0) -
              0.5 * (1.0 + ph.ratio) * s_minus * std::exp(-ph.gamma * t * (w - d) * (w - d) / 8.0);

  const double g = p.g;
  const double g2_w2 = g * g / (w * w);
  const double bracket = (1.0 - ph.ratio) * s_plus - (1.0 + ph.ratio) * s_minus;
  c.sigma_var = 4.0 * g2_w2 * g2_w2 * (1.0 - cos_wt) * (1.0 - cos_wt) + 0.25 * bracket * bracket;
  const double z = (d * d + 4.0 * g * g) / (w * w) + 4.0 * g2_w2 * cos_wt;
  c.zeta = z * z;
  return c;
}

/// Reduced two-atom state at scaled time gt.
inline TwoQubitState rho_s_analytic(const SystemParams& p, double gt) {
  const auto ph = detail::phases(p, gt);
  const double lam = p.lambda;
  const double w = ph.omega;
  const double d = ph.delta;
  const double r = ph.ratio;
  const double cos_wt = ph.damp(w) * std::cos(w * ph.t);

  const auto bp = basis::bell_plus();
  const auto bm = basis::bell_minus();
  const auto gg = basis::ket(basis::kGG, basis::kAtomDim);

  ComplexMatrix x(basis::kAtomDim);
  detail::add_outer(x, lam / 8.0 * (1.0 + r * r + (1.0 - r * r) * cos_wt), bp, bp);
  detail::add_outer(x, lam / 4.0, bm, bm);
  detail::add_outer(x, p.g * p.g * lam / (w * w) * (1.0 - cos_wt) + (1.0 - lam) / 2.0, gg, gg);
  detail::add_outer(x, lam / 4.0 * ((1.0 - r) * ph.osc((w + d) / 2.0) + (1.0 + r) * ph.osc(-(w - d) / 2.0)),
                    bp, bm);
  return TwoQubitState(x + adjoint(x));
}

/// Full cavity + atoms state at scaled time gt (dimension 4 (n_max + 1)).
inline ComplexMatrix rho_full_analytic(const SystemParams& p, double gt) {
  const auto ph = detail::phases(p, gt);
  const double lam = p.lambda;
  const double g = p.g;
  const double w = ph.omega;
  const double d = ph.delta;
  const double r = ph.ratio;
  const double t = ph.t;
  const double cos_wt = ph.damp(w) * std::cos(w * t);
  const double sin_wt = ph.damp(w) * std::sin(w * t);
  const std::size_t dim = p.full_dim();

  const auto bp0 = detail::with_photons(0, basis::bell_plus(), dim);
  const auto bm0 = detail::with_photons(0, basis::bell_minus(), dim);
  const auto gg0 = basis::ket(basis::full_index(0, basis::kGG), dim);
  const auto gg1 = basis::ket(basis::full_index(1, basis::kGG), dim);

  const double amp = std::numbers::sqrt2 * g * lam / (2.0 * w);
  ComplexMatrix x(dim);
  detail::add_outer(x, lam / 8.0 * (1.0 + r * r + (1.0 - r * r) * cos_wt), bp0, bp0);
  detail::add_outer(x, g * g * lam / (w * w) * (1.0 - cos_wt), gg1, gg1);
  detail::add_outer(x, lam / 4.0, bm0, bm0);
  detail::add_outer(x, amp * Complex(r * (1.0 - cos_wt), sin_wt), bp0, gg1);
  detail::add_outer(x, amp * (ph.osc((w - d) / 2.0) - ph.osc(-(w + d) / 2.0)), bm0, gg1);
  detail::add_outer(x, lam / 4.0 * ((1.0 - r) * ph.osc((w + d) / 2.0) + (1.0 + r) * ph.osc(-(w - d) / 2.0)),
                    bp0, bm0);
  detail::add_outer(x, (1.0 - lam) / 2.0, gg0, gg0);
  return x + adjoint(x);
}

/// lambda sqrt(A^2 + B^2), the undamped concurrence (gamma is ignored).
inline double concurrence_closed(const SystemParams& p, double gt) {
  const auto c = closed_form_terms(p, gt);
  return p.lambda * std::hypot(c.A, c.B);
}

/// lambda sqrt(A_gamma^2 + B_gamma^2) under dephasing at rate p.gamma.
inline double concurrence_dephased(const SystemParams& p, double gt) {
  const auto c = closed_form_terms(p, gt);
  return p.lambda * std::hypot(c.A_gamma, c.B_gamma);
}

namespace detail {
inline void require_unit_lambda(const SystemParams& p, const char* what) {
  if (std::abs(p.lambda - 1.0) > 1e-12) {
    throw ValidationError(std::string(what) +
                          ": closed form only holds for lambda = 1; use bell_max_general");
  }
}
}  // namespace detail

struct SigmaZeta {
  double sigma_var;
  double zeta;
};

/// varsigma, zeta with kappa + kappa~ = varsigma + max(varsigma, zeta).
/// Valid for lambda = 1 and describes the undamped state.
inline SigmaZeta sigma_zeta(const SystemParams& p, double gt) {
  detail::require_unit_lambda(p, "sigma_zeta");
  const auto c = closed_form_terms(p, gt);
  return {c.sigma_var, c.zeta};
}

inline double bell_max_closed(const SystemParams& p, double gt) {
  const auto sz = sigma_zeta(p, gt);
  return 2.0 * std::sqrt(sz.sigma_var + std::max(sz.sigma_var, sz.zeta));
}

struct Recurrence {
  long k;
  double gt;
  double concurrence;
};

/// Pure-state concurrences |sin(Delta k pi / Omega)| reached at t = 2 k pi / Omega
/// (lambda = 1).
inline std::vector<Recurrence> recurrence_concurrences(const SystemParams& p, long k_max) {
  p.validate();
  if (k_max < 1) throw ValidationError("k_max must be >= 1");
  const double w = p.omega();
  const double ratio = p.delta / w;
  std::vector<Recurrence> out;
  out.reserve(static_cast<std::size_t>(k_max));
  for (long k = 1; k <= k_max; ++k) {
    const double kd = static_cast<double>(k);
    out.push_back({k, 2.0 * kd * std::numbers::pi * p.g / w, std::abs(std::sin(ratio * kd * std::numbers::pi))});
  }
  return out;
}

/// Long-time limit 2 lambda g^2 / Omega^2 of the dephased concurrence.
inline double stationary_concurrence(const SystemParams& p) {
  p.validate();
  if (!(p.gamma > 0.0)) throw ValidationError("stationary_concurrence requires gamma > 0");
  const double w = p.omega();
  return 2.0 * p.lambda * p.g * p.g / (w * w);
}

}  // namespace cavmems
