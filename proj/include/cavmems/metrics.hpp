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

// Functionals of a two-qubit state: Wootters concurrence, purity, linear
// entropy, the Pauli correlation matrix and the maximal CHSH value.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "cavmems/linalg.hpp"
#include "cavmems/state.hpp"

namespace cavmems {

/// (T)_nm = Tr(rho sigma_n (x) sigma_m), n, m in {x, y, z}.
using CorrelationMatrix = std::array<std::array<double, 3>, 3>;

/// sigma_y (x) sigma_y in the |ee>,|eg>,|ge>,|gg> ordering.
inline ComplexMatrix spin_flip() { return tensor(pauli::y(), pauli::y()); }

/// Eigenvalues of rho rho~ below this magnitude (relative to the largest
/// eigenvalue of rho) are treated as exact zeros when forming sqrt(rho).
inline constexpr double kRankCutoff = 1e-14;

/// Wootters concurrence max(0, l1 - l2 - l3 - l4). The l_i are obtained as
/// singular values of W^T (sy (x) sy) W with rho = W W^dagger, read off the
/// Hermitian matrix [[0, X], [X^dagger, 0]] whose spectrum is +-l_i. This keeps
/// absolute accuracy near rank-deficient states, where square roots of the
/// eigenvalues of rho rho~ amplify roundoff to ~1e-8.
inline double wootters_concurrence(const TwoQubitState& s) {
  const auto eig = herm_eig(s.matrix());
  const double cutoff = kRankCutoff * std::max(1.0, eig.values.front());
  ComplexMatrix w(4);
  for (std::size_t k = 0; k < 4; ++k) {
    const double mu = eig.values[k];
    if (mu <= cutoff) continue;
    const double root = std::sqrt(mu);
    for (std::size_t i = 0; i < 4; ++i) w(i, k) = eig.vectors(i, k) * root;
  }
  ComplexMatrix wt(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) wt(i, j) = w(j, i);
  const ComplexMatrix x = wt * spin_flip() * w;

  ComplexMatrix jw(8);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      jw(i, 4 + j) = x(i, j);
      jw(4 + j, i) = std::conj(x(i, j));
    }
  const auto sv = herm_eig(jw).values;  // descending: l1 >= ... >= l4 >= -l4 ...
  return std::max(0.0, sv[0] - std::max(0.0, sv[1]) - std::max(0.0, sv[2]) - std::max(0.0, sv[3]));
}

/// Same quantity from the general eigenvalues of rho rho~ (roots clipped at
/// zero). Accurate to roughly sqrt(machine epsilon) near rank-deficient
/// states; kept as an independent route.
inline double wootters_concurrence_via_spin_flip(const TwoQubitState& s) {
  const ComplexMatrix& rho = s.matrix();
  const ComplexMatrix flip = spin_flip();
  const ComplexMatrix rho_tilde = flip * conjugate(rho) * flip;
  const auto eig = eigvals_general_4x4(rho * rho_tilde);
  std::array<double, 4> root{};
  for (std::size_t k = 0; k < 4; ++k) root[k] = std::sqrt(std::max(0.0, eig[k].real()));
  std::sort(root.begin(), root.end(), std::greater<>());
  return std::max(0.0, root[0] - root[1] - root[2] - root[3]);
}

/// Tr rho^2, clamped to [1/4, 1] against roundoff.
inline double purity(const TwoQubitState& s) {
  return std::clamp(trace_of_product(s.matrix(), s.matrix()).real(), 0.25, 1.0);
}

/// M = (4/3)(1 - Tr rho^2)
inline double linear_entropy(const TwoQubitState& s) {
  return std::clamp(4.0 / 3.0 * (1.0 - purity(s)), 0.0, 1.0);
}

namespace detail {
inline const std::array<std::array<ComplexMatrix, 3>, 3>& pauli_products() {
  static const auto table = [] {
    const std::array<ComplexMatrix, 3> sigma{pauli::x(), pauli::y(), pauli::z()};
    std::array<std::array<ComplexMatrix, 3>, 3> t;
    for (std::size_t n = 0; n < 3; ++n)
      for (std::size_t m = 0; m < 3; ++m) t[n][m] = tensor(sigma[n], sigma[m]);
    return t;
  }();
  return table;
}
}  // namespace detail

inline CorrelationMatrix correlation_matrix(const TwoQubitState& s) {
  const auto& products = detail::pauli_products();
  CorrelationMatrix t{};
  for (std::size_t n = 0; n < 3; ++n)
    for (std::size_t m = 0; m < 3; ++m) t[n][m] = trace_of_product(s.matrix(), products[n][m]).real();
  return t;
}

/// 2 sqrt(kappa + kappa~) with kappa, kappa~ the two largest eigenvalues of
/// T^T T.
inline double bell_max_from_correlations(const CorrelationMatrix& t) {
  ComplexMatrix ttt(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < 3; ++k) acc += t[k][i] * t[k][j];
      ttt(i, j) = acc;
    }
  const auto eig = herm_eig(ttt);
  return 2.0 * std::sqrt(std::max(0.0, eig.values[0] + eig.values[1]));
}

inline double bell_max_general(const TwoQubitState& s) {
  return bell_max_from_correlations(correlation_matrix(s));
}

}  // namespace cavmems
