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

// Two two-level atoms symmetrically coupled to one cavity mode.
//
// Atomic basis (per atom): |e> = index 0, |g> = index 1, so the two-atom
// ordering is |ee>, |eg>, |ge>, |gg>. The full space is cavity-major:
// |n> (x) |atom1> (x) |atom2>, index = 4 n + atomic index.
//
// The Hamiltonian is written in the frame rotating at the cavity frequency,
//   H = Delta sum_i s+^(i) s-^(i) + g sum_i (a s+^(i) + a^dagger s-^(i)),
// which differs from the lab-frame operator by a multiple of the conserved
// excitation number. Time arguments throughout the library are the scaled
// time gt.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "cavmems/linalg.hpp"

namespace cavmems {

/// Raised for physically invalid parameters or arguments.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace basis {

inline constexpr std::size_t kEE = 0;
inline constexpr std::size_t kEG = 1;
inline constexpr std::size_t kGE = 2;
inline constexpr std::size_t kGG = 3;
inline constexpr std::size_t kAtomDim = 4;

/// Full-space index of |n> (x) |atomic>.
constexpr std::size_t full_index(std::size_t n, std::size_t atomic) { return kAtomDim * n + atomic; }

inline std::vector<Complex> ket(std::size_t index, std::size_t dim) {
  std::vector<Complex> v(dim, 0.0);
  v.at(index) = 1.0;
  return v;
}

/// (|eg> + |ge>) / sqrt(2)
inline std::vector<Complex> bell_plus() {
  const double r = 1.0 / std::sqrt(2.0);
  return {0.0, r, r, 0.0};
}

/// (|eg> - |ge>) / sqrt(2)
inline std::vector<Complex> bell_minus() {
  const double r = 1.0 / std::sqrt(2.0);
  return {0.0, r, -r, 0.0};
}

}  // namespace basis

/// Physical parameters. Rates are in the same (arbitrary) frequency unit as
/// g; gamma has units of time since it multiplies H^2.
struct SystemParams {
  double g = 1.0;
  double delta = 0.0;
  double lambda = 1.0;
  double gamma = 0.0;
  int n_max = 1;

  /// Generalised Rabi frequency sqrt(Delta^2 + 8 g^2).
  double omega() const { return std::sqrt(delta * delta + 8.0 * g * g); }

  /// Unscaled time corresponding to the scaled time gt.
  double time_of(double gt) const { return gt / g; }

  void validate() const {
    if (!(std::isfinite(g) && g > 0.0)) throw ValidationError("g must be finite and > 0");
    if (!std::isfinite(delta)) throw ValidationError("delta must be finite");
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
      throw ValidationError("lambda must lie in [0, 1], got " + std::to_string(lambda));
    }
    if (!(std::isfinite(gamma) && gamma >= 0.0)) throw ValidationError("gamma must be >= 0");
    if (n_max < 1) throw ValidationError("n_max must be >= 1");
  }

  /// Builds from quantities expressed in units of g (delta/g, gamma*g).
  static SystemParams in_units_of_g(double delta_over_g, double lambda, double gamma_times_g = 0.0,
                                    int n_max = 1) {
    SystemParams p{1.0, delta_over_g, lambda, gamma_times_g, n_max};
    p.validate();
    return p;
  }

  std::size_t cavity_dim() const { return static_cast<std::size_t>(n_max) + 1; }
  std::size_t full_dim() const { return basis::kAtomDim * cavity_dim(); }
};

namespace ops {

inline ComplexMatrix annihilation(std::size_t cavity_dim) {
  ComplexMatrix a(cavity_dim);
  for (std::size_t n = 1; n < cavity_dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

/// |e><g|
inline ComplexMatrix sigma_plus() { return ComplexMatrix(2, {0.0, 1.0, 0.0, 0.0}); }
/// |g><e|
inline ComplexMatrix sigma_minus() { return ComplexMatrix(2, {0.0, 0.0, 1.0, 0.0}); }
/// |e><e|
inline ComplexMatrix excited_projector() { return ComplexMatrix(2, {1.0, 0.0, 0.0, 0.0}); }

/// cavity (x) atom1 (x) atom2
inline ComplexMatrix embed(const ComplexMatrix& cavity, const ComplexMatrix& atom1,
                           const ComplexMatrix& atom2) {
  return tensor(tensor(cavity, atom1), atom2);
}

}  // namespace ops

inline ComplexMatrix hamiltonian(const SystemParams& p) {
  p.validate();
  const std::size_t nc = p.cavity_dim();
  const auto ic = ComplexMatrix::identity(nc);
  const auto i2 = ComplexMatrix::identity(2);
  const auto a = ops::annihilation(nc);
  const auto ad = adjoint(a);
  const auto sp = ops::sigma_plus();
  const auto sm = ops::sigma_minus();
  const auto ee = ops::excited_projector();

  ComplexMatrix h = p.delta * (ops::embed(ic, ee, i2) + ops::embed(ic, i2, ee));
  h += p.g * (ops::embed(a, sp, i2) + ops::embed(ad, sm, i2));
  h += p.g * (ops::embed(a, i2, sp) + ops::embed(ad, i2, sm));
  return h;
}

/// rho(0) = |0><0| (x) [lambda |e><e| + (1 - lambda) |g><g|] (x) |g><g|
inline ComplexMatrix initial_state(const SystemParams& p) {
  p.validate();
  ComplexMatrix rho(p.full_dim());
  rho(basis::full_index(0, basis::kEG), basis::full_index(0, basis::kEG)) = p.lambda;
  rho(basis::full_index(0, basis::kGG), basis::full_index(0, basis::kGG)) = 1.0 - p.lambda;
  return rho;
}

/// N = a^dagger a + sum_i s+^(i) s-^(i)
inline ComplexMatrix excitation_number(const SystemParams& p) {
  p.validate();
  const std::size_t nc = p.cavity_dim();
  const auto a = ops::annihilation(nc);
  const auto i2 = ComplexMatrix::identity(2);
  const auto ee = ops::excited_projector();
  const auto ic = ComplexMatrix::identity(nc);
  return ops::embed(matmul(adjoint(a), a), i2, i2) + ops::embed(ic, ee, i2) + ops::embed(ic, i2, ee);
}

/// Population outside span{|0,gg>, |0,eg>, |0,ge>, |1,gg>}, the sector the
/// initial state can reach.
inline double single_excitation_leakage(const ComplexMatrix& rho) {
  const std::size_t allowed[] = {basis::full_index(0, basis::kEG), basis::full_index(0, basis::kGE),
                                 basis::full_index(0, basis::kGG), basis::full_index(1, basis::kGG)};
  double outside = 0.0;
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    if (std::find(std::begin(allowed), std::end(allowed), i) == std::end(allowed)) {
      outside += std::abs(rho(i, i).real());
    }
  }
  return outside;
}

/// Traces out the cavity of a full-space operator.
inline ComplexMatrix trace_out_cavity(const ComplexMatrix& rho) {
  if (rho.dim() % basis::kAtomDim != 0) throw DimensionError("trace_out_cavity: bad dimension");
  const std::size_t dims[] = {rho.dim() / basis::kAtomDim, 2, 2};
  return partial_trace(rho, dims, {1, 2});
}

}  // namespace cavmems
