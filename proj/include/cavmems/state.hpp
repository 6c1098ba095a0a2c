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

#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "cavmems/linalg.hpp"

namespace cavmems {

/// Raised when a matrix fails the density-matrix checks.
class InvalidStateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct StateTolerances {
  double hermiticity = 1e-10;
  double trace = 1e-10;
  double min_eigenvalue = -1e-9;
};

struct StateDiagnostics {
  double hermiticity_error = 0.0;
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;

  bool within(const StateTolerances& tol) const {
    return hermiticity_error <= tol.hermiticity && trace_error <= tol.trace &&
           min_eigenvalue >= tol.min_eigenvalue;
  }
};

inline StateDiagnostics diagnose_state(const ComplexMatrix& rho) {
  StateDiagnostics d;
  d.hermiticity_error = hermiticity_error(rho);
  d.trace_error = std::abs(rho.trace() - 1.0);
  if (d.hermiticity_error <= kHermitianTolerance) {
    d.min_eigenvalue = herm_eig(rho).values.back();
  } else {
    d.min_eigenvalue = -std::numeric_limits<double>::infinity();
  }
  return d;
}

/// Throws InvalidStateError unless rho is a density matrix within `tol`.
inline void require_density_matrix(const ComplexMatrix& rho, const StateTolerances& tol,
                                   const char* what) {
  if (!rho.all_finite()) throw InvalidStateError(std::string(what) + ": non-finite entry");
  const auto d = diagnose_state(rho);
  if (!d.within(tol)) {
    throw InvalidStateError(std::string(what) + ": not a density matrix (hermiticity " +
                            std::to_string(d.hermiticity_error) + ", trace error " +
                            std::to_string(d.trace_error) + ", min eigenvalue " +
                            std::to_string(d.min_eigenvalue) + ")");
  }
}

/// Validated 4x4 density matrix of the two atoms in the |ee>,|eg>,|ge>,|gg>
/// ordering.
class TwoQubitState {
 public:
  explicit TwoQubitState(ComplexMatrix rho, const StateTolerances& tol = {}) : rho_(std::move(rho)) {
    if (rho_.dim() != 4) {
      throw DimensionError("TwoQubitState: expected dim 4, got " + std::to_string(rho_.dim()));
    }
    require_density_matrix(rho_, tol, "TwoQubitState");
  }

  const ComplexMatrix& matrix() const noexcept { return rho_; }
  Complex operator()(std::size_t i, std::size_t j) const noexcept { return rho_(i, j); }

 private:
  ComplexMatrix rho_;
};

}  // namespace cavmems
