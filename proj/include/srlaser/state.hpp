// Copyright 2026 The srlaser Authors
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

#include "srlaser/operators.hpp"

#include <string>

namespace srl {

/// Density matrix on a Space. Physical invariants (Hermitian, unit trace,
/// positive) are checked by check_physical(), not enforced on construction,
/// because the regression step propagates a rho which is not a state.
class DensityMatrix {
 public:
  DensityMatrix(Space space, DenseMatrix data);

  const Space& space() const { return space_; }
  const DenseMatrix& data() const { return data_; }
  Index dim() const { return space_.dim(); }

  cd trace() const { return data_.trace(); }
  /// Population of the n = n_max Fock level.
  double top_fock_population() const;

  struct Diagnostics {
    double hermiticity_error = 0.0;
    double trace_error = 0.0;
    double min_eigenvalue = 0.0;
    bool ok = true;
    std::string message;
  };
  /// Hermitian to herm_tol, trace 1 to trace_tol, min eigenvalue >= -psd_tol.
  Diagnostics check_physical(double herm_tol = 1e-10, double trace_tol = 1e-10, double psd_tol = 1e-8) const;

 private:
  Space space_;
  DenseMatrix data_;
};

/// All atoms in the ground state, cavity in vacuum.
DensityMatrix ground_vacuum(const Space& space);
/// |atomic, n><atomic, n| for a basis index.
DensityMatrix basis_state(const Space& space, Index index);
/// Product of the atomic ground state with |alpha> truncated at n_max and renormalized.
DensityMatrix coherent_state(const Space& space, cd alpha);
/// Atomic ground state times a thermal field of mean n_bar (truncated, renormalized).
DensityMatrix thermal_state(const Space& space, double n_bar);

}  // namespace srl
