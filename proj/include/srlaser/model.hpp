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

#include "srlaser/geometry.hpp"
#include "srlaser/kernels.hpp"
#include "srlaser/operators.hpp"

#include <string_view>
#include <vector>

namespace srl {

enum class DecayMode { full_geometry, independent, fully_collective };
enum class PumpMode { individual, collective };

std::string_view to_string(DecayMode mode);
std::string_view to_string(PumpMode mode);
DecayMode parse_decay_mode(std::string_view name);
PumpMode parse_pump_mode(std::string_view name);

/// Physical parameters. Rates and detuning are in units of kappa, which is
/// itself kept explicit so that the loss term reads kappa (2 a rho a+ - ...).
/// With that convention the field decays at kappa and the photon number at
/// 2 kappa, so the empty cavity line has FWHM 2 kappa.
struct ModelParams {
  double g = 1.0;
  double kappa = 1.0;
  double gamma0 = 0.0;
  double pump_rate = 0.0;
  double detuning = 0.0;  // omega_c - omega_0
  DecayMode decay_mode = DecayMode::full_geometry;
  PumpMode pump_mode = PumpMode::individual;
  Geometry geometry;

  int n_atoms() const { return geometry.size(); }

  /// Throws DomainError for non-finite or negative rates and kappa <= 0.
  void validate() const;
};

/// Gamma_ij and Omega_ij after applying the decay mode: geometry-derived,
/// Gamma delta_ij (independent) or Gamma for every pair (fully collective).
/// The last two carry no dipole-dipole shift.
CouplingMatrices effective_couplings(const ModelParams& params);

/// rate * (A rho B^dagger - 1/2 {B^dagger A, rho}). With A = B this is the
/// usual Lindblad dissipator; A != B covers the cross terms of collective decay.
struct DissipatorTerm {
  double rate;
  SparseOperator left;
  SparseOperator right;
};

/// Generator in operator form: drho/dt = -i[H, rho] + sum of dissipator terms.
struct LindbladForm {
  SparseOperator hamiltonian;
  std::vector<DissipatorTerm> dissipators;

  const Space& space() const { return hamiltonian.space(); }
};

/// Hamiltonian in the frame rotating at omega_0:
/// Delta a+a + sum_{i!=j} Omega_ij s+_i s-_j + g sum_i (a s+_i + a+ s-_i).
SparseOperator hamiltonian(const ModelParams& params, const Space& space);

/// Collective decay, pump (individual or collective S+) and cavity loss terms.
LindbladForm lindblad_form(const ModelParams& params, const Space& space);

/// dim^2 x dim^2 generator acting on column-stacked density matrices,
/// vec(A rho B) = (B^T kron A) vec(rho). Immutable; apply() is reentrant.
class Superoperator {
 public:
  Superoperator(Space space, SparseMatrix matrix);

  const Space& space() const { return space_; }
  Index dim() const { return space_.dim(); }
  Index size() const { return matrix_.rows(); }
  const SparseMatrix& matrix() const { return matrix_; }
  const kernels::RowMajorSparse& row_major() const { return rows_; }

  Vector apply(const Vector& rho_vec) const;
  DenseMatrix apply(const DenseMatrix& rho) const;

 private:
  Space space_;
  SparseMatrix matrix_;
  kernels::RowMajorSparse rows_;
};

Superoperator assemble(const LindbladForm& form);

/// Full-model Liouvillian for the given space.
Superoperator liouvillian(const ModelParams& params, const Space& space);

/// Same generator evaluated with operator products on a dense matrix. Slow,
/// independent of the superoperator assembly; used as the test reference.
DenseMatrix apply_reference(const LindbladForm& form, const DenseMatrix& rho);

/// Column-stacking helpers.
Vector vectorize(const DenseMatrix& rho);
DenseMatrix unvectorize(const Vector& v, Index dim);

}  // namespace srl
