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

#include "srlaser/model.hpp"
#include "srlaser/observables.hpp"
#include "srlaser/state.hpp"

namespace srl {

/// Symmetric spin-N/2 multiplet times Fock space, dim = (N + 1)(n_max + 1).
inline Space dicke_space(int n_atoms, int fock_cutoff) { return Space::dicke(n_atoms, fock_cutoff); }

// Collective spin operators on a dicke space:
// <m+1|S+|m> = sqrt(J(J+1) - m(m+1)), S- = (S+)^dagger, Sz = diag(m).
SparseOperator collective_raising(const Space& space);
SparseOperator collective_lowering(const Space& space);
SparseOperator collective_sz(const Space& space);

/// Reduced model for all-to-all decay Gamma D[S-] and collective pump R D[S+].
/// H = Delta a+a + g (a S+ + a+ S-); no dipole-dipole shifts. The decay and
/// pump modes in `params` are ignored, only the rates and N are used.
LindbladForm collective_lindblad_form(const ModelParams& params, const Space& space);
Superoperator collective_liouvillian(const ModelParams& params, const Space& space);

/// photon number, 2<Sz>/N and g2(0) of a reduced-space state.
ObservableSet collective_observables(const DensityMatrix& rho);

/// Isometry from a dicke space into the atomic space with the same N and
/// n_max: |J, m> maps onto the normalized symmetric superposition of all bit
/// strings with m + N/2 excitations. Columns are orthonormal.
Eigen::MatrixXd dicke_embedding(int n_atoms, int fock_cutoff);

}  // namespace srl
