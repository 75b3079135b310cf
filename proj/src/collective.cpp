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

#include "srlaser/collective.hpp"

#include "srlaser/errors.hpp"

#include <bit>
#include <cmath>
#include <vector>

namespace srl {

namespace {

void require_dicke(const Space& space) {
  if (space.kind() != SpaceKind::dicke) {
    throw DimensionError("collective operators need a dicke space, got " + space.describe());
  }
}

}  // namespace

SparseOperator collective_raising(const Space& space) {
  require_dicke(space);
  const double j = 0.5 * space.n_atoms();
  std::vector<Eigen::Triplet<cd>> t;
  for (Index k = 0; k < space.n_atoms(); ++k) {
    const double m = static_cast<double>(k) - j;
    const double element = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    for (int n = 0; n <= space.fock_cutoff(); ++n) {
      t.emplace_back(space.index(k + 1, n), space.index(k, n), element);
    }
  }
  SparseMatrix m(space.dim(), space.dim());
  m.setFromTriplets(t.begin(), t.end());
  return SparseOperator(space, std::move(m));
}

SparseOperator collective_lowering(const Space& space) { return collective_raising(space).adjoint(); }

SparseOperator collective_sz(const Space& space) {
  require_dicke(space);
  const double j = 0.5 * space.n_atoms();
  std::vector<Eigen::Triplet<cd>> t;
  for (Index i = 0; i < space.dim(); ++i) {
    const double m = static_cast<double>(space.atomic_index(i)) - j;
    if (m != 0.0) t.emplace_back(i, i, m);
  }
  SparseMatrix m(space.dim(), space.dim());
  m.setFromTriplets(t.begin(), t.end());
  return SparseOperator(space, std::move(m));
}

LindbladForm collective_lindblad_form(const ModelParams& params, const Space& space) {
  params.validate();
  require_dicke(space);
  const SparseOperator a = annihilation(space);
  const SparseOperator ad = creation(space);
  const SparseOperator sp = collective_raising(space);
  const SparseOperator sm = collective_lowering(space);

  LindbladForm form{params.detuning * (ad * a) + params.g * (a * sp + ad * sm), {}};
  if (params.gamma0 > 0.0) form.dissipators.push_back({params.gamma0, sm, sm});
  if (params.pump_rate > 0.0) form.dissipators.push_back({params.pump_rate, sp, sp});
  if (space.fock_cutoff() > 0) form.dissipators.push_back({2.0 * params.kappa, a, a});
  return form;
}

Superoperator collective_liouvillian(const ModelParams& params, const Space& space) {
  return assemble(collective_lindblad_form(params, space));
}

ObservableSet collective_observables(const DensityMatrix& rho) {
  require_dicke(rho.space());
  return observables(rho);
}

Eigen::MatrixXd dicke_embedding(int n_atoms, int fock_cutoff) {
  const Space full = hilbert_space(n_atoms, fock_cutoff);
  const Space reduced = dicke_space(n_atoms, fock_cutoff);
  Eigen::MatrixXd iso = Eigen::MatrixXd::Zero(full.dim(), reduced.dim());
  std::vector<int> multiplicity(n_atoms + 1, 0);
  for (Index bits = 0; bits < full.atomic_dim(); ++bits) {
    ++multiplicity[std::popcount(static_cast<std::uint64_t>(bits))];
  }
  for (Index bits = 0; bits < full.atomic_dim(); ++bits) {
    const int k = std::popcount(static_cast<std::uint64_t>(bits));
    const double amp = 1.0 / std::sqrt(static_cast<double>(multiplicity[k]));
    for (int n = 0; n <= fock_cutoff; ++n) {
      iso(full.index(bits, n), reduced.index(k, n)) = amp;
    }
  }
  return iso;
}

}  // namespace srl
