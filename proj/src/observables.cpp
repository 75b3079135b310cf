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

#include "srlaser/observables.hpp"

namespace srl {

// Every observable here is diagonal in the product basis, so only the
// populations rho_ii enter.

double photon_number(const DensityMatrix& rho) {
  double n = 0.0;
  for (Index i = 0; i < rho.dim(); ++i) n += rho.space().photons(i) * rho.data()(i, i).real();
  return n;
}

double inversion(const DensityMatrix& rho) {
  const Space& s = rho.space();
  if (s.n_atoms() == 0) return 0.0;
  double sum = 0.0;
  for (Index i = 0; i < rho.dim(); ++i) {
    const double z = 2.0 * s.atomic_excitations(i) - s.n_atoms();
    sum += z * rho.data()(i, i).real();
  }
  return sum / s.n_atoms();
}

std::optional<double> g2_zero(const DensityMatrix& rho) {
  double n1 = 0.0;
  double n2 = 0.0;
  for (Index i = 0; i < rho.dim(); ++i) {
    const double n = rho.space().photons(i);
    const double p = rho.data()(i, i).real();
    n1 += n * p;
    n2 += n * (n - 1.0) * p;
  }
  if (n1 < kG2PhotonFloor) return std::nullopt;
  return n2 / (n1 * n1);
}

std::vector<double> per_atom_inversion(const DensityMatrix& rho) {
  const Space& s = rho.space();
  if (s.kind() == SpaceKind::dicke) {
    return std::vector<double>(s.n_atoms(), inversion(rho));
  }
  std::vector<double> out(s.n_atoms(), 0.0);
  for (Index i = 0; i < rho.dim(); ++i) {
    const double p = rho.data()(i, i).real();
    const Index bits = s.atomic_index(i);
    for (int atom = 0; atom < s.n_atoms(); ++atom) {
      out[atom] += ((bits >> atom) & 1) ? p : -p;
    }
  }
  return out;
}

ObservableSet observables(const DensityMatrix& rho) {
  ObservableSet o;
  o.photon_number = photon_number(rho);
  o.inversion = inversion(rho);
  o.g2_zero = g2_zero(rho);
  o.per_atom_inversion = per_atom_inversion(rho);
  return o;
}

}  // namespace srl
