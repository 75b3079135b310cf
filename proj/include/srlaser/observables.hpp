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

#include "srlaser/state.hpp"

#include <optional>
#include <vector>

namespace srl {

/// Below this mean photon number g2(0) is reported as undefined.
inline constexpr double kG2PhotonFloor = 1e-9;

struct ObservableSet {
  double photon_number = 0.0;
  /// Atom-averaged <sigma_z>; +1 fully inverted, -1 all ground.
  double inversion = -1.0;
  std::optional<double> g2_zero;
  /// <sigma_z^i> per atom (atomic space), or N copies of the average (dicke space).
  std::vector<double> per_atom_inversion;

  bool g2_undefined() const { return !g2_zero.has_value(); }
  bool anti_bunched() const { return g2_zero && *g2_zero < 1.0; }
};

double photon_number(const DensityMatrix& rho);
double inversion(const DensityMatrix& rho);
/// <a+a+aa>/<a+a>^2; empty when <a+a> < kG2PhotonFloor.
std::optional<double> g2_zero(const DensityMatrix& rho);
std::vector<double> per_atom_inversion(const DensityMatrix& rho);

ObservableSet observables(const DensityMatrix& rho);

}  // namespace srl
