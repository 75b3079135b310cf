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

#include <Eigen/Dense>

#include <string>
#include <string_view>
#include <vector>

namespace srl {

using Vec3 = Eigen::Vector3d;

enum class LatticeFamily { chain, triangle, square, custom };

std::string_view to_string(LatticeFamily family);
LatticeFamily parse_lattice_family(std::string_view name);

/// Atom positions in units of the transition wavelength lambda0.
///
/// All atoms share one transition-dipole orientation. The default builders
/// put the lattice in the xy plane with the dipole along z, so every pair
/// sees the dipole perpendicular to its separation.
struct Geometry {
  std::vector<Vec3> positions;
  Vec3 dipole_axis = Vec3::UnitZ();
  LatticeFamily family = LatticeFamily::custom;
  double lattice_const = 0.0;

  int size() const { return static_cast<int>(positions.size()); }

  /// Sorted list of the n(n-1)/2 pairwise distances.
  std::vector<double> pair_distances() const;
};

/// Regular chain / equilateral triangle / square centered at the origin.
///
/// triangle requires 3 atoms, square requires 4. Throws ConfigurationError on
/// a family/size mismatch and DomainError for a non-positive lattice constant
/// or a zero dipole axis.
Geometry build_geometry(LatticeFamily family, int n_atoms, double lattice_const,
                        const Vec3& dipole_axis = Vec3::UnitZ());

/// Explicit positions. Coincident atoms raise SingularGeometryError.
Geometry custom_geometry(std::vector<Vec3> positions, const Vec3& dipole_axis = Vec3::UnitZ());

/// Dissipative pair function F(xi) for dipoles at angle theta to the pair axis.
/// Requires xi > 0; the diagonal (xi = 0) is handled by the caller.
double f_func(double xi, double cos_theta);

/// Dispersive pair function G(xi), same conventions as f_func.
double g_func(double xi, double cos_theta);

/// Collective decay rates gamma[i][j] and dipole-dipole shifts omega[i][j].
struct CouplingMatrices {
  Eigen::MatrixXd gamma;
  Eigen::MatrixXd omega;
  double single_atom_gamma = 0.0;

  int size() const { return static_cast<int>(gamma.rows()); }
};

/// gamma_ij = (3/2) Gamma F(2 pi r_ij), omega_ij = (3/4) Gamma G(2 pi r_ij) for
/// i != j; gamma_ii = Gamma exactly and omega_ii = 0.
CouplingMatrices coupling_matrices(const Geometry& geom, double gamma0);

}  // namespace srl
