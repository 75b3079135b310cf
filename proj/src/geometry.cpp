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

#include "srlaser/geometry.hpp"

#include "srlaser/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace srl {

namespace {

constexpr double kCoincidenceTolerance = 1e-12;

// cos(x)/x^2 - sin(x)/x^3 for small x. The closed form loses ~2 log10(1/x)
// digits to cancellation; the series is sum_k (-1)^k 2k x^(2k-2) / (2k+1)!.
long double near_field_series(long double x) {
  const long double x2 = x * x;
  long double term = 1.0L;       // x^(2k-2)
  long double factorial = 6.0L;  // (2k+1)!
  long double sum = 0.0L;
  for (int k = 1; k <= 12; ++k) {
    const long double sign = (k % 2 == 1) ? -1.0L : 1.0L;
    sum += sign * (2.0L * k) * term / factorial;
    term *= x2;
    factorial *= (2.0L * k + 2.0L) * (2.0L * k + 3.0L);
  }
  return sum;
}

void check_arguments(double xi, double cos_theta, const char* name) {
  if (!(xi > 0.0) || !std::isfinite(xi)) {
    throw DomainError(std::string(name) + ": xi must be positive and finite, got " + std::to_string(xi));
  }
  if (!(std::abs(cos_theta) <= 1.0 + 1e-12)) {
    throw DomainError(std::string(name) + ": cos_theta outside [-1, 1]: " + std::to_string(cos_theta));
  }
}

Vec3 normalized_axis(const Vec3& axis) {
  const double norm = axis.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw DomainError("dipole axis must be a nonzero finite vector");
  }
  return axis / norm;
}

void check_distinct(const std::vector<Vec3>& positions) {
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      if ((positions[i] - positions[j]).norm() < kCoincidenceTolerance) {
        throw SingularGeometryError("atoms " + std::to_string(i) + " and " + std::to_string(j) +
                                    " coincide");
      }
    }
  }
}

}  // namespace

std::string_view to_string(LatticeFamily family) {
  switch (family) {
    case LatticeFamily::chain: return "chain";
    case LatticeFamily::triangle: return "triangle";
    case LatticeFamily::square: return "square";
    case LatticeFamily::custom: return "custom";
  }
  return "custom";
}

LatticeFamily parse_lattice_family(std::string_view name) {
  if (name == "chain") return LatticeFamily::chain;
  if (name == "triangle") return LatticeFamily::triangle;
  if (name == "square") return LatticeFamily::square;
  if (name == "custom") return LatticeFamily::custom;
  throw ConfigurationError("unknown lattice family '" + std::string(name) + "'");
}

std::vector<double> Geometry::pair_distances() const {
  std::vector<double> out;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      out.push_back((positions[i] - positions[j]).norm());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Geometry build_geometry(LatticeFamily family, int n_atoms, double lattice_const, const Vec3& dipole_axis) {
  if (n_atoms < 1) {
    throw ConfigurationError("geometry needs at least one atom");
  }
  if (!(lattice_const > 0.0) || !std::isfinite(lattice_const)) {
    throw DomainError("lattice constant must be positive, got " + std::to_string(lattice_const));
  }

  Geometry geom;
  geom.family = family;
  geom.lattice_const = lattice_const;
  geom.dipole_axis = normalized_axis(dipole_axis);

  const double a = lattice_const;
  switch (family) {
    case LatticeFamily::chain:
      for (int i = 0; i < n_atoms; ++i) {
        geom.positions.emplace_back((i - 0.5 * (n_atoms - 1)) * a, 0.0, 0.0);
      }
      break;
    case LatticeFamily::triangle: {
      if (n_atoms != 3) {
        throw ConfigurationError("triangle geometry requires exactly 3 atoms, got " + std::to_string(n_atoms));
      }
      const double radius = a / std::sqrt(3.0);
      for (int k = 0; k < 3; ++k) {
        const double phi = std::numbers::pi / 2.0 + 2.0 * std::numbers::pi * k / 3.0;
        geom.positions.emplace_back(radius * std::cos(phi), radius * std::sin(phi), 0.0);
      }
      break;
    }
    case LatticeFamily::square:
      if (n_atoms != 4) {
        throw ConfigurationError("square geometry requires exactly 4 atoms, got " + std::to_string(n_atoms));
      }
      geom.positions = {Vec3(-a / 2, -a / 2, 0.0), Vec3(a / 2, -a / 2, 0.0), Vec3(a / 2, a / 2, 0.0),
                        Vec3(-a / 2, a / 2, 0.0)};
      break;
    case LatticeFamily::custom:
      throw ConfigurationError("custom geometry needs explicit positions");
  }
  return geom;
}

Geometry custom_geometry(std::vector<Vec3> positions, const Vec3& dipole_axis) {
  check_distinct(positions);
  Geometry geom;
  geom.positions = std::move(positions);
  geom.dipole_axis = normalized_axis(dipole_axis);
  geom.family = LatticeFamily::custom;
  return geom;
}

double f_func(double xi, double cos_theta) {
  check_arguments(xi, cos_theta, "f_func");
  const long double x = xi;
  const long double c2 = static_cast<long double>(cos_theta) * cos_theta;
  const long double s = std::sin(x);
  const long double c = std::cos(x);
  const long double near = x < 0.5L ? near_field_series(x) : c / (x * x) - s / (x * x * x);
  return static_cast<double>((1.0L - c2) * s / x + (1.0L - 3.0L * c2) * near);
}

double g_func(double xi, double cos_theta) {
  check_arguments(xi, cos_theta, "g_func");
  const long double x = xi;
  const long double c2 = static_cast<long double>(cos_theta) * cos_theta;
  const long double s = std::sin(x);
  const long double c = std::cos(x);
  return static_cast<double>(-(1.0L - c2) * c / x + (1.0L - 3.0L * c2) * (s / (x * x) + c / (x * x * x)));
}

CouplingMatrices coupling_matrices(const Geometry& geom, double gamma0) {
  if (!(gamma0 > 0.0) || !std::isfinite(gamma0)) {
    throw DomainError("single-atom linewidth must be positive, got " + std::to_string(gamma0));
  }
  check_distinct(geom.positions);

  const int n = geom.size();
  const Vec3 axis = normalized_axis(geom.dipole_axis);
  CouplingMatrices out;
  out.single_atom_gamma = gamma0;
  out.gamma = Eigen::MatrixXd::Zero(n, n);
  out.omega = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    out.gamma(i, i) = gamma0;
    for (int j = i + 1; j < n; ++j) {
      const Vec3 sep = geom.positions[j] - geom.positions[i];
      const double r = sep.norm();
      const double cos_theta = std::clamp(axis.dot(sep) / r, -1.0, 1.0);
      const double xi = 2.0 * std::numbers::pi * r;
      const double gij = 1.5 * gamma0 * f_func(xi, cos_theta);
      const double wij = 0.75 * gamma0 * g_func(xi, cos_theta);
      out.gamma(i, j) = out.gamma(j, i) = gij;
      out.omega(i, j) = out.omega(j, i) = wij;
    }
  }
  return out;
}

}  // namespace srl
