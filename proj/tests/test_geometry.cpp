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

#include "doctest.h"

#include "srlaser/errors.hpp"
#include "srlaser/geometry.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace srl;
using std::numbers::pi;

namespace {

using mp = boost::multiprecision::cpp_bin_float_50;

double f_mp(double xi_d, double c_d) {
  const mp xi = xi_d, c2 = mp(c_d) * mp(c_d);
  return static_cast<double>((1 - c2) * sin(xi) / xi + (1 - 3 * c2) * (cos(xi) / (xi * xi) - sin(xi) / (xi * xi * xi)));
}

double g_mp(double xi_d, double c_d) {
  const mp xi = xi_d, c2 = mp(c_d) * mp(c_d);
  return static_cast<double>(-(1 - c2) * cos(xi) / xi + (1 - 3 * c2) * (sin(xi) / (xi * xi) + cos(xi) / (xi * xi * xi)));
}

}  // namespace

TEST_CASE("f and g at closed-form points") {
  CHECK(f_func(2 * pi, 0.0) == doctest::Approx(1.0 / (4 * pi * pi)).epsilon(1e-14));
  CHECK(f_func(pi, 1.0) == doctest::Approx(2.0 / (pi * pi)).epsilon(1e-14));
  CHECK(g_func(2 * pi, 0.0) == doctest::Approx(-1.0 / (2 * pi) + 1.0 / (8 * pi * pi * pi)).epsilon(1e-14));
  CHECK(g_func(pi, 0.0) == doctest::Approx(1.0 / pi - 1.0 / (pi * pi * pi)).epsilon(1e-14));
}

TEST_CASE("f and g against 50-digit evaluation") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> logx(-3.0, 3.0), cu(-1.0, 1.0);
  for (int k = 0; k < 400; ++k) {
    const double xi = std::pow(10.0, logx(rng));
    const double c = cu(rng);
    const double fr = f_mp(xi, c), gr = g_mp(xi, c);
    CHECK(std::abs(f_func(xi, c) - fr) <= 1e-12 * std::abs(fr));
    CHECK(std::abs(g_func(xi, c) - gr) <= 1e-12 * std::abs(gr));
  }
}

TEST_CASE("small-xi behaviour") {
  for (double c : {0.0, 0.3, 1.0}) {
    CHECK(f_func(1e-6, c) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK(g_func(1e-6, c) == g_func(1e-6, -c));
  }
  // G = (1 - 3c^2)/xi^3 - (1 + c^2)/(2 xi) + O(xi); the bare 1/xi^3 term is
  // only good to 1e-3 below xi ~ 0.04
  for (double lx = -3.0; lx <= -1.0; lx += 0.25) {
    const double xi = std::pow(10.0, lx);
    const double c = 0.2;
    CHECK(f_func(xi, c) == doctest::Approx(2.0 / 3.0).epsilon(1e-3));
    const double lead = (1 - 3 * c * c) / (xi * xi * xi);
    const double next = -(1 + c * c) / (2 * xi);
    CHECK(g_func(xi, c) == doctest::Approx(lead + next).epsilon(1e-3));
    if (xi < 0.04) CHECK(g_func(xi, c) == doctest::Approx(lead).epsilon(1e-3));
  }
  CHECK_THROWS_AS(f_func(0.0, 0.0), DomainError);
  CHECK_THROWS_AS(g_func(-1.0, 0.0), DomainError);
  CHECK_THROWS_AS(f_func(1.0, 1.5), DomainError);
}

TEST_CASE("builders") {
  const Geometry sq = build_geometry(LatticeFamily::square, 4, 0.58);
  const auto d = sq.pair_distances();
  REQUIRE(d.size() == 6);
  for (int k = 0; k < 4; ++k) CHECK(d[k] == doctest::Approx(0.58).epsilon(1e-14));
  for (int k = 4; k < 6; ++k) CHECK(d[k] == doctest::Approx(0.58 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(sq.dipole_axis.norm() == doctest::Approx(1.0).epsilon(1e-12));

  const Geometry one = build_geometry(LatticeFamily::chain, 1, 0.3);
  REQUIRE(one.size() == 1);
  CHECK(one.positions[0].norm() == 0.0);

  const Geometry tri = build_geometry(LatticeFamily::triangle, 3, 0.1);
  for (double r : tri.pair_distances()) CHECK(r == doctest::Approx(0.1).epsilon(1e-14));

  const Geometry ch = build_geometry(LatticeFamily::chain, 4, 0.2, Vec3(0, 0, 3));
  Vec3 centroid = Vec3::Zero();
  for (const auto& p : ch.positions) centroid += p;
  CHECK(centroid.norm() < 1e-15);
  CHECK(ch.dipole_axis.isApprox(Vec3::UnitZ()));

  CHECK_THROWS_AS(build_geometry(LatticeFamily::square, 3, 0.5), ConfigurationError);
  CHECK_THROWS_AS(build_geometry(LatticeFamily::triangle, 4, 0.5), ConfigurationError);
  CHECK_THROWS_AS(build_geometry(LatticeFamily::chain, 2, 0.0), DomainError);
  CHECK_THROWS_AS(build_geometry(LatticeFamily::chain, 2, 0.1, Vec3::Zero()), DomainError);
  CHECK_THROWS_AS(custom_geometry({Vec3(0, 0, 0), Vec3(0, 0, 0)}), SingularGeometryError);
  CHECK(parse_lattice_family("triangle") == LatticeFamily::triangle);
  CHECK_THROWS_AS(parse_lattice_family("hexagon"), ConfigurationError);
}

TEST_CASE("coupling matrices") {
  SUBCASE("two atoms one wavelength apart, dipoles perpendicular") {
    const auto geom = custom_geometry({Vec3(0, 0, 0), Vec3(1, 0, 0)});
    const auto cm = coupling_matrices(geom, 0.7);
    CHECK(cm.gamma(0, 1) == doctest::Approx(0.7 * 1.5 / (4 * pi * pi)).epsilon(1e-13));
    CHECK(cm.gamma(0, 0) == 0.7);
    CHECK(cm.omega(1, 1) == 0.0);
  }
  SUBCASE("single atom") {
    const auto cm = coupling_matrices(build_geometry(LatticeFamily::chain, 1, 1.0), 0.3);
    CHECK(cm.gamma.rows() == 1);
    CHECK(cm.gamma(0, 0) == 0.3);
    CHECK(cm.omega(0, 0) == 0.0);
  }
  SUBCASE("far apart") {
    const auto cm = coupling_matrices(custom_geometry({Vec3(0, 0, 0), Vec3(1e3, 0, 0)}), 1.0);
    CHECK(std::abs(cm.gamma(0, 1)) < 1e-3);
    CHECK(std::abs(cm.omega(0, 1)) < 1e-3);
  }
  SUBCASE("angle dependence follows the dipole axis") {
    const auto along = coupling_matrices(custom_geometry({Vec3(0, 0, 0), Vec3(0.3, 0, 0)}, Vec3::UnitX()), 1.0);
    CHECK(along.gamma(0, 1) == doctest::Approx(1.5 * f_func(2 * pi * 0.3, 1.0)).epsilon(1e-14));
  }
  SUBCASE("invariants over random geometries") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<Vec3> pos;
      for (int i = 0; i < 4; ++i) pos.emplace_back(u(rng), u(rng), 0.3 * u(rng));
      const Vec3 axis(u(rng), u(rng), u(rng));
      const auto cm = coupling_matrices(custom_geometry(pos, axis), 0.4);
      CHECK((cm.gamma - cm.gamma.transpose()).cwiseAbs().maxCoeff() < 1e-14);
      CHECK((cm.omega - cm.omega.transpose()).cwiseAbs().maxCoeff() < 1e-14);
      CHECK(cm.gamma.cwiseAbs().maxCoeff() <= 0.4);
      for (int i = 0; i < 4; ++i) CHECK(cm.gamma(i, i) == 0.4);

      std::vector<Vec3> shifted = pos;
      const Vec3 t(u(rng), u(rng), u(rng));
      for (auto& p : shifted) p += t;
      const auto cs = coupling_matrices(custom_geometry(shifted, axis), 0.4);
      CHECK((cs.gamma - cm.gamma).cwiseAbs().maxCoeff() < 1e-14);
      CHECK((cs.omega - cm.omega).cwiseAbs().maxCoeff() < 1e-13);
    }
  }
  SUBCASE("pair decay matrix is positive semidefinite") {
    for (double r = 0.01; r < 3.0; r *= 1.3) {
      const auto cm = coupling_matrices(build_geometry(LatticeFamily::chain, 2, r), 1.0);
      CHECK(1.0 - std::abs(cm.gamma(0, 1)) >= -1e-12);
    }
  }
  CHECK_THROWS_AS(coupling_matrices(build_geometry(LatticeFamily::chain, 2, 0.1), 0.0), DomainError);
}
