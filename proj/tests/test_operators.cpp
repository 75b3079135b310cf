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
#include "srlaser/operators.hpp"

#include "json.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace srl;

namespace {

double max_abs(const SparseMatrix& m) {
  double s = 0.0;
  for (Index k = 0; k < m.nonZeros(); ++k) s = std::max(s, std::abs(m.valuePtr()[k]));
  return s;
}

bool is_zero(const SparseOperator& op) { return op.nonzeros() == 0 || max_abs(op.matrix()) == 0.0; }

}  // namespace

TEST_CASE("space dimensions and ordering") {
  const Space s = hilbert_space(3, 4);
  CHECK(s.dim() == 8 * 5);
  CHECK(s.index(0b101, 2) == 5 * 5 + 2);
  CHECK(s.atomic_excitations(s.index(0b101, 2)) == 2);
  CHECK(s.excitations(s.index(0b101, 2)) == 4);
  CHECK(hilbert_space(0, 3).dim() == 4);
  CHECK(Space::dicke(4, 2).dim() == 15);
  CHECK_THROWS_AS(hilbert_space(2, -1), DimensionError);
  CHECK_THROWS_AS(Space::dicke(0, 1), DimensionError);
}

TEST_CASE("single-atom operators") {
  SUBCASE("sigma_z of one atom without photons") {
    const Space s = hilbert_space(1, 0);
    const DenseMatrix z = sigma_z(s, 0).dense();
    CHECK(z(0, 0) == cd(-1.0));
    CHECK(z(1, 1) == cd(1.0));
    CHECK(z(0, 1) == cd(0.0));
  }
  SUBCASE("two-level algebra and adjoints") {
    const Space s = hilbert_space(3, 2);
    for (int i = 0; i < 3; ++i) {
      const auto sp = sigma_plus(s, i), sm = sigma_minus(s, i);
      CHECK(is_zero(sp * sm + sm * sp - identity(s)));
      CHECK(is_zero(sp.adjoint() - sm));
      CHECK(is_zero(sp * sm - sm * sp - sigma_z(s, i)));
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        CHECK(is_zero(commutator(sp, sigma_plus(s, j))));
        CHECK(is_zero(commutator(sp, sigma_minus(s, j))));
        CHECK(is_zero(commutator(sm, sigma_minus(s, j))));
      }
      CHECK(is_zero(commutator(sp, annihilation(s))));
      CHECK(is_zero(commutator(sm, annihilation(s))));
    }
  }
  SUBCASE("exchange between two atoms") {
    const Space s = hilbert_space(2, 0);
    const DenseMatrix hop = (sigma_plus(s, 0) * sigma_minus(s, 1)).dense();
    // |g e> has atom 1 excited (index 2), |e g> is index 1
    CHECK(hop(1, 2) == cd(1.0));
    CHECK(hop.col(3).isZero());
    CHECK(hop.cwiseAbs().sum() == 1.0);
  }
  SUBCASE("excited projector") {
    const Space s = hilbert_space(2, 1);
    const DenseMatrix p = (sigma_plus(s, 0) * sigma_minus(s, 0)).dense();
    for (Index k = 0; k < s.dim(); ++k) CHECK(p(k, k) == cd((s.atomic_index(k) & 1) ? 1.0 : 0.0));
  }
  CHECK_THROWS_AS(sigma_plus(hilbert_space(2, 1), 2), DimensionError);
  CHECK_THROWS_AS(sigma_z(Space::dicke(2, 1), 0), DimensionError);
}

TEST_CASE("field operators") {
  const Space s = hilbert_space(2, 2);
  const auto a = annihilation(s), ad = creation(s);
  CHECK(a.dense()(s.index(0, 1), s.index(0, 2)).real() == doctest::Approx(std::sqrt(2.0)));
  CHECK(a.nonzeros() == s.atomic_dim() * s.fock_cutoff());
  CHECK(is_zero(a.adjoint() - ad));

  const DenseMatrix n = number_operator(s).dense();
  CHECK((n - DenseMatrix(n.diagonal().asDiagonal())).isZero());
  for (Index k = 0; k < s.dim(); ++k) CHECK(n(k, k).real() == s.photons(k));

  const DenseMatrix c = commutator(a, ad).dense();
  for (Index k = 0; k < s.dim(); ++k) {
    const double expected = s.photons(k) < s.fock_cutoff() ? 1.0 : -s.fock_cutoff();
    CHECK(c(k, k).real() == doctest::Approx(expected));
  }
  CHECK((c - DenseMatrix(c.diagonal().asDiagonal())).isZero());
}

TEST_CASE("composition") {
  const Space s = hilbert_space(2, 2);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  auto random_sparse = [&]() {
    std::vector<Eigen::Triplet<cd>> t;
    for (int k = 0; k < 20; ++k) {
      t.emplace_back(rng() % s.dim(), rng() % s.dim(), cd(nd(rng), nd(rng)));
    }
    SparseMatrix m(s.dim(), s.dim());
    m.setFromTriplets(t.begin(), t.end());
    return SparseOperator(s, m);
  };
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = random_sparse(), y = random_sparse();
    CHECK(max_abs(((x + y).adjoint() - (x.adjoint() + y.adjoint())).matrix()) < 1e-15);
    CHECK(((x * y).dense() - x.dense() * y.dense()).cwiseAbs().maxCoeff() < 1e-13);
  }
  const cd z(2.0, -0.5);
  CHECK((z * identity(s)).trace() == z * double(s.dim()));
  CHECK_THROWS_AS(identity(s) + identity(hilbert_space(1, 2)), DimensionError);
  CHECK_THROWS_AS(commutator(identity(s), identity(hilbert_space(2, 1))), DimensionError);
}

TEST_CASE("operators keep density matrices finite") {
  const Space s = hilbert_space(2, 3);
  DenseMatrix rho = DenseMatrix::Identity(s.dim(), s.dim()) / double(s.dim());
  for (const auto& op : {annihilation(s), creation(s), sigma_plus(s, 1), sigma_z(s, 0)}) {
    const DenseMatrix out = op.matrix() * rho;
    CHECK(out.rows() == s.dim());
    CHECK(out.allFinite());
  }
}

TEST_CASE("triplet dumps") {
  const Space s = hilbert_space(1, 2);
  const auto a = annihilation(s);
  std::ostringstream js;
  write_triplets_json(a, js);
  const auto doc = nlohmann::json::parse(js.str());
  CHECK(doc["entries"].size() == static_cast<std::size_t>(a.nonzeros()));
  for (const auto& e : doc["entries"]) {
    CHECK(a.dense()(e[0].get<Index>(), e[1].get<Index>()).real() == doctest::Approx(e[2].get<double>()));
  }

  std::ostringstream bin;
  write_triplets_binary(a, bin);
  const std::string raw = bin.str();
  CHECK(raw.substr(0, 6) == "SRLOP1");
  CHECK(raw.size() == 8 + 16 + static_cast<std::size_t>(a.nonzeros()) * 32);
}
