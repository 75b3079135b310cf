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

#include "oracles.hpp"
#include "srlaser/collective.hpp"
#include "srlaser/errors.hpp"
#include "srlaser/solvers.hpp"

#include <cmath>
#include <random>

using namespace srl;

namespace {

ModelParams collective_params(int n, double g, double gamma0, double pump) {
  ModelParams p;
  p.g = g;
  p.gamma0 = gamma0;
  p.pump_rate = pump;
  p.decay_mode = DecayMode::fully_collective;
  p.pump_mode = PumpMode::collective;
  p.geometry = build_geometry(LatticeFamily::chain, n, 0.25);
  return p;
}

}  // namespace

TEST_CASE("collective spin operators") {
  for (int n : {1, 2, 5}) {
    const Space s = dicke_space(n, 1);
    CHECK(s.dim() == (n + 1) * 2);
    const DenseMatrix sp = collective_raising(s).dense();
    const DenseMatrix sz = collective_sz(s).dense();
    const double j = 0.5 * n;
    for (int k = 0; k < n; ++k) {
      const double m = k - j;
      CHECK(std::abs(sp(s.index(k + 1, 0), s.index(k, 0)).real() - std::sqrt(j * (j + 1) - m * (m + 1))) < 1e-14);
    }
    const DenseMatrix sm = collective_lowering(s).dense();
    // [S+, S-] = 2 Sz
    CHECK(oracle::max_abs(sp * sm - sm * sp - 2.0 * sz) < 1e-13);
  }
  CHECK_THROWS_AS(collective_raising(hilbert_space(2, 1)), DimensionError);
}

TEST_CASE("dicke embedding is an isometry onto symmetric states") {
  const Eigen::MatrixXd iso = dicke_embedding(3, 2);
  CHECK((iso.transpose() * iso - Eigen::MatrixXd::Identity(iso.cols(), iso.cols())).cwiseAbs().maxCoeff() < 1e-14);
  // S+ of the full space restricted to the image matches the reduced S+
  const Space full = hilbert_space(3, 2);
  SparseOperator total = sigma_plus(full, 0) + sigma_plus(full, 1) + sigma_plus(full, 2);
  const Eigen::MatrixXcd isoc = iso.cast<cd>();
  const DenseMatrix reduced = isoc.adjoint() * total.dense() * isoc;
  CHECK(oracle::max_abs(reduced - collective_raising(dicke_space(3, 2)).dense()) < 1e-14);
}

TEST_CASE("reduced generator preserves trace and hermiticity") {
  std::mt19937_64 rng(8);
  const Space s = dicke_space(4, 3);
  const LindbladForm form = collective_lindblad_form(collective_params(4, 0.8, 0.3, 0.6), s);
  const Superoperator L = assemble(form);
  for (int trial = 0; trial < 100; ++trial) {
    const DenseMatrix rho = oracle::random_hermitian(s.dim(), rng);
    const DenseMatrix out = L.apply(rho);
    CHECK(std::abs(out.trace()) < 1e-12);
    CHECK(oracle::max_abs(out - out.adjoint()) < 1e-12);
  }
  CHECK(oracle::max_abs(DenseMatrix(L.matrix()) - oracle::dense_generator(form)) < 1e-13);
}

TEST_CASE("single atom: reduced and full models coincide") {
  const ModelParams p = collective_params(1, 0.9, 0.2, 1.3);
  const auto full = steady_state(liouvillian(p, hilbert_space(1, 5)));
  const auto reduced = steady_state(collective_liouvillian(p, dicke_space(1, 5)));
  CHECK(oracle::max_abs(full.rho.data() - reduced.rho.data()) < 1e-10);
  const auto of = observables(full.rho), orr = collective_observables(reduced.rho);
  CHECK(of.photon_number == doctest::Approx(orr.photon_number).epsilon(1e-10));
  CHECK(of.inversion == doctest::Approx(orr.inversion).epsilon(1e-10));
}

TEST_CASE("two and three atoms: reduced model matches the symmetric sector of the full model") {
  for (int n : {2, 3}) {
    const int nmax = 8;
    const ModelParams p = collective_params(n, 0.7, 0.3, 0.9);
    const auto reduced = steady_state(collective_liouvillian(p, dicke_space(n, nmax)));

    const Eigen::MatrixXcd iso = dicke_embedding(n, nmax).cast<cd>();
    SolverOptions opts;
    opts.method = SteadyStateMethod::krylov_nullspace;
    opts.verify_uniqueness = false;
    opts.inverse_shift = 1e-4;
    opts.initial_guess = iso * iso.adjoint();
    const auto full = steady_state(liouvillian(p, hilbert_space(n, nmax)), opts);

    CHECK(oracle::max_abs(iso * reduced.rho.data() * iso.adjoint() - full.rho.data()) < 1e-8);
    const auto a = collective_observables(reduced.rho), b = observables(full.rho);
    CHECK(std::abs(a.photon_number - b.photon_number) < 1e-8);
    CHECK(std::abs(a.inversion - b.inversion) < 1e-8);
    REQUIRE(a.g2_zero);
    REQUIRE(b.g2_zero);
    CHECK(std::abs(*a.g2_zero - *b.g2_zero) < 1e-8);

    // the direct solver sees the degenerate kernel of the full model
    SolverOptions direct;
    direct.method = SteadyStateMethod::direct_sparse;
    CHECK_THROWS_AS(steady_state(liouvillian(p, hilbert_space(n, nmax)), direct), MultiplicityError);
  }
}

TEST_CASE("collective observables of extreme states") {
  const Space s = dicke_space(4, 2);
  const auto ground = collective_observables(ground_vacuum(s));
  CHECK(ground.inversion == -1.0);
  CHECK(ground.photon_number == 0.0);
  CHECK(ground.g2_undefined());
  const auto top = collective_observables(basis_state(s, s.index(4, 0)));
  CHECK(top.inversion == 1.0);
}

TEST_CASE("superradiant burst grows faster than linearly") {
  auto peak_rate = [](int n) {
    const Space s = dicke_space(n, 0);
    const Superoperator L = collective_liouvillian(collective_params(n, 0.0, 1.0, 0.0), s);
    std::vector<double> t;
    for (int k = 0; k <= 400; ++k) t.push_back(0.005 * k);
    const DenseMatrix sz = collective_sz(s).dense();
    double best = 0.0;
    for (const DenseMatrix& rho : evolve(L, basis_state(s, s.index(n, 0)).data(), t)) {
      best = std::max(best, -(sz * L.apply(rho)).trace().real());
    }
    return best;
  };
  const double r4 = peak_rate(4), r8 = peak_rate(8);
  CHECK(r8 / r4 > 2.0);
}
