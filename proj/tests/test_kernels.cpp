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
#include "srlaser/errors.hpp"
#include "srlaser/kernels.hpp"
#include "srlaser/solvers.hpp"
#include "srlaser/spectrum.hpp"

#include <omp.h>

#include <cstring>
#include <random>

using namespace srl;

namespace {

bool bitwise_equal(std::span<const cd> a, std::span<const cd> b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size_bytes()) == 0;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("parallel spmv reproduces the serial kernel bit for bit") {
  std::mt19937_64 rng(12);
  const Superoperator L = liouvillian(oracle::random_params(3, rng), hilbert_space(3, 3));
  const auto& m = L.row_major();
  std::normal_distribution<double> nd;
  Vector x(m.cols());
  for (Index k = 0; k < x.size(); ++k) x(k) = cd(nd(rng), nd(rng));

  Vector ref(m.rows());
  kernels::spmv_serial(m, {x.data(), std::size_t(x.size())}, {ref.data(), std::size_t(ref.size())});
  CHECK(oracle::max_abs(DenseMatrix(ref - L.matrix() * x)) < 1e-12);

  const int saved = omp_get_max_threads();
  for (int threads : {1, 2, 3, 4}) {
    omp_set_num_threads(threads);
    Vector y(m.rows());
    kernels::spmv_parallel(m, {x.data(), std::size_t(x.size())}, {y.data(), std::size_t(y.size())}, 0);
    CHECK(bitwise_equal({ref.data(), std::size_t(ref.size())}, {y.data(), std::size_t(y.size())}));
  }
  omp_set_num_threads(saved);

  Vector wrong(3);
  CHECK_THROWS_AS(kernels::spmv_serial(m, {x.data(), std::size_t(x.size())}, {wrong.data(), 3}), DimensionError);
}

TEST_CASE("parallel resolvent reproduces the serial sweep") {
  std::mt19937_64 rng(13);
  const Superoperator L = liouvillian(oracle::random_params(2, rng), hilbert_space(2, 3));
  const auto ss = steady_state(L);
  std::vector<double> omega;
  for (int k = -20; k <= 20; ++k) omega.push_back(0.25 * k);
  const auto serial = spectrum_resolvent(L, ss.rho, omega, false);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(3);
  const auto parallel = spectrum_resolvent(L, ss.rho, omega, true);
  omp_set_num_threads(saved);
  CHECK(bitwise_equal(serial.values, parallel.values));
  CHECK(serial.skipped_points == 0);
}
