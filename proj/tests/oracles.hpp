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
// Dense reference computations used as independent oracles by the tests.

#include "srlaser/collective.hpp"
#include "srlaser/geometry.hpp"
#include "srlaser/model.hpp"
#include "srlaser/state.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include <random>

namespace oracle {

using srl::cd;
using srl::DenseMatrix;
using srl::Index;

// Dense generator built column by column from operator products, so it does
// not share code with the Kronecker assembly.
inline DenseMatrix dense_generator(const srl::LindbladForm& form) {
  const Index d = form.space().dim();
  DenseMatrix out(d * d, d * d);
  for (Index c = 0; c < d; ++c) {
    for (Index r = 0; r < d; ++r) {
      DenseMatrix e = DenseMatrix::Zero(d, d);
      e(r, c) = 1.0;
      const DenseMatrix col = srl::apply_reference(form, e);
      out.col(c * d + r) = Eigen::Map<const Eigen::VectorXcd>(col.data(), d * d);
    }
  }
  return out;
}

inline Eigen::VectorXcd eigenvalues(const DenseMatrix& m) {
  Eigen::ComplexEigenSolver<DenseMatrix> es(m, false);
  return es.eigenvalues();
}

// Eigenvector of the eigenvalue closest to zero, reshaped and trace normalized.
inline DenseMatrix null_space_state(const DenseMatrix& generator, Index dim) {
  Eigen::ComplexEigenSolver<DenseMatrix> es(generator, true);
  Index best = 0;
  es.eigenvalues().cwiseAbs().minCoeff(&best);
  Eigen::VectorXcd v = es.eigenvectors().col(best);
  DenseMatrix rho = Eigen::Map<const DenseMatrix>(v.data(), dim, dim);
  rho /= rho.trace();
  return rho;
}

inline DenseMatrix propagate(const DenseMatrix& generator, const DenseMatrix& rho0, double t) {
  const Index d = rho0.rows();
  const DenseMatrix u = (generator * t).exp();
  Eigen::VectorXcd v = u * Eigen::Map<const Eigen::VectorXcd>(rho0.data(), d * d);
  return Eigen::Map<const DenseMatrix>(v.data(), d, d);
}

inline DenseMatrix random_hermitian(Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  DenseMatrix m(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) m(i, j) = cd(n(rng), n(rng));
  return 0.5 * (m + m.adjoint());
}

inline DenseMatrix random_density(Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  DenseMatrix g(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) g(i, j) = cd(n(rng), n(rng));
  DenseMatrix rho = g * g.adjoint();
  return rho / rho.trace();
}

// Random parameters in the pumped-damped regime with a unique steady state.
inline srl::ModelParams random_params(int n_atoms, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  srl::ModelParams p;
  p.g = 0.2 + 1.3 * u(rng);
  p.kappa = 0.5 + u(rng);
  p.gamma0 = 0.05 + 0.9 * u(rng);
  p.pump_rate = 0.1 + 2.9 * u(rng);
  p.detuning = -1.0 + 2.0 * u(rng);
  const double a = 0.08 + 0.6 * u(rng);
  p.geometry = srl::build_geometry(srl::LatticeFamily::chain, n_atoms, a);
  return p;
}

inline double max_abs(const DenseMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace oracle
