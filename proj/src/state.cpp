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

#include "srlaser/state.hpp"

#include "srlaser/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace srl {

DensityMatrix::DensityMatrix(Space space, DenseMatrix data) : space_(space), data_(std::move(data)) {
  if (data_.rows() != space_.dim() || data_.cols() != space_.dim()) {
    throw DimensionError("density matrix shape does not match " + space_.describe());
  }
}

double DensityMatrix::top_fock_population() const {
  double p = 0.0;
  for (Index i = 0; i < dim(); ++i) {
    if (space_.photons(i) == space_.fock_cutoff()) p += data_(i, i).real();
  }
  return p;
}

DensityMatrix::Diagnostics DensityMatrix::check_physical(double herm_tol, double trace_tol, double psd_tol) const {
  Diagnostics d;
  d.hermiticity_error = (data_ - data_.adjoint()).cwiseAbs().maxCoeff();
  d.trace_error = std::abs(trace() - 1.0);
  const DenseMatrix herm = 0.5 * (data_ + data_.adjoint());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(herm, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = es.eigenvalues().minCoeff();

  std::ostringstream msg;
  if (d.hermiticity_error > herm_tol) msg << "not Hermitian (" << d.hermiticity_error << "); ";
  if (d.trace_error > trace_tol) msg << "trace off by " << d.trace_error << "; ";
  if (d.min_eigenvalue < -psd_tol) msg << "negative eigenvalue " << d.min_eigenvalue << "; ";
  d.message = msg.str();
  d.ok = d.message.empty();
  return d;
}

DensityMatrix ground_vacuum(const Space& space) { return basis_state(space, 0); }

DensityMatrix basis_state(const Space& space, Index index) {
  if (index < 0 || index >= space.dim()) throw DimensionError("basis index out of range");
  DenseMatrix m = DenseMatrix::Zero(space.dim(), space.dim());
  m(index, index) = 1.0;
  return DensityMatrix(space, std::move(m));
}

DensityMatrix coherent_state(const Space& space, cd alpha) {
  Vector psi = Vector::Zero(space.dim());
  double log_fact = 0.0;
  for (int n = 0; n <= space.fock_cutoff(); ++n) {
    if (n > 0) log_fact += std::log(static_cast<double>(n));
    // alpha^n / sqrt(n!) without overflow
    const cd amp = std::abs(alpha) == 0.0
                       ? cd(n == 0 ? 1.0 : 0.0)
                       : std::polar(std::exp(n * std::log(std::abs(alpha)) - 0.5 * log_fact), n * std::arg(alpha));
    psi(space.index(0, n)) = amp;
  }
  psi.normalize();
  return DensityMatrix(space, psi * psi.adjoint());
}

DensityMatrix thermal_state(const Space& space, double n_bar) {
  if (!(n_bar >= 0.0)) throw DomainError("thermal occupation must be >= 0");
  DenseMatrix m = DenseMatrix::Zero(space.dim(), space.dim());
  const double q = n_bar / (1.0 + n_bar);
  double norm = 0.0;
  double p = 1.0;
  for (int n = 0; n <= space.fock_cutoff(); ++n) {
    m(space.index(0, n), space.index(0, n)) = p;
    norm += p;
    p *= q;
  }
  m /= norm;
  return DensityMatrix(space, std::move(m));
}

}  // namespace srl
