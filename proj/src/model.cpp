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

#include "srlaser/model.hpp"

#include "srlaser/errors.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <string>

namespace srl {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw DomainError(std::string(name) + " must be finite");
}

void require_nonnegative(double v, const char* name) {
  require_finite(v, name);
  if (v < 0.0) throw DomainError(std::string(name) + " must be >= 0, got " + std::to_string(v));
}

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix out = Eigen::kroneckerProduct(a, b);
  return out;
}

}  // namespace

std::string_view to_string(DecayMode mode) {
  switch (mode) {
    case DecayMode::full_geometry: return "full_geometry";
    case DecayMode::independent: return "independent";
    case DecayMode::fully_collective: return "fully_collective";
  }
  return "full_geometry";
}

std::string_view to_string(PumpMode mode) {
  return mode == PumpMode::individual ? "individual" : "collective";
}

DecayMode parse_decay_mode(std::string_view name) {
  if (name == "full_geometry") return DecayMode::full_geometry;
  if (name == "independent") return DecayMode::independent;
  if (name == "fully_collective") return DecayMode::fully_collective;
  throw ConfigurationError("unknown decay mode '" + std::string(name) + "'");
}

PumpMode parse_pump_mode(std::string_view name) {
  if (name == "individual") return PumpMode::individual;
  if (name == "collective") return PumpMode::collective;
  throw ConfigurationError("unknown pump mode '" + std::string(name) + "'");
}

void ModelParams::validate() const {
  require_nonnegative(g, "g");
  require_nonnegative(gamma0, "gamma0");
  require_nonnegative(pump_rate, "pump_rate");
  require_finite(detuning, "detuning");
  require_finite(kappa, "kappa");
  if (!(kappa > 0.0)) throw DomainError("kappa must be > 0");
}

CouplingMatrices effective_couplings(const ModelParams& params) {
  const int n = params.n_atoms();
  CouplingMatrices c;
  c.single_atom_gamma = params.gamma0;
  c.omega = Eigen::MatrixXd::Zero(n, n);
  switch (params.decay_mode) {
    case DecayMode::independent:
      c.gamma = params.gamma0 * Eigen::MatrixXd::Identity(n, n);
      break;
    case DecayMode::fully_collective:
      c.gamma = Eigen::MatrixXd::Constant(n, n, params.gamma0);
      break;
    case DecayMode::full_geometry:
      if (params.gamma0 > 0.0) {
        c = coupling_matrices(params.geometry, params.gamma0);
      } else {
        c.gamma = Eigen::MatrixXd::Zero(n, n);
      }
      break;
  }
  return c;
}

SparseOperator hamiltonian(const ModelParams& params, const Space& space) {
  params.validate();
  if (space.kind() != SpaceKind::atomic || space.n_atoms() != params.n_atoms()) {
    throw DimensionError("hamiltonian: space " + space.describe() + " does not match " +
                         std::to_string(params.n_atoms()) + " atoms");
  }
  const CouplingMatrices c = effective_couplings(params);
  const SparseOperator a = annihilation(space);
  const SparseOperator ad = creation(space);

  SparseOperator h = params.detuning * (ad * a);
  const int n = params.n_atoms();
  for (int i = 0; i < n; ++i) {
    const SparseOperator sp = sigma_plus(space, i);
    const SparseOperator sm = sigma_minus(space, i);
    if (params.g != 0.0) h = h + params.g * (a * sp + ad * sm);
    for (int j = 0; j < n; ++j) {
      if (i == j || c.omega(i, j) == 0.0) continue;
      h = h + c.omega(i, j) * (sp * sigma_minus(space, j));
    }
  }
  return h;
}

LindbladForm lindblad_form(const ModelParams& params, const Space& space) {
  LindbladForm form{hamiltonian(params, space), {}};
  const CouplingMatrices c = effective_couplings(params);
  const int n = params.n_atoms();

  std::vector<SparseOperator> lowering;
  std::vector<SparseOperator> raising;
  for (int i = 0; i < n; ++i) {
    lowering.push_back(sigma_minus(space, i));
    raising.push_back(sigma_plus(space, i));
  }

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (c.gamma(i, j) == 0.0) continue;
      form.dissipators.push_back({c.gamma(i, j), lowering[i], lowering[j]});
    }
  }

  if (params.pump_rate > 0.0 && n > 0) {
    if (params.pump_mode == PumpMode::individual) {
      for (int i = 0; i < n; ++i) form.dissipators.push_back({params.pump_rate, raising[i], raising[i]});
    } else {
      SparseOperator total = raising[0];
      for (int i = 1; i < n; ++i) total = total + raising[i];
      form.dissipators.push_back({params.pump_rate, total, total});
    }
  }

  if (space.fock_cutoff() > 0) {
    const SparseOperator a = annihilation(space);
    form.dissipators.push_back({2.0 * params.kappa, a, a});
  }
  return form;
}

Superoperator::Superoperator(Space space, SparseMatrix matrix)
    : space_(space), matrix_(std::move(matrix)) {
  const Index n = space_.dim() * space_.dim();
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw DimensionError("superoperator shape does not match " + space_.describe());
  }
  matrix_.makeCompressed();
  rows_ = matrix_;
  rows_.makeCompressed();
}

Vector Superoperator::apply(const Vector& rho_vec) const {
  if (rho_vec.size() != size()) {
    throw DimensionError("apply: vector has " + std::to_string(rho_vec.size()) + " entries, expected " +
                         std::to_string(size()));
  }
  Vector out(size());
  kernels::spmv_parallel(rows_, {rho_vec.data(), static_cast<std::size_t>(rho_vec.size())},
                         {out.data(), static_cast<std::size_t>(out.size())});
  return out;
}

DenseMatrix Superoperator::apply(const DenseMatrix& rho) const {
  if (rho.rows() != dim() || rho.cols() != dim()) {
    throw DimensionError("apply: density matrix shape does not match " + space_.describe());
  }
  return unvectorize(apply(vectorize(rho)), dim());
}

Superoperator assemble(const LindbladForm& form) {
  const Space& space = form.space();
  const Index d = space.dim();
  SparseMatrix id(d, d);
  id.setIdentity();

  const cd i_unit(0.0, 1.0);
  const SparseMatrix& h = form.hamiltonian.matrix();
  SparseMatrix ht = h.transpose();
  SparseMatrix total = -i_unit * kron(id, h) + i_unit * kron(ht, id);

  for (const DissipatorTerm& term : form.dissipators) {
    if (!(term.left.space() == space) || !(term.right.space() == space)) {
      throw DimensionError("dissipator operators live on a different space");
    }
    const SparseMatrix& a = term.left.matrix();
    const SparseMatrix& b = term.right.matrix();
    // A rho B^dagger -> conj(B) kron A
    SparseMatrix b_conj = b.conjugate();
    SparseMatrix jump = kron(b_conj, a);
    SparseMatrix ba = SparseMatrix(b.adjoint()) * a;
    SparseMatrix ba_t = ba.transpose();
    total += term.rate * (jump - 0.5 * kron(id, ba) - 0.5 * kron(ba_t, id));
  }
  total.prune(cd(0.0));
  return Superoperator(space, std::move(total));
}

Superoperator liouvillian(const ModelParams& params, const Space& space) {
  return assemble(lindblad_form(params, space));
}

DenseMatrix apply_reference(const LindbladForm& form, const DenseMatrix& rho) {
  const cd i_unit(0.0, 1.0);
  const DenseMatrix h = form.hamiltonian.dense();
  DenseMatrix out = -i_unit * (h * rho - rho * h);
  for (const DissipatorTerm& term : form.dissipators) {
    const DenseMatrix a = term.left.dense();
    const DenseMatrix b = term.right.dense();
    const DenseMatrix ba = b.adjoint() * a;
    out += term.rate * (a * rho * b.adjoint() - 0.5 * (ba * rho + rho * ba));
  }
  return out;
}

Vector vectorize(const DenseMatrix& rho) {
  return Eigen::Map<const Vector>(rho.data(), rho.size());
}

DenseMatrix unvectorize(const Vector& v, Index dim) {
  if (v.size() != dim * dim) throw DimensionError("unvectorize: size is not dim^2");
  return Eigen::Map<const DenseMatrix>(v.data(), dim, dim);
}

}  // namespace srl
