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

#include "srlaser/selftest.hpp"

#include "srlaser/errors.hpp"
#include "srlaser/format.hpp"
#include "srlaser/model.hpp"
#include "srlaser/observables.hpp"
#include "srlaser/solvers.hpp"
#include "srlaser/spectrum.hpp"

#include <cmath>
#include <functional>
#include <random>

namespace srl {

namespace {

ModelParams random_point(std::mt19937_64& rng, int n_atoms) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ModelParams p;
  p.g = 0.3 + u(rng);
  p.kappa = 1.0;
  p.gamma0 = 0.05 + 0.5 * u(rng);
  p.pump_rate = 0.2 + 2.0 * u(rng);
  p.detuning = u(rng) - 0.5;
  p.geometry = build_geometry(LatticeFamily::chain, n_atoms, 0.1 + 0.5 * u(rng));
  return p;
}

DenseMatrix random_hermitian(Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  DenseMatrix m(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) m(i, j) = cd(nd(rng), nd(rng));
  return m + m.adjoint();
}

}  // namespace

bool run_selftest(std::uint64_t seed, std::ostream& os) {
  std::mt19937_64 rng(seed);
  int failures = 0;
  auto report = [&](const std::string& name, bool ok, double value) {
    os << (ok ? "PASS " : "FAIL ") << name << " (" << format_number(value) << ")\n";
    if (!ok) ++failures;
  };
  auto guarded = [&](const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      os << "FAIL " << name << " threw: " << e.what() << "\n";
      ++failures;
    }
  };

  guarded("trace and hermiticity preservation", [&] {
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const ModelParams p = random_point(rng, 1 + trial % 2);
      const Space s = hilbert_space(p.n_atoms(), 2);
      const Superoperator L = liouvillian(p, s);
      const DenseMatrix out = L.apply(random_hermitian(s.dim(), rng));
      worst = std::max({worst, std::abs(out.trace()), (out - out.adjoint()).cwiseAbs().maxCoeff()});
    }
    report("trace and hermiticity preservation", worst < 1e-11, worst);
  });

  guarded("steady state: direct vs inverse iteration", [&] {
    double worst = 0.0;
    bool physical = true;
    for (int trial = 0; trial < 5; ++trial) {
      const ModelParams p = random_point(rng, 2);
      const Superoperator L = liouvillian(p, hilbert_space(2, 3));
      SolverOptions direct, krylov;
      direct.method = SteadyStateMethod::direct_sparse;
      krylov.method = SteadyStateMethod::krylov_nullspace;
      krylov.seed = seed;
      const auto a = steady_state(L, direct), b = steady_state(L, krylov);
      worst = std::max(worst, (a.rho.data() - b.rho.data()).cwiseAbs().maxCoeff());
      physical = physical && a.diagnostics.ok && b.diagnostics.ok;
    }
    report("steady state: direct vs inverse iteration", worst < 1e-8, worst);
    report("steady state: physical density matrix", physical, physical ? 1.0 : 0.0);
  });

  guarded("single-atom pump balance", [&] {
    std::uniform_real_distribution<double> u(0.1, 2.0);
    ModelParams p;
    p.g = 0.0;
    p.gamma0 = u(rng);
    p.pump_rate = u(rng);
    p.geometry = build_geometry(LatticeFamily::chain, 1, 1.0);
    const auto ss = steady_state(liouvillian(p, hilbert_space(1, 1)));
    const double err = std::abs(inversion(ss.rho) - (p.pump_rate - p.gamma0) / (p.pump_rate + p.gamma0));
    report("single-atom pump balance", err < 1e-10, err);
  });

  guarded("evolution preserves trace", [&] {
    const ModelParams p = random_point(rng, 2);
    const Space s = hilbert_space(2, 3);
    const Superoperator L = liouvillian(p, s);
    const std::vector<double> t{0.0, 1.0};
    const auto states = evolve(L, basis_state(s, s.index(0b11, 0)).data(), t);
    const double err = std::abs(states.back().trace() - 1.0);
    report("evolution preserves trace", err < 1e-8, err);
  });

  guarded("spectrum normalization", [&] {
    const ModelParams p = random_point(rng, 1);
    const Superoperator L = liouvillian(p, hilbert_space(1, 6));
    const auto ss = steady_state(L);
    CorrelationOptions co;
    co.tau_initial = 100.0;
    const auto spec = spectrum_fft(correlation_adag_a(L, ss.rho, co));
    const double n = photon_number(ss.rho);
    const double err = std::abs(spec.norm_integral - n) / n;
    report("spectrum normalization", err < 1e-2, err);
  });

  os << (failures == 0 ? "selftest passed" : "selftest failed: " + std::to_string(failures) + " check(s)") << "\n";
  return failures == 0;
}

}  // namespace srl
