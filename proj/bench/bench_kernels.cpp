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

// Serial vs OpenMP versions of the two hot loops.
//   ./srlaser_bench --benchmark_filter=Spmv
// Set OMP_NUM_THREADS to compare thread counts.

#include "srlaser/geometry.hpp"
#include "srlaser/kernels.hpp"
#include "srlaser/model.hpp"
#include "srlaser/solvers.hpp"
#include "srlaser/spectrum.hpp"

#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

namespace {

srl::ModelParams square(double pump) {
  srl::ModelParams p;
  p.g = 1.0;
  p.gamma0 = 0.2;
  p.pump_rate = pump;
  p.geometry = srl::build_geometry(srl::LatticeFamily::square, 4, 0.58);
  return p;
}

const srl::Superoperator& generator(int fock_cutoff) {
  static std::vector<std::unique_ptr<srl::Superoperator>> cache(32);
  auto& slot = cache[fock_cutoff];
  if (!slot) slot = std::make_unique<srl::Superoperator>(srl::liouvillian(square(2.0), srl::hilbert_space(4, fock_cutoff)));
  return *slot;
}

template <bool Parallel>
void Spmv(benchmark::State& state) {
  const auto& m = generator(static_cast<int>(state.range(0))).row_major();
  srl::Vector x = srl::Vector::Random(m.cols()), y(m.rows());
  for (auto _ : state) {
    if constexpr (Parallel) {
      srl::kernels::spmv_parallel(m, {x.data(), std::size_t(x.size())}, {y.data(), std::size_t(y.size())});
    } else {
      srl::kernels::spmv_serial(m, {x.data(), std::size_t(x.size())}, {y.data(), std::size_t(y.size())});
    }
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * m.nonZeros());
  state.counters["threads"] = Parallel ? srl::kernels::max_threads() : 1;
}
BENCHMARK(Spmv<false>)->Name("SpmvSerial")->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);
BENCHMARK(Spmv<true>)->Name("SpmvParallel")->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);

template <bool Parallel>
void Resolvent(benchmark::State& state) {
  const auto& L = generator(4);
  static const auto ss = srl::steady_state(L);
  std::vector<double> omega;
  for (int k = 0; k < state.range(0); ++k) omega.push_back(-4.0 + 8.0 * k / (state.range(0) - 1));
  for (auto _ : state) {
    auto res = srl::spectrum_resolvent(L, ss.rho, omega, Parallel);
    benchmark::DoNotOptimize(res.values.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(Resolvent<false>)->Name("ResolventSerial")->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(Resolvent<true>)->Name("ResolventParallel")->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
