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

#include "srlaser/config.hpp"
#include "srlaser/errors.hpp"
#include "srlaser/pipeline.hpp"

#include <string>

using namespace srl;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text, "t.yaml");
  } catch (const ConfigurationError& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("minimal configuration takes the defaults") {
  const auto runs = parse_config("command: steady\n");
  REQUIRE(runs.size() == 1);
  const RunConfig& c = runs[0];
  CHECK(c.command == Command::steady);
  CHECK(c.params.g == 1.0);
  CHECK(c.params.kappa == 1.0);
  CHECK(c.hilbert.fock_cutoff == 8);
  CHECK(c.hilbert.auto_extend);
  CHECK(c.point_count() == 1);
  CHECK(c.workers == 1);
}

TEST_CASE("full grammar") {
  const auto runs = parse_config(R"(
command: sweep
description: demo
model:
  type: full
  g: 0.5
  kappa: 2
  gamma0: 0.1
  pump_rate: 1.5
  detuning: -0.25
  decay_mode: independent
  pump_mode: individual
geometry: {family: square, n_atoms: 4, lattice_const: 0.3, dipole_axis: [1, 0, 0]}
hilbert: {fock_cutoff: 5, auto_extend: false, max_extensions: 1}
solver: {method: krylov_nullspace, residual_tol: 1e-9, inverse_shift: 1e-5}
spectrum: {dtau: 0.1, tau_initial: 50, tau_max: 400, omega_max: 6, cross_check: true}
sweep:
  - axis: pump_rate
    range: {start: 0, stop: 2, count: 5}
  - axis: gamma0
    values: [0.1, 0.2]
outputs: [g2, n]
output: {dir: out/x, prefix: demo, write_point_spectra: true}
workers: 3
seed: 9
)");
  REQUIRE(runs.size() == 1);
  const RunConfig& c = runs[0];
  CHECK(c.description == "demo");
  CHECK(c.params.g == 0.5);
  CHECK(c.params.kappa == 2.0);
  CHECK(c.params.detuning == -0.25);
  CHECK(c.params.decay_mode == DecayMode::independent);
  CHECK(c.geometry.family == LatticeFamily::square);
  CHECK(c.geometry.dipole_axis.x() == 1.0);
  CHECK(c.hilbert.fock_cutoff == 5);
  CHECK_FALSE(c.hilbert.auto_extend);
  CHECK(c.solver.method == SteadyStateMethod::krylov_nullspace);
  CHECK(c.solver.inverse_shift == 1e-5);
  CHECK(c.spectrum.correlation.tau_max == 400.0);
  CHECK(c.spectrum.cross_check);
  REQUIRE(c.sweep.size() == 2);
  REQUIRE(c.sweep[0].values.size() == 5);
  CHECK(c.sweep[0].values[2].number == doctest::Approx(1.0));
  CHECK(c.point_count() == 10);
  // outputs come back in canonical order
  REQUIRE(c.outputs.size() == 2);
  CHECK(c.outputs[0] == OutputField::n);
  CHECK(c.output.prefix == "demo");
  CHECK(c.workers == 3);
  CHECK(c.seed == 9);
}

TEST_CASE("unknown fields are reported with line and column") {
  const std::string msg = error_of("command: steady\nmodel:\n  g: 1\n  gama0: 0.2\n");
  CHECK(contains(msg, "t.yaml:4:3"));
  CHECK(contains(msg, "unknown field 'gama0' in model"));
  CHECK(contains(error_of("command: steady\nbogus: 1\n"), "unknown field 'bogus'"));
}

TEST_CASE("value errors") {
  CHECK(contains(error_of("model: {kappa: 0}\n"), "'kappa' must be > 0"));
  CHECK(contains(error_of("model: {gamma0: -1}\n"), "'gamma0' must be >= 0"));
  CHECK(contains(error_of("model: {g: abc}\n"), "expects a number"));
  CHECK(contains(error_of("model: {type: quantum}\n"), "model type"));
  CHECK(contains(error_of("command: run\n"), "command must be"));
  CHECK(contains(error_of("geometry: {family: square, n_atoms: 3}\n"), "square"));
  CHECK(parse_config("geometry: {family: square}\n").front().geometry.n_atoms == 4);
  CHECK(parse_config("geometry: {family: triangle}\n").front().geometry.n_atoms == 3);
  CHECK(contains(error_of("hilbert: {fock_cutoff: 2.5}\n"), "integer"));
  CHECK(contains(error_of("outputs: [n, colour]\n"), "unknown output 'colour'"));
  CHECK(contains(error_of("workers: 0\n"), "workers"));
  CHECK(contains(error_of("spectrum: {tau_initial: 100, tau_max: 10}\n"), "tau_max"));
  CHECK(contains(error_of("model: [1, 2\n"), "t.yaml:"));
  CHECK(contains(error_of(""), "empty configuration"));
}

TEST_CASE("sweep validation") {
  CHECK(contains(error_of("sweep:\n  - axis: colour\n    values: [1]\n"), "unknown sweep axis 'colour'"));
  CHECK(contains(error_of("sweep:\n  - axis: pump_rate\n    values: [1]\n  - axis: pump_rate\n    values: [2]\n"),
                 "listed twice"));
  CHECK(contains(error_of("sweep:\n  - {axis: pump_rate, values: [1]}\n  - {axis: gamma0, values: [1]}\n"
                          "  - {axis: detuning, values: [1]}\n"),
                 "at most 2 sweep axes"));
  CHECK(contains(error_of("sweep:\n  - axis: pump_rate\n    values: [1, -2]\n"), "must be >= 0"));
  CHECK(contains(error_of("sweep:\n  - axis: pump_rate\n"), "'values' or 'range'"));
  CHECK(contains(error_of("sweep:\n  - axis: geometry_family\n    range: {start: 0, stop: 1, count: 2}\n"),
                 "numeric axis"));
  CHECK(contains(error_of("model: {type: collective}\nsweep:\n  - axis: lattice_const\n    values: [0.1]\n"),
                 "no effect on the collective model"));
  // a sweep value has to make sense with the rest of the configuration
  CHECK_FALSE(error_of("geometry: {family: square, n_atoms: 4}\nsweep:\n  - axis: n_atoms\n    values: [3]\n").empty());
}

TEST_CASE("family labels") {
  CHECK(parse_family_label("chain3") == std::pair{LatticeFamily::chain, 3});
  CHECK(parse_family_label("chain12") == std::pair{LatticeFamily::chain, 12});
  CHECK(parse_family_label("square") == std::pair{LatticeFamily::square, 4});
  CHECK(parse_family_label("triangle") == std::pair{LatticeFamily::triangle, 3});
  CHECK_THROWS_AS(parse_family_label("chain"), ConfigurationError);
  CHECK_THROWS_AS(parse_family_label("hexagon"), ConfigurationError);

  auto c = parse_config("geometry: {family: chain, n_atoms: 2, lattice_const: 0.2}\n").front();
  apply_axis_value(c, AxisName::geometry_family, AxisValue{0.0, "square"});
  CHECK(c.geometry.family == LatticeFamily::square);
  CHECK(c.geometry.n_atoms == 4);
}

TEST_CASE("variants overlay the base configuration") {
  const auto runs = parse_config(R"(
model: {g: 0.7, gamma0: 0.1}
sweep:
  - axis: pump_rate
    values: [1, 2]
variants:
  - name: a
  - name: b
    model: {decay_mode: independent}
  - name: c
    sweep:
      - axis: gamma0
        values: [0.2, 0.3, 0.4]
)");
  REQUIRE(runs.size() == 3);
  CHECK(runs[0].variant == "a");
  CHECK(runs[1].params.decay_mode == DecayMode::independent);
  CHECK(runs[1].params.g == 0.7);
  CHECK(runs[1].point_count() == 2);
  CHECK(runs[2].point_count() == 3);
  CHECK(runs[2].params.decay_mode == DecayMode::full_geometry);
  CHECK(contains(error_of("variants:\n  - name: a\n  - name: a\n"), "duplicate variant 'a'"));
}

TEST_CASE("coarse sweeps keep both ends") {
  auto c = parse_config("sweep:\n  - axis: pump_rate\n    range: {start: 0, stop: 8, count: 33}\n").front();
  coarsen_sweep(c, 5);
  REQUIRE(c.sweep[0].values.size() == 5);
  CHECK(c.sweep[0].values.front().number == 0.0);
  CHECK(c.sweep[0].values[1].number == doctest::Approx(2.0));
  CHECK(c.sweep[0].values.back().number == doctest::Approx(8.0));
  CHECK_THROWS_AS(coarsen_sweep(c, 0), ConfigurationError);
}

TEST_CASE("point expansion is row-major") {
  const auto c = parse_config(
                     "sweep:\n  - {axis: pump_rate, values: [1, 2]}\n  - {axis: detuning, values: [-1, 0, 1]}\n")
                     .front();
  const auto pts = expand_points(c);
  REQUIRE(pts.size() == 6);
  CHECK(pts[1].config.params.pump_rate == 1.0);
  CHECK(pts[1].config.params.detuning == 0.0);
  CHECK(pts[3].config.params.pump_rate == 2.0);
  CHECK(pts[3].config.params.detuning == -1.0);
  CHECK(pts[5].index == 5);
}

TEST_CASE("validation report sizes") {
  const auto runs = parse_config("geometry: {family: square, n_atoms: 4}\nhilbert: {fock_cutoff: 8}\n");
  const auto report = validate_runs(runs);
  REQUIRE(report.entries.size() == 1);
  CHECK(report.entries[0].dim == 144);
  CHECK(report.entries[0].superop_side == 20736);
  CHECK(report.entries[0].sector_unknowns == 2024);
  CHECK(report.entries[0].recommendation == "direct");
  CHECK_FALSE(report.hard_stop());
  const auto big = parse_config("geometry: {family: chain, n_atoms: 12}\n");
  CHECK(validate_runs(big).hard_stop());
  // the reduced model is fine at that size
  CHECK_FALSE(validate_runs(parse_config("model: {type: collective}\ngeometry: {n_atoms: 12}\n")).hard_stop());
}
