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

#include "srlaser/geometry.hpp"
#include "srlaser/model.hpp"
#include "srlaser/solvers.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace srl {

enum class Command { steady, spectrum, sweep };
enum class ModelKind { full, collective };
enum class OutputField { n, inversion, g2, spectrum, linewidth, shift };
enum class AxisName { pump_rate, gamma0, detuning, lattice_const, n_atoms, geometry_family, decay_mode, pump_mode };

std::string_view to_string(Command c);
std::string_view to_string(ModelKind k);
std::string_view to_string(OutputField f);
std::string_view to_string(AxisName a);

struct GeometrySpec {
  LatticeFamily family = LatticeFamily::chain;
  int n_atoms = 1;
  double lattice_const = 0.58;
  Vec3 dipole_axis = Vec3::UnitZ();
  std::vector<Vec3> positions;  // family custom only

  /// Empty geometry for n_atoms = 0 (cavity only).
  Geometry build() const;
};

struct HilbertSpec {
  int fock_cutoff = 8;
  bool auto_extend = true;
  /// Each extension adds two Fock levels.
  int max_extensions = 3;
};

struct SpectrumSpec {
  CorrelationOptions correlation;
  /// Spectrum files and the resolvent cross-check cover |omega| <= omega_max.
  double omega_max = 10.0;
  bool cross_check = false;
  int resolvent_points = 801;
  /// Mean photon number of the thermal seed used for N = 0, where the steady
  /// state is the vacuum and a rho would vanish.
  double empty_cavity_seed = 1.0;
};

/// One value of a sweep axis. `label` is what goes into the CSV.
struct AxisValue {
  double number = 0.0;
  std::string label;
};

struct SweepAxis {
  AxisName name;
  std::vector<AxisValue> values;
};

struct OutputSpec {
  std::string dir = "out";
  std::string prefix = "run";
  bool write_point_spectra = false;
};

struct RunConfig {
  Command command = Command::sweep;
  std::string variant;  // empty unless the file lists variants
  std::string description;
  ModelKind model = ModelKind::full;
  ModelParams params;  // geometry is filled per point from `geometry`
  GeometrySpec geometry;
  HilbertSpec hilbert;
  SolverOptions solver;
  SpectrumSpec spectrum;
  std::vector<SweepAxis> sweep;
  std::vector<OutputField> outputs{OutputField::n, OutputField::inversion, OutputField::g2};
  OutputSpec output;
  int workers = 1;
  std::uint64_t seed = 1;

  bool wants(OutputField f) const;
  bool wants_spectrum() const;
  std::size_t point_count() const;
  /// Resolved configuration as JSON, for provenance in every output.
  nlohmann::json echo() const;
};

/// Parses the YAML config grammar documented in docs/config.md. A file with a
/// `variants` list yields one RunConfig per variant, each the deep merge of
/// the base document and the variant's overrides. Errors (unknown fields,
/// type mismatches, out-of-domain values) throw ConfigurationError naming
/// the field and its line and column.
std::vector<RunConfig> parse_config(const std::string& text, const std::string& origin = "<config>");
std::vector<RunConfig> load_config(const std::string& path);

/// Sets the field an axis controls. Throws ConfigurationError for labels
/// that do not parse.
void apply_axis_value(RunConfig& cfg, AxisName axis, const AxisValue& value);

/// Keeps at most `keep` evenly spaced values per sweep axis, both ends included.
void coarsen_sweep(RunConfig& cfg, int keep);

/// "chain3" -> (chain, 3); "square" -> (square, 4); "triangle" -> (triangle, 3).
std::pair<LatticeFamily, int> parse_family_label(std::string_view label);

}  // namespace srl
