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

#include "srlaser/config.hpp"

#include "srlaser/errors.hpp"
#include "srlaser/format.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

namespace srl {

std::string_view to_string(Command c) {
  switch (c) {
    case Command::steady: return "steady";
    case Command::spectrum: return "spectrum";
    case Command::sweep: return "sweep";
  }
  return "sweep";
}

std::string_view to_string(ModelKind k) { return k == ModelKind::collective ? "collective" : "full"; }

std::string_view to_string(OutputField f) {
  switch (f) {
    case OutputField::n: return "n";
    case OutputField::inversion: return "inversion";
    case OutputField::g2: return "g2";
    case OutputField::spectrum: return "spectrum";
    case OutputField::linewidth: return "linewidth";
    case OutputField::shift: return "shift";
  }
  return "n";
}

std::string_view to_string(AxisName a) {
  switch (a) {
    case AxisName::pump_rate: return "pump_rate";
    case AxisName::gamma0: return "gamma0";
    case AxisName::detuning: return "detuning";
    case AxisName::lattice_const: return "lattice_const";
    case AxisName::n_atoms: return "n_atoms";
    case AxisName::geometry_family: return "geometry_family";
    case AxisName::decay_mode: return "decay_mode";
    case AxisName::pump_mode: return "pump_mode";
  }
  return "pump_rate";
}

Geometry GeometrySpec::build() const {
  if (n_atoms == 0) return Geometry{};
  if (family == LatticeFamily::custom) {
    if (static_cast<int>(positions.size()) != n_atoms) {
      throw ConfigurationError("custom geometry lists " + std::to_string(positions.size()) + " positions but n_atoms is " +
                               std::to_string(n_atoms));
    }
    return custom_geometry(positions, dipole_axis);
  }
  return build_geometry(family, n_atoms, lattice_const, dipole_axis);
}

bool RunConfig::wants(OutputField f) const { return std::find(outputs.begin(), outputs.end(), f) != outputs.end(); }

bool RunConfig::wants_spectrum() const {
  return wants(OutputField::spectrum) || wants(OutputField::linewidth) || wants(OutputField::shift);
}

std::size_t RunConfig::point_count() const {
  std::size_t n = 1;
  for (const auto& ax : sweep) n *= ax.values.size();
  return n;
}

void coarsen_sweep(RunConfig& cfg, int keep) {
  if (keep < 1) throw ConfigurationError("coarse grid needs at least one value per axis");
  for (auto& ax : cfg.sweep) {
    const auto n = static_cast<int>(ax.values.size());
    if (n <= keep) continue;
    std::vector<AxisValue> sub;
    for (int k = 0; k < keep; ++k) {
      const int idx = keep == 1 ? 0 : static_cast<int>(std::lround(double(k) * (n - 1) / (keep - 1)));
      sub.push_back(ax.values[idx]);
    }
    ax.values = std::move(sub);
  }
}

std::pair<LatticeFamily, int> parse_family_label(std::string_view label) {
  std::size_t split = label.size();
  while (split > 0 && std::isdigit(static_cast<unsigned char>(label[split - 1]))) --split;
  const LatticeFamily family = parse_lattice_family(label.substr(0, split));
  if (family == LatticeFamily::custom) throw ConfigurationError("custom geometry cannot be a sweep value");
  int count = 0;
  if (split < label.size()) {
    count = std::stoi(std::string(label.substr(split)));
  } else if (family == LatticeFamily::triangle) {
    count = 3;
  } else if (family == LatticeFamily::square) {
    count = 4;
  } else {
    throw ConfigurationError("chain needs an atom count, e.g. chain3");
  }
  return {family, count};
}

void apply_axis_value(RunConfig& cfg, AxisName axis, const AxisValue& v) {
  switch (axis) {
    case AxisName::pump_rate: cfg.params.pump_rate = v.number; break;
    case AxisName::gamma0: cfg.params.gamma0 = v.number; break;
    case AxisName::detuning: cfg.params.detuning = v.number; break;
    case AxisName::lattice_const: cfg.geometry.lattice_const = v.number; break;
    case AxisName::n_atoms: cfg.geometry.n_atoms = static_cast<int>(v.number); break;
    case AxisName::geometry_family: {
      const auto [family, count] = parse_family_label(v.label);
      cfg.geometry.family = family;
      cfg.geometry.n_atoms = count;
      break;
    }
    case AxisName::decay_mode: cfg.params.decay_mode = parse_decay_mode(v.label); break;
    case AxisName::pump_mode: cfg.params.pump_mode = parse_pump_mode(v.label); break;
  }
}

namespace {

class Reader {
 public:
  explicit Reader(std::string origin) : origin_(std::move(origin)) {}

  [[noreturn]] void fail(const YAML::Node& at, const std::string& what) const { fail(at.Mark(), what); }

  [[noreturn]] void fail(const YAML::Mark& m, const std::string& what) const {
    std::string where = origin_;
    if (m.line >= 0) where += ":" + std::to_string(m.line + 1) + ":" + std::to_string(m.column + 1);
    throw ConfigurationError(where + ": " + what);
  }

  void check_keys(const YAML::Node& map, const std::string& section, std::initializer_list<std::string_view> allowed) const {
    if (!map.IsMap()) fail(map, "section '" + section + "' must be a mapping");
    for (auto it = map.begin(); it != map.end(); ++it) {
      const std::string key = it->first.Scalar();
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        fail(it->first, "unknown field '" + key + "' in " + section);
      }
    }
  }

  double number(const YAML::Node& n, const std::string& field) const {
    if (!n.IsScalar()) fail(n, "field '" + field + "' expects a number");
    double v = 0.0;
    try {
      v = n.as<double>();
    } catch (const YAML::Exception&) {
      fail(n, "field '" + field + "' expects a number, got '" + n.Scalar() + "'");
    }
    if (!std::isfinite(v)) fail(n, "field '" + field + "' must be finite");
    return v;
  }

  double nonnegative(const YAML::Node& n, const std::string& field) const {
    const double v = number(n, field);
    if (v < 0.0) fail(n, "field '" + field + "' must be >= 0");
    return v;
  }

  double positive(const YAML::Node& n, const std::string& field) const {
    const double v = number(n, field);
    if (!(v > 0.0)) fail(n, "field '" + field + "' must be > 0");
    return v;
  }

  long long integer(const YAML::Node& n, const std::string& field, long long lo,
                    long long hi = std::numeric_limits<long long>::max()) const {
    if (!n.IsScalar()) fail(n, "field '" + field + "' expects an integer");
    long long v = 0;
    try {
      v = n.as<long long>();
    } catch (const YAML::Exception&) {
      fail(n, "field '" + field + "' expects an integer, got '" + n.Scalar() + "'");
    }
    if (v < lo || v > hi) {
      fail(n, "field '" + field + "' must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return v;
  }

  bool boolean(const YAML::Node& n, const std::string& field) const {
    if (!n.IsScalar()) fail(n, "field '" + field + "' expects true or false");
    try {
      return n.as<bool>();
    } catch (const YAML::Exception&) {
      fail(n, "field '" + field + "' expects true or false, got '" + n.Scalar() + "'");
    }
  }

  std::string text(const YAML::Node& n, const std::string& field) const {
    if (!n.IsScalar()) fail(n, "field '" + field + "' expects a string");
    return n.Scalar();
  }

  Vec3 vec3(const YAML::Node& n, const std::string& field) const {
    if (!n.IsSequence() || n.size() != 3) fail(n, "field '" + field + "' expects [x, y, z]");
    return Vec3(number(n[0], field), number(n[1], field), number(n[2], field));
  }

  // Translates parse_* failures of the core library into located errors.
  template <class F>
  auto located(const YAML::Node& at, F&& f) const {
    try {
      return f();
    } catch (const Error& e) {
      fail(at, e.what());
    }
  }

 private:
  std::string origin_;
};

void read_model(const Reader& r, const YAML::Node& n, RunConfig& cfg) {
  r.check_keys(n, "model", {"type", "g", "kappa", "gamma0", "pump_rate", "detuning", "decay_mode", "pump_mode"});
  if (n["type"]) {
    const std::string t = r.text(n["type"], "type");
    if (t == "full") {
      cfg.model = ModelKind::full;
    } else if (t == "collective") {
      cfg.model = ModelKind::collective;
    } else {
      r.fail(n["type"], "model type must be 'full' or 'collective', got '" + t + "'");
    }
  }
  if (n["g"]) cfg.params.g = r.nonnegative(n["g"], "g");
  if (n["kappa"]) cfg.params.kappa = r.positive(n["kappa"], "kappa");
  if (n["gamma0"]) cfg.params.gamma0 = r.nonnegative(n["gamma0"], "gamma0");
  if (n["pump_rate"]) cfg.params.pump_rate = r.nonnegative(n["pump_rate"], "pump_rate");
  if (n["detuning"]) cfg.params.detuning = r.number(n["detuning"], "detuning");
  if (const auto v = n["decay_mode"]) {
    cfg.params.decay_mode = r.located(v, [&] { return parse_decay_mode(r.text(v, "decay_mode")); });
  }
  if (const auto v = n["pump_mode"]) {
    cfg.params.pump_mode = r.located(v, [&] { return parse_pump_mode(r.text(v, "pump_mode")); });
  }
}

void read_geometry(const Reader& r, const YAML::Node& n, RunConfig& cfg) {
  r.check_keys(n, "geometry", {"family", "n_atoms", "lattice_const", "dipole_axis", "positions"});
  auto& g = cfg.geometry;
  if (const auto v = n["family"]) g.family = r.located(v, [&] { return parse_lattice_family(r.text(v, "family")); });
  if (n["n_atoms"]) {
    g.n_atoms = static_cast<int>(r.integer(n["n_atoms"], "n_atoms", 0, 24));
  } else if (n["family"] && g.family == LatticeFamily::square) {
    g.n_atoms = 4;
  } else if (n["family"] && g.family == LatticeFamily::triangle) {
    g.n_atoms = 3;
  }
  if (n["lattice_const"]) g.lattice_const = r.positive(n["lattice_const"], "lattice_const");
  if (n["dipole_axis"]) {
    g.dipole_axis = r.vec3(n["dipole_axis"], "dipole_axis");
    if (g.dipole_axis.norm() == 0.0) r.fail(n["dipole_axis"], "dipole_axis must be nonzero");
  }
  if (const auto v = n["positions"]) {
    if (!v.IsSequence()) r.fail(v, "positions expects a list of [x, y, z]");
    g.positions.clear();
    for (const auto& p : v) g.positions.push_back(r.vec3(p, "positions"));
    if (!n["family"]) g.family = LatticeFamily::custom;
    if (!n["n_atoms"]) g.n_atoms = static_cast<int>(g.positions.size());
  }
}

void read_hilbert(const Reader& r, const YAML::Node& n, RunConfig& cfg) {
  r.check_keys(n, "hilbert", {"fock_cutoff", "auto_extend", "max_extensions"});
  if (n["fock_cutoff"]) cfg.hilbert.fock_cutoff = static_cast<int>(r.integer(n["fock_cutoff"], "fock_cutoff", 0, 200));
  if (n["auto_extend"]) cfg.hilbert.auto_extend = r.boolean(n["auto_extend"], "auto_extend");
  if (n["max_extensions"]) {
    cfg.hilbert.max_extensions = static_cast<int>(r.integer(n["max_extensions"], "max_extensions", 0, 20));
  }
}

void read_solver(const Reader& r, const YAML::Node& n, RunConfig& cfg) {
  r.check_keys(n, "solver", {"method", "residual_tol", "max_iterations", "time_rtol", "time_atol", "inverse_shift",
                             "truncation_tol"});
  auto& s = cfg.solver;
  if (const auto v = n["method"]) s.method = r.located(v, [&] { return parse_steady_state_method(r.text(v, "method")); });
  if (n["residual_tol"]) s.residual_tol = r.positive(n["residual_tol"], "residual_tol");
  if (n["max_iterations"]) s.max_iterations = static_cast<int>(r.integer(n["max_iterations"], "max_iterations", 1, 10000));
  if (n["time_rtol"]) s.time_rtol = r.positive(n["time_rtol"], "time_rtol");
  if (n["time_atol"]) s.time_atol = r.positive(n["time_atol"], "time_atol");
  if (n["inverse_shift"]) s.inverse_shift = r.positive(n["inverse_shift"], "inverse_shift");
  if (n["truncation_tol"]) s.truncation_tol = r.positive(n["truncation_tol"], "truncation_tol");
}

void read_spectrum(const Reader& r, const YAML::Node& n, RunConfig& cfg) {
  r.check_keys(n, "spectrum", {"dtau", "tau_initial", "tau_max", "decay_tol", "omega_max", "cross_check",
                               "resolvent_points", "empty_cavity_seed"});
  auto& s = cfg.spectrum;
  if (n["dtau"]) s.correlation.dtau = r.positive(n["dtau"], "dtau");
  if (n["tau_initial"]) s.correlation.tau_initial = r.positive(n["tau_initial"], "tau_initial");
  if (n["tau_max"]) s.correlation.tau_max = r.positive(n["tau_max"], "tau_max");
  if (n["decay_tol"]) s.correlation.decay_tol = r.positive(n["decay_tol"], "decay_tol");
  if (n["omega_max"]) s.omega_max = r.positive(n["omega_max"], "omega_max");
  if (n["cross_check"]) s.cross_check = r.boolean(n["cross_check"], "cross_check");
  if (n["resolvent_points"]) {
    s.resolvent_points = static_cast<int>(r.integer(n["resolvent_points"], "resolvent_points", 16, 1000000));
  }
  if (n["empty_cavity_seed"]) s.empty_cavity_seed = r.positive(n["empty_cavity_seed"], "empty_cavity_seed");
  if (s.correlation.tau_max < s.correlation.tau_initial) r.fail(n, "tau_max must be >= tau_initial");
}

AxisName parse_axis_name(const Reader& r, const YAML::Node& n) {
  const std::string name = r.text(n, "axis");
  for (AxisName a : {AxisName::pump_rate, AxisName::gamma0, AxisName::detuning, AxisName::lattice_const,
                     AxisName::n_atoms, AxisName::geometry_family, AxisName::decay_mode, AxisName::pump_mode}) {
    if (to_string(a) == name) return a;
  }
  r.fail(n, "unknown sweep axis '" + name + "'");
}

bool numeric_axis(AxisName a) {
  return a != AxisName::geometry_family && a != AxisName::decay_mode && a != AxisName::pump_mode;
}

AxisValue read_axis_value(const Reader& r, const YAML::Node& n, AxisName axis) {
  AxisValue v;
  if (axis == AxisName::n_atoms) {
    v.number = static_cast<double>(r.integer(n, "n_atoms", 0, 24));
    v.label = std::to_string(static_cast<int>(v.number));
  } else if (numeric_axis(axis)) {
    v.number = r.number(n, std::string(to_string(axis)));
    v.label = format_number(v.number);
  } else {
    v.number = std::numeric_limits<double>::quiet_NaN();
    v.label = r.text(n, std::string(to_string(axis)));
  }
  return v;
}

std::vector<SweepAxis> read_sweep(const Reader& r, const YAML::Node& n, const RunConfig& base) {
  if (!n.IsSequence()) r.fail(n, "sweep expects a list of axes");
  if (n.size() > 2) r.fail(n, "at most 2 sweep axes are supported, got " + std::to_string(n.size()));
  std::vector<SweepAxis> axes;
  for (const auto& entry : n) {
    r.check_keys(entry, "sweep axis", {"axis", "values", "range"});
    if (!entry["axis"]) r.fail(entry, "sweep axis needs an 'axis' name");
    SweepAxis ax{parse_axis_name(r, entry["axis"]), {}};
    for (const auto& prev : axes) {
      if (prev.name == ax.name) r.fail(entry["axis"], "axis '" + std::string(to_string(ax.name)) + "' listed twice");
    }
    if (entry["values"] && entry["range"]) r.fail(entry, "give either 'values' or 'range', not both");
    if (const auto vals = entry["values"]) {
      if (!vals.IsSequence() || vals.size() == 0) r.fail(vals, "values expects a nonempty list");
      for (const auto& v : vals) ax.values.push_back(read_axis_value(r, v, ax.name));
    } else if (const auto range = entry["range"]) {
      if (!numeric_axis(ax.name)) r.fail(range, "range needs a numeric axis");
      r.check_keys(range, "range", {"start", "stop", "count"});
      if (!range["start"] || !range["stop"] || !range["count"]) r.fail(range, "range needs start, stop and count");
      const double start = r.number(range["start"], "start"), stop = r.number(range["stop"], "stop");
      const auto count = r.integer(range["count"], "count", 1, 100000);
      for (long long k = 0; k < count; ++k) {
        const double x = count == 1 ? start : start + (stop - start) * static_cast<double>(k) / static_cast<double>(count - 1);
        AxisValue v{x, format_number(x)};
        if (ax.name == AxisName::n_atoms) {
          v.number = std::round(x);
          v.label = std::to_string(static_cast<int>(v.number));
        }
        ax.values.push_back(v);
      }
    } else {
      r.fail(entry, "sweep axis needs 'values' or 'range'");
    }

    if (base.model == ModelKind::collective &&
        (ax.name == AxisName::lattice_const || ax.name == AxisName::geometry_family ||
         ax.name == AxisName::decay_mode || ax.name == AxisName::pump_mode)) {
      r.fail(entry["axis"], "axis '" + std::string(to_string(ax.name)) + "' has no effect on the collective model");
    }
    // each value on its own must give a valid point
    const YAML::Node vals = entry["values"] ? entry["values"] : entry["range"];
    for (const auto& v : ax.values) {
      RunConfig probe = base;
      r.located(vals, [&] {
        apply_axis_value(probe, ax.name, v);
        if (probe.geometry.n_atoms > 0 && probe.model == ModelKind::full) probe.params.geometry = probe.geometry.build();
        probe.params.validate();
        return 0;
      });
    }
    axes.push_back(std::move(ax));
  }
  return axes;
}

std::vector<OutputField> read_outputs(const Reader& r, const YAML::Node& n) {
  if (!n.IsSequence() || n.size() == 0) r.fail(n, "outputs expects a nonempty list");
  std::vector<OutputField> out;
  for (const auto& item : n) {
    const std::string name = r.text(item, "outputs");
    bool found = false;
    for (OutputField f : {OutputField::n, OutputField::inversion, OutputField::g2, OutputField::spectrum,
                          OutputField::linewidth, OutputField::shift}) {
      if (to_string(f) == name) {
        if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
        found = true;
      }
    }
    if (!found) r.fail(item, "unknown output '" + name + "'");
  }
  // fixed order regardless of how the list was written
  std::sort(out.begin(), out.end());
  return out;
}

void read_output(const Reader& r, const YAML::Node& n, RunConfig& cfg) {
  r.check_keys(n, "output", {"dir", "prefix", "write_point_spectra"});
  if (n["dir"]) cfg.output.dir = r.text(n["dir"], "dir");
  if (n["prefix"]) cfg.output.prefix = r.text(n["prefix"], "prefix");
  if (n["write_point_spectra"]) cfg.output.write_point_spectra = r.boolean(n["write_point_spectra"], "write_point_spectra");
}

// Overlays the fields present in `doc` onto `cfg`; absent fields keep their
// value. Used for the base document and again for each variant.
void overlay(const Reader& r, const YAML::Node& doc, RunConfig& cfg, bool is_variant) {
  if (is_variant) {
    r.check_keys(doc, "variant", {"name", "description", "model", "geometry", "hilbert", "solver", "spectrum",
                                  "sweep", "outputs", "output", "workers", "seed"});
  } else {
    r.check_keys(doc, "config", {"command", "description", "model", "geometry", "hilbert", "solver", "spectrum",
                                 "sweep", "outputs", "output", "workers", "seed", "variants"});
  }
  if (const auto v = doc["command"]) {
    const std::string c = r.text(v, "command");
    if (c == "steady") {
      cfg.command = Command::steady;
    } else if (c == "spectrum") {
      cfg.command = Command::spectrum;
    } else if (c == "sweep") {
      cfg.command = Command::sweep;
    } else {
      r.fail(v, "command must be steady, spectrum or sweep, got '" + c + "'");
    }
  }
  if (doc["description"]) cfg.description = r.text(doc["description"], "description");
  if (doc["model"]) read_model(r, doc["model"], cfg);
  if (doc["geometry"]) read_geometry(r, doc["geometry"], cfg);
  if (doc["hilbert"]) read_hilbert(r, doc["hilbert"], cfg);
  if (doc["solver"]) read_solver(r, doc["solver"], cfg);
  if (doc["spectrum"]) read_spectrum(r, doc["spectrum"], cfg);
  if (doc["outputs"]) cfg.outputs = read_outputs(r, doc["outputs"]);
  if (doc["output"]) read_output(r, doc["output"], cfg);
  if (doc["workers"]) cfg.workers = static_cast<int>(r.integer(doc["workers"], "workers", 1, 1024));
  if (doc["seed"]) cfg.seed = static_cast<std::uint64_t>(r.integer(doc["seed"], "seed", 0));
  // sweep last: its values are checked against the rest of the config
  if (doc["sweep"]) cfg.sweep = read_sweep(r, doc["sweep"], cfg);
}

void check_base_point(const Reader& r, const YAML::Node& doc, const RunConfig& cfg) {
  const bool swept = std::any_of(cfg.sweep.begin(), cfg.sweep.end(), [](const SweepAxis& a) {
    return a.name == AxisName::n_atoms || a.name == AxisName::geometry_family || a.name == AxisName::lattice_const;
  });
  if (swept || cfg.model == ModelKind::collective) return;
  r.located(doc["geometry"] ? doc["geometry"] : doc, [&] {
    cfg.geometry.build();
    return 0;
  });
}

}  // namespace

std::vector<RunConfig> parse_config(const std::string& text, const std::string& origin) {
  const Reader r(origin);
  YAML::Node doc;
  try {
    doc = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    r.fail(e.mark, e.msg);
  }
  if (doc.IsNull()) r.fail(YAML::Mark::null_mark(), "empty configuration");

  RunConfig base;
  overlay(r, doc, base, false);

  std::vector<RunConfig> out;
  if (const auto variants = doc["variants"]) {
    if (!variants.IsSequence() || variants.size() == 0) r.fail(variants, "variants expects a nonempty list");
    for (const auto& v : variants) {
      RunConfig cfg = base;
      if (!v.IsMap() || !v["name"]) r.fail(v, "each variant needs a name");
      cfg.variant = r.text(v["name"], "name");
      for (const auto& prev : out) {
        if (prev.variant == cfg.variant) r.fail(v["name"], "duplicate variant '" + cfg.variant + "'");
      }
      overlay(r, v, cfg, true);
      // base sweep values were checked against the base model only
      if (!v["sweep"] && doc["sweep"]) cfg.sweep = read_sweep(r, doc["sweep"], cfg);
      check_base_point(r, v, cfg);
      out.push_back(std::move(cfg));
    }
  } else {
    check_base_point(r, doc, base);
    out.push_back(std::move(base));
  }
  return out;
}

std::vector<RunConfig> load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

nlohmann::json RunConfig::echo() const {
  using nlohmann::json;
  json j;
  j["command"] = to_string(command);
  if (!variant.empty()) j["variant"] = variant;
  if (!description.empty()) j["description"] = description;
  j["model"] = {{"type", to_string(model)},
                {"g", params.g},
                {"kappa", params.kappa},
                {"gamma0", params.gamma0},
                {"pump_rate", params.pump_rate},
                {"detuning", params.detuning},
                {"decay_mode", to_string(params.decay_mode)},
                {"pump_mode", to_string(params.pump_mode)}};
  json geom = {{"family", to_string(geometry.family)},
               {"n_atoms", geometry.n_atoms},
               {"lattice_const", geometry.lattice_const},
               {"dipole_axis", {geometry.dipole_axis.x(), geometry.dipole_axis.y(), geometry.dipole_axis.z()}}};
  if (!geometry.positions.empty()) {
    json pos = json::array();
    for (const auto& p : geometry.positions) pos.push_back({p.x(), p.y(), p.z()});
    geom["positions"] = pos;
  }
  j["geometry"] = geom;
  j["hilbert"] = {{"fock_cutoff", hilbert.fock_cutoff},
                  {"auto_extend", hilbert.auto_extend},
                  {"max_extensions", hilbert.max_extensions}};
  j["solver"] = {{"method", to_string(solver.method)},     {"residual_tol", solver.residual_tol},
                 {"max_iterations", solver.max_iterations}, {"time_rtol", solver.time_rtol},
                 {"time_atol", solver.time_atol},           {"inverse_shift", solver.inverse_shift},
                 {"truncation_tol", solver.truncation_tol}};
  j["spectrum"] = {{"dtau", spectrum.correlation.dtau},
                   {"tau_initial", spectrum.correlation.tau_initial},
                   {"tau_max", spectrum.correlation.tau_max},
                   {"decay_tol", spectrum.correlation.decay_tol},
                   {"omega_max", spectrum.omega_max},
                   {"cross_check", spectrum.cross_check},
                   {"resolvent_points", spectrum.resolvent_points},
                   {"empty_cavity_seed", spectrum.empty_cavity_seed}};
  json sw = json::array();
  for (const auto& ax : sweep) {
    json vals = json::array();
    for (const auto& v : ax.values) {
      if (numeric_axis(ax.name)) {
        vals.push_back(v.number);
      } else {
        vals.push_back(v.label);
      }
    }
    sw.push_back({{"axis", to_string(ax.name)}, {"values", vals}});
  }
  j["sweep"] = sw;
  json outs = json::array();
  for (auto f : outputs) outs.push_back(to_string(f));
  j["outputs"] = outs;
  j["output"] = {{"dir", output.dir}, {"prefix", output.prefix}, {"write_point_spectra", output.write_point_spectra}};
  j["workers"] = workers;
  j["seed"] = seed;
  return j;
}

}  // namespace srl
