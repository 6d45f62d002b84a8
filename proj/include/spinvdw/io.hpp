#pragma once

// Configuration files and sweep output.
//
// A configuration is one JSON object with flat dotted keys; every key is
// optional and unknown keys are rejected. Defaults reproduce the rr sweep at
// 300 K for BST spheres (a = 60 nm, R = 180 nm).
//
//   name                         string
//   material.f0                  number   (both spheres)
//   material.omega_tilde0_rad_s  number
//   material.gamma0_rad_s        number
//   material_b.*                 as above, overrides sphere B only
//   radius_m                     number   (both spheres)
//   sphere_a.radius_m, sphere_b.radius_m
//   separation_m                 number
//   temperature_k                number   (both spheres)
//   sphere_a.temperature_k, sphere_b.temperature_k
//   arrangement                  "rr" | "uu" | "ur" | "uo" | "general"
//   arrangement.axis_a, arrangement.axis_b, arrangement.rhat   [x, y, z], general only
//   omega_a.unit                 "omega0" (default, resonance of sphere A) | "rad_s"
//   omega_a.values               [numbers]  or
//   omega_a.min, omega_a.max, omega_a.count   (default 0, 4, 200)
//   omega_b.rule                 "fixed" (default) | "ratio" | "grid"
//   omega_b.unit                 as omega_a.unit
//   omega_b.value                number  (fixed)
//   omega_b.ratios               number or [numbers], |rho| <= 1  (ratio)
//   omega_b.values               [numbers]  (grid)
//   quadrature.rel_tol, quadrature.abs_tol, quadrature.window_factor, quadrature.max_depth
//   output.path                  string (empty: standard output)
//   output.format                "csv" | "json"
//   threads                      integer >= 1

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"  // nlohmann/json, vendored

#include "spinvdw/configurations.hpp"
#include "spinvdw/errors.hpp"
#include "spinvdw/sweep.hpp"

namespace spinvdw {

namespace io_detail {

using json = nlohmann::json;

inline double number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(key, "must be finite");
  return x;
}

inline std::string text(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError(key, "expected a string");
  return v.get<std::string>();
}

inline std::vector<double> numbers(const json& v, const std::string& key) {
  if (v.is_number()) return {number(v, key)};
  if (!v.is_array()) throw ConfigError(key, "expected a number or an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(number(x, key));
  return out;
}

inline Eigen::Vector3d vector3(const json& v, const std::string& key) {
  const auto xs = numbers(v, key);
  if (xs.size() != 3) throw ConfigError(key, "expected [x, y, z]");
  const Eigen::Vector3d out(xs[0], xs[1], xs[2]);
  if (std::abs(out.norm() - 1.0) > 1e-12) throw ConfigError(key, "must be a unit vector");
  return out;
}

inline double unit_scale(const std::string& unit, double omega0, const std::string& key) {
  if (unit == "omega0") return omega0;
  if (unit == "rad_s") return 1.0;
  throw ConfigError(key, "unit must be \"omega0\" or \"rad_s\"");
}

inline void set_material_field(MaterialModel& m, const std::string& field, const json& v, const std::string& key) {
  if (field == "f0") {
    m.f0 = number(v, key);
  } else if (field == "omega_tilde0_rad_s") {
    m.omega_tilde0 = number(v, key);
  } else if (field == "gamma0_rad_s") {
    m.gamma0 = number(v, key);
  } else {
    throw ConfigError(key, "unknown key");
  }
}

inline json vector_json(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

}  // namespace io_detail

/// Builds a validated plan from a parsed configuration object.
inline SweepPlan parse_config_json(const nlohmann::json& doc) {
  using io_detail::json;
  using io_detail::number;
  using io_detail::numbers;
  using io_detail::text;
  if (!doc.is_object()) throw ConfigError("", "configuration must be a JSON object");

  SweepPlan plan;
  plan.context = reference_pair(300.0);
  SweepSpec& sweep = plan.sweep;
  MaterialModel material_a = MaterialModel::bst();
  std::map<std::string, json> material_b_fields;
  std::optional<double> radius, radius_a, radius_b, temperature, temperature_a, temperature_b;
  std::string arrangement = "rr";
  std::optional<Eigen::Vector3d> axis_a, axis_b, rhat;
  std::string unit_a = "omega0", unit_b = "omega0", rule = "fixed";
  std::optional<std::vector<double>> values_a, ratios, values_b;
  std::optional<double> min_a, max_a, value_b;
  std::optional<double> count_a;

  for (const auto& [key, v] : doc.items()) {
    if (key == "name") {
      sweep.name = text(v, key);
    } else if (key.rfind("material.", 0) == 0) {
      io_detail::set_material_field(material_a, key.substr(9), v, key);
    } else if (key.rfind("material_b.", 0) == 0) {
      MaterialModel probe;
      io_detail::set_material_field(probe, key.substr(11), v, key);
      material_b_fields[key.substr(11)] = v;
    } else if (key == "radius_m") {
      radius = number(v, key);
    } else if (key == "sphere_a.radius_m") {
      radius_a = number(v, key);
    } else if (key == "sphere_b.radius_m") {
      radius_b = number(v, key);
    } else if (key == "separation_m") {
      plan.context.separation = number(v, key);
    } else if (key == "temperature_k") {
      temperature = number(v, key);
    } else if (key == "sphere_a.temperature_k") {
      temperature_a = number(v, key);
    } else if (key == "sphere_b.temperature_k") {
      temperature_b = number(v, key);
    } else if (key == "arrangement") {
      arrangement = text(v, key);
    } else if (key == "arrangement.axis_a") {
      axis_a = io_detail::vector3(v, key);
    } else if (key == "arrangement.axis_b") {
      axis_b = io_detail::vector3(v, key);
    } else if (key == "arrangement.rhat") {
      rhat = io_detail::vector3(v, key);
    } else if (key == "omega_a.unit") {
      unit_a = text(v, key);
    } else if (key == "omega_a.values") {
      values_a = numbers(v, key);
    } else if (key == "omega_a.min") {
      min_a = number(v, key);
    } else if (key == "omega_a.max") {
      max_a = number(v, key);
    } else if (key == "omega_a.count") {
      count_a = number(v, key);
    } else if (key == "omega_b.rule") {
      rule = text(v, key);
    } else if (key == "omega_b.unit") {
      unit_b = text(v, key);
    } else if (key == "omega_b.value") {
      value_b = number(v, key);
    } else if (key == "omega_b.ratios") {
      ratios = numbers(v, key);
    } else if (key == "omega_b.values") {
      values_b = numbers(v, key);
    } else if (key == "quadrature.rel_tol") {
      sweep.spectral.rel_tol = number(v, key);
    } else if (key == "quadrature.abs_tol") {
      sweep.spectral.abs_tol = number(v, key);
    } else if (key == "quadrature.window_factor") {
      sweep.spectral.window_factor = number(v, key);
    } else if (key == "quadrature.max_depth") {
      const double d = number(v, key);
      if (d != std::floor(d) || d < 1 || d > 60) throw ConfigError(key, "expected an integer in [1, 60]");
      sweep.spectral.max_depth = static_cast<int>(d);
    } else if (key == "output.path") {
      sweep.output_path = text(v, key);
    } else if (key == "output.format") {
      const auto f = text(v, key);
      if (f == "csv") {
        sweep.format = OutputFormat::CSV;
      } else if (f == "json") {
        sweep.format = OutputFormat::JSON;
      } else {
        throw ConfigError(key, "expected \"csv\" or \"json\"");
      }
    } else if (key == "threads") {
      const double t = number(v, key);
      if (t != std::floor(t) || t < 1 || t > 4096) throw ConfigError(key, "expected an integer >= 1");
      sweep.threads = static_cast<unsigned>(t);
    } else {
      throw ConfigError(key, "unknown key");
    }
  }

  auto& ctx = plan.context;
  ctx.a.material = material_a;
  ctx.b.material = material_a;
  for (const auto& [field, v] : material_b_fields) {
    io_detail::set_material_field(ctx.b.material, field, v, "material_b." + field);
  }
  ctx.a.radius = radius_a.value_or(radius.value_or(ctx.a.radius));
  ctx.b.radius = radius_b.value_or(radius.value_or(ctx.b.radius));
  ctx.a.temperature = temperature_a.value_or(temperature.value_or(ctx.a.temperature));
  ctx.b.temperature = temperature_b.value_or(temperature.value_or(ctx.b.temperature));

  try {
    const auto kind = parse_arrangement_kind(arrangement);
    if (kind == ArrangementKind::General) {
      if (!axis_a || !axis_b || !rhat) {
        throw ConfigError("arrangement", "general needs arrangement.axis_a, arrangement.axis_b and arrangement.rhat");
      }
      sweep.arrangement = Arrangement::general(*axis_a, *axis_b, *rhat);
    } else {
      if (axis_a || axis_b || rhat) throw ConfigError("arrangement", "axes are only accepted for general");
      sweep.arrangement = Arrangement::canonical(kind);
    }
  } catch (const DomainError& e) {
    throw ConfigError("arrangement", e.what());
  }
  ctx.direction = sweep.arrangement.rhat;

  try {
    ctx.validate();
  } catch (const DomainError& e) {
    throw ConfigError("", e.what());
  }
  const double omega0 = resonance_frequency(ctx.a.material);
  const double scale_a = io_detail::unit_scale(unit_a, omega0, "omega_a.unit");
  const double scale_b = io_detail::unit_scale(unit_b, omega0, "omega_b.unit");

  if (values_a) {
    if (min_a || max_a || count_a) throw ConfigError("omega_a.values", "give either values or min/max/count");
    sweep.omega_a = *values_a;
  } else {
    const double c = count_a.value_or(200.0);
    if (c != std::floor(c) || c < 1 || c > 1e7) throw ConfigError("omega_a.count", "expected an integer >= 1");
    sweep.omega_a = linspace(min_a.value_or(0.0), max_a.value_or(4.0), static_cast<std::size_t>(c));
  }
  for (double& x : sweep.omega_a) x *= scale_a;

  if (rule == "fixed") {
    if (ratios || values_b) throw ConfigError("omega_b.rule", "fixed takes only omega_b.value");
    sweep.rule = OmegaBRule::Fixed;
    sweep.omega_b_fixed = value_b.value_or(0.0) * scale_b;
  } else if (rule == "ratio") {
    if (!ratios) throw ConfigError("omega_b.ratios", "required by the ratio rule");
    if (value_b || values_b) throw ConfigError("omega_b.rule", "ratio takes only omega_b.ratios");
    for (double r : *ratios) {
      if (std::abs(r) > 1.0) throw ConfigError("omega_b.ratios", "each ratio must satisfy |rho| <= 1");
    }
    sweep.rule = OmegaBRule::Ratio;
    sweep.ratios = *ratios;
  } else if (rule == "grid") {
    if (!values_b) throw ConfigError("omega_b.values", "required by the grid rule");
    if (value_b || ratios) throw ConfigError("omega_b.rule", "grid takes only omega_b.values");
    sweep.rule = OmegaBRule::Grid;
    sweep.omega_b = *values_b;
    for (double& x : sweep.omega_b) x *= scale_b;
  } else {
    throw ConfigError("omega_b.rule", "expected \"fixed\", \"ratio\" or \"grid\"");
  }

  try {
    sweep.validate();
  } catch (const DomainError& e) {
    throw ConfigError("", e.what());
  }
  return plan;
}

inline SweepPlan parse_config_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("", std::string("not valid JSON: ") + e.what());
  }
  return parse_config_json(doc);
}

/// Reads and validates a configuration file.
inline SweepPlan parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open configuration '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

/// Configuration that parses back to `plan` (spin rates written in rad/s).
/// Preset notes are not part of a configuration and are dropped.
inline nlohmann::ordered_json config_json(const SweepPlan& plan) {
  using io_detail::vector_json;
  const auto& ctx = plan.context;
  const auto& sweep = plan.sweep;
  nlohmann::ordered_json j;
  j["name"] = sweep.name;
  j["material.f0"] = ctx.a.material.f0;
  j["material.omega_tilde0_rad_s"] = ctx.a.material.omega_tilde0;
  j["material.gamma0_rad_s"] = ctx.a.material.gamma0;
  j["material_b.f0"] = ctx.b.material.f0;
  j["material_b.omega_tilde0_rad_s"] = ctx.b.material.omega_tilde0;
  j["material_b.gamma0_rad_s"] = ctx.b.material.gamma0;
  j["sphere_a.radius_m"] = ctx.a.radius;
  j["sphere_b.radius_m"] = ctx.b.radius;
  j["separation_m"] = ctx.separation;
  j["sphere_a.temperature_k"] = ctx.a.temperature;
  j["sphere_b.temperature_k"] = ctx.b.temperature;
  j["arrangement"] = std::string(arrangement_name(sweep.arrangement.kind));
  if (sweep.arrangement.kind == ArrangementKind::General) {
    j["arrangement.axis_a"] = vector_json(sweep.arrangement.axis_a);
    j["arrangement.axis_b"] = vector_json(sweep.arrangement.axis_b);
    j["arrangement.rhat"] = vector_json(sweep.arrangement.rhat);
  }
  j["omega_a.unit"] = "rad_s";
  j["omega_a.values"] = sweep.omega_a;
  j["omega_b.rule"] = std::string(rule_name(sweep.rule));
  j["omega_b.unit"] = "rad_s";
  switch (sweep.rule) {
    case OmegaBRule::Fixed: j["omega_b.value"] = sweep.omega_b_fixed; break;
    case OmegaBRule::Ratio: j["omega_b.ratios"] = sweep.ratios; break;
    case OmegaBRule::Grid: j["omega_b.values"] = sweep.omega_b; break;
  }
  j["quadrature.rel_tol"] = sweep.spectral.rel_tol;
  j["quadrature.abs_tol"] = sweep.spectral.abs_tol;
  j["quadrature.window_factor"] = sweep.spectral.window_factor;
  j["quadrature.max_depth"] = sweep.spectral.max_depth;
  j["output.path"] = sweep.output_path;
  j["output.format"] = std::string(format_name(sweep.format));
  j["threads"] = sweep.threads;
  return j;
}

inline void write_config(const SweepPlan& plan, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "': " + std::strerror(errno));
  out << config_json(plan).dump(2) << '\n';
  if (!out) throw IoError("error while writing '" + path + "'");
}

// ---------------------------------------------------------------------------
// Sweep output

inline const std::vector<std::string>& result_columns() {
  static const std::vector<std::string> columns = {
      "omega_A_rad_s", "omega_B_rad_s", "omega_A_over_omega0", "E_J", "E0_J", "deltaE_J", "F_N", "deltaF_fN",
      "error"};
  return columns;
}

inline std::string csv_header() {
  std::string h;
  for (const auto& c : result_columns()) h += (h.empty() ? "" : ",") + c;
  return h;
}

namespace io_detail {

inline std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::vector<double> row_values(const SweepRow& r) {
  return {r.omega_a, r.omega_b, r.omega_a_over_omega0, r.energy, r.energy0, r.delta_energy, r.force, r.delta_force_fN};
}

inline SweepRow row_from_values(const std::vector<double>& v, std::string error) {
  SweepRow r;
  r.omega_a = v[0];
  r.omega_b = v[1];
  r.omega_a_over_omega0 = v[2];
  r.energy = v[3];
  r.energy0 = v[4];
  r.delta_energy = v[5];
  r.force = v[6];
  r.delta_force_fN = v[7];
  r.error = std::move(error);
  return r;
}

}  // namespace io_detail

/// CSV: "# key: value" metadata lines, the header line, then one line per row.
inline void write_csv(const SweepResult& result, std::ostream& out) {
  for (const auto& [k, v] : result.metadata) out << "# " << k << ": " << v << '\n';
  out << csv_header() << '\n';
  for (const auto& row : result.rows) {
    for (double x : io_detail::row_values(row)) out << io_detail::g17(x) << ',';
    out << detail::one_line(row.error) << '\n';
  }
}

/// JSON: {"metadata": {...}, "columns": [...], "rows": [{column: value}, ...]};
/// NaN is written as null.
inline nlohmann::ordered_json result_json(const SweepResult& result) {
  nlohmann::ordered_json j;
  j["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : result.metadata) j["metadata"][k] = v;
  j["columns"] = result_columns();
  j["rows"] = nlohmann::ordered_json::array();
  const auto& cols = result_columns();
  for (const auto& row : result.rows) {
    nlohmann::ordered_json r;
    const auto values = io_detail::row_values(row);
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (std::isnan(values[i])) {
        r[cols[i]] = nullptr;
      } else {
        r[cols[i]] = values[i];
      }
    }
    r["error"] = row.error;
    j["rows"].push_back(std::move(r));
  }
  return j;
}

inline void write_result(const SweepResult& result, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::CSV) {
    write_csv(result, out);
  } else {
    out << result_json(result).dump(2) << '\n';
  }
}

/// Writes the result to `path`, or to standard output when `path` is empty.
inline void emit(const SweepResult& result, OutputFormat format, const std::string& path) {
  if (path.empty()) {
    write_result(result, format, std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "': " + std::strerror(errno));
  write_result(result, format, out);
  out.flush();
  if (!out) throw IoError("error while writing '" + path + "'");
}

inline SweepResult read_csv(std::istream& in) {
  SweepResult result;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen && line.rfind("# ", 0) == 0) {
      const auto colon = line.find(": ");
      if (colon == std::string::npos) throw IoError("malformed metadata line: " + line);
      result.metadata.emplace_back(line.substr(2, colon - 2), line.substr(colon + 2));
      continue;
    }
    if (!header_seen) {
      if (line != csv_header()) throw IoError("unexpected CSV header: " + line);
      header_seen = true;
      continue;
    }
    std::vector<double> values;
    std::size_t start = 0;
    for (int i = 0; i < 8; ++i) {
      const auto comma = line.find(',', start);
      if (comma == std::string::npos) throw IoError("short CSV row: " + line);
      const std::string field = line.substr(start, comma - start);
      char* end = nullptr;
      values.push_back(std::strtod(field.c_str(), &end));
      if (end == field.c_str() || *end != '\0') throw IoError("bad number '" + field + "' in CSV row");
      start = comma + 1;
    }
    result.rows.push_back(io_detail::row_from_values(values, line.substr(start)));
  }
  if (!header_seen) throw IoError("CSV header missing");
  return result;
}

inline SweepResult read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read '" + path + "'");
  return read_csv(in);
}

inline SweepResult result_from_json(const nlohmann::ordered_json& j) {
  SweepResult result;
  try {
    for (const auto& [k, v] : j.at("metadata").items()) result.metadata.emplace_back(k, v.get<std::string>());
    const auto& cols = result_columns();
    for (const auto& r : j.at("rows")) {
      std::vector<double> values;
      for (std::size_t i = 0; i + 1 < cols.size(); ++i) {
        const auto& v = r.at(cols[i]);
        values.push_back(v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>());
      }
      result.rows.push_back(io_detail::row_from_values(values, r.at("error").get<std::string>()));
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed sweep JSON: ") + e.what());
  }
  return result;
}

}  // namespace spinvdw
