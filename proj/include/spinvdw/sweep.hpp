#pragma once

// Parameter sweeps over spin rates, and the named presets.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "spinvdw/analysis.hpp"
#include "spinvdw/baseline.hpp"
#include "spinvdw/configurations.hpp"
#include "spinvdw/errors.hpp"
#include "spinvdw/spectral.hpp"

namespace spinvdw {

inline constexpr const char* library_version = "1.0.0";

enum class OmegaBRule { Fixed, Ratio, Grid };
enum class OutputFormat { CSV, JSON };

inline std::string_view rule_name(OmegaBRule r) {
  switch (r) {
    case OmegaBRule::Fixed: return "fixed";
    case OmegaBRule::Ratio: return "ratio";
    case OmegaBRule::Grid: return "grid";
  }
  return "?";
}

inline std::string_view format_name(OutputFormat f) { return f == OutputFormat::CSV ? "csv" : "json"; }

/// What to sweep. Spin rates are stored in rad/s.
///   Fixed: every omega_a is paired with omega_b_fixed.
///   Ratio: omega_b = rho * omega_a for each rho in `ratios` (|rho| <= 1,
///          negative rho is counter-rotating); rows ordered by rho, then omega_a.
///   Grid:  every omega_a is paired with every omega_b in `omega_b`
///          (omega_a outer, omega_b inner).
struct SweepSpec {
  std::string name = "custom";
  Arrangement arrangement = Arrangement::canonical(ArrangementKind::RR);
  std::vector<double> omega_a;
  OmegaBRule rule = OmegaBRule::Fixed;
  double omega_b_fixed = 0.0;
  std::vector<double> ratios;
  std::vector<double> omega_b;
  SpectralOptions spectral{};
  std::string output_path;  // empty: standard output
  OutputFormat format = OutputFormat::CSV;
  unsigned threads = 1;

  void validate() const {
    arrangement.validate();
    spectral.validate();
    if (omega_a.empty()) throw DomainError("SweepSpec: omega_a grid is empty");
    auto finite = [](const std::vector<double>& v) {
      return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
    };
    if (!finite(omega_a)) throw DomainError("SweepSpec: omega_a grid has non-finite values");
    switch (rule) {
      case OmegaBRule::Fixed:
        if (!std::isfinite(omega_b_fixed)) throw DomainError("SweepSpec: omega_b value must be finite");
        break;
      case OmegaBRule::Ratio:
        if (ratios.empty()) throw DomainError("SweepSpec: ratio rule needs at least one ratio");
        for (double r : ratios) {
          if (!std::isfinite(r) || std::abs(r) > 1.0) throw DomainError("SweepSpec: ratios must satisfy |rho| <= 1");
        }
        break;
      case OmegaBRule::Grid:
        if (omega_b.empty() || !finite(omega_b)) throw DomainError("SweepSpec: omega_b grid is empty or non-finite");
        break;
    }
    if (threads < 1) throw DomainError("SweepSpec: threads must be at least 1");
  }

  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;

  /// The (omega_a, omega_b) pairs in row order.
  std::vector<std::pair<double, double>> points() const {
    std::vector<std::pair<double, double>> p;
    switch (rule) {
      case OmegaBRule::Fixed:
        for (double a : omega_a) p.emplace_back(a, omega_b_fixed);
        break;
      case OmegaBRule::Ratio:
        for (double r : ratios) {
          for (double a : omega_a) p.emplace_back(a, r * a);
        }
        break;
      case OmegaBRule::Grid:
        for (double a : omega_a) {
          for (double b : omega_b) p.emplace_back(a, b);
        }
        break;
    }
    return p;
  }
};

struct SweepRow {
  double omega_a = 0.0;  // rad/s
  double omega_b = 0.0;
  double omega_a_over_omega0 = 0.0;
  double energy = 0.0;   // J
  double energy0 = 0.0;  // J, both spheres at rest
  double delta_energy = 0.0;
  double force = 0.0;          // N
  double delta_force_fN = 0.0;  // fN
  std::string error;            // empty when the point succeeded
};

struct SweepResult {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<SweepRow> rows;

  bool has_errors() const {
    return std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.error.empty(); });
  }
};

namespace detail {

// Shortest text that reads back to the same double.
inline std::string format_number(double x) {
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

inline std::string one_line(std::string text) {
  for (char& c : text) {
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ';';
  }
  return text;
}

}  // namespace detail

inline std::vector<std::pair<std::string, std::string>> sweep_metadata(const SweepSpec& spec, const PairContext& ctx) {
  using detail::format_number;
  const auto& m = ctx.a.material;
  std::vector<std::pair<std::string, std::string>> md = {
      {"spinvdw_version", library_version},
      {"sweep", spec.name},
      {"arrangement", std::string(arrangement_name(spec.arrangement.kind))},
      {"omega_b_rule", std::string(rule_name(spec.rule))},
      {"material_a", "f0=" + format_number(m.f0) + " omega_tilde0_rad_s=" + format_number(m.omega_tilde0) +
                         " gamma0_rad_s=" + format_number(m.gamma0)},
      {"material_b", "f0=" + format_number(ctx.b.material.f0) +
                         " omega_tilde0_rad_s=" + format_number(ctx.b.material.omega_tilde0) +
                         " gamma0_rad_s=" + format_number(ctx.b.material.gamma0)},
      {"omega0_rad_s", format_number(resonance_frequency(m))},
      {"radius_a_m", format_number(ctx.a.radius)},
      {"radius_b_m", format_number(ctx.b.radius)},
      {"separation_m", format_number(ctx.separation)},
      {"temperature_a_k", format_number(ctx.a.temperature)},
      {"temperature_b_k", format_number(ctx.b.temperature)},
      {"rel_tol", format_number(spec.spectral.rel_tol)},
      {"abs_tol", format_number(spec.spectral.abs_tol)},
      {"points", std::to_string(spec.points().size())},
  };
  if (spec.rule == OmegaBRule::Ratio) {
    std::string r;
    for (double x : spec.ratios) r += (r.empty() ? "" : " ") + format_number(x);
    md.emplace_back("ratios", r);
  }
  return md;
}

/// Evaluates every point of the sweep. Rows come out in grid order whatever
/// the thread count, and their values do not depend on it. A point whose
/// quadrature fails gets NaN numbers and a message in `error`.
inline SweepResult run_sweep(const SweepSpec& spec, const PairContext& ctx) {
  spec.validate();
  const Interaction interaction(ctx, spec.spectral);
  const double omega0 = resonance_frequency(ctx.a.material);
  const double separation = ctx.separation;
  const auto points = spec.points();
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();

  SweepResult result;
  result.metadata = sweep_metadata(spec, ctx);
  result.rows.resize(points.size());

  double energy0 = nan;
  std::string error0;
  try {
    energy0 = interaction.energy(spec.arrangement, 0.0, 0.0);
  } catch (const std::exception& e) {
    error0 = std::string("reference point: ") + e.what();
  }
  const double force0 = 6.0 * energy0 / separation;

  auto evaluate = [&](std::size_t i) {
    SweepRow& row = result.rows[i];
    row.omega_a = points[i].first;
    row.omega_b = points[i].second;
    row.omega_a_over_omega0 = row.omega_a / omega0;
    row.energy0 = energy0;
    try {
      row.energy = interaction.energy(spec.arrangement, row.omega_a, row.omega_b);
      row.error = detail::one_line(error0);
    } catch (const std::exception& e) {
      row.energy = nan;
      row.error = detail::one_line(e.what());
    }
    row.delta_energy = row.energy - energy0;
    row.force = 6.0 * row.energy / separation;
    row.delta_force_fN = (row.force - force0) / constants::femto;
  };

  const unsigned workers = std::min<std::size_t>(spec.threads, points.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < points.size(); ++i) evaluate(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < points.size(); i = next++) evaluate(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  return result;
}

/// A named sweep together with the pair it runs on.
struct SweepPlan {
  PairContext context;
  SweepSpec sweep;
  // Extra metadata lines (e.g. baseline values) reported with the result.
  std::vector<std::pair<std::string, std::string>> notes;

  friend bool operator==(const SweepPlan&, const SweepPlan&) = default;
};

/// Hamaker constant typical of dielectrics, used for the static force estimate [J].
inline constexpr double reference_hamaker = 5e-20;

/// Static reference values for a pair at rest, as metadata lines.
inline std::vector<std::pair<std::string, std::string>> baseline_notes(const PairContext& ctx, double hamaker) {
  using detail::format_number;
  MatsubaraSpec ms;
  ms.temperature = ctx.a.temperature > 0.0 ? ctx.a.temperature : 300.0;
  const double h_model = hamaker_constant(ctx.a.material, ms);
  return {
      {"baseline_temperature_k", format_number(ms.temperature)},
      {"matsubara_static_energy_J", format_number(matsubara_static_energy(ctx, ms))},
      {"hamaker_constant_model_J", format_number(h_model)},
      {"hamaker_constant_reference_J", format_number(hamaker)},
      {"static_force_estimate_N", format_number(static_force_estimate(hamaker, ctx.a.radius, ctx.separation))},
  };
}

inline std::vector<std::string> preset_names() {
  return {"fig1_300K", "fig1_1500K", "fig2a", "fig2b", "fig2c", "baseline_static"};
}

/// BST spheres of radius 60 nm at 180 nm.
inline PairContext reference_pair(double temperature) {
  return PairContext::identical(60e-9, MaterialModel::bst(), temperature, 180e-9, Eigen::Vector3d::UnitZ());
}

/// The named presets. The rr curves sweep Omega_A over [0, 4] w0 with
/// Omega_B = 0, so Omega_A is the relative spin; the uu curves sweep
/// Omega_A over [0, 5] w0 at T = 1500 K for |Omega_B|/|Omega_A| = 0.5, 0.9
/// and 1, co-rotating (rho > 0) then counter-rotating (rho < 0). Every sweep
/// uses 200 points. baseline_static is the single point at rest.
inline SweepPlan preset(const std::string& name) {
  SweepPlan plan;
  plan.sweep.name = name;
  const double omega0 = resonance_frequency(MaterialModel::bst());
  auto grid = [&](double hi) {
    auto v = linspace(0.0, hi, 200);
    for (double& x : v) x *= omega0;
    return v;
  };
  auto uu = [&](double rho) {
    plan.context = reference_pair(1500.0);
    plan.sweep.arrangement = Arrangement::canonical(ArrangementKind::UU);
    plan.sweep.omega_a = grid(5.0);
    plan.sweep.rule = OmegaBRule::Ratio;
    plan.sweep.ratios = {rho, -rho};
  };
  if (name == "fig1_300K" || name == "fig1_1500K") {
    plan.context = reference_pair(name == "fig1_300K" ? 300.0 : 1500.0);
    plan.sweep.arrangement = Arrangement::canonical(ArrangementKind::RR);
    plan.sweep.omega_a = grid(4.0);
    plan.sweep.rule = OmegaBRule::Fixed;
  } else if (name == "fig2a") {
    uu(0.5);
  } else if (name == "fig2b") {
    uu(0.9);
  } else if (name == "fig2c") {
    uu(1.0);
  } else if (name == "baseline_static") {
    plan.context = reference_pair(300.0);
    plan.sweep.arrangement = Arrangement::canonical(ArrangementKind::RR);
    plan.sweep.omega_a = {0.0};
    plan.sweep.rule = OmegaBRule::Fixed;
    plan.notes = baseline_notes(plan.context, reference_hamaker);
  } else {
    throw DomainError("unknown preset '" + name + "'");
  }
  plan.context.direction = plan.sweep.arrangement.rhat;
  return plan;
}

inline SweepResult run_plan(const SweepPlan& plan) {
  SweepResult r = run_sweep(plan.sweep, plan.context);
  r.metadata.insert(r.metadata.end(), plan.notes.begin(), plan.notes.end());
  return r;
}

}  // namespace spinvdw
