// Command-line front end: single-point energies and forces, sweeps and presets,
// closed-form ratios, static baselines and the acceptance checks.
//
// Exit codes: 0 success, 1 other failure, 2 configuration error,
// 3 numerical non-convergence (with --strict).

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spinvdw.hpp"

namespace {

using namespace spinvdw;

constexpr int exit_config = 2;
constexpr int exit_convergence = 3;

struct Options {
  std::string config;
  std::string preset;
  std::string out;
  std::string format;
  std::optional<double> rel_tol;
  std::optional<unsigned> threads;
  bool strict = false;
  double omega_a = 0.0;
  double omega_b = 0.0;
  std::string unit = "omega0";
  std::string arrangement;
  std::string ratio = "aux";
  double hamaker = reference_hamaker;
  std::vector<int> criteria;
};

SweepPlan load_plan(const Options& o) {
  if (!o.config.empty() && !o.preset.empty()) throw ConfigError("", "--config and --preset are mutually exclusive");
  SweepPlan plan;
  if (!o.preset.empty()) {
    try {
      plan = preset(o.preset);
    } catch (const DomainError& e) {
      throw ConfigError("--preset", e.what());
    }
  } else if (!o.config.empty()) {
    plan = parse_config(o.config);
  } else {
    plan = parse_config_json(nlohmann::json::object());
  }
  auto& sweep = plan.sweep;
  if (o.rel_tol) sweep.spectral.rel_tol = *o.rel_tol;
  if (o.threads) sweep.threads = *o.threads;
  if (!o.out.empty()) sweep.output_path = o.out;
  if (!o.format.empty()) sweep.format = o.format == "json" ? OutputFormat::JSON : OutputFormat::CSV;
  if (!o.arrangement.empty()) {
    try {
      const auto kind = parse_arrangement_kind(o.arrangement);
      if (kind == ArrangementKind::General) {
        throw ConfigError("--arrangement", "general axes can only be given in a configuration file");
      }
      sweep.arrangement = Arrangement::canonical(kind);
      plan.context.direction = sweep.arrangement.rhat;
    } catch (const DomainError& e) {
      throw ConfigError("--arrangement", e.what());
    }
  }
  try {
    sweep.validate();
  } catch (const DomainError& e) {
    throw ConfigError("", e.what());
  }
  return plan;
}

double to_rad_s(const Options& o, double value, const PairContext& ctx) {
  return o.unit == "rad_s" ? value : value * resonance_frequency(ctx.a.material);
}

// Prints key/value pairs as "key: value" lines, or as one JSON object.
void print_values(const std::vector<std::pair<std::string, double>>& values, OutputFormat format) {
  if (format == OutputFormat::JSON) {
    nlohmann::ordered_json j;
    for (const auto& [k, v] : values) j[k] = v;
    std::cout << j.dump(2) << '\n';
  } else {
    for (const auto& [k, v] : values) std::cout << k << ": " << detail::format_number(v) << '\n';
  }
}

int cmd_point(const Options& o, bool force_only) {
  const auto plan = load_plan(o);
  const Interaction I(plan.context, plan.sweep.spectral);
  const auto& arr = plan.sweep.arrangement;
  const double wa = to_rad_s(o, o.omega_a, plan.context);
  const double wb = to_rad_s(o, o.omega_b, plan.context);
  const double R = plan.context.separation;
  const double e = I.energy(arr, wa, wb);
  const double e0 = I.energy(arr, 0.0, 0.0);
  std::vector<std::pair<std::string, double>> values = {{"omega_A_rad_s", wa}, {"omega_B_rad_s", wb}};
  if (!force_only) {
    values.insert(values.end(), {{"E_J", e}, {"E0_J", e0}, {"deltaE_J", e - e0}});
  }
  values.insert(values.end(), {{"F_N", 6.0 * e / R}, {"F0_N", 6.0 * e0 / R},
                               {"deltaF_fN", 6.0 * (e - e0) / R / constants::femto}});
  print_values(values, plan.sweep.format);
  return 0;
}

int cmd_sweep(const Options& o) {
  const auto plan = load_plan(o);
  const auto result = run_plan(plan);
  emit(result, plan.sweep.format, plan.sweep.output_path);
  if (result.has_errors()) {
    std::size_t failed = 0;
    for (const auto& r : result.rows) failed += r.error.empty() ? 0 : 1;
    std::cerr << "spinvdw: " << failed << " of " << result.rows.size() << " points did not converge\n";
    if (o.strict) return exit_convergence;
  }
  return 0;
}

int cmd_oracle(const Options& o) {
  const auto plan = load_plan(o);
  const auto& ctx = plan.context;
  const auto pair = LorentzPair::from_spheres(ctx.a, ctx.b, ctx.separation);
  const double w0 = pair.omega0A;
  const double wa = to_rad_s(o, o.omega_a, ctx);
  const double wb = to_rad_s(o, o.omega_b, ctx);
  double ratio = 0.0;
  if (o.ratio == "aux") {
    ratio = ratio_aux(pair, wa);
  } else if (o.ratio == "rr") {
    ratio = ratio_rr(w0, wa - wb);
  } else if (o.ratio == "uu") {
    ratio = ratio_uu(w0, wa, wb);
  } else if (o.ratio == "ur") {
    ratio = ratio_ur(w0, wa, wb);
  } else if (o.ratio == "uo") {
    ratio = ratio_uo(w0, wa, wb);
  } else {
    throw ConfigError("--ratio", "expected aux, rr, uu, ur or uo");
  }
  std::vector<std::pair<std::string, double>> values = {{"omega_A_rad_s", wa}, {"omega_B_rad_s", wb}, {"ratio", ratio}};
  if (o.ratio == "aux") {
    values.insert(values.end(), {{"E_BA_closed_J", eba_closed(pair, wa)}, {"E_AB_closed_J", eab_closed(pair, wa)}});
  }
  print_values(values, plan.sweep.format);
  return 0;
}

int cmd_baseline(const Options& o) {
  const auto plan = load_plan(o);
  const auto& ctx = plan.context;
  MatsubaraSpec ms;
  ms.temperature = ctx.a.temperature;
  const double h_model = hamaker_constant(ctx.a.material, ms);
  print_values(
      {
          {"temperature_k", ms.temperature},
          {"matsubara_static_energy_J", matsubara_static_energy(ctx, ms)},
          {"matsubara_static_force_N", 6.0 * matsubara_static_energy(ctx, ms) / ctx.separation},
          {"hamaker_constant_model_J", h_model},
          {"hamaker_constant_reference_J", o.hamaker},
          {"static_energy_estimate_J", static_energy_estimate(o.hamaker, ctx.a.radius, ctx.separation)},
          {"static_force_estimate_N", static_force_estimate(o.hamaker, ctx.a.radius, ctx.separation)},
      },
      plan.sweep.format);
  return 0;
}

int cmd_check(const Options& o) {
  std::vector<int> which = o.criteria;
  if (which.empty()) {
    for (int n = 1; n <= criterion_count; ++n) which.push_back(n);
  }
  bool all = true;
  for (int n : which) {
    if (n < 1 || n > criterion_count) throw ConfigError("--criterion", "criteria are numbered 1 to 11");
    const auto r = run_criterion_guarded(n);
    std::cout << format_check(r) << std::endl;
    all = all && r.passed;
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spinvdw: van der Waals interaction between spinning nanospheres"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;

  app.add_option("--config", o.config, "JSON configuration file (flat dotted keys)");
  app.add_option("--preset", o.preset, "named preset: fig1_300K, fig1_1500K, fig2a, fig2b, fig2c, baseline_static");
  app.add_option("--out", o.out, "output path (default: standard output)");
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--rel-tol", o.rel_tol, "relative tolerance of the spectral quadrature")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", o.threads, "worker threads for sweeps")->check(CLI::Range(1u, 4096u));
  app.add_flag("--strict", o.strict, "exit with status 3 if any point fails to converge");

  auto add_point_options = [&](CLI::App* sub) {
    sub->add_option("--omega-a", o.omega_a, "spin rate of sphere A");
    sub->add_option("--omega-b", o.omega_b, "spin rate of sphere B");
    sub->add_option("--unit", o.unit, "unit of the spin rates")->check(CLI::IsMember({"omega0", "rad_s"}));
  };
  auto* energy = app.add_subcommand("energy", "interaction energy at one pair of spin rates");
  add_point_options(energy);
  energy->add_option("--arrangement", o.arrangement, "rr, uu, ur or uo");
  auto* force = app.add_subcommand("force", "force and rotation-induced force change at one point");
  add_point_options(force);
  force->add_option("--arrangement", o.arrangement, "rr, uu, ur or uo");
  auto* sweep = app.add_subcommand("sweep", "run a sweep from --preset or --config and write CSV or JSON");
  sweep->add_option("--arrangement", o.arrangement, "rr, uu, ur or uo");
  auto* oracle = app.add_subcommand("oracle", "closed-form ratios of the undamped model at zero temperature");
  add_point_options(oracle);
  oracle->add_option("--ratio", o.ratio, "aux, rr, uu, ur or uo")->check(CLI::IsMember({"aux", "rr", "uu", "ur", "uo"}));
  auto* baseline = app.add_subcommand("baseline", "Matsubara energy, Hamaker constant and static force estimate");
  baseline->add_option("--hamaker", o.hamaker, "Hamaker constant for the estimate [J]")->check(CLI::PositiveNumber);
  auto* check = app.add_subcommand("check", "run the acceptance checks (all, or those given)");
  check->add_option("--criterion", o.criteria, "criterion numbers 1..11");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_config;
  }

  try {
    if (*energy) return cmd_point(o, false);
    if (*force) return cmd_point(o, true);
    if (*sweep) return cmd_sweep(o);
    if (*oracle) return cmd_oracle(o);
    if (*baseline) return cmd_baseline(o);
    if (*check) return cmd_check(o);
  } catch (const ConfigError& e) {
    std::cerr << "spinvdw: configuration error: " << e.what() << '\n';
    return exit_config;
  } catch (const ConvergenceError& e) {
    std::cerr << "spinvdw: " << e.what() << " (partial " << e.partial() << ", error estimate " << e.error_estimate()
              << ")\n";
    return o.strict ? exit_convergence : 1;
  } catch (const std::exception& e) {
    std::cerr << "spinvdw: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
