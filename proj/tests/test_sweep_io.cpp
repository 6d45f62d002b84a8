#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "spinvdw/io.hpp"
#include "spinvdw/sweep.hpp"

using namespace spinvdw;

namespace {

double w0() { return resonance_frequency(MaterialModel::bst()); }

SweepPlan small_plan() {
  auto plan = parse_config_text(R"({"omega_a.min": 0, "omega_a.max": 3, "omega_a.count": 7, "threads": 1})");
  return plan;
}

void expect_same_rows(const SweepResult& a, const SweepResult& b) {
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].omega_a, b.rows[i].omega_a);
    EXPECT_EQ(a.rows[i].omega_b, b.rows[i].omega_b);
    EXPECT_EQ(a.rows[i].energy, b.rows[i].energy);
    EXPECT_EQ(a.rows[i].delta_force_fN, b.rows[i].delta_force_fN);
    EXPECT_EQ(a.rows[i].error, b.rows[i].error);
  }
}

}  // namespace

TEST(Config, Defaults) {
  const auto plan = parse_config_text("{}");
  EXPECT_EQ(plan.context.a.radius, 60e-9);
  EXPECT_EQ(plan.context.separation, 180e-9);
  EXPECT_EQ(plan.context.a.temperature, 300.0);
  EXPECT_EQ(plan.sweep.arrangement.kind, ArrangementKind::RR);
  EXPECT_EQ(plan.sweep.omega_a.size(), 200u);
  EXPECT_DOUBLE_EQ(plan.sweep.omega_a.back(), 4.0 * w0());
  EXPECT_EQ(plan.sweep.rule, OmegaBRule::Fixed);
  EXPECT_EQ(plan.sweep.format, OutputFormat::CSV);
}

TEST(Config, ParsesEveryKind) {
  const auto plan = parse_config_text(R"({
    "name": "t", "material.f0": 10, "material_b.gamma0_rad_s": 1e8, "sphere_b.radius_m": 5e-8,
    "temperature_k": 1500, "arrangement": "general", "arrangement.axis_a": [0, 0, 1],
    "arrangement.axis_b": [1, 0, 0], "arrangement.rhat": [0, 1, 0], "omega_a.values": [0.5, 1.0],
    "omega_b.rule": "grid", "omega_b.unit": "rad_s", "omega_b.values": [1e9, -1e9],
    "quadrature.rel_tol": 1e-6, "output.format": "json", "threads": 3})");
  EXPECT_EQ(plan.sweep.name, "t");
  EXPECT_EQ(plan.context.a.material.f0, 10.0);
  EXPECT_EQ(plan.context.b.material.f0, 10.0);
  EXPECT_EQ(plan.context.b.material.gamma0, 1e8);
  EXPECT_EQ(plan.context.a.material.gamma0, MaterialModel::bst().gamma0);
  EXPECT_EQ(plan.context.b.radius, 5e-8);
  EXPECT_EQ(plan.context.b.temperature, 1500.0);
  EXPECT_EQ(plan.sweep.arrangement.kind, ArrangementKind::General);
  EXPECT_EQ(plan.context.direction, Eigen::Vector3d::UnitY());
  EXPECT_EQ(plan.sweep.points().size(), 4u);
  EXPECT_EQ(plan.sweep.points()[1].second, -1e9);
  EXPECT_EQ(plan.sweep.spectral.rel_tol, 1e-6);
  EXPECT_EQ(plan.sweep.format, OutputFormat::JSON);
  EXPECT_EQ(plan.sweep.threads, 3u);
}

TEST(Config, Errors) {
  auto key_of = [](const std::string& text) {
    try {
      parse_config_text(text);
    } catch (const ConfigError& e) {
      return e.key();
    }
    return std::string("<no error>");
  };
  EXPECT_EQ(key_of(R"({"omega_b.rule": "ratio", "omega_b.ratios": [-2]})"), "omega_b.ratios");
  EXPECT_EQ(key_of(R"({"colour": 3})"), "colour");
  EXPECT_EQ(key_of(R"({"separation_m": "far"})"), "separation_m");
  EXPECT_NE(key_of(R"({"arrangement": "sideways"})"), "<no error>");
  EXPECT_NE(key_of(R"({"separation_m": 1e-8})"), "<no error>");
  EXPECT_THROW(parse_config_text("{not json"), ConfigError);
  EXPECT_THROW(parse_config_text("[1, 2]"), ConfigError);
  EXPECT_THROW(parse_config("/nonexistent/config.json"), ConfigError);
}

TEST(Config, RoundTripsEveryPreset) {
  for (const auto& name : preset_names()) {
    auto plan = preset(name);
    const auto back = parse_config_json(config_json(plan));
    plan.notes.clear();
    EXPECT_TRUE(back == plan) << name;
  }
}

TEST(Presets, Shapes) {
  const auto f1 = preset("fig1_300K");
  EXPECT_EQ(f1.sweep.points().size(), 200u);
  EXPECT_EQ(f1.context.a.temperature, 300.0);
  const auto f2 = preset("fig2b");
  EXPECT_EQ(f2.sweep.arrangement.kind, ArrangementKind::UU);
  EXPECT_EQ(f2.context.a.temperature, 1500.0);
  EXPECT_EQ(f2.sweep.points().size(), 400u);
  EXPECT_DOUBLE_EQ(f2.sweep.points()[399].second, -0.9 * 5.0 * w0());
  const auto b = preset("baseline_static");
  EXPECT_EQ(b.sweep.points().size(), 1u);
  EXPECT_FALSE(b.notes.empty());
  EXPECT_THROW(preset("fig3"), DomainError);
}

TEST(Sweep, SinglePointAtRestHasNoForceChange) {
  const auto r = run_plan(preset("baseline_static"));
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0].delta_force_fN, 0.0);
  EXPECT_EQ(r.rows[0].energy, r.rows[0].energy0);
  EXPECT_TRUE(r.rows[0].error.empty());
  bool found = false;
  for (const auto& [k, v] : r.metadata) found = found || k == "matsubara_static_energy_J";
  EXPECT_TRUE(found);
}

TEST(Sweep, ThreadCountDoesNotChangeResults) {
  auto plan = small_plan();
  const auto one = run_plan(plan);
  plan.sweep.threads = 4;
  expect_same_rows(one, run_plan(plan));
}

TEST(Sweep, FailuresBecomeRows) {
  auto plan = parse_config_text(
      R"({"omega_a.values": [0.5, 1.9], "quadrature.max_depth": 1, "quadrature.rel_tol": 1e-14,
          "quadrature.abs_tol": 0})");
  const auto r = run_plan(plan);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_TRUE(r.has_errors());
  for (const auto& row : r.rows) {
    EXPECT_FALSE(row.error.empty());
    EXPECT_EQ(row.error.find('\n'), std::string::npos);
  }
}

TEST(Output, CsvHeaderAndRoundTrip) {
  EXPECT_EQ(csv_header(), "omega_A_rad_s,omega_B_rad_s,omega_A_over_omega0,E_J,E0_J,deltaE_J,F_N,deltaF_fN,error");
  const auto r = run_plan(small_plan());
  std::stringstream s;
  write_csv(r, s);
  const auto back = read_csv(s);
  expect_same_rows(r, back);
  EXPECT_EQ(back.metadata, r.metadata);
}

TEST(Output, JsonAndCsvAgree) {
  const auto r = run_plan(small_plan());
  std::stringstream csv;
  write_csv(r, csv);
  expect_same_rows(read_csv(csv), result_from_json(nlohmann::ordered_json::parse(result_json(r).dump())));
}

TEST(Output, NanIsNullInJson) {
  SweepResult r;
  r.rows.resize(1);
  r.rows[0].energy = std::nan("");
  r.rows[0].error = "failed";
  const auto j = result_json(r);
  EXPECT_TRUE(j["rows"][0]["E_J"].is_null());
  EXPECT_TRUE(std::isnan(result_from_json(j).rows[0].energy));
}

TEST(Output, EmitToFile) {
  const auto path = (std::filesystem::temp_directory_path() / "spinvdw_emit_test.json").string();
  const auto r = run_plan(preset("baseline_static"));
  emit(r, OutputFormat::JSON, path);
  std::ifstream in(path);
  expect_same_rows(r, result_from_json(nlohmann::ordered_json::parse(in)));
  std::remove(path.c_str());
  EXPECT_THROW(emit(r, OutputFormat::CSV, "/nonexistent/dir/out.csv"), IoError);
  EXPECT_THROW(read_csv_file("/nonexistent/out.csv"), IoError);
}

TEST(Output, RejectsMalformedCsv) {
  std::stringstream bad("a,b,c\n1,2,3\n");
  EXPECT_THROW(read_csv(bad), IoError);
}
