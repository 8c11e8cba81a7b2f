#include "stabsim/calibration.hpp"
#include "stabsim/errors.hpp"
#include "stabsim/scenario.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace stabsim;
using nlohmann::json;

namespace {

json resolved(const std::string& text) { return json::parse(parse_scenario(text).resolved_config); }

json reference() {
  std::ifstream in(std::filesystem::path(STABSIM_TEST_DATA_DIR) / "reference_parameters.json");
  return json::parse(in);
}

std::filesystem::path temp_dir(const std::string& name) {
  const auto d = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(d);
  return d;
}

const char* kSmallCompare = R"({"kind": "rate_model_compare", "grid": {"theta_deg": [60, 180]}})";

}  // namespace

TEST(Kinds, ListAndParse) {
  const auto& all = list_scenarios();
  ASSERT_EQ(all.size(), 9u);
  for (const auto& s : all) {
    EXPECT_EQ(parse_scenario_kind(s.name), s.kind);
    EXPECT_EQ(to_string(s.kind), s.name);
    EXPECT_FALSE(s.figure.empty());
    EXPECT_FALSE(default_config(s.kind).empty());
  }
  EXPECT_THROW(parse_scenario_kind("fig9"), ConfigError);
}

TEST(Defaults, EveryKindValidates) {
  for (const auto& s : list_scenarios()) {
    const Scenario sc = parse_scenario(default_config(s.kind));
    EXPECT_EQ(sc.kind, s.kind);
    EXPECT_EQ(sc.figure, s.figure);
    EXPECT_GT(sc.grid_size, 0u);
  }
}

TEST(Defaults, TimeDomainReference) {
  const json ref = reference().at("fig2");
  const json psi = resolved(R"({"kind": "time_domain"})");
  EXPECT_EQ(psi.at("drives").at("omega_mhz"), ref.at("psi").at("omega_mhz"));
  EXPECT_EQ(psi.at("drives").at("w1_mhz"), ref.at("psi").at("w1_mhz"));
  EXPECT_EQ(psi.at("drives").at("w2_mhz"), ref.at("psi").at("w2_mhz"));
  EXPECT_EQ(psi.at("noise").at("kappa1_mhz"), ref.at("psi").at("kappa1_mhz"));
  EXPECT_EQ(psi.at("noise").at("kappa2_mhz"), ref.at("psi").at("kappa2_mhz"));
  EXPECT_EQ(psi.at("noise").at("t1_us"), ref.at("t1_us"));
  EXPECT_EQ(psi.at("noise").at("tphi_us"), ref.at("tphi_us"));
  EXPECT_EQ(psi.at("tomography").at("shots_per_setting"), ref.at("shots_per_setting"));
  const DeviceTable dt = load_device_table();
  EXPECT_EQ(psi.at("tomography").at("readout_fidelity"),
            json::array({dt.readout_fidelity_q1, dt.readout_fidelity_q2}));
  const json phi = resolved(R"({"kind": "time_domain", "parity": "phi"})");
  EXPECT_EQ(phi.at("drives").at("omega_mhz"), ref.at("phi").at("omega_mhz"));
  EXPECT_EQ(phi.at("drives").at("w1_mhz"), ref.at("phi").at("w1_mhz"));
}

TEST(Defaults, SweepAndMapReferences) {
  const json ref = reference();
  const json tp = resolved(R"({"kind": "tphi_sweep"})");
  EXPECT_EQ(tp.at("noise").at("kappa1_mhz"), ref.at("sweeps").at("psi").at("kappa1_mhz"));
  EXPECT_EQ(tp.at("noise").at("t1_us"), ref.at("sweeps").at("t1_us"));
  EXPECT_EQ(tp.at("drives").at("psi").at("omega_mhz"), ref.at("sweeps").at("psi").at("omega_mhz"));
  EXPECT_EQ(tp.at("drives").at("phi").at("w_listed_mhz"), ref.at("sweeps").at("phi").at("w_listed_mhz"));
  EXPECT_TRUE(tp.at("w_listed_as_half").get<bool>());

  const json f67 = ref.at("fig6_fig7");
  for (const char* kind : {"dressed_parity_sweep", "rabi_dressed_map"}) {
    const json d = resolved(std::string(R"({"kind": ")") + kind + "\"}");
    EXPECT_EQ(d.at("drives").at("omega_mhz"), f67.at("omega_mhz")) << kind;
    EXPECT_EQ(d.at("drives").at("w1_mhz"), f67.at("w1_mhz")) << kind;
    EXPECT_EQ(d.at("noise").at("kappa2_mhz"), f67.at("kappa2_mhz")) << kind;
    EXPECT_EQ(d.at("noise").at("tphi_us"), f67.at("tphi_us")) << kind;
  }

  const json ps = resolved(R"({"kind": "parity_switch"})");
  ASSERT_EQ(ps.at("segments").size(), 4u);
  EXPECT_EQ(ps.at("segments")[3].at("duration_us"), 25);
  EXPECT_EQ(ps.at("segments")[1].at("parity"), "odd");

  const json ts = resolved(R"({"kind": "theta_spectroscopy"})");
  EXPECT_EQ(ts.at("duration_us"), ref.at("fig3").at("duration_us"));
}

TEST(Config, ValidationErrors) {
  EXPECT_THROW(parse_scenario("{}"), ConfigError);
  EXPECT_THROW(parse_scenario("[1, 2]"), ConfigError);
  EXPECT_THROW(parse_scenario("{not json"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"kind": "fig9"})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"kind": "tphi_sweep", "grid": {"tphi_us": []}})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"kind": "tphi_sweep", "grid": {"tphi_us": {"start": 5, "stop": 1, "step": 1}}})"),
               ConfigError);
  EXPECT_THROW(parse_scenario(R"({"kind": "tphi_sweep", "grid": {"tphi_us": {"start": 1, "stop": 5, "step": 0}}})"),
               ConfigError);
  EXPECT_THROW(parse_scenario(R"({"kind": "tphi_sweep", "colour": "red"})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"kind": "tphi_sweep", "noise": {"kappa3_mhz": 1}})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"kind": "tphi_sweep", "seed": "seven"})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"kind": "tphi_sweep", "resonator_dim": 7})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"kind": "tphi_sweep", "dephasing_model": "pure"})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"kind": "kappa_sweep", "families": ["chi"]})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"kind": "time_domain", "drives": {"omega_mhz": -1}})"), ConfigError);
  EXPECT_THROW(load_scenario("/nonexistent/config.json"), ConfigError);
}

TEST(Config, GridForms) {
  EXPECT_EQ(parse_scenario(R"({"kind": "kappa_sweep", "grid": {"kappa_over_w": [1, 2]}})").grid_size, 4u);
  EXPECT_EQ(
      parse_scenario(R"({"kind": "kappa_sweep", "grid": {"kappa_over_w": {"start": 1, "stop": 2, "num": 5}}})").grid_size,
      10u);
  EXPECT_EQ(parse_scenario(R"({"kind": "omega_kappa_map"})").grid_size, 2u * 21u * 21u);
  EXPECT_EQ(parse_scenario(R"({"kind": "theta_spectroscopy"})").grid_size, 2u * 2u * 35u);
}

TEST(Run, RowsStatusAndSummary) {
  const SweepResult r = run(parse_scenario(kSmallCompare), {std::nullopt, 1});
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_TRUE(r.failures.empty());
  EXPECT_EQ(r.columns.back(), "status");
  EXPECT_EQ(r.text(0, "status"), "ok");
  EXPECT_EQ(r.text(1, "family"), "psi");
  EXPECT_TRUE(std::isnan(r.number(1, "delta_mhz")));
  EXPECT_THROW(r.column("nope"), InvalidArgument);
  const json s = json::parse(r.summary_json);
  EXPECT_EQ(s.at("kind"), "rate_model_compare");
  EXPECT_EQ(s.at("rows"), 2);
  EXPECT_EQ(s.at("failed_points"), 0);
  EXPECT_EQ(s.at("config").at("kind"), "rate_model_compare");
  EXPECT_LT(s.at("numerics").at("max_generator_residual").get<double>(), 1e-8);
  EXPECT_TRUE(s.contains("config_hash"));
}

TEST(Run, FailedPointIsFlagged) {
  // no qubit decay and no drives at theta = 180: the kernel is degenerate
  const Scenario sc = parse_scenario(
      R"({"kind": "rate_model_compare", "noise": {"t1_us": null}, "grid": {"theta_deg": [90, 180]}})");
  const SweepResult r = run(sc, {std::nullopt, 2});
  ASSERT_EQ(r.failures.size(), 1u);
  EXPECT_EQ(r.failures[0].row, 1u);
  EXPECT_EQ(r.text(1, "status"), "failed");
  EXPECT_EQ(r.text(0, "status"), "ok");
  EXPECT_DOUBLE_EQ(r.number(1, "theta_deg"), 180.0);
  EXPECT_TRUE(std::isnan(r.number(1, "fidelity")));
  EXPECT_EQ(json::parse(r.summary_json).at("failed_points"), 1);
}

TEST(Run, DeterministicAcrossWorkers) {
  const Scenario sc =
      parse_scenario(R"({"kind": "kappa_sweep", "grid": {"kappa_over_w": [0.5, 1.0, 2.0]}})");
  const SweepResult a = run(sc, {std::nullopt, 1});
  const SweepResult b = run(sc, {std::nullopt, 4});
  const SweepResult c = run(sc, {std::nullopt, 1});
  EXPECT_EQ(to_csv(a), to_csv(b));
  EXPECT_EQ(to_csv(a), to_csv(c));
  const json sa = json::parse(a.summary_json);
  const json sb = json::parse(b.summary_json);
  EXPECT_EQ(sa.at("config_hash"), sb.at("config_hash"));
  EXPECT_NE(sa.at("workers"), sb.at("workers"));
  const SweepResult d = run(sc, {std::uint64_t{5}, 1});
  EXPECT_NE(json::parse(d.summary_json).at("config_hash"), sa.at("config_hash"));
}

TEST(Run, TomographyCountsFile) {
  const Scenario sc = parse_scenario(R"({"kind": "time_domain", "grid": {"times_us": [0, 1]},
      "tomography": {"enabled": true, "shots_per_setting": 200, "times_us": [1]}})");
  const SweepResult r = run(sc, {std::nullopt, 1});
  ASSERT_EQ(r.extra_files.size(), 1u);
  EXPECT_TRUE(r.has_column("tomography_fidelity"));
  EXPECT_TRUE(std::isnan(r.number(0, "tomography_fidelity")));
  EXPECT_GE(r.number(1, "tomography_fidelity"), 0.0);
  EXPECT_EQ(r.extra_files.begin()->second.rfind("setting,outcome,count", 0), 0u);
  EXPECT_EQ(to_csv(run(sc, {std::nullopt, 2})), to_csv(r));
}

TEST(Io, CsvRoundTrip) {
  const SweepResult r = run(parse_scenario(kSmallCompare), {std::nullopt, 1});
  const auto dir = temp_dir("stabsim_io_test");
  write_outputs(r, dir);
  EXPECT_TRUE(std::filesystem::exists(dir / "result.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "summary.json"));
  const SweepResult back = read_result(dir);
  EXPECT_EQ(back.kind, r.kind);
  EXPECT_EQ(back.columns, r.columns);
  EXPECT_EQ(to_csv(back), to_csv(r));
  EXPECT_EQ(to_csv(read_result(dir / "result.csv")), to_csv(r));
  EXPECT_THROW(read_result(dir / "missing.csv"), ConfigError);
}

TEST(Analytic, NoQubitDecayWeakSidebands) {
  const SweepResult r = run(parse_scenario(R"({"kind": "rate_model_compare",
      "noise": {"t1_us": null, "kappa1_mhz": 0.1, "kappa2_mhz": 0.1},
      "drives": {"psi": {"omega_mhz": 2.0, "w1_mhz": 0.1, "w2_mhz": 0.1}},
      "grid": {"theta_deg": [30, 90, 150]}})"),
                            {std::nullopt, 1});
  const AnalyticComparison c = compare_analytic(r);
  ASSERT_EQ(c.rows.size(), 3u);
  EXPECT_EQ(c.skipped, 0u);
  for (const auto& row : c.rows) {
    EXPECT_DOUBLE_EQ(row.analytic, 1.0);
    EXPECT_LT(row.abs_diff, 0.02) << row.label;
  }
}

TEST(Analytic, ThetaPiAndReferenceRows) {
  const SweepResult r = run(parse_scenario(R"({"kind": "rate_model_compare",
      "noise": {"tphi_us": [25, 25]}, "grid": {"theta_deg": [90, 180]}})"),
                            {std::nullopt, 1});
  const AnalyticComparison c = compare_analytic(r);
  ASSERT_EQ(c.rows.size(), 2u);
  EXPECT_LT(c.rows[1].abs_diff, 1e-9);
  EXPECT_GT(c.rows[0].abs_diff, 1e-3);
  EXPECT_NEAR(c.rows[0].abs_diff, r.number(0, "abs_diff"), 1e-12);
  const std::string csv = to_csv(c);
  EXPECT_EQ(csv.rfind("row,label,lindblad_fidelity,analytic_fidelity,abs_diff\n", 0), 0u);
}

TEST(Analytic, SkipsRowsWithoutInputs) {
  const SweepResult r = run(parse_scenario(R"({"kind": "dressed_parity_sweep", "grid": {"a1_over_omega": [0]}})"),
                            {std::nullopt, 1});
  const AnalyticComparison c = compare_analytic(r);
  EXPECT_TRUE(c.rows.empty());
  EXPECT_EQ(c.skipped, r.rows.size());
}

TEST(Hash, Fnv1a) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}
