#pragma once

// Config-driven scenarios that reproduce the figure-level simulations, a
// parallel sweep runner with index-ordered merge, and result I/O.
//
// Configs are JSON. Frequencies are ordinary MHz (omega / 2pi) and times us;
// every key has a default, unknown keys are rejected.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace stabsim {

enum class ScenarioKind {
  time_domain,
  theta_spectroscopy,
  parity_switch,
  tphi_sweep,
  kappa_sweep,
  omega_kappa_map,
  dressed_parity_sweep,
  rabi_dressed_map,
  rate_model_compare,
};

std::string_view to_string(ScenarioKind k);
/// Throws ConfigError.
ScenarioKind parse_scenario_kind(std::string_view s);

struct ScenarioInfo {
  ScenarioKind kind;
  std::string_view name;
  std::string_view figure;
  std::string_view description;
};

const std::vector<ScenarioInfo>& list_scenarios();

/// Pretty-printed default config for a kind.
std::string default_config(ScenarioKind kind);

struct Scenario {
  ScenarioKind kind = ScenarioKind::time_domain;
  std::string figure;
  /// Canonical JSON with every default filled in.
  std::string resolved_config;
  std::uint64_t seed = 0;
  int workers = 0;  // 0: hardware concurrency
  std::size_t grid_size = 0;
};

/// Validates and resolves a config. Throws ConfigError.
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);

using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct PointFailure {
  std::size_t row = 0;
  std::string message;
};

struct NumericsReport {
  double max_trace_error = 0.0;
  double min_eigenvalue = 1.0;
  double max_generator_residual = 0.0;
  double max_step_halving_drift = 0.0;
  std::int64_t steady_states = 0;
  std::int64_t trajectory_points = 0;
  std::int64_t step_halving_checks = 0;
};

struct SweepResult {
  ScenarioKind kind = ScenarioKind::time_domain;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<PointFailure> failures;
  NumericsReport numerics;
  /// Kind-specific derived quantities (fits, argmax, ...) as JSON.
  std::string analysis_json = "{}";
  /// Full summary.json text.
  std::string summary_json;
  /// Extra output files (name -> content), e.g. tomography counts.
  std::map<std::string, std::string> extra_files;

  /// Throws InvalidArgument for an unknown column.
  std::size_t column(std::string_view name) const;
  bool has_column(std::string_view name) const;
  /// NaN for an empty cell; throws for a string cell.
  double number(std::size_t row, std::string_view name) const;
  std::string text(std::size_t row, std::string_view name) const;
};

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
};

/// Runs every grid point. Per-point failures are recorded in
/// SweepResult::failures and the row's status column; they do not throw.
SweepResult run(const Scenario& scenario, const RunOptions& options = {});

/// Fixed header per kind; doubles printed with %.12g.
std::string to_csv(const SweepResult& result);

/// Writes result.csv, summary.json and any extra files into dir.
void write_outputs(const SweepResult& result, const std::filesystem::path& dir);

/// Reads result.csv (+ summary.json for the kind) from a directory or a CSV
/// path whose sibling summary.json exists.
SweepResult read_result(const std::filesystem::path& path);

/// FNV-1a 64-bit.
std::uint64_t fnv1a64(std::string_view data);

struct AnalyticRow {
  std::size_t row = 0;
  std::string label;
  double lindblad = 0.0;
  double analytic = 0.0;
  double abs_diff = 0.0;
};

struct AnalyticComparison {
  std::vector<AnalyticRow> rows;
  std::size_t skipped = 0;
  double max_abs_diff = 0.0;
};

/// Lindblad steady-state fidelity against the rate-model prediction for
/// every row that carries the rate-model inputs (gamma_t, gamma, theta).
AnalyticComparison compare_analytic(const SweepResult& result);
std::string to_csv(const AnalyticComparison& comparison);

}  // namespace stabsim
