#include "stabsim/errors.hpp"
#include "stabsim/scenario.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>

namespace {

int run_command(const std::string& config, const std::string& out_dir, std::optional<std::uint64_t> seed,
                std::optional<int> workers) {
  const stabsim::Scenario scenario = stabsim::load_scenario(config);
  stabsim::RunOptions options;
  options.seed = seed;
  options.workers = workers;
  const auto start = std::chrono::steady_clock::now();
  const stabsim::SweepResult result = stabsim::run(scenario, options);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  stabsim::write_outputs(result, out_dir);
  std::printf("%s (%s): %zu rows, %zu failed, %.2f s -> %s\n", std::string(stabsim::to_string(scenario.kind)).c_str(),
              scenario.figure.c_str(), result.rows.size(), result.failures.size(), secs, out_dir.c_str());
  for (const auto& f : result.failures) std::fprintf(stderr, "row %zu failed: %s\n", f.row, f.message.c_str());
  return result.failures.empty() ? 0 : 1;
}

int validate_command(const std::string& config, bool print) {
  const stabsim::Scenario s = stabsim::load_scenario(config);
  std::printf("ok: %s (%s), %zu grid points\n", std::string(stabsim::to_string(s.kind)).c_str(), s.figure.c_str(),
              s.grid_size);
  if (print) std::printf("%s\n", s.resolved_config.c_str());
  return 0;
}

int compare_command(const std::string& path) {
  const stabsim::SweepResult r = stabsim::read_result(path);
  const stabsim::AnalyticComparison cmp = stabsim::compare_analytic(r);
  std::fputs(stabsim::to_csv(cmp).c_str(), stdout);
  std::fprintf(stderr, "%zu rows compared, %zu skipped, max |diff| = %.6g\n", cmp.rows.size(), cmp.skipped,
               cmp.max_abs_diff);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stabsim: two-qubit autonomous stabilization scenarios"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run a scenario config");
  std::string run_config;
  std::string out_dir = "stabsim_out";
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  run->add_option("config", run_config, "scenario JSON")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "output directory")->capture_default_str();
  run->add_option("--seed", seed, "override the config seed");
  run->add_option("--workers", workers, "worker threads (0: all cores)")->check(CLI::NonNegativeNumber);

  app.add_subcommand("list-scenarios", "list scenario kinds");

  auto* validate = app.add_subcommand("validate", "check a config without running it");
  std::string validate_config;
  bool print_resolved = false;
  validate->add_option("config", validate_config, "scenario JSON")->required()->check(CLI::ExistingFile);
  validate->add_flag("--print", print_resolved, "print the resolved config");

  auto* compare = app.add_subcommand("compare", "compare a result against the rate model");
  std::string result_path;
  bool analytic = false;
  compare->add_option("result", result_path, "result directory or result.csv")->required()->check(CLI::ExistingPath);
  compare->add_flag("--analytic", analytic, "rate-model comparison")->required();

  auto* defaults = app.add_subcommand("show-defaults", "print the default config of a kind");
  std::string kind;
  defaults->add_option("kind", kind, "scenario kind")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_command(run_config, out_dir, seed, workers);
    if (app.got_subcommand("list-scenarios")) {
      for (const auto& s : stabsim::list_scenarios()) {
        std::printf("%-22s %-26s %s\n", std::string(s.name).c_str(), std::string(s.figure).c_str(),
                    std::string(s.description).c_str());
      }
      return 0;
    }
    if (*validate) return validate_command(validate_config, print_resolved);
    if (*compare) return compare_command(result_path);
    if (*defaults) {
      std::printf("%s\n", stabsim::default_config(stabsim::parse_scenario_kind(kind)).c_str());
      return 0;
    }
  } catch (const stabsim::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
