#pragma once

#include "stabsim/dynamics.hpp"
#include "stabsim/scenario.hpp"

#include <json.hpp>

#include <functional>

namespace stabsim::detail {

using json = nlohmann::json;

struct KindOutput {
  std::vector<std::string> columns;  // without the trailing status column
  std::vector<std::vector<Cell>> rows;
  std::vector<PointFailure> failures;
  NumericsReport numerics;
  json analysis = json::object();
  std::map<std::string, std::string> extra_files;
};

struct RunContext {
  std::uint64_t seed = 0;
  int workers = 1;
};

struct KindSpec {
  ScenarioKind kind;
  std::string_view name;
  std::string_view figure;
  std::string_view description;
  json (*defaults)();
  /// Fills derived values and checks ranges; throws ConfigError.
  void (*resolve)(json& config);
  std::size_t (*grid_size)(const json& config);
  KindOutput (*run)(const json& config, const RunContext& ctx);
};

const std::vector<KindSpec>& kind_specs();
const KindSpec& spec_for(ScenarioKind kind);

// Config helpers (scenario.cpp).
[[noreturn]] void config_error(const std::string& msg);
double get_number(const json& j, const std::string& key, const std::string& where);
double get_positive(const json& j, const std::string& key, const std::string& where);
std::string get_string(const json& j, const std::string& key, const std::string& where);
/// A grid is an explicit array or {start, stop, step} / {start, stop, num}.
std::vector<double> expand_grid(const json& g, const std::string& where);
/// [a, b] or a scalar applied to both; null entries mean infinity.
std::array<double, 2> get_pair(const json& j, const std::string& key, const std::string& where,
                               bool allow_infinite);
std::vector<std::string> get_string_list(const json& j, const std::string& key, const std::string& where,
                                         const std::vector<std::string>& allowed);
void require_one_of(const std::string& value, const std::vector<std::string>& allowed, const std::string& where);

/// Runs body(i) for i in [0, n) over `workers` threads. Exceptions derived
/// from std::exception are captured per index and returned in order.
std::vector<std::optional<std::string>> parallel_for(std::size_t n, int workers,
                                                     const std::function<void(std::size_t)>& body);

/// Steady state plus two-qubit metrics.
struct PointMetrics {
  double fidelity = 0.0;
  double purity = 0.0;
  double parity = 0.0;
  double generator_residual = 0.0;
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;
};

PointMetrics steady_point(const ComplexOperator& h, const NoiseSpec& noise, const Vector& target);
void absorb(NumericsReport& into, const PointMetrics& m);
void absorb(NumericsReport& into, const Trajectory& t);
void merge(NumericsReport& into, const NumericsReport& other);

SpaceLayout layout_from(const json& config);
DephasingModel dephasing_from(const json& config);

/// Rate-model fidelity for a psi or phi row; throws InvalidArgument otherwise.
double analytic_fidelity(const std::string& family, double gamma_t, double gamma, double theta, Color color);

/// Reference figure parameters bundled with the library.
const json& reference_parameters();

}  // namespace stabsim::detail
