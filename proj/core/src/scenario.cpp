#include "scenario_internal.hpp"

#include "stabsim/calibration.hpp"
#include "stabsim/errors.hpp"
#include "stabsim/rate_model.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

namespace stabsim {

namespace detail {

void config_error(const std::string& msg) { throw ConfigError(msg); }

namespace {

const json& member(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) config_error("missing key " + where + key);
  return j.at(key);
}

}  // namespace

double get_number(const json& j, const std::string& key, const std::string& where) {
  const json& v = member(j, key, where);
  if (!v.is_number()) config_error(where + key + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) config_error(where + key + " must be finite");
  return d;
}

double get_positive(const json& j, const std::string& key, const std::string& where) {
  const double d = get_number(j, key, where);
  if (!(d > 0.0)) config_error(where + key + " must be > 0");
  return d;
}

std::string get_string(const json& j, const std::string& key, const std::string& where) {
  const json& v = member(j, key, where);
  if (!v.is_string()) config_error(where + key + " must be a string");
  return v.get<std::string>();
}

void require_one_of(const std::string& value, const std::vector<std::string>& allowed, const std::string& where) {
  if (std::find(allowed.begin(), allowed.end(), value) == allowed.end()) {
    std::string list;
    for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
    config_error(where + " must be one of {" + list + "}, got '" + value + "'");
  }
}

std::vector<std::string> get_string_list(const json& j, const std::string& key, const std::string& where,
                                         const std::vector<std::string>& allowed) {
  const json& v = member(j, key, where);
  if (!v.is_array() || v.empty()) config_error(where + key + " must be a non-empty array");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) config_error(where + key + " entries must be strings");
    out.push_back(e.get<std::string>());
    require_one_of(out.back(), allowed, where + key);
  }
  return out;
}

std::vector<double> expand_grid(const json& g, const std::string& where) {
  std::vector<double> out;
  if (g.is_array()) {
    for (const auto& e : g) {
      if (!e.is_number() || !std::isfinite(e.get<double>())) config_error(where + " entries must be numbers");
      out.push_back(e.get<double>());
    }
  } else if (g.is_object()) {
    for (const auto& [k, v] : g.items()) {
      if (k != "start" && k != "stop" && k != "step" && k != "num") config_error("unknown key " + where + "." + k);
    }
    const double start = get_number(g, "start", where + ".");
    const double stop = get_number(g, "stop", where + ".");
    if (g.contains("step") == g.contains("num")) config_error(where + " needs exactly one of step or num");
    if (g.contains("step")) {
      const double step = get_positive(g, "step", where + ".");
      const double span = stop - start;
      if (span >= -1e-12 * std::max(1.0, std::abs(stop))) {
        const auto n = static_cast<long>(std::floor(span / step + 1e-9));
        if (n > 1000000) config_error(where + " has too many points");
        for (long i = 0; i <= n; ++i) out.push_back(start + i * step);
      }
    } else {
      const json& nv = g.at("num");
      if (!nv.is_number_integer() || nv.get<long>() < 0) config_error(where + ".num must be an integer >= 0");
      const long n = nv.get<long>();
      if (n > 1000000) config_error(where + " has too many points");
      for (long i = 0; i < n; ++i) out.push_back(n == 1 ? start : start + (stop - start) * i / (n - 1));
    }
  } else {
    config_error(where + " must be an array or a {start, stop, step|num} object");
  }
  if (out.empty()) config_error(where + " is empty");
  for (double& v : out) {
    // Snap round-off from start + i * step so printed grids stay clean.
    const double snapped = std::round(v * 1e9) / 1e9;
    if (std::abs(snapped - v) < 1e-12 * std::max(1.0, std::abs(v))) v = snapped;
  }
  return out;
}

std::array<double, 2> get_pair(const json& j, const std::string& key, const std::string& where,
                               bool allow_infinite) {
  const json& v = member(j, key, where);
  const auto one = [&](const json& e) {
    if (e.is_null()) {
      if (!allow_infinite) config_error(where + key + " must be finite");
      return kInfinity;
    }
    if (!e.is_number()) config_error(where + key + " entries must be numbers or null");
    const double d = e.get<double>();
    if (!(d > 0.0) || !std::isfinite(d)) config_error(where + key + " entries must be > 0");
    return d;
  };
  if (v.is_array()) {
    if (v.size() != 2) config_error(where + key + " must have two entries");
    return {one(v[0]), one(v[1])};
  }
  const double d = one(v);
  return {d, d};
}

std::vector<std::optional<std::string>> parallel_for(std::size_t n, int workers,
                                                     const std::function<void(std::size_t)>& body) {
  std::vector<std::optional<std::string>> errors(n);
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, workers)));
  if (threads <= 1) {
    work();
    return errors;
  }
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return errors;
}

PointMetrics steady_point(const ComplexOperator& h, const NoiseSpec& noise, const Vector& target) {
  const LindbladProblem problem = build_lindblad(h, noise);
  const SteadyStateReport rep = steady_state_report(problem);
  const Matrix& rho = rep.rho.matrix();
  const Matrix r4 = partial_trace(h.layout(), rho, {Subsystem::q1, Subsystem::q2});
  PointMetrics m;
  m.fidelity = fidelity(r4, target);
  m.purity = (r4 * r4).trace().real();
  m.parity = parity_signature(r4);
  m.generator_residual = rep.generator_residual;
  m.trace_error = std::abs(rho.trace().real() - 1.0);
  m.min_eigenvalue = rep.rho.min_eigenvalue();
  return m;
}

void absorb(NumericsReport& into, const PointMetrics& m) {
  into.max_trace_error = std::max(into.max_trace_error, m.trace_error);
  into.min_eigenvalue = std::min(into.min_eigenvalue, m.min_eigenvalue);
  into.max_generator_residual = std::max(into.max_generator_residual, m.generator_residual);
  into.steady_states += 1;
}

void absorb(NumericsReport& into, const Trajectory& t) {
  into.max_trace_error = std::max(into.max_trace_error, t.max_trace_error);
  into.min_eigenvalue = std::min(into.min_eigenvalue, t.min_eigenvalue);
  into.trajectory_points += static_cast<std::int64_t>(t.times.size());
}

void merge(NumericsReport& into, const NumericsReport& o) {
  into.max_trace_error = std::max(into.max_trace_error, o.max_trace_error);
  into.min_eigenvalue = std::min(into.min_eigenvalue, o.min_eigenvalue);
  into.max_generator_residual = std::max(into.max_generator_residual, o.max_generator_residual);
  into.max_step_halving_drift = std::max(into.max_step_halving_drift, o.max_step_halving_drift);
  into.steady_states += o.steady_states;
  into.trajectory_points += o.trajectory_points;
  into.step_halving_checks += o.step_halving_checks;
}

SpaceLayout layout_from(const json& config) {
  return SpaceLayout::with_resonator_dim(config.at("resonator_dim").get<int>());
}

DephasingModel dephasing_from(const json& config) {
  return config.at("dephasing_model").get<std::string>() == "coherence" ? DephasingModel::coherence
                                                                        : DephasingModel::rate;
}

const json& reference_parameters() {
  static const json data = [] {
    const auto path = data_directory() / "reference_parameters.json";
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    try {
      return json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError(path.string() + ": " + e.what());
    }
  }();
  return data;
}

double analytic_fidelity(const std::string& family, double gamma_t, double gamma, double theta, Color color) {
  if (family == "psi") return steady_fidelity(gamma_t, gamma, theta, color);
  if (family != "phi") throw InvalidArgument("no rate model for family '" + family + "'");
  if (gamma == 0.0) return 1.0;
  return rate_matrix_steady_state(odd_parity_rates(gamma_t, gamma))(2);
}

const KindSpec& spec_for(ScenarioKind kind) {
  for (const auto& s : kind_specs()) {
    if (s.kind == kind) return s;
  }
  throw ConfigError("unregistered scenario kind");
}

}  // namespace detail

using detail::json;

std::string_view to_string(ScenarioKind k) { return detail::spec_for(k).name; }

ScenarioKind parse_scenario_kind(std::string_view s) {
  for (const auto& spec : detail::kind_specs()) {
    if (spec.name == s) return spec.kind;
  }
  throw ConfigError("unknown scenario kind '" + std::string(s) + "'");
}

const std::vector<ScenarioInfo>& list_scenarios() {
  static const std::vector<ScenarioInfo> infos = [] {
    std::vector<ScenarioInfo> out;
    for (const auto& s : detail::kind_specs()) out.push_back({s.kind, s.name, s.figure, s.description});
    return out;
  }();
  return infos;
}

namespace {

json common_defaults(ScenarioKind kind) {
  return {{"kind", std::string(to_string(kind))},
          {"seed", 0},
          {"workers", 0},
          {"resonator_dim", 2},
          {"dephasing_model", "rate"}};
}

json full_defaults(ScenarioKind kind) {
  json d = common_defaults(kind);
  d.update(detail::spec_for(kind).defaults());
  return d;
}

bool is_grid_path(const std::string& path) { return path.rfind("grid.", 0) == 0; }

void merge_into(json& base, const json& user, const std::string& path) {
  if (!user.is_object()) detail::config_error((path.empty() ? "config" : path) + " must be an object");
  for (const auto& [key, value] : user.items()) {
    const std::string where = path.empty() ? key : path + "." + key;
    if (!base.contains(key)) detail::config_error("unknown key " + where);
    json& b = base[key];
    if (is_grid_path(where)) {
      if (!value.is_array() && !value.is_object()) detail::config_error(where + " must be an array or object");
      b = value;
    } else if (b.is_object() && !b.empty()) {
      merge_into(b, value, where);
    } else if (b.is_null() || (b.is_string() && value.is_string()) || (b.is_boolean() && value.is_boolean()) ||
               (b.is_object() && value.is_object()) ||
               ((b.is_number() || b.is_array()) && (value.is_number() || value.is_array() || value.is_null()))) {
      b = value;
    } else {
      detail::config_error(where + " has the wrong type");
    }
  }
}

void validate_common(json& c) {
  const json& seed = c.at("seed");
  if (!seed.is_number_integer() || (seed.is_number_integer() && !seed.is_number_unsigned() && seed.get<std::int64_t>() < 0)) {
    detail::config_error("seed must be a non-negative integer");
  }
  const json& workers = c.at("workers");
  if (!workers.is_number_integer() || workers.get<std::int64_t>() < 0 || workers.get<std::int64_t>() > 1024) {
    detail::config_error("workers must be an integer in [0, 1024]");
  }
  const json& dim = c.at("resonator_dim");
  if (!dim.is_number_integer() || dim.get<int>() < 2 || dim.get<int>() > 6) {
    detail::config_error("resonator_dim must be an integer in [2, 6]");
  }
  detail::require_one_of(detail::get_string(c, "dephasing_model", ""), {"rate", "coherence"}, "dephasing_model");
}

std::string hash_text(const json& resolved) {
  json h = resolved;
  h.erase("workers");
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(h.dump())));
  return buf;
}

Scenario make_scenario(json config) {
  const ScenarioKind kind = parse_scenario_kind(config.at("kind").get<std::string>());
  const auto& spec = detail::spec_for(kind);
  validate_common(config);
  spec.resolve(config);
  Scenario s;
  s.kind = kind;
  s.figure = std::string(spec.figure);
  s.resolved_config = config.dump();
  s.seed = config.at("seed").get<std::uint64_t>();
  s.workers = config.at("workers").get<int>();
  s.grid_size = spec.grid_size(config);
  return s;
}

}  // namespace

std::string default_config(ScenarioKind kind) {
  json d = full_defaults(kind);
  return d.dump(2);
}

Scenario parse_scenario(std::string_view text) {
  json user;
  try {
    user = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!user.is_object()) throw ConfigError("config must be a JSON object");
  if (!user.contains("kind") || !user.at("kind").is_string()) throw ConfigError("config needs a string 'kind'");
  const ScenarioKind kind = parse_scenario_kind(user.at("kind").get<std::string>());
  json config = full_defaults(kind);
  merge_into(config, user, "");
  return make_scenario(std::move(config));
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::size_t SweepResult::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw InvalidArgument("no column '" + std::string(name) + "'");
}

bool SweepResult::has_column(std::string_view name) const {
  return std::find(columns.begin(), columns.end(), name) != columns.end();
}

double SweepResult::number(std::size_t row, std::string_view name) const {
  const Cell& c = rows.at(row).at(column(name));
  if (std::holds_alternative<double>(c)) return std::get<double>(c);
  if (std::holds_alternative<std::int64_t>(c)) return static_cast<double>(std::get<std::int64_t>(c));
  if (std::holds_alternative<std::monostate>(c)) return std::nan("");
  throw InvalidArgument("column '" + std::string(name) + "' is not numeric");
}

std::string SweepResult::text(std::size_t row, std::string_view name) const {
  const Cell& c = rows.at(row).at(column(name));
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  if (std::holds_alternative<std::monostate>(c)) return "";
  throw InvalidArgument("column '" + std::string(name) + "' is not text");
}

namespace {

std::string format_cell(const Cell& c) {
  if (std::holds_alternative<std::monostate>(c)) return "";
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  if (std::holds_alternative<std::int64_t>(c)) return std::to_string(std::get<std::int64_t>(c));
  const double d = std::get<double>(c);
  if (std::isnan(d)) return "nan";
  if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", d == 0.0 ? 0.0 : d);
  return buf;
}

json numerics_json(const NumericsReport& n) {
  return {{"max_trace_error", n.max_trace_error},
          {"min_eigenvalue", n.min_eigenvalue},
          {"max_generator_residual", n.max_generator_residual},
          {"max_step_halving_drift", n.max_step_halving_drift},
          {"steady_states", n.steady_states},
          {"trajectory_points", n.trajectory_points},
          {"step_halving_checks", n.step_halving_checks}};
}

}  // namespace

SweepResult run(const Scenario& scenario, const RunOptions& options) {
  json config = json::parse(scenario.resolved_config);
  if (options.seed) config["seed"] = *options.seed;
  if (options.workers) {
    if (*options.workers < 0) throw ConfigError("workers must be >= 0");
    config["workers"] = *options.workers;
  }
  const auto& spec = detail::spec_for(scenario.kind);
  detail::RunContext ctx;
  ctx.seed = config.at("seed").get<std::uint64_t>();
  ctx.workers = config.at("workers").get<int>();
  if (ctx.workers == 0) ctx.workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  detail::KindOutput out = spec.run(config, ctx);

  SweepResult r;
  r.kind = scenario.kind;
  r.columns = out.columns;
  r.columns.push_back("status");
  std::vector<bool> failed(out.rows.size(), false);
  std::sort(out.failures.begin(), out.failures.end(),
            [](const PointFailure& a, const PointFailure& b) { return a.row < b.row; });
  for (const auto& f : out.failures) {
    if (f.row < failed.size()) failed[f.row] = true;
  }
  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    auto row = std::move(out.rows[i]);
    row.resize(out.columns.size());
    row.emplace_back(std::string(failed[i] ? "failed" : "ok"));
    r.rows.push_back(std::move(row));
  }
  r.failures = std::move(out.failures);
  r.numerics = out.numerics;
  r.analysis_json = out.analysis.dump();
  r.extra_files = std::move(out.extra_files);

  nlohmann::ordered_json summary;
  summary["artifact"] = "stabsim";
  summary["version"] = STABSIM_VERSION;
  summary["kind"] = std::string(spec.name);
  summary["figure"] = std::string(spec.figure);
  summary["config_hash"] = hash_text(config);
  summary["seed"] = ctx.seed;
  summary["workers"] = ctx.workers;
  summary["rows"] = r.rows.size();
  summary["failed_points"] = r.failures.size();
  nlohmann::ordered_json failures = nlohmann::ordered_json::array();
  for (const auto& f : r.failures) failures.push_back({{"row", f.row}, {"message", f.message}});
  summary["failures"] = failures;
  summary["numerics"] = numerics_json(r.numerics);
  summary["analysis"] = out.analysis;
  summary["config"] = config;
  r.summary_json = summary.dump(2);
  return r;
}

std::string to_csv(const SweepResult& result) {
  std::string out;
  for (std::size_t i = 0; i < result.columns.size(); ++i) out += (i ? "," : "") + result.columns[i];
  out += '\n';
  for (const auto& row : result.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_cell(row[i]);
    }
    out += '\n';
  }
  return out;
}

namespace {

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot write " + p.string());
  out << content;
  if (!out) throw Error("failed writing " + p.string());
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

Cell parse_cell(const std::string& s) {
  if (s.empty()) return std::monostate{};
  if (s == "nan") return std::nan("");
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  char* end = nullptr;
  const double d = std::strtod(s.c_str(), &end);
  if (end == s.c_str() + s.size()) return d;
  return s;
}

}  // namespace

void write_outputs(const SweepResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_file(dir / "result.csv", to_csv(result));
  write_file(dir / "summary.json", result.summary_json + "\n");
  for (const auto& [name, content] : result.extra_files) write_file(dir / name, content);
}

SweepResult read_result(const std::filesystem::path& path) {
  std::filesystem::path csv = path;
  std::filesystem::path dir = path;
  if (std::filesystem::is_directory(path)) {
    csv = path / "result.csv";
  } else {
    dir = path.parent_path();
  }
  const std::string summary_text = read_file(dir / "summary.json");
  json summary;
  try {
    summary = json::parse(summary_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("summary.json: ") + e.what());
  }
  SweepResult r;
  r.kind = parse_scenario_kind(summary.at("kind").get<std::string>());
  r.summary_json = summary_text;
  if (summary.contains("analysis")) r.analysis_json = summary.at("analysis").dump();
  std::stringstream in(read_file(csv));
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty result file " + csv.string());
  r.columns = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split(line);
    if (fields.size() != r.columns.size()) throw ConfigError("ragged row in " + csv.string());
    std::vector<Cell> row;
    for (const auto& f : fields) row.push_back(parse_cell(f));
    r.rows.push_back(std::move(row));
  }
  if (r.has_column("status")) {
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
      if (r.text(i, "status") != "ok") r.failures.push_back({i, "failed in the original run"});
    }
  }
  return r;
}

AnalyticComparison compare_analytic(const SweepResult& result) {
  AnalyticComparison cmp;
  const bool usable = result.has_column("fidelity") && result.has_column("gamma_t") &&
                      result.has_column("gamma") && result.has_column("family") &&
                      result.has_column("rate_color");
  if (!usable) {
    cmp.skipped = result.rows.size();
    return cmp;
  }
  const bool has_theta = result.has_column("theta_deg");
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    if (result.has_column("status") && result.text(i, "status") != "ok") {
      ++cmp.skipped;
      continue;
    }
    const double f = result.number(i, "fidelity");
    const double gt = result.number(i, "gamma_t");
    const double g = result.number(i, "gamma");
    const double theta = has_theta ? result.number(i, "theta_deg") * std::numbers::pi / 180.0 : std::numbers::pi / 2;
    const std::string family = result.text(i, "family");
    const std::string color = result.text(i, "rate_color");
    if (!std::isfinite(f) || !std::isfinite(gt) || !std::isfinite(g) || !std::isfinite(theta) ||
        (color != "red" && color != "blue")) {
      ++cmp.skipped;
      continue;
    }
    if (family != "psi" && family != "phi") {
      ++cmp.skipped;
      continue;
    }
    const double analytic = detail::analytic_fidelity(family, gt, g, theta, parse_color(color));
    std::string label = family;
    for (const auto& col : result.columns) {
      if (col == "theta_deg" || col == "tphi_us" || col == "kappa_over_w" || col == "omega_mhz" ||
          col == "kappa_mhz") {
        char buf[64];
        std::snprintf(buf, sizeof buf, " %s=%.6g", col.c_str(), result.number(i, col));
        label += buf;
      }
    }
    const double diff = std::abs(f - analytic);
    cmp.rows.push_back({i, label, f, analytic, diff});
    cmp.max_abs_diff = std::max(cmp.max_abs_diff, diff);
  }
  return cmp;
}

std::string to_csv(const AnalyticComparison& cmp) {
  std::string out = "row,label,lindblad_fidelity,analytic_fidelity,abs_diff\n";
  char buf[256];
  for (const auto& r : cmp.rows) {
    std::snprintf(buf, sizeof buf, "%zu,%s,%.12g,%.12g,%.12g\n", r.row, r.label.c_str(), r.lindblad, r.analytic,
                  r.abs_diff);
    out += buf;
  }
  return out;
}

}  // namespace stabsim
