#include "scenario_internal.hpp"

#include "stabsim/calibration.hpp"
#include "stabsim/errors.hpp"
#include "stabsim/rate_model.hpp"
#include "stabsim/tomography.hpp"
#include "stabsim/units.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace stabsim::detail {

namespace {

constexpr double kPi = std::numbers::pi;

Cell num(double v) { return v; }
Cell txt(std::string s) { return s; }

struct PointOut {
  std::vector<Cell> cells;
  NumericsReport numerics;
};

KindOutput sweep(std::vector<std::string> columns, std::vector<std::vector<Cell>> params, int workers,
                 const std::function<PointOut(std::size_t)>& point) {
  std::vector<PointOut> outs(params.size());
  const auto errors = parallel_for(params.size(), workers, [&](std::size_t i) { outs[i] = point(i); });
  KindOutput o;
  o.columns = std::move(columns);
  for (std::size_t i = 0; i < params.size(); ++i) {
    std::vector<Cell> row = std::move(params[i]);
    if (errors[i]) {
      o.failures.push_back({i, *errors[i]});
    } else {
      row.insert(row.end(), outs[i].cells.begin(), outs[i].cells.end());
      merge(o.numerics, outs[i].numerics);
    }
    o.rows.push_back(std::move(row));
  }
  return o;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// ---- shared config pieces ----

json noise_json(double k1, double k2, const json& t1, const json& tphi) {
  return {{"kappa1_mhz", k1}, {"kappa2_mhz", k2}, {"t1_us", t1}, {"tphi_us", tphi}};
}

json fig2_noise() {
  const json& f = reference_parameters().at("fig2");
  return noise_json(f.at("psi").at("kappa1_mhz"), f.at("psi").at("kappa2_mhz"), f.at("t1_us"), f.at("tphi_us"));
}

json sweep_noise() {
  const json& a = reference_parameters().at("sweeps");
  return noise_json(a.at("psi").at("kappa1_mhz"), a.at("psi").at("kappa2_mhz"), a.at("t1_us"), nullptr);
}

json fig67_noise() {
  const json& f = reference_parameters().at("fig6_fig7");
  return noise_json(f.at("kappa1_mhz"), f.at("kappa2_mhz"), f.at("t1_us"), f.at("tphi_us"));
}

NoiseSpec parse_noise(const json& config) {
  const std::string w = "noise.";
  const json& n = config.at("noise");
  for (const auto& [k, v] : n.items()) {
    if (k != "kappa1_mhz" && k != "kappa2_mhz" && k != "t1_us" && k != "tphi_us") config_error("unknown key noise." + k);
  }
  NoiseSpec s;
  s.kappa1 = mhz(get_positive(n, "kappa1_mhz", w));
  s.kappa2 = mhz(get_positive(n, "kappa2_mhz", w));
  const auto t1 = get_pair(n, "t1_us", w, true);
  const auto tphi = get_pair(n, "tphi_us", w, true);
  s.t1_q1 = t1[0];
  s.t1_q2 = t1[1];
  s.tphi_q1 = tphi[0];
  s.tphi_q2 = tphi[1];
  s.dephasing = dephasing_from(config);
  return s;
}

double mean_gamma(const NoiseSpec& n) {
  const auto rate = [](double t1) { return std::isinf(t1) ? 0.0 : 1.0 / t1; };
  return 0.5 * (rate(n.t1_q1) + rate(n.t1_q2));
}

struct Rates {
  double omega = 0.0;
  double w1 = 0.0;
  double w2 = 0.0;
};

Rates parse_rates(const json& j, const std::string& where) {
  return {mhz(get_positive(j, "omega_mhz", where)), mhz(get_positive(j, "w1_mhz", where)),
          mhz(get_positive(j, "w2_mhz", where))};
}

json rates_json(double omega, double w1, double w2) {
  return {{"omega_mhz", omega}, {"w1_mhz", w1}, {"w2_mhz", w2}};
}

void check_family(const std::string& f, const std::string& where) { require_one_of(f, {"psi", "phi"}, where); }

std::vector<double> grid(const json& config, const std::string& key) {
  const json& g = config.at("grid");
  if (!g.contains(key)) config_error("missing key grid." + key);
  return expand_grid(g.at(key), "grid." + key);
}

void check_grid_keys(const json& config, const std::vector<std::string>& keys) {
  for (const auto& [k, v] : config.at("grid").items()) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) config_error("unknown key grid." + k);
  }
}

struct Integrator {
  double max_step = 0.005;
  bool step_halving = true;
};

json integrator_json(bool halving) { return {{"max_step_us", 0.005}, {"check_step_halving", halving}}; }

Integrator parse_integrator(const json& config) {
  const json& j = config.at("integrator");
  Integrator in;
  in.max_step = get_positive(j, "max_step_us", "integrator.");
  const json& h = j.at("check_step_halving");
  if (!h.is_boolean()) config_error("integrator.check_step_halving must be a boolean");
  in.step_halving = h.get<bool>();
  return in;
}

void append_metrics(std::vector<Cell>& cells, const PointMetrics& m) {
  cells.push_back(num(m.fidelity));
  cells.push_back(num(m.purity));
  cells.push_back(num(m.parity));
}

double refill(const Rates& r, const NoiseSpec& n, double theta, Color c) {
  return refilling_rate(0.5 * (r.w1 + r.w2), 0.5 * (n.kappa1 + n.kappa2), theta, c);
}

/// Psi- (blue QQ, blue QR) or Phi- (red QQ, red/blue QR) at zero detuning.
PointOut bell_point(const std::string& family, const Rates& r, const NoiseSpec& noise, const SpaceLayout& layout) {
  const bool psi = family == "psi";
  const ComplexOperator h = psi ? build_even_parity_system(r.omega, 0.0, r.w1, r.w2, layout)
                                : build_odd_parity_system(r.omega, 0.0, r.w1, r.w2, layout);
  const StabilizationTarget target = psi ? psi_theta(kPi / 2) : phi_theta(kPi / 2);
  const PointMetrics m = steady_point(h, noise, target.amplitudes);
  PointOut out;
  append_metrics(out.cells, m);
  const Color rc = psi ? Color::blue : Color::red;
  out.cells.push_back(num(refill(r, noise, kPi / 2, rc)));
  out.cells.push_back(num(mean_gamma(noise)));
  out.cells.push_back(txt(std::string(to_string(rc))));
  absorb(out.numerics, m);
  return out;
}

// ---- time_domain ----

json td_defaults() {
  const DeviceTable dev = load_device_table();
  return {{"parity", "psi"},
          {"drives",
           {{"omega_mhz", nullptr},
            {"w1_mhz", nullptr},
            {"w2_mhz", nullptr},
            {"delta_mhz", 0.0},
            {"assignment", "printed"},
            {"odd_colors", "standard"}}},
          {"noise", fig2_noise()},
          {"target", {{"family", "auto"}, {"params", json::array()}}},
          {"grid", {{"times_us", {{"start", 0}, {"stop", reference_parameters().at("fig2").at("tomography_time_us")}, {"step", 1}}}}},
          {"tomography",
           {{"enabled", false},
            {"shots_per_setting", reference_parameters().at("fig2").at("shots_per_setting")},
            {"readout_fidelity", {dev.readout_fidelity_q1, dev.readout_fidelity_q2}},
            {"times_us", {reference_parameters().at("fig2").at("tomography_time_us")}}}},
          {"integrator", integrator_json(true)}};
}

struct TimeDomain {
  std::string parity;
  DriveSet drives;
  double omega = 0.0;
  double delta = 0.0;
  NoiseSpec noise;
  StabilizationTarget target;
  std::vector<double> times;
  bool tomography = false;
  std::int64_t shots = 0;
  std::array<double, 2> readout{1.0, 1.0};
  std::vector<double> tomography_times;
  Integrator integrator;
};

StabilizationTarget parse_target(const json& config, const std::string& parity, double omega, double delta) {
  const json& t = config.at("target");
  const std::string family = get_string(t, "family", "target.");
  const json& p = t.at("params");
  if (!p.is_array()) config_error("target.params must be an array");
  std::vector<double> v;
  for (const auto& e : p) {
    if (!e.is_number()) config_error("target.params entries must be numbers");
    v.push_back(e.get<double>());
  }
  const auto need = [&](std::size_t n) {
    if (v.size() != n) config_error("target family " + family + " needs " + std::to_string(n) + " params");
  };
  if (family == "auto") {
    need(0);
    const double theta = blending_angle(omega, delta);
    return parity == "psi" ? psi_theta(theta) : phi_theta(theta);
  }
  if (family == "psi_theta") return need(1), psi_theta(degrees(v[0]));
  if (family == "phi_theta") return need(1), phi_theta(degrees(v[0]));
  if (family == "product") return need(2), product_state(degrees(v[0]), degrees(v[1]));
  if (family == "dressed_parity") return need(1), dressed_parity_state(degrees(v[0]));
  if (family == "custom") {
    need(4);
    Vector a(4);
    for (int i = 0; i < 4; ++i) a(i) = v[i];
    if (a.norm() == 0.0) config_error("custom target must be non-zero");
    return custom_target(a / a.norm());
  }
  config_error("target.family must be one of {auto, psi_theta, phi_theta, product, dressed_parity, custom}");
}

TimeDomain parse_td(const json& c) {
  TimeDomain td;
  td.parity = get_string(c, "parity", "");
  check_family(td.parity, "parity");
  const json& d = c.at("drives");
  const Rates r = parse_rates(d, "drives.");
  td.omega = r.omega;
  td.delta = mhz(get_number(d, "delta_mhz", "drives."));
  const std::string assignment = get_string(d, "assignment", "drives.");
  require_one_of(assignment, {"printed", "matched"}, "drives.assignment");
  const std::string colors = get_string(d, "odd_colors", "drives.");
  require_one_of(colors, {"standard", "swapped"}, "drives.odd_colors");
  td.drives = td.parity == "psi"
                  ? even_parity_drives(r.omega, td.delta, r.w1, r.w2,
                                       assignment == "printed" ? ResonatorAssignment::printed
                                                               : ResonatorAssignment::matched)
                  : odd_parity_drives(r.omega, td.delta, r.w1, r.w2,
                                      colors == "standard" ? OddColors::standard : OddColors::swapped);
  td.noise = parse_noise(c);
  try {
    td.target = parse_target(c, td.parity, td.omega, td.delta);
  } catch (const InvalidArgument& e) {
    config_error(std::string("target: ") + e.what());
  }
  check_grid_keys(c, {"times_us"});
  td.times = grid(c, "times_us");
  for (std::size_t i = 0; i < td.times.size(); ++i) {
    if (td.times[i] < 0.0 || (i > 0 && !(td.times[i] > td.times[i - 1]))) {
      config_error("grid.times_us must be non-negative and strictly increasing");
    }
  }
  const json& t = c.at("tomography");
  if (!t.at("enabled").is_boolean()) config_error("tomography.enabled must be a boolean");
  td.tomography = t.at("enabled").get<bool>();
  if (!t.at("shots_per_setting").is_number_integer() || t.at("shots_per_setting").get<std::int64_t>() <= 0) {
    config_error("tomography.shots_per_setting must be a positive integer");
  }
  td.shots = t.at("shots_per_setting").get<std::int64_t>();
  const json& rf = t.at("readout_fidelity");
  std::array<double, 2> f{};
  if (rf.is_number()) {
    f = {rf.get<double>(), rf.get<double>()};
  } else if (rf.is_array() && rf.size() == 2 && rf[0].is_number() && rf[1].is_number()) {
    f = {rf[0].get<double>(), rf[1].get<double>()};
  } else {
    config_error("tomography.readout_fidelity must be a number or a pair");
  }
  for (double x : f) {
    if (!(x > 0.5 && x <= 1.0)) config_error("tomography.readout_fidelity must lie in (0.5, 1]");
  }
  td.readout = f;
  td.tomography_times = expand_grid(t.at("times_us"), "tomography.times_us");
  for (double tt : td.tomography_times) {
    const bool found = std::any_of(td.times.begin(), td.times.end(), [&](double x) { return std::abs(x - tt) < 1e-9; });
    if (!found) config_error("tomography time " + fmt(tt) + " is not on grid.times_us");
  }
  td.integrator = parse_integrator(c);
  return td;
}

void td_resolve(json& c) {
  const std::string parity = get_string(c, "parity", "");
  check_family(parity, "parity");
  const json& ref = reference_parameters().at("fig2").at(parity);
  json& d = c.at("drives");
  if (d.at("omega_mhz").is_null()) d["omega_mhz"] = ref.at("omega_mhz");
  if (d.at("w1_mhz").is_null()) d["w1_mhz"] = ref.at("w1_mhz");
  if (d.at("w2_mhz").is_null()) d["w2_mhz"] = ref.at("w2_mhz");
  parse_td(c);
}

std::size_t td_size(const json& c) { return parse_td(c).times.size(); }

KindOutput td_run(const json& c, const RunContext& ctx) {
  const TimeDomain td = parse_td(c);
  const SpaceLayout layout = layout_from(c);
  const LindbladProblem problem = build_lindblad(assemble_system(td.drives, layout), td.noise);
  const std::vector<int> ground(layout.factors().size(), 0);
  const DensityMatrix rho0 = DensityMatrix::basis_state(layout, ground);
  EvolveOptions opts;
  opts.max_step = td.integrator.max_step;
  opts.target = td.target;

  std::vector<Trajectory> runs(td.integrator.step_halving ? 2 : 1);
  const auto errors = parallel_for(runs.size(), ctx.workers, [&](std::size_t i) {
    EvolveOptions o = opts;
    o.refine = static_cast<int>(i) + 1;
    runs[i] = evolve(problem, rho0, td.times, o);
  });
  for (const auto& e : errors) {
    if (e) throw IntegrationError(*e);
  }
  const Trajectory& tr = runs[0];

  KindOutput out;
  out.columns = {"t_us", "fidelity", "purity", "parity"};
  if (td.tomography) {
    out.columns.push_back("tomography_fidelity");
    out.columns.push_back("tomography_purity");
  }
  absorb(out.numerics, tr);
  if (runs.size() == 2) {
    double drift = 0.0;
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
      drift = std::max(drift, max_abs_difference(tr.states[k].matrix(), runs[1].states[k].matrix()));
    }
    out.numerics.max_step_halving_drift = drift;
    out.numerics.step_halving_checks = 1;
    absorb(out.numerics, runs[1]);
    out.numerics.trajectory_points -= static_cast<std::int64_t>(runs[1].times.size());
  }
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    std::vector<Cell> row{num(tr.times[k]), num(tr.fidelity[k]), num(tr.purity[k]), num(tr.parity[k])};
    if (td.tomography) {
      const bool here = std::any_of(td.tomography_times.begin(), td.tomography_times.end(),
                                    [&](double x) { return std::abs(x - tr.times[k]) < 1e-9; });
      if (here) {
        const DensityMatrix r4 = partial_trace(tr.states[k], {Subsystem::q1, Subsystem::q2});
        TomographySettings ts;
        ts.shots_per_setting = td.shots;
        ts.readout_fidelity_q1 = td.readout[0];
        ts.readout_fidelity_q2 = td.readout[1];
        ts.rng_seed = ctx.seed;
        ts.trial = k;
        const CountsTable counts = simulate_tomography(r4, ts);
        const DensityMatrix est = reconstruct(counts, ts);
        row.push_back(num(fidelity(est, td.target)));
        row.push_back(num(purity(est)));
        std::ostringstream csv;
        write_counts_csv(csv, counts);
        out.extra_files["tomography_counts_t" + fmt(tr.times[k]) + "us.csv"] = csv.str();
      } else {
        row.emplace_back();
        row.emplace_back();
      }
    }
    out.rows.push_back(std::move(row));
  }
  out.analysis["final_fidelity"] = tr.fidelity.back();
  out.analysis["step_us"] = tr.step;
  try {
    const ExpFit fit = fit_time_constant(tr.times, tr.fidelity, FitDirection::rising);
    out.analysis["fidelity_tau_us"] = fit.tau;
    out.analysis["fidelity_v_inf"] = fit.v_inf;
  } catch (const Error& e) {
    out.analysis["fidelity_tau_us"] = nullptr;
    out.analysis["fit_error"] = e.what();
  }
  return out;
}

// ---- theta_spectroscopy and rate_model_compare ----

json theta_drives() {
  const json& f = reference_parameters().at("fig2");
  const auto one = [](const json& j) { return rates_json(j.at("omega_mhz"), j.at("w1_mhz"), j.at("w2_mhz")); };
  return {{"psi", one(f.at("psi"))}, {"phi", one(f.at("phi"))}};
}

struct ThetaSetup {
  std::vector<std::string> families;
  std::vector<std::string> colors;
  Rates psi;
  Rates phi;
  NoiseSpec noise;
  std::vector<double> theta_deg;
  bool evolve_mode = false;
  double duration = 0.0;
  Integrator integrator;
};

ThetaSetup parse_theta_common(const json& c) {
  ThetaSetup s;
  s.psi = parse_rates(c.at("drives").at("psi"), "drives.psi.");
  s.phi = parse_rates(c.at("drives").at("phi"), "drives.phi.");
  s.noise = parse_noise(c);
  check_grid_keys(c, {"theta_deg"});
  s.theta_deg = grid(c, "theta_deg");
  for (double t : s.theta_deg) {
    if (!(t > 0.0 && t <= 180.0)) config_error("grid.theta_deg values must lie in (0, 180]");
  }
  return s;
}

/// QR colors and the rate-model refill color for a family and color choice.
QRColors qr_colors(bool psi, bool swapped) {
  if (psi) return swapped ? QRColors{Color::red, Color::red} : QRColors{Color::blue, Color::blue};
  return swapped ? QRColors{Color::blue, Color::red} : QRColors{Color::red, Color::blue};
}

Color rate_color(bool psi, bool swapped) { return psi != swapped ? Color::blue : Color::red; }

/// delta, qr1, qr2 detunings (MHz), fidelity, purity, parity, gamma_t, gamma, rate_color
PointOut theta_point(const ThetaSetup& s, const SpaceLayout& layout, const std::string& family, bool swapped,
                     double theta_deg) {
  const bool psi = family == "psi";
  const Rates& r = psi ? s.psi : s.phi;
  const double theta = degrees(theta_deg);
  const StabilizationTarget target = psi ? psi_theta(theta) : phi_theta(theta);
  ComplexOperator h = ComplexOperator::zero(layout);
  PointOut out;
  if (theta_deg >= 180.0) {
    for (int i = 0; i < 3; ++i) out.cells.emplace_back();
  } else {
    const double delta = detuning_for_angle(r.omega, theta);
    DriveSet qq;
    qq.qq = QQDrive{psi ? Color::blue : Color::red, r.omega, delta, DetuningPlacement::q1_excited};
    const StabilizationPlan plan = plan_stabilization(build_qubit_block(qq), r.w1, r.w2, qr_colors(psi, swapped));
    h = assemble_planned_system(plan, layout);
    out.cells.push_back(num(to_mhz(delta)));
    out.cells.push_back(num(to_mhz(plan.qr1_detuning)));
    out.cells.push_back(num(to_mhz(plan.qr2_detuning)));
  }
  if (s.evolve_mode) {
    EvolveOptions o;
    o.max_step = s.integrator.max_step;
    o.target = target;
    const LindbladProblem problem = build_lindblad(h, s.noise);
    const DensityMatrix rho0 = DensityMatrix::basis_state(layout, std::vector<int>(layout.factors().size(), 0));
    const Trajectory tr = evolve(problem, rho0, {0.0, s.duration}, o);
    out.cells.push_back(num(tr.fidelity.back()));
    out.cells.push_back(num(tr.purity.back()));
    out.cells.push_back(num(tr.parity.back()));
    absorb(out.numerics, tr);
    if (s.integrator.step_halving) {
      o.refine = 2;
      const Trajectory fine = evolve(problem, rho0, {0.0, s.duration}, o);
      out.numerics.max_step_halving_drift =
          max_abs_difference(tr.states.back().matrix(), fine.states.back().matrix());
      out.numerics.step_halving_checks = 1;
    }
  } else {
    const PointMetrics m = steady_point(h, s.noise, target.amplitudes);
    append_metrics(out.cells, m);
    absorb(out.numerics, m);
  }
  const Color rc = rate_color(psi, swapped);
  out.cells.push_back(num(refill(r, s.noise, theta, rc)));
  out.cells.push_back(num(mean_gamma(s.noise)));
  out.cells.push_back(txt(std::string(to_string(rc))));
  return out;
}

const std::vector<std::string> kThetaColumns{"family",   "colors",   "theta_deg", "delta_mhz",
                                             "qr1_detuning_mhz", "qr2_detuning_mhz", "fidelity",
                                             "purity",   "parity",   "gamma_t",   "gamma", "rate_color"};

json ts_defaults() {
  return {{"families", {"psi", "phi"}},
          {"colors", {"default", "swapped"}},
          {"mode", "steady_state"},
          {"duration_us", reference_parameters().at("fig3").at("duration_us")},
          {"drives", theta_drives()},
          {"noise", fig2_noise()},
          {"grid", {{"theta_deg", {{"start", 5}, {"stop", 175}, {"step", 5}}}}},
          {"integrator", integrator_json(false)}};
}

ThetaSetup parse_ts(const json& c) {
  ThetaSetup s = parse_theta_common(c);
  s.families = get_string_list(c, "families", "", {"psi", "phi"});
  s.colors = get_string_list(c, "colors", "", {"default", "swapped"});
  const std::string mode = get_string(c, "mode", "");
  require_one_of(mode, {"steady_state", "evolve"}, "mode");
  s.evolve_mode = mode == "evolve";
  s.duration = get_positive(c, "duration_us", "");
  s.integrator = parse_integrator(c);
  return s;
}

void ts_resolve(json& c) { parse_ts(c); }

std::size_t ts_size(const json& c) {
  const ThetaSetup s = parse_ts(c);
  return s.families.size() * s.colors.size() * s.theta_deg.size();
}

KindOutput ts_run(const json& c, const RunContext& ctx) {
  const ThetaSetup s = parse_ts(c);
  const SpaceLayout layout = layout_from(c);
  struct P {
    std::string family;
    std::string colors;
    double theta;
  };
  std::vector<P> pts;
  std::vector<std::vector<Cell>> params;
  for (const auto& f : s.families) {
    for (const auto& col : s.colors) {
      for (double t : s.theta_deg) {
        pts.push_back({f, col, t});
        params.push_back({txt(f), txt(col), num(t)});
      }
    }
  }
  return sweep(kThetaColumns, std::move(params), ctx.workers, [&](std::size_t i) {
    return theta_point(s, layout, pts[i].family, pts[i].colors == "swapped", pts[i].theta);
  });
}

json rm_defaults() {
  const json& f = reference_parameters().at("fig2");
  return {{"family", "psi"},
          {"colors", "default"},
          {"drives", theta_drives()},
          {"noise", noise_json(f.at("psi").at("kappa1_mhz"), f.at("psi").at("kappa2_mhz"), f.at("t1_us"), nullptr)},
          {"grid", {{"theta_deg", {{"start", 15}, {"stop", 180}, {"step", 15}}}}}};
}

struct RateCompare {
  ThetaSetup setup;
  std::string family;
  std::string colors;
};

RateCompare parse_rm(const json& c) {
  RateCompare r{parse_theta_common(c), get_string(c, "family", ""), get_string(c, "colors", "")};
  check_family(r.family, "family");
  require_one_of(r.colors, {"default", "swapped"}, "colors");
  return r;
}

void rm_resolve(json& c) { parse_rm(c); }
std::size_t rm_size(const json& c) { return parse_rm(c).setup.theta_deg.size(); }

KindOutput rm_run(const json& c, const RunContext& ctx) {
  const RateCompare rc = parse_rm(c);
  const SpaceLayout layout = layout_from(c);
  const bool swapped = rc.colors == "swapped";
  std::vector<std::vector<Cell>> params;
  for (double t : rc.setup.theta_deg) params.push_back({txt(rc.family), txt(rc.colors), num(t)});
  auto columns = kThetaColumns;
  columns.push_back("f_analytic");
  columns.push_back("abs_diff");
  KindOutput out = sweep(columns, std::move(params), ctx.workers, [&](std::size_t i) {
    const double t = rc.setup.theta_deg[i];
    PointOut p = theta_point(rc.setup, layout, rc.family, swapped, t);
    const double f = std::get<double>(p.cells[3]);
    const double gt = std::get<double>(p.cells[6]);
    const double g = std::get<double>(p.cells[7]);
    const double fa = analytic_fidelity(rc.family, gt, g, degrees(t), rate_color(rc.family == "psi", swapped));
    p.cells.push_back(num(fa));
    p.cells.push_back(num(std::abs(f - fa)));
    return p;
  });
  double worst = 0.0;
  const std::size_t col = out.columns.size() - 1;
  for (const auto& row : out.rows) {
    if (row.size() > col) worst = std::max(worst, std::get<double>(row[col]));
  }
  out.analysis["max_abs_diff"] = worst;
  return out;
}

// ---- parity_switch ----

json ps_defaults() {
  const json& f = reference_parameters().at("fig4");
  json segs = json::array();
  for (const auto& s : f.at("segments_us")) segs.push_back({{"parity", s[0]}, {"duration_us", s[1]}});
  const json& f2 = reference_parameters().at("fig2");
  const auto one = [](const json& j) { return rates_json(j.at("omega_mhz"), j.at("w1_mhz"), j.at("w2_mhz")); };
  return {{"segments", segs},
          {"drives", {{"even", one(f2.at("psi"))}, {"odd", one(f2.at("phi"))}}},
          {"noise", fig2_noise()},
          {"sample_step_us", 0.05},
          {"integrator", integrator_json(true)}};
}

struct ParitySwitch {
  std::vector<std::pair<std::string, double>> segments;
  Rates even;
  Rates odd;
  NoiseSpec noise;
  double sample_step = 0.0;
  std::vector<double> times;
  Integrator integrator;
};

ParitySwitch parse_ps(const json& c) {
  ParitySwitch p;
  const json& segs = c.at("segments");
  if (!segs.is_array() || segs.empty()) config_error("segments must be a non-empty array");
  double total = 0.0;
  for (const auto& s : segs) {
    if (!s.is_object()) config_error("segments entries must be objects");
    for (const auto& [k, v] : s.items()) {
      if (k != "parity" && k != "duration_us") config_error("unknown key segments[]." + k);
    }
    const std::string parity = get_string(s, "parity", "segments[].");
    require_one_of(parity, {"even", "odd"}, "segments[].parity");
    const double d = get_positive(s, "duration_us", "segments[].");
    p.segments.emplace_back(parity, d);
    total += d;
  }
  p.even = parse_rates(c.at("drives").at("even"), "drives.even.");
  p.odd = parse_rates(c.at("drives").at("odd"), "drives.odd.");
  p.noise = parse_noise(c);
  p.sample_step = get_positive(c, "sample_step_us", "");
  const auto n = static_cast<long>(std::floor(total / p.sample_step + 1e-9));
  if (n > 1000000) config_error("sample_step_us is too small");
  for (long i = 0; i <= n; ++i) p.times.push_back(std::round(i * p.sample_step * 1e9) / 1e9);
  if (total - p.times.back() > 1e-9) p.times.push_back(total);
  p.integrator = parse_integrator(c);
  return p;
}

void ps_resolve(json& c) { parse_ps(c); }
std::size_t ps_size(const json& c) { return parse_ps(c).times.size(); }

KindOutput ps_run(const json& c, const RunContext& ctx) {
  const ParitySwitch p = parse_ps(c);
  const SpaceLayout layout = layout_from(c);
  std::vector<ScheduleSegment> segments;
  for (const auto& [parity, d] : p.segments) {
    ScheduleSegment s;
    s.duration = d;
    s.label = parity;
    if (parity == "even") {
      s.drives = even_parity_drives(p.even.omega, 0.0, p.even.w1, p.even.w2);
      s.target = psi_theta(kPi / 2);
    } else {
      s.drives = odd_parity_drives(p.odd.omega, 0.0, p.odd.w1, p.odd.w2);
      s.target = phi_theta(kPi / 2);
    }
    segments.push_back(std::move(s));
  }
  const DriveSchedule schedule{segments, p.noise, layout,
                               DensityMatrix::basis_state(layout, std::vector<int>(layout.factors().size(), 0))};
  EvolveOptions opts;
  opts.max_step = p.integrator.max_step;
  std::vector<Trajectory> runs(p.integrator.step_halving ? 2 : 1);
  const auto errors = parallel_for(runs.size(), ctx.workers, [&](std::size_t i) {
    EvolveOptions o = opts;
    o.refine = static_cast<int>(i) + 1;
    runs[i] = evolve_schedule(schedule, p.times, o);
  });
  for (const auto& e : errors) {
    if (e) throw IntegrationError(*e);
  }
  const Trajectory& tr = runs[0];
  KindOutput out;
  out.columns = {"t_us", "segment", "parity_label", "parity_signature", "fidelity", "purity"};
  absorb(out.numerics, tr);
  if (runs.size() == 2) {
    double drift = 0.0;
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
      drift = std::max(drift, max_abs_difference(tr.states[k].matrix(), runs[1].states[k].matrix()));
    }
    out.numerics.max_step_halving_drift = drift;
    out.numerics.step_halving_checks = 1;
    out.numerics.max_trace_error = std::max(out.numerics.max_trace_error, runs[1].max_trace_error);
    out.numerics.min_eigenvalue = std::min(out.numerics.min_eigenvalue, runs[1].min_eigenvalue);
  }
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    const std::size_t seg = segment_at(schedule, tr.times[k]);
    out.rows.push_back({num(tr.times[k]), Cell(static_cast<std::int64_t>(seg)), txt(p.segments[seg].first),
                        num(tr.parity[k]), num(tr.fidelity[k]), num(tr.purity[k])});
  }

  json fits = json::array();
  std::vector<double> to_even;
  std::vector<double> to_odd;
  double start = 0.0;
  for (std::size_t s = 0; s < p.segments.size(); ++s) {
    const double end = start + p.segments[s].second;
    std::vector<double> t;
    std::vector<double> v;
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
      if (tr.times[k] >= start - 1e-9 && tr.times[k] <= end + 1e-9) {
        t.push_back(tr.times[k]);
        v.push_back(tr.parity[k]);
      }
    }
    const bool even = p.segments[s].first == "even";
    json f = {{"segment", s}, {"parity", p.segments[s].first}, {"start_us", start}};
    f["transition"] = s == 0 ? "initial" : (even ? "odd_to_even" : "even_to_odd");
    try {
      const ExpFit fit = fit_time_constant(t, v, even ? FitDirection::rising : FitDirection::falling);
      f["tau_us"] = fit.tau;
      f["v_inf"] = fit.v_inf;
      f["rms_residual"] = fit.rms_residual;
      if (s > 0) (even ? to_even : to_odd).push_back(fit.tau);
    } catch (const Error& e) {
      f["tau_us"] = nullptr;
      f["error"] = e.what();
    }
    fits.push_back(f);
    start = end;
  }
  const auto mean = [](const std::vector<double>& v) -> json {
    if (v.empty()) return nullptr;
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  out.analysis["segment_fits"] = fits;
  out.analysis["tau_odd_to_even_us"] = mean(to_even);
  out.analysis["tau_even_to_odd_us"] = mean(to_odd);
  out.analysis["reference_tau_odd_to_even_us"] = reference_parameters().at("fig4").at("tau_odd_to_even_us");
  out.analysis["reference_tau_even_to_odd_us"] = reference_parameters().at("fig4").at("tau_even_to_odd_us");
  return out;
}

// ---- parameter sweeps (tphi, kappa, omega-kappa) ----

json sweeps_drives() {
  const json& a = reference_parameters().at("sweeps");
  return {{"psi", {{"omega_mhz", a.at("psi").at("omega_mhz")}, {"w_listed_mhz", a.at("psi").at("w_listed_mhz")}}},
          {"phi", {{"omega_mhz", a.at("phi").at("omega_mhz")}, {"w_listed_mhz", a.at("phi").at("w_listed_mhz")}}}};
}

struct SweepDrives {
  Rates psi;
  Rates phi;
};

SweepDrives parse_sweep_drives(const json& c) {
  const json& h = c.at("w_listed_as_half");
  if (!h.is_boolean()) config_error("w_listed_as_half must be a boolean");
  const double scale = h.get<bool>() ? 2.0 : 1.0;
  const auto one = [&](const std::string& f) {
    const json& j = c.at("drives").at(f);
    const double w = scale * mhz(get_positive(j, "w_listed_mhz", "drives." + f + "."));
    return Rates{mhz(get_positive(j, "omega_mhz", "drives." + f + ".")), w, w};
  };
  return {one("psi"), one("phi")};
}

const std::vector<std::string> kBellTail{"fidelity", "purity", "parity", "gamma_t", "gamma", "rate_color"};

std::vector<std::string> with_tail(std::vector<std::string> head) {
  head.insert(head.end(), kBellTail.begin(), kBellTail.end());
  return head;
}

json tp_defaults() {
  return {{"families", {"psi", "phi"}},
          {"w_listed_as_half", true},
          {"drives", sweeps_drives()},
          {"noise", sweep_noise()},
          {"grid", {{"tphi_us", {5, 10, 15, 20, 25, 30, 40, 50, 75, 100, 150, 200}}}}};
}

void tp_check(const json& c) {
  get_string_list(c, "families", "", {"psi", "phi"});
  parse_sweep_drives(c);
  parse_noise(c);
  check_grid_keys(c, {"tphi_us"});
  for (double t : grid(c, "tphi_us")) {
    if (!(t > 0.0)) config_error("grid.tphi_us values must be > 0");
  }
}

void tp_resolve(json& c) { tp_check(c); }
std::size_t tp_size(const json& c) {
  return get_string_list(c, "families", "", {"psi", "phi"}).size() * grid(c, "tphi_us").size();
}

KindOutput tp_run(const json& c, const RunContext& ctx) {
  const auto families = get_string_list(c, "families", "", {"psi", "phi"});
  const SweepDrives d = parse_sweep_drives(c);
  const NoiseSpec base = parse_noise(c);
  const auto tphi = grid(c, "tphi_us");
  const SpaceLayout layout = layout_from(c);
  std::vector<std::pair<std::string, double>> pts;
  std::vector<std::vector<Cell>> params;
  for (const auto& f : families) {
    for (double t : tphi) {
      pts.emplace_back(f, t);
      params.push_back({txt(f), num(t), num(to_mhz((f == "psi" ? d.psi : d.phi).w1))});
    }
  }
  KindOutput out = sweep(with_tail({"family", "tphi_us", "w_mhz"}), std::move(params), ctx.workers, [&](std::size_t i) {
    NoiseSpec n = base;
    n.tphi_q1 = n.tphi_q2 = pts[i].second;
    return bell_point(pts[i].first, pts[i].first == "psi" ? d.psi : d.phi, n, layout);
  });
  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    if (out.rows[i].size() > 3 && pts[i].second == tphi.back()) {
      out.analysis["fidelity_at_max_tphi"][pts[i].first] = std::get<double>(out.rows[i][3]);
    }
  }
  return out;
}

json ks_defaults() {
  return {{"families", {"psi", "phi"}},
          {"w_listed_as_half", true},
          {"drives", sweeps_drives()},
          {"noise", sweep_noise()},
          {"grid", {{"kappa_over_w", {{"start", 0.5}, {"stop", 3.0}, {"step", 0.5}}}}}};
}

void ks_check(const json& c) {
  get_string_list(c, "families", "", {"psi", "phi"});
  parse_sweep_drives(c);
  parse_noise(c);
  check_grid_keys(c, {"kappa_over_w"});
  for (double r : grid(c, "kappa_over_w")) {
    if (!(r > 0.0)) config_error("grid.kappa_over_w values must be > 0");
  }
}

void ks_resolve(json& c) { ks_check(c); }
std::size_t ks_size(const json& c) {
  return get_string_list(c, "families", "", {"psi", "phi"}).size() * grid(c, "kappa_over_w").size();
}

KindOutput ks_run(const json& c, const RunContext& ctx) {
  const auto families = get_string_list(c, "families", "", {"psi", "phi"});
  const SweepDrives d = parse_sweep_drives(c);
  const NoiseSpec base = parse_noise(c);
  const auto ratios = grid(c, "kappa_over_w");
  const SpaceLayout layout = layout_from(c);
  std::vector<std::pair<std::string, double>> pts;
  std::vector<std::vector<Cell>> params;
  for (const auto& f : families) {
    const Rates& r = f == "psi" ? d.psi : d.phi;
    for (double x : ratios) {
      pts.emplace_back(f, x);
      params.push_back({txt(f), num(x), num(to_mhz(r.w1)), num(to_mhz(x * r.w1))});
    }
  }
  KindOutput out = sweep(with_tail({"family", "kappa_over_w", "w_mhz", "kappa_mhz"}), std::move(params), ctx.workers,
                         [&](std::size_t i) {
                           const Rates& r = pts[i].first == "psi" ? d.psi : d.phi;
                           NoiseSpec n = base;
                           n.kappa1 = n.kappa2 = pts[i].second * r.w1;
                           return bell_point(pts[i].first, r, n, layout);
                         });
  json argmax = json::object();
  for (const auto& f : families) {
    double best = -1.0;
    double at = std::nan("");
    for (std::size_t i = 0; i < out.rows.size(); ++i) {
      if (pts[i].first != f || out.rows[i].size() <= 4) continue;
      const double v = std::get<double>(out.rows[i][4]);
      if (v > best) {
        best = v;
        at = pts[i].second;
      }
    }
    if (best >= 0.0) argmax[f] = {{"kappa_over_w", at}, {"fidelity", best}};
  }
  out.analysis["argmax"] = argmax;
  return out;
}

json ok_defaults() {
  const json& a = reference_parameters().at("sweeps");
  return {{"families", {"psi", "phi"}},
          {"noise", {{"t1_us", a.at("t1_us")}, {"tphi_us", nullptr}}},
          {"grid",
           {{"omega_mhz", {{"start", 1}, {"stop", 11}, {"num", 21}}},
            {"kappa_mhz", {{"start", 0.2}, {"stop", 2.2}, {"num", 21}}}}}};
}

NoiseSpec parse_ok_noise(const json& c) {
  json n = c.at("noise");
  for (const auto& [k, v] : n.items()) {
    if (k != "t1_us" && k != "tphi_us") config_error("unknown key noise." + k + " (kappa is swept)");
  }
  json full = c;
  full["noise"]["kappa1_mhz"] = 1.0;
  full["noise"]["kappa2_mhz"] = 1.0;
  return parse_noise(full);
}

void ok_check(const json& c) {
  get_string_list(c, "families", "", {"psi", "phi"});
  parse_ok_noise(c);
  check_grid_keys(c, {"omega_mhz", "kappa_mhz"});
  for (const char* k : {"omega_mhz", "kappa_mhz"}) {
    for (double v : grid(c, k)) {
      if (!(v > 0.0)) config_error(std::string("grid.") + k + " values must be > 0");
    }
  }
}

void ok_resolve(json& c) { ok_check(c); }
std::size_t ok_size(const json& c) {
  return get_string_list(c, "families", "", {"psi", "phi"}).size() * grid(c, "omega_mhz").size() *
         grid(c, "kappa_mhz").size();
}

KindOutput ok_run(const json& c, const RunContext& ctx) {
  const auto families = get_string_list(c, "families", "", {"psi", "phi"});
  const NoiseSpec base = parse_ok_noise(c);
  const auto omegas = grid(c, "omega_mhz");
  const auto kappas = grid(c, "kappa_mhz");
  const SpaceLayout layout = layout_from(c);
  struct P {
    std::string family;
    double omega;
    double kappa;
  };
  std::vector<P> pts;
  std::vector<std::vector<Cell>> params;
  for (const auto& f : families) {
    for (double o : omegas) {
      for (double k : kappas) {
        pts.push_back({f, o, k});
        params.push_back({txt(f), num(o), num(k), num(k)});
      }
    }
  }
  auto columns = with_tail({"family", "omega_mhz", "kappa_mhz", "w_mhz"});
  columns.push_back("infidelity");
  return sweep(columns, std::move(params), ctx.workers, [&](std::size_t i) {
    const P& p = pts[i];
    NoiseSpec n = base;
    n.kappa1 = n.kappa2 = mhz(p.kappa);
    PointOut out = bell_point(p.family, Rates{mhz(p.omega), mhz(p.kappa), mhz(p.kappa)}, n, layout);
    out.cells.push_back(num(1.0 - std::get<double>(out.cells[0])));
    return out;
  });
}

// ---- dressed parity and Rabi-dressed manifolds ----

json fig67_drives() {
  const json& f = reference_parameters().at("fig6_fig7");
  return rates_json(f.at("omega_mhz"), f.at("w1_mhz"), f.at("w2_mhz"));
}

std::string color_pair(const QRColors& c) {
  return std::string(to_string(c.qr1)) + "/" + std::string(to_string(c.qr2));
}

std::optional<QRColors> parse_qr_colors(const std::string& s) {
  if (s == "auto") return std::nullopt;
  const auto slash = s.find('/');
  if (slash == std::string::npos) config_error("qr_colors must be 'auto' or '<color>/<color>'");
  try {
    return QRColors{parse_color(s.substr(0, slash)), parse_color(s.substr(slash + 1))};
  } catch (const Error&) {
    config_error("qr_colors must be 'auto' or '<color>/<color>'");
  }
}

StabilizationPlan plan_for(const ComplexOperator& hqq, const Rates& r, const std::optional<QRColors>& colors) {
  return colors ? plan_stabilization(hqq, r.w1, r.w2, *colors) : select_colors(hqq, r.w1, r.w2);
}

json dp_defaults() {
  return {{"qq_colors", {"blue", "red"}},
          {"qr_colors", "auto"},
          {"drives", fig67_drives()},
          {"noise", fig67_noise()},
          {"grid", {{"a1_over_omega", {{"start", 0}, {"stop", 4}, {"step", 0.2}}}}}};
}

void dp_check(const json& c) {
  get_string_list(c, "qq_colors", "", {"blue", "red"});
  parse_qr_colors(get_string(c, "qr_colors", ""));
  parse_rates(c.at("drives"), "drives.");
  parse_noise(c);
  check_grid_keys(c, {"a1_over_omega"});
  for (double a : grid(c, "a1_over_omega")) {
    if (!(a >= 0.0)) config_error("grid.a1_over_omega values must be >= 0");
  }
}

void dp_resolve(json& c) { dp_check(c); }
std::size_t dp_size(const json& c) {
  return get_string_list(c, "qq_colors", "", {"blue", "red"}).size() * grid(c, "a1_over_omega").size();
}

KindOutput dp_run(const json& c, const RunContext& ctx) {
  const auto colors = get_string_list(c, "qq_colors", "", {"blue", "red"});
  const auto qr = parse_qr_colors(get_string(c, "qr_colors", ""));
  const Rates r = parse_rates(c.at("drives"), "drives.");
  const NoiseSpec noise = parse_noise(c);
  const auto ratios = grid(c, "a1_over_omega");
  const SpaceLayout layout = layout_from(c);
  std::vector<std::pair<Color, double>> pts;
  std::vector<std::vector<Cell>> params;
  for (const auto& col : colors) {
    for (double a : ratios) {
      const Color qc = parse_color(col);
      pts.emplace_back(qc, a);
      params.push_back({txt(col), num(a), num(to_degrees(dressing_angle(r.omega, a * r.omega, qc)))});
    }
  }
  return sweep({"qq_color", "a1_over_omega", "theta1_deg", "qr_colors", "fidelity", "purity", "parity",
                "target_overlap"},
               std::move(params), ctx.workers, [&](std::size_t i) {
                 const auto [qc, a] = pts[i];
                 DriveSet d;
                 d.qq = QQDrive{qc, r.omega, 0.0, DetuningPlacement::q1_excited};
                 d.rabi_q1 = RabiDrive{a * r.omega, 0.0};
                 const StabilizationPlan plan = plan_for(build_qubit_block(d), r, qr);
                 const StabilizationTarget target = dressed_parity_state(dressing_angle(r.omega, a * r.omega, qc));
                 const PointMetrics m = steady_point(assemble_planned_system(plan, layout), noise, target.amplitudes);
                 PointOut out;
                 out.cells.push_back(txt(color_pair(plan.colors)));
                 append_metrics(out.cells, m);
                 out.cells.push_back(num(std::norm(target.amplitudes.dot(plan.target))));
                 absorb(out.numerics, m);
                 return out;
               });
}

json rd_defaults() {
  return {{"qr_colors", "auto"},
          {"drives", fig67_drives()},
          {"noise", fig67_noise()},
          {"grid",
           {{"delta_over_omega", {{"start", 0}, {"stop", 1}, {"num", 21}}},
            {"a1_over_omega", {{"start", 0}, {"stop", 1}, {"num", 21}}}}}};
}

void rd_check(const json& c) {
  parse_qr_colors(get_string(c, "qr_colors", ""));
  parse_rates(c.at("drives"), "drives.");
  parse_noise(c);
  check_grid_keys(c, {"delta_over_omega", "a1_over_omega"});
  grid(c, "delta_over_omega");
  for (double a : grid(c, "a1_over_omega")) {
    if (!(a >= 0.0)) config_error("grid.a1_over_omega values must be >= 0");
  }
}

void rd_resolve(json& c) { rd_check(c); }
std::size_t rd_size(const json& c) { return grid(c, "delta_over_omega").size() * grid(c, "a1_over_omega").size(); }

KindOutput rd_run(const json& c, const RunContext& ctx) {
  const auto qr = parse_qr_colors(get_string(c, "qr_colors", ""));
  const Rates r = parse_rates(c.at("drives"), "drives.");
  const NoiseSpec noise = parse_noise(c);
  const auto deltas = grid(c, "delta_over_omega");
  const auto a1s = grid(c, "a1_over_omega");
  const SpaceLayout layout = layout_from(c);
  std::vector<std::pair<double, double>> pts;
  std::vector<std::vector<Cell>> params;
  for (double dl : deltas) {
    for (double a : a1s) {
      pts.emplace_back(dl, a);
      params.push_back({num(dl), num(a)});
    }
  }
  return sweep({"delta_over_omega", "a1_over_omega", "qr_colors", "fidelity", "purity", "parity",
                "closed_form_residual", "closed_form_overlap"},
               std::move(params), ctx.workers, [&](std::size_t i) {
                 const double delta = pts[i].first * r.omega;
                 const double a1 = pts[i].second * r.omega;
                 const RabiDressedState rs = rabi_dressed_state(delta, a1, r.omega);
                 const StabilizationPlan plan = plan_for(build_qubit_block(rabi_dressed_drives(delta, a1, r.omega)), r, qr);
                 const PointMetrics m = steady_point(assemble_planned_system(plan, layout), noise, rs.target.amplitudes);
                 PointOut out;
                 out.cells.push_back(txt(color_pair(plan.colors)));
                 append_metrics(out.cells, m);
                 out.cells.push_back(num(rs.closed_form_residual / r.omega));
                 out.cells.push_back(num(rs.closed_form_overlap));
                 absorb(out.numerics, m);
                 return out;
               });
}

}  // namespace

const std::vector<KindSpec>& kind_specs() {
  static const std::vector<KindSpec> specs{
      {ScenarioKind::time_domain, "time_domain", "Fig. 2",
       "Lindblad evolution of Psi- or Phi- stabilization from |gg00> with optional simulated tomography",
       td_defaults, td_resolve, td_size, td_run},
      {ScenarioKind::theta_spectroscopy, "theta_spectroscopy", "Fig. 3",
       "Steady-state fidelity of Psi_theta / Phi_theta over the blending angle", ts_defaults, ts_resolve, ts_size,
       ts_run},
      {ScenarioKind::parity_switch, "parity_switch", "Fig. 4",
       "Alternating even / odd stabilization with exponential fits of the parity signature", ps_defaults,
       ps_resolve, ps_size, ps_run},
      {ScenarioKind::tphi_sweep, "tphi_sweep", "Appendix C(a)", "Steady-state Bell fidelity versus qubit dephasing time",
       tp_defaults, tp_resolve, tp_size, tp_run},
      {ScenarioKind::kappa_sweep, "kappa_sweep", "Appendix C(b)",
       "Steady-state Bell fidelity versus resonator decay at fixed W, no dephasing", ks_defaults, ks_resolve,
       ks_size, ks_run},
      {ScenarioKind::omega_kappa_map, "omega_kappa_map", "Appendix C(c)",
       "Steady-state Bell infidelity over QQ rate and kappa with W = kappa", ok_defaults, ok_resolve, ok_size,
       ok_run},
      {ScenarioKind::dressed_parity_sweep, "dressed_parity_sweep", "Fig. 6",
       "Dressed-parity states from a QQ sideband plus a Rabi drive on q1", dp_defaults, dp_resolve, dp_size,
       dp_run},
      {ScenarioKind::rabi_dressed_map, "rabi_dressed_map", "Fig. 7",
       "Two-parameter manifold over QQ detuning and Rabi amplitude", rd_defaults, rd_resolve, rd_size, rd_run},
      {ScenarioKind::rate_model_compare, "rate_model_compare", "Fig. 3 (analytic curves)",
       "Lindblad steady-state fidelity against the rate-equation prediction", rm_defaults, rm_resolve, rm_size,
       rm_run},
  };
  return specs;
}

}  // namespace stabsim::detail
