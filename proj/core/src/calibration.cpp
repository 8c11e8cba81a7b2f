#include "stabsim/calibration.hpp"

#include "stabsim/errors.hpp"
#include "stabsim/units.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>

namespace stabsim {

bool adiabatic_valid(const CircuitParams& p) {
  const double ej = std::max(p.ej1, p.ej2);
  return ej > 0.0 && p.ejc / ej > 10.0;
}

namespace {

void check_adiabatic(const CircuitParams& p) {
  if (!(p.ej1 > 0.0 && p.ej2 > 0.0 && p.ejc > 0.0)) throw InvalidArgument("Josephson energies must be > 0");
  if (!adiabatic_valid(p)) throw InvalidArgument("coupler is not heavy enough (E_jc / E_j <= 10)");
  if (!(p.omega_q1 > 0.0 && p.omega_q2 > 0.0)) throw InvalidArgument("qubit frequencies must be > 0");
}

double checked_cos(double phi) {
  const double c = std::cos(phi);
  if (std::abs(c) < 1e-12) throw InvalidArgument("flux bias at the pi/2 singularity");
  return c;
}

double prefactor(const CircuitParams& p) {
  return std::sqrt(p.ej1 * p.ej2) / (2.0 * p.ejc) * std::sqrt(p.omega_q1 * p.omega_q2);
}

}  // namespace

double coupler_g1(const CircuitParams& p, double phi_ext) {
  check_adiabatic(p);
  return prefactor(p) / checked_cos(phi_ext);
}

double qq_sideband_rate(const CircuitParams& p) {
  check_adiabatic(p);
  const double c = checked_cos(p.phi_dc);
  return p.epsilon * prefactor(p) * std::tan(p.phi_dc) / c;
}

double flux_amplitude_for_qq_rate(const CircuitParams& p, double rate) {
  CircuitParams unit = p;
  unit.epsilon = 1.0;
  const double per_eps = qq_sideband_rate(unit);
  if (per_eps == 0.0) throw InvalidArgument("QQ sideband rate vanishes at this flux bias");
  return rate / per_eps;
}

double qr_blue_rate(double g_qr, double epsilon_q, double delta_qr) {
  if (!(g_qr > 0.0 && epsilon_q > 0.0 && delta_qr > 0.0)) {
    throw InvalidArgument("QR blue rate needs positive g, epsilon_q and Delta");
  }
  return 16.0 * g_qr * g_qr * g_qr * epsilon_q * epsilon_q / std::pow(delta_qr, 4);
}

double kappa_from_resonator_t1(double t1_us) {
  if (!(t1_us > 0.0)) throw InvalidArgument("resonator T1 must be > 0");
  return 1.0 / t1_us;
}

StaticCouplings static_couplings(const CircuitParams& p) {
  check_adiabatic(p);
  if (!(p.c_q1 > 0.0 && p.c_q2 > 0.0 && p.c_q12 > 0.0)) throw InvalidArgument("capacitances must be > 0");
  StaticCouplings g;
  g.g1 = prefactor(p) / checked_cos(p.phi_dc);
  g.g2 = std::sqrt(p.c_q1 * p.c_q2) / (2.0 * p.c_q12) * std::sqrt(p.omega_q1 * p.omega_q2);
  return g;
}

CircuitParams DeviceTable::circuit() const {
  CircuitParams p;
  p.ej1 = ej1_ghz;
  p.ej2 = ej2_ghz;
  p.ejc = ejc_ghz;
  p.phi_dc = operating.phi_dc_over_pi * std::numbers::pi;
  p.omega_q1 = mhz(q1_frequency_ghz * 1e3);
  p.omega_q2 = mhz(q2_frequency_ghz * 1e3);
  return p;
}

std::filesystem::path data_directory() {
  if (const char* env = std::getenv("STABSIM_DATA_DIR"); env && *env) return env;
  const std::filesystem::path source = STABSIM_SOURCE_DATA_DIR;
  if (std::filesystem::exists(source / "device_table.json")) return source;
  return STABSIM_INSTALL_DATA_DIR;
}

namespace {

using nlohmann::json;

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError("device table: missing " + where + key);
  return j.at(key);
}

double number(const json& j, const char* key, const std::string& where) {
  const json& v = field(j, key, where);
  if (!v.is_number()) throw ConfigError("device table: " + where + key + " is not a number");
  return v.get<double>();
}

double positive(const json& j, const char* key, const std::string& where) {
  const double v = number(j, key, where);
  if (!(v > 0.0)) throw ConfigError("device table: " + where + key + " must be > 0");
  return v;
}

std::optional<double> optional_positive(const json& j, const char* key, const std::string& where) {
  const json& v = field(j, key, where);
  if (v.is_null()) return std::nullopt;
  return positive(j, key, where);
}

double probability(const json& j, const char* key, const std::string& where) {
  const double v = number(j, key, where);
  if (!(v > 0.5 && v <= 1.0)) throw ConfigError("device table: " + where + key + " must lie in (0.5, 1]");
  return v;
}

QubitCoherence coherence(const json& j, const std::string& where) {
  return {positive(j, "t1_us", where), positive(j, "t_ramsey_us", where),
          optional_positive(j, "t_echo_us", where)};
}

CoherencePoint point(const json& j, const std::string& where) {
  CoherencePoint c;
  c.phi_dc_over_pi = number(j, "phi_dc_over_pi", where);
  c.q1 = coherence(field(j, "q1", where), where + "q1.");
  c.q2 = coherence(field(j, "q2", where), where + "q2.");
  if (j.contains("r1")) c.r1_t1_us = positive(j.at("r1"), "t1_us", where + "r1.");
  if (j.contains("r2")) c.r2_t1_us = positive(j.at("r2"), "t1_us", where + "r2.");
  return c;
}

}  // namespace

DeviceTable load_device_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open device table " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("device table " + path.string() + ": " + e.what());
  }
  DeviceTable t;
  const json& version = field(j, "version", "");
  if (!version.is_string()) throw ConfigError("device table: version must be a string");
  t.version = version.get<std::string>();
  const json& q1 = field(j, "q1", "");
  const json& q2 = field(j, "q2", "");
  t.q1_frequency_ghz = positive(q1, "frequency_ghz", "q1.");
  t.q2_frequency_ghz = positive(q2, "frequency_ghz", "q2.");
  t.q1_anharmonicity_mhz = number(q1, "anharmonicity_mhz", "q1.");
  t.q2_anharmonicity_mhz = number(q2, "anharmonicity_mhz", "q2.");
  t.r1_frequency_ghz = positive(q1, "readout_frequency_ghz", "q1.");
  t.r2_frequency_ghz = positive(q2, "readout_frequency_ghz", "q2.");
  t.readout_fidelity_q1 = probability(q1, "readout_fidelity", "q1.");
  t.readout_fidelity_q2 = probability(q2, "readout_fidelity", "q2.");
  t.zz_khz = number(j, "zz_khz", "");
  const json& coh = field(j, "coherence", "");
  t.operating = point(field(coh, "operating", "coherence."), "coherence.operating.");
  t.sweet_spot = point(field(coh, "sweet_spot", "coherence."), "coherence.sweet_spot.");
  if (!t.operating.r1_t1_us || !t.operating.r2_t1_us) {
    throw ConfigError("device table: resonator lifetimes missing at the operating point");
  }
  const json& circ = field(j, "circuit", "");
  t.ejc_ghz = positive(circ, "ejc_ghz", "circuit.");
  t.ej1_ghz = positive(circ, "ej1_ghz", "circuit.");
  t.ej2_ghz = positive(circ, "ej2_ghz", "circuit.");
  return t;
}

DeviceTable load_device_table() { return load_device_table(data_directory() / "device_table.json"); }

}  // namespace stabsim
