#pragma once

// Adiabatic-coupler sideband rate formulas and the bundled device constants.
//
// Josephson energies share one unit (GHz in the data file); only their
// ratios enter. Rates come out in the unit of omega_q / g_qr.

#include <filesystem>
#include <optional>
#include <string>

namespace stabsim {

struct CircuitParams {
  double ej1 = 0.0;
  double ej2 = 0.0;
  double ejc = 0.0;
  double phi_dc = 0.0;  // radians
  double epsilon = 0.0;
  double omega_q1 = 0.0;
  double omega_q2 = 0.0;
  double g_qr = 0.0;
  double delta_qr = 0.0;
  double epsilon_q = 0.0;
  double c_q1 = 0.0;
  double c_q2 = 0.0;
  double c_q12 = 0.0;
};

/// E_jc / max(E_j1, E_j2) > 10.
bool adiabatic_valid(const CircuitParams& p);

/// g1 at external flux phase phi: sqrt(Ej1 Ej2) / (2 Ejc cos phi) sqrt(wq1 wq2).
double coupler_g1(const CircuitParams& p, double phi_ext);

/// epsilon sqrt(Ej1 Ej2)/(2 Ejc) sqrt(wq1 wq2) tan(phi_dc)/cos(phi_dc).
/// Throws InvalidArgument when not adiabatic-valid or at phi_dc = pi/2.
double qq_sideband_rate(const CircuitParams& p);
/// Flux amplitude epsilon that gives `rate` at the other parameters of p.
double flux_amplitude_for_qq_rate(const CircuitParams& p, double rate);

/// W = 16 g^3 eps^2 / Delta^4; all inputs > 0.
double qr_blue_rate(double g_qr, double epsilon_q, double delta_qr);

/// 1 / t1 (angular rate per us for t1 in us).
double kappa_from_resonator_t1(double t1_us);

struct StaticCouplings {
  double g1 = 0.0;
  double g2 = 0.0;
};

/// g2 = sqrt(Cq1 Cq2)/(2 Cq12) sqrt(wq1 wq2); needs capacitances > 0.
StaticCouplings static_couplings(const CircuitParams& p);

struct QubitCoherence {
  double t1_us = 0.0;
  double t_ramsey_us = 0.0;
  std::optional<double> t_echo_us;
};

struct CoherencePoint {
  double phi_dc_over_pi = 0.0;
  QubitCoherence q1;
  QubitCoherence q2;
  std::optional<double> r1_t1_us;
  std::optional<double> r2_t1_us;
};

struct DeviceTable {
  std::string version;
  double q1_frequency_ghz = 0.0;
  double q2_frequency_ghz = 0.0;
  double q1_anharmonicity_mhz = 0.0;
  double q2_anharmonicity_mhz = 0.0;
  double r1_frequency_ghz = 0.0;
  double r2_frequency_ghz = 0.0;
  /// Stored for reference; nothing applies it.
  double zz_khz = 0.0;
  double readout_fidelity_q1 = 0.0;
  double readout_fidelity_q2 = 0.0;
  CoherencePoint operating;
  CoherencePoint sweet_spot;
  double ejc_ghz = 0.0;
  double ej1_ghz = 0.0;
  double ej2_ghz = 0.0;

  /// Circuit parameters at the operating point with qubit frequencies in rad/us.
  CircuitParams circuit() const;
};

/// Directory with the bundled data files: $STABSIM_DATA_DIR if set, else the
/// source tree, else the install prefix.
std::filesystem::path data_directory();

/// Throws ConfigError on a missing file, a missing field or a non-physical value.
DeviceTable load_device_table(const std::filesystem::path& path);
DeviceTable load_device_table();

}  // namespace stabsim
