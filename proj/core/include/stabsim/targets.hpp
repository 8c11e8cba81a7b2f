#pragma once

// Families of stabilizable two-qubit states, angle formulas and state
// metrics. Amplitudes are in the (gg, ge, eg, ee) basis.

#include "stabsim/hilbert.hpp"
#include "stabsim/model.hpp"

#include <string>
#include <vector>

namespace stabsim {

enum class TargetFamily { psi_theta, phi_theta, product, dressed_parity, rabi_dressed, custom };

std::string_view to_string(TargetFamily f);
TargetFamily parse_target_family(std::string_view s);

struct StabilizationTarget {
  TargetFamily family = TargetFamily::custom;
  /// Family parameters in declaration order: theta | theta | (phi1, phi2) |
  /// theta1 | (delta, A1, Omega).
  std::vector<double> params;
  Vector amplitudes;  // unit norm, size 4
};

/// sin(theta/2)|gg> - cos(theta/2)|ee>
StabilizationTarget psi_theta(double theta);
/// sin(theta/2)|ge> - cos(theta/2)|eg>
StabilizationTarget phi_theta(double theta);
StabilizationTarget product_state(double phi1, double phi2);
/// cos(theta1/2) Psi- + sin(theta1/2) Phi-
StabilizationTarget dressed_parity_state(double theta1);
/// Any normalized 4-vector; phase fixed so the first non-negligible amplitude
/// is real positive.
StabilizationTarget custom_target(const Vector& amplitudes);

/// theta = 2 atan((delta + Delta) / Omega). Throws InvalidArgument for Omega <= 0.
double blending_angle(double omega, double delta);
/// Inverse of blending_angle: delta = Omega (tan(theta/2) - cot(theta/2)) / 2.
/// Requires 0 < theta < pi.
double detuning_for_angle(double omega, double theta);

double dressing_angle(double omega, double a1, Color color);

struct RabiDressedCoefficients {
  double x = 0.0;
  double y = 0.0;
  double e00 = 0.0;
  double e01 = 0.0;
  double e10 = 0.0;
};

struct RabiDressedState {
  RabiDressedCoefficients coefficients;
  /// Lowest eigenvector of the symmetric-placement H_g block.
  StabilizationTarget target;
  /// Normalized closed-form vector (E00, E01, E10, -1).
  Vector closed_form;
  /// || H_g xi - E_min xi ||_2 for the normalized closed form.
  double closed_form_residual = 0.0;
  /// |<xi|target>|^2
  double closed_form_overlap = 0.0;
};

RabiDressedCoefficients rabi_dressed_coefficients(double delta, double a1, double omega);
/// QQ blue at Omega with symmetric detuning delta, Rabi drive A1 on q1.
DriveSet rabi_dressed_drives(double delta, double a1, double omega);
RabiDressedState rabi_dressed_state(double delta, double a1, double omega);

/// <psi|rho|psi>; rho must be 4-dimensional.
double fidelity(const DensityMatrix& rho, const StabilizationTarget& target);
double fidelity(const Matrix& rho4, const Vector& psi);
double purity(const DensityMatrix& rho);
/// 2(|rho_{ee,gg}| - |rho_{ge,eg}|)
double parity_signature(const DensityMatrix& rho);
double parity_signature(const Matrix& rho4);

}  // namespace stabsim
