#include "stabsim/targets.hpp"

#include "stabsim/errors.hpp"

#include <cmath>
#include <numbers>

namespace stabsim {

std::string_view to_string(TargetFamily f) {
  switch (f) {
    case TargetFamily::psi_theta: return "psi_theta";
    case TargetFamily::phi_theta: return "phi_theta";
    case TargetFamily::product: return "product";
    case TargetFamily::dressed_parity: return "dressed_parity";
    case TargetFamily::rabi_dressed: return "rabi_dressed";
    case TargetFamily::custom: return "custom";
  }
  return "?";
}

TargetFamily parse_target_family(std::string_view s) {
  if (s == "psi_theta") return TargetFamily::psi_theta;
  if (s == "phi_theta") return TargetFamily::phi_theta;
  if (s == "product") return TargetFamily::product;
  if (s == "dressed_parity") return TargetFamily::dressed_parity;
  if (s == "rabi_dressed") return TargetFamily::rabi_dressed;
  if (s == "custom") return TargetFamily::custom;
  throw InvalidArgument("unknown target family '" + std::string(s) + "'");
}

namespace {

Vector amp(Complex gg, Complex ge, Complex eg, Complex ee) {
  Vector v(4);
  v << gg, ge, eg, ee;
  return v;
}

}  // namespace

StabilizationTarget psi_theta(double theta) {
  return {TargetFamily::psi_theta, {theta}, amp(std::sin(theta / 2), 0, 0, -std::cos(theta / 2))};
}

StabilizationTarget phi_theta(double theta) {
  return {TargetFamily::phi_theta, {theta}, amp(0, std::sin(theta / 2), -std::cos(theta / 2), 0)};
}

StabilizationTarget product_state(double phi1, double phi2) {
  Vector a(2), b(2);
  a << std::cos(phi1 / 2), std::sin(phi1 / 2);
  b << std::cos(phi2 / 2), std::sin(phi2 / 2);
  return {TargetFamily::product, {phi1, phi2}, kron(a, b)};
}

StabilizationTarget dressed_parity_state(double theta1) {
  const double r = 1.0 / std::numbers::sqrt2;
  const double c = std::cos(theta1 / 2);
  const double s = std::sin(theta1 / 2);
  return {TargetFamily::dressed_parity, {theta1}, amp(c * r, s * r, -s * r, -c * r)};
}

StabilizationTarget custom_target(const Vector& amplitudes) {
  if (amplitudes.size() != 4) throw InvalidArgument("target needs 4 amplitudes");
  const double n = amplitudes.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidArgument("target amplitudes must be non-zero");
  return {TargetFamily::custom, {}, fix_phase_first(amplitudes / n)};
}

double blending_angle(double omega, double delta) {
  if (!(omega > 0.0)) throw InvalidArgument("blending angle needs Omega > 0");
  const double big = std::hypot(omega, delta);
  // (delta + Delta) / Omega == Omega / (Delta - delta); the second form is
  // free of cancellation for delta < 0.
  const double t = delta >= 0.0 ? (delta + big) / omega : omega / (big - delta);
  return 2.0 * std::atan(t);
}

double detuning_for_angle(double omega, double theta) {
  if (!(omega > 0.0)) throw InvalidArgument("Omega must be > 0");
  if (!(theta > 0.0 && theta < std::numbers::pi)) throw InvalidArgument("theta must lie in (0, pi)");
  const double t = std::tan(theta / 2);
  return omega * (t - 1.0 / t) / 2.0;
}

double dressing_angle(double omega, double a1, Color color) {
  if (!(omega > 0.0)) throw InvalidArgument("dressing angle needs Omega > 0");
  if (!(a1 >= 0.0)) throw InvalidArgument("A1 must be >= 0");
  const double blue = 2.0 * std::atan(2.0 * a1 / (omega + std::sqrt(4.0 * a1 * a1 + omega * omega)));
  return color == Color::blue ? blue : std::numbers::pi - blue;
}

RabiDressedCoefficients rabi_dressed_coefficients(double d, double a, double o) {
  if (!(o > 0.0)) throw InvalidArgument("Rabi-dressed state needs Omega > 0");
  RabiDressedCoefficients c;
  c.x = std::sqrt(4 * d * d * a * a + 4 * a * a * o * o + o * o * o * o);
  c.y = std::sqrt(d * d + 2 * (2 * a * a + o * o + c.x));
  const double den = 2 * a * a + o * o + c.x;
  const double num = d * d + o * o + c.x + d * c.y;
  c.e00 = (d - c.y) * num / (2 * o * den);
  c.e01 = a * (d - c.y) / den;
  c.e10 = -a * num / (o * den);
  return c;
}

DriveSet rabi_dressed_drives(double delta, double a1, double omega) {
  DriveSet d;
  d.qq = QQDrive{Color::blue, omega, delta, DetuningPlacement::symmetric};
  d.rabi_q1 = RabiDrive{a1, 0.0};
  return d;
}

RabiDressedState rabi_dressed_state(double delta, double a1, double omega) {
  RabiDressedState out;
  out.coefficients = rabi_dressed_coefficients(delta, a1, omega);
  const ComplexOperator hg = build_qubit_block(rabi_dressed_drives(delta, a1, omega));
  const EigenSystem eig = eigendecompose(hg);
  out.target = custom_target(eig.vectors.col(0));
  out.target.family = TargetFamily::rabi_dressed;
  out.target.params = {delta, a1, omega};

  const auto& c = out.coefficients;
  Vector xi = amp(c.e00, c.e01, c.e10, -1.0);
  xi /= xi.norm();
  out.closed_form = xi;
  out.closed_form_residual = (hg.matrix() * xi - eig.values(0) * xi).norm();
  out.closed_form_overlap = std::norm(xi.dot(out.target.amplitudes));
  return out;
}

double fidelity(const Matrix& rho4, const Vector& psi) {
  if (rho4.rows() != 4 || rho4.cols() != 4 || psi.size() != 4) {
    throw InvalidArgument("fidelity needs a two-qubit state");
  }
  return psi.dot(rho4 * psi).real();
}

double fidelity(const DensityMatrix& rho, const StabilizationTarget& target) {
  if (rho.dim() != 4) throw InvalidArgument("fidelity needs a two-qubit state; use partial_trace first");
  return fidelity(rho.matrix(), target.amplitudes);
}

double purity(const DensityMatrix& rho) { return rho.purity(); }

double parity_signature(const Matrix& rho4) {
  if (rho4.rows() != 4 || rho4.cols() != 4) throw InvalidArgument("parity signature needs a two-qubit state");
  return 2.0 * (std::abs(rho4(3, 0)) - std::abs(rho4(1, 2)));
}

double parity_signature(const DensityMatrix& rho) { return parity_signature(rho.matrix()); }

}  // namespace stabsim
