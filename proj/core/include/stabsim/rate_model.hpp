#pragma once

// Classical four-state rate-equation model of the stabilization: two-step
// refilling rates, closed-form steady populations and fidelity, and a
// numerical rate-matrix solver used as an independent oracle.

#include "stabsim/model.hpp"

#include <Eigen/Dense>

#include <array>

namespace stabsim {

/// Populations of (Psi_theta, ge, eg, Psi_{theta-pi}).
struct Populations {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

struct RateModel {
  double gamma_t = 0.0;
  double gamma = 0.0;
  double theta = 0.0;
  Populations populations;
};

/// blue: W^2 c^2 kappa / (kappa^2 + W^2 c^2) with c = cos(theta/2); red uses sin.
double refilling_rate(double w, double kappa, double theta, Color color);
/// W cos(theta/2) (blue) or W sin(theta/2) (red).
double optimal_kappa(double w, double theta, Color color);

Populations steady_populations(double gamma_t, double gamma, double theta);
RateModel make_rate_model(double gamma_t, double gamma, double theta);

/// blue: ((Gt + gamma sin^2)/(Gt + gamma))^2; red: ((Gt + gamma cos^2)/(Gt + gamma))^2.
double steady_fidelity(double gamma_t, double gamma, double theta, Color color);

/// rates(i, j) is the transition rate i -> j (diagonal ignored). Returns the
/// normalized stationary distribution. Throws ReducibleChain when it is not
/// unique and InvalidArgument for negative rates.
Eigen::Vector4d rate_matrix_steady_state(const Eigen::Matrix4d& rates);

/// Transition rates among (Psi_theta, ge, eg, Psi_{theta-pi}).
Eigen::Matrix4d even_parity_rates(double gamma_t, double gamma, double theta);

/// Transition rates among (gg, ee, Phi_theta, Phi_{theta-pi}) for the odd
/// stabilizer; gamma_t is the refilling rate of the active color.
Eigen::Matrix4d odd_parity_rates(double gamma_t, double gamma);

/// Residuals of the five balance equations exactly as printed.
std::array<double, 5> printed_system_residuals(const Populations& p, double gamma_t, double gamma,
                                               double theta);
/// Same system with the fourth equation written so that the generator
/// conserves probability: c^2 gamma (x + y) - 2 (Gt + s^2 gamma) z = 0.
std::array<double, 5> corrected_system_residuals(const Populations& p, double gamma_t, double gamma,
                                                 double theta);

}  // namespace stabsim
