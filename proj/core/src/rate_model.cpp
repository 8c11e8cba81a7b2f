#include "stabsim/rate_model.hpp"

#include "stabsim/errors.hpp"

#include <cmath>
#include <string>

namespace stabsim {

namespace {

double cos2(double theta) {
  const double c = std::cos(theta / 2);
  return c * c;
}

double sin2(double theta) {
  const double s = std::sin(theta / 2);
  return s * s;
}

void require(bool ok, const char* msg) {
  if (!ok) throw InvalidArgument(msg);
}

}  // namespace

double refilling_rate(double w, double kappa, double theta, Color color) {
  require(w > 0.0 && kappa > 0.0, "refilling rate needs W > 0 and kappa > 0");
  const double c2 = color == Color::blue ? cos2(theta) : sin2(theta);
  const double wc = w * w * c2;
  return wc * kappa / (kappa * kappa + wc);
}

double optimal_kappa(double w, double theta, Color color) {
  require(w > 0.0, "optimal kappa needs W > 0");
  return w * std::abs(color == Color::blue ? std::cos(theta / 2) : std::sin(theta / 2));
}

Populations steady_populations(double gt, double g, double theta) {
  require(gt >= 0.0, "refilling rate must be >= 0");
  require(g > 0.0, "qubit decay rate must be > 0");
  const double c2 = cos2(theta);
  const double s2 = sin2(theta);
  Populations p;
  const double r = (gt + g * s2) / (gt + g);
  p.w = r * r;
  p.x = c2 * g / (gt + g - c2 * g) * p.w;
  p.y = p.x;
  p.z = c2 * g / (gt + s2 * g) * p.x;
  return p;
}

RateModel make_rate_model(double gt, double g, double theta) {
  return {gt, g, theta, steady_populations(gt, g, theta)};
}

double steady_fidelity(double gt, double g, double theta, Color color) {
  require(gt >= 0.0 && g >= 0.0, "rates must be >= 0");
  if (gt + g == 0.0) return 1.0;
  const double r = (gt + g * (color == Color::blue ? sin2(theta) : cos2(theta))) / (gt + g);
  return r * r;
}

Eigen::Vector4d rate_matrix_steady_state(const Eigen::Matrix4d& rates) {
  Eigen::Matrix4d gen = Eigen::Matrix4d::Zero();
  double scale = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      const double r = rates(i, j);
      if (!std::isfinite(r) || r < 0.0) throw InvalidArgument("transition rates must be finite and >= 0");
      gen(j, i) += r;
      gen(i, i) -= r;
      scale = std::max(scale, r);
    }
  }
  if (scale == 0.0) throw ReducibleChain("all transition rates are zero");
  Eigen::JacobiSVD<Eigen::Matrix4d> svd(gen / scale, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv(2) < 1e-12) throw ReducibleChain("stationary distribution is not unique");
  Eigen::Vector4d p = svd.matrixV().col(3);
  p /= p.sum();
  for (int i = 0; i < 4; ++i) {
    if (p(i) < 0.0) {
      if (p(i) < -1e-12) throw ReducibleChain("stationary vector has negative entries");
      p(i) = 0.0;
    }
  }
  return p / p.sum();
}

Eigen::Matrix4d even_parity_rates(double gt, double g, double theta) {
  const double c2 = cos2(theta);
  const double s2 = sin2(theta);
  Eigen::Matrix4d r = Eigen::Matrix4d::Zero();
  // 0 = Psi_theta, 1 = ge, 2 = eg, 3 = Psi_{theta-pi}
  for (int q : {1, 2}) {
    r(q, 0) = gt + s2 * g;
    r(q, 3) = c2 * g;
    r(0, q) = c2 * g;
    r(3, q) = gt + s2 * g;
  }
  return r;
}

Eigen::Matrix4d odd_parity_rates(double gt, double g) {
  Eigen::Matrix4d r = Eigen::Matrix4d::Zero();
  // 0 = gg, 1 = ee, 2 = Phi_theta, 3 = Phi_{theta-pi}
  r(0, 2) = gt;
  r(1, 2) = gt + g;
  r(1, 3) = g;
  r(3, 0) = gt + g;
  r(3, 1) = gt;
  r(2, 0) = g;
  return r;
}

std::array<double, 5> printed_system_residuals(const Populations& p, double gt, double g, double theta) {
  const double c2 = cos2(theta);
  const double s2 = sin2(theta);
  return {(gt + s2 * g) * (p.x + p.y) - 2 * c2 * g * p.w,
          (gt + s2 * g) * p.z + c2 * g * p.w - (gt + g) * p.x,
          (gt + s2 * g) * p.z + c2 * g * p.w - (gt + g) * p.y,
          2 * c2 * g * (p.x + p.y) - (2 * gt + 2 * s2 * g) * p.z,
          p.w + p.x + p.y + p.z - 1.0};
}

std::array<double, 5> corrected_system_residuals(const Populations& p, double gt, double g, double theta) {
  auto r = printed_system_residuals(p, gt, g, theta);
  const double c2 = cos2(theta);
  const double s2 = sin2(theta);
  r[3] = c2 * g * (p.x + p.y) - 2 * (gt + s2 * g) * p.z;
  return r;
}

}  // namespace stabsim
