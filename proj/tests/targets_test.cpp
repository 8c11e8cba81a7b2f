#include "stabsim/errors.hpp"
#include "stabsim/model.hpp"
#include "stabsim/targets.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace stabsim;
using stabsim::testing::amp;
using stabsim::testing::overlap;

namespace {

constexpr double kPi = std::numbers::pi;
const double kS = 1.0 / std::sqrt(2.0);

Vector lowest(const ComplexOperator& h) { return eigendecompose(h).vectors.col(0); }

}  // namespace

TEST(PsiTheta, Examples) {
  EXPECT_LT((psi_theta(kPi / 2).amplitudes - amp(kS, 0, 0, -kS)).norm(), 1e-15);
  EXPECT_LT((psi_theta(kPi).amplitudes - amp(1, 0, 0, 0)).norm(), 1e-15);
  EXPECT_EQ(psi_theta(1.0).family, TargetFamily::psi_theta);
  EXPECT_DOUBLE_EQ(psi_theta(1.0).params.at(0), 1.0);
}

TEST(PhiTheta, Examples) {
  EXPECT_LT((phi_theta(0).amplitudes - amp(0, 0, -1, 0)).norm(), 1e-15);
  EXPECT_LT((phi_theta(kPi / 2).amplitudes - amp(0, kS, -kS, 0)).norm(), 1e-15);
}

TEST(ProductState, Examples) {
  EXPECT_LT((product_state(0, 0).amplitudes - amp(1, 0, 0, 0)).norm(), 1e-15);
  EXPECT_LT((product_state(kPi, kPi).amplitudes - amp(0, 0, 0, 1)).norm(), 1e-15);
  EXPECT_LT((product_state(kPi / 2, 0).amplitudes - amp(kS, 0, kS, 0)).norm(), 1e-15);
}

TEST(CustomTarget, NormalizesAndFixesPhase) {
  const StabilizationTarget t = custom_target(amp(0, Complex(0, 2), 0, 0));
  EXPECT_NEAR(t.amplitudes.norm(), 1.0, 1e-15);
  EXPECT_NEAR(t.amplitudes(1).real(), 1.0, 1e-15);
  EXPECT_THROW(custom_target(Vector::Zero(4)), InvalidArgument);
  EXPECT_THROW(custom_target(Vector::Ones(3)), InvalidArgument);
}

TEST(Families, UnitNorm) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 2 * kPi);
  for (int i = 0; i < 200; ++i) {
    EXPECT_NEAR(psi_theta(u(rng)).amplitudes.norm(), 1.0, 1e-12);
    EXPECT_NEAR(phi_theta(u(rng)).amplitudes.norm(), 1.0, 1e-12);
    EXPECT_NEAR(product_state(u(rng), u(rng)).amplitudes.norm(), 1.0, 1e-12);
    EXPECT_NEAR(dressed_parity_state(u(rng)).amplitudes.norm(), 1.0, 1e-12);
  }
}

TEST(BlendingAngle, Examples) {
  for (double om : {0.3, 1.0, 12.0}) EXPECT_NEAR(blending_angle(om, 0.0), kPi / 2, 1e-14);
  EXPECT_LT(blending_angle(1.0, -1e6), 1e-5);
  EXPECT_THROW(blending_angle(0.0, 1.0), InvalidArgument);
}

TEST(BlendingAngle, RootFindingOracle) {
  // bisection on tan(theta/2) = (delta + Delta) / Omega
  const double om = 1.0;
  const double de = 1.0 / std::sqrt(3.0);
  const double rhs = (de + std::hypot(om, de)) / om;
  double lo = 0.0;
  double hi = kPi - 1e-12;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std::tan(mid / 2) < rhs ? lo : hi) = mid;
  }
  EXPECT_NEAR(blending_angle(om, de), 0.5 * (lo + hi), 1e-12);
  EXPECT_NEAR(blending_angle(om, de), 2 * kPi / 3, 1e-12);
}

TEST(BlendingAngle, InverseRoundTrip) {
  for (double th : {0.2, 1.0, kPi / 2, 2.5, 3.0}) {
    EXPECT_NEAR(blending_angle(2.3, detuning_for_angle(2.3, th)), th, 1e-12);
  }
  EXPECT_THROW(detuning_for_angle(1.0, 0.0), InvalidArgument);
  EXPECT_THROW(detuning_for_angle(1.0, kPi), InvalidArgument);
}

TEST(BlendingAngle, PsiThetaIsLowestEigenvector) {
  for (double th : {0.3, 1.0, kPi / 2, 2.0, 2.9}) {
    const double om = 3.0;
    DriveSet d;
    d.qq = QQDrive{Color::blue, om, detuning_for_angle(om, th)};
    EXPECT_GT(overlap(lowest(build_qubit_block(d)), psi_theta(th).amplitudes), 1 - 1e-9) << th;
  }
}

TEST(DressingAngle, Examples) {
  EXPECT_NEAR(dressing_angle(2.0, 0.0, Color::blue), 0.0, 1e-15);
  EXPECT_NEAR(dressing_angle(2.0, 0.0, Color::red), kPi, 1e-15);
  EXPECT_LT((dressed_parity_state(0).amplitudes - amp(kS, 0, 0, -kS)).norm(), 1e-15);
  EXPECT_NEAR(overlap(dressed_parity_state(kPi).amplitudes, amp(0, kS, -kS, 0)), 1.0, 1e-15);
}

TEST(DressingAngle, BlueEigenvectorOracle) {
  DriveSet d;
  d.qq = QQDrive{Color::blue, 2.0, 0.0};
  d.rabi_q1 = RabiDrive{1.0, 0.0};
  const double t1 = dressing_angle(2.0, 1.0, Color::blue);
  EXPECT_GT(overlap(lowest(build_qubit_block(d)), dressed_parity_state(t1).amplitudes), 1 - 1e-9);
}

TEST(DressingAngle, RedEigenvectorOracle) {
  DriveSet d;
  d.qq = QQDrive{Color::red, 2.0, 0.0};
  d.rabi_q1 = RabiDrive{1.0, 0.0};
  const double t1 = dressing_angle(2.0, 1.0, Color::red);
  EXPECT_GT(overlap(lowest(build_qubit_block(d)), dressed_parity_state(t1).amplitudes), 1 - 1e-9);
}

TEST(DressingAngle, RedAndBlueSumToPi) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.01, 20.0);
  for (int i = 0; i < 200; ++i) {
    const double om = u(rng);
    const double a1 = u(rng);
    EXPECT_NEAR(dressing_angle(om, a1, Color::blue) + dressing_angle(om, a1, Color::red), kPi, 1e-12);
  }
}

TEST(RabiDressed, OriginIsPsiMinus) {
  const double om = 2.0;
  const RabiDressedState s = rabi_dressed_state(0.0, 0.0, om);
  EXPECT_NEAR(overlap(s.target.amplitudes, amp(kS, 0, 0, -kS)), 1.0, 1e-12);
  EXPECT_EQ(s.target.family, TargetFamily::rabi_dressed);
}

TEST(RabiDressed, ClosedFormAtOriginIsNotTheLowestState) {
  const double om = 2.0;
  const RabiDressedState s = rabi_dressed_state(0.0, 0.0, om);
  EXPECT_NEAR(s.coefficients.x, om * om, 1e-12);
  EXPECT_NEAR(s.coefficients.y, 2 * om, 1e-12);
  EXPECT_NEAR(s.coefficients.e00, -1.0, 1e-12);
  EXPECT_NEAR(overlap(s.closed_form, amp(-1, 0, 0, -1)), 1.0, 1e-12);
  EXPECT_NEAR(s.closed_form_overlap, 0.0, 1e-12);
  // (gg+ee)/sqrt2 sits at +Omega/2, the minimum at -Omega/2
  EXPECT_NEAR(s.closed_form_residual, om, 1e-12);
}

TEST(RabiDressed, CoefficientInvariants) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int i = 0; i < 100; ++i) {
    const double om = 0.1 + u(rng);
    const RabiDressedCoefficients c = rabi_dressed_coefficients(u(rng) - 2.5, u(rng), om);
    EXPECT_GT(c.y, 0.0);
    EXPECT_GE(c.x, om * om * (1 - 1e-12));
  }
  EXPECT_THROW(rabi_dressed_state(0.0, 1.0, 0.0), InvalidArgument);
}

TEST(RabiDressed, TargetIsLowestEigenvector) {
  const RabiDressedState s = rabi_dressed_state(0.4, 0.7, 1.5);
  const Vector v = lowest(build_qubit_block(rabi_dressed_drives(0.4, 0.7, 1.5)));
  EXPECT_NEAR(overlap(s.target.amplitudes, v), 1.0, 1e-12);
  EXPECT_NEAR(s.target.amplitudes.norm(), 1.0, 1e-12);
}

TEST(RabiDressed, StrongRabiLimit) {
  // q1 settles in (|g>-|e>)/sqrt2; the projected QQ term is -(Omega/4) sigma_x on q2.
  const double om = 1.0;
  const RabiDressedState s = rabi_dressed_state(0.0, 100.0 * om, om);
  EXPECT_GT(overlap(s.target.amplitudes, amp(0.5, 0.5, -0.5, -0.5)), 0.999);
}

TEST(Metrics, Fidelity) {
  const Vector psi = psi_theta(1.1).amplitudes;
  const Matrix pure = psi * psi.adjoint();
  EXPECT_NEAR(fidelity(pure, psi), 1.0, 1e-15);
  const Matrix mixed = Matrix::Identity(4, 4) / 4.0;
  EXPECT_NEAR(fidelity(mixed, psi), 0.25, 1e-15);
  EXPECT_NEAR(fidelity(0.8 * pure + 0.2 * mixed, psi), 0.85, 1e-15);
  EXPECT_NEAR(fidelity(DensityMatrix(SpaceLayout::qubits(), pure), psi_theta(1.1)), 1.0, 1e-15);
  EXPECT_THROW(fidelity(Matrix::Identity(2, 2), psi), InvalidArgument);
}

TEST(Metrics, Purity) {
  const SpaceLayout q = SpaceLayout::qubits();
  EXPECT_NEAR(purity(DensityMatrix::maximally_mixed(q)), 0.25, 1e-15);
  EXPECT_NEAR(purity(DensityMatrix::pure(q, phi_theta(0.4).amplitudes)), 1.0, 1e-15);
}

TEST(Metrics, ParitySignature) {
  const Vector psi = psi_theta(kPi / 2).amplitudes;
  const Vector phi = phi_theta(kPi / 2).amplitudes;
  EXPECT_NEAR(parity_signature(Matrix(psi * psi.adjoint())), 1.0, 1e-15);
  EXPECT_NEAR(parity_signature(Matrix(phi * phi.adjoint())), -1.0, 1e-15);
  EXPECT_NEAR(parity_signature(Matrix(Matrix::Identity(4, 4) / 4.0)), 0.0, 1e-15);
  EXPECT_NEAR(parity_signature(Matrix(0.5 * psi * psi.adjoint() + 0.5 * phi * phi.adjoint())), 0.0, 1e-15);
}

TEST(Metrics, ParityIgnoresCoherencePhases) {
  std::mt19937_64 rng(12);
  const Matrix rho = stabsim::testing::random_density(4, rng);
  Vector ph(4);
  ph << 1.0, std::polar(1.0, 0.3), std::polar(1.0, -1.2), std::polar(1.0, 2.0);
  const Matrix u = ph.asDiagonal();
  EXPECT_NEAR(parity_signature(Matrix(u * rho * u.adjoint())), parity_signature(rho), 1e-14);
}

TEST(Families, ParseNames) {
  EXPECT_EQ(parse_target_family("phi_theta"), TargetFamily::phi_theta);
  EXPECT_EQ(to_string(TargetFamily::dressed_parity), "dressed_parity");
  EXPECT_THROW(parse_target_family("chi"), InvalidArgument);
}
