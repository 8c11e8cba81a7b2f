#include "stabsim/errors.hpp"
#include "stabsim/rate_model.hpp"
#include "stabsim/units.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace stabsim;

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Vector4d as_vector(const Populations& p) { return {p.w, p.x, p.y, p.z}; }

}  // namespace

TEST(RefillingRate, Examples) {
  EXPECT_NEAR(refilling_rate(2.0, 0.5, kPi, Color::blue), 0.0, 1e-15);
  const double w = 3.0;
  const double th = 1.2;
  const double c = std::cos(th / 2);
  EXPECT_NEAR(refilling_rate(w, w * c, th, Color::blue), w * c / 2, 1e-14);
  const double s = std::sin(th / 2);
  EXPECT_NEAR(refilling_rate(w, w * s, th, Color::red), w * s / 2, 1e-14);
  EXPECT_THROW(refilling_rate(0.0, 1.0, 1.0, Color::blue), InvalidArgument);
  EXPECT_THROW(refilling_rate(1.0, 0.0, 1.0, Color::blue), InvalidArgument);
}

TEST(RefillingRate, ReferenceValue) {
  const double g = refilling_rate(mhz(0.47), mhz(0.33), kPi / 2, Color::blue);
  EXPECT_NEAR(to_mhz(g), 0.17, 0.01);
}

TEST(OptimalKappa, Examples) {
  EXPECT_NEAR(optimal_kappa(2.0, kPi / 2, Color::blue), 2.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(optimal_kappa(2.0, kPi, Color::blue), 0.0, 1e-15);
  EXPECT_NEAR(optimal_kappa(2.0, kPi, Color::red), 2.0, 1e-15);
}

TEST(OptimalKappa, GridArgmax) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> uw(0.1, 10.0);
  std::uniform_real_distribution<double> ut(0.05, kPi - 0.05);
  for (int trial = 0; trial < 1000; ++trial) {
    const double w = uw(rng);
    const double th = ut(rng);
    const Color c = trial % 2 ? Color::red : Color::blue;
    const int n = 4000;
    const double step = 2.0 * w / n;
    double best_k = 0.0;
    double best = -1.0;
    int ups = 0;
    double prev = -1.0;
    for (int i = 1; i <= n; ++i) {
      const double k = i * step;
      const double v = refilling_rate(w, k, th, c);
      if (v > best) {
        best = v;
        best_k = k;
      }
      if (prev >= 0 && v < prev && ups == 0) ups = 1;
      if (ups == 1 && v > prev + 1e-15) ups = 2;
      prev = v;
    }
    EXPECT_NEAR(best_k, optimal_kappa(w, th, c), step) << trial;
    EXPECT_NE(ups, 2) << "not unimodal at trial " << trial;
  }
}

TEST(SteadyPopulations, Limits) {
  const Populations inf = steady_populations(1e12, 0.1, 1.0);
  EXPECT_NEAR(inf.w, 1.0, 1e-9);
  EXPECT_NEAR(inf.x + inf.y + inf.z, 0.0, 1e-9);
  const Populations idle = steady_populations(0.0, 0.1, kPi);
  EXPECT_NEAR(idle.w, 1.0, 1e-15);
  EXPECT_NEAR(idle.x, 0.0, 1e-15);
  EXPECT_NEAR(idle.z, 0.0, 1e-15);
  EXPECT_THROW(steady_populations(1.0, 0.0, 1.0), InvalidArgument);
}

TEST(SteadyPopulations, CorrectedSystemResidual) {
  const Populations p = steady_populations(1.0, 0.05, kPi / 2);
  for (double r : corrected_system_residuals(p, 1.0, 0.05, kPi / 2)) EXPECT_LT(std::abs(r), 1e-12);
}

TEST(SteadyPopulations, PrintedFourthEquationDoesNotHold) {
  // The first three printed equations and normalization hold; the fourth
  // carries an extra factor 2 on the inflow term.
  const Populations p = steady_populations(1.0, 0.05, kPi / 2);
  const auto r = printed_system_residuals(p, 1.0, 0.05, kPi / 2);
  for (int i : {0, 1, 2, 4}) EXPECT_LT(std::abs(r[i]), 1e-12);
  EXPECT_GT(std::abs(r[3]), 1e-6);
}

TEST(SteadyPopulations, OracleEquivalenceGrid) {
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      for (int k = 0; k < 10; ++k) {
        const double gt = 0.01 * std::pow(10.0, 0.4 * i);
        const double g = 0.005 * std::pow(10.0, 0.25 * j);
        const double th = kPi * (k + 0.5) / 10.0;
        const Populations p = steady_populations(gt, g, th);
        EXPECT_NEAR(p.w + p.x + p.y + p.z, 1.0, 1e-12);
        EXPECT_GE(std::min({p.w, p.x, p.y, p.z}), 0.0);
        const Eigen::Vector4d oracle = rate_matrix_steady_state(even_parity_rates(gt, g, th));
        EXPECT_LT((as_vector(p) - oracle).cwiseAbs().maxCoeff(), 1e-9) << gt << " " << g << " " << th;
        for (double r : corrected_system_residuals(p, gt, g, th)) EXPECT_LT(std::abs(r), 1e-12);
      }
    }
  }
}

TEST(SteadyFidelity, Examples) {
  EXPECT_DOUBLE_EQ(steady_fidelity(1.0, 0.0, 1.0, Color::blue), 1.0);
  EXPECT_NEAR(steady_fidelity(1.0, 0.3, kPi, Color::blue), 1.0, 1e-15);
  EXPECT_NEAR(steady_fidelity(1.0, 0.3, 0.0, Color::red), 1.0, 1e-15);
  const double gt = refilling_rate(mhz(0.47), mhz(0.33), kPi / 2, Color::blue);
  const double g = 0.5 * (1.0 / 25 + 1.0 / 12);
  const double f = steady_fidelity(gt, g, kPi / 2, Color::blue);
  EXPECT_NEAR(f, 0.95, 0.01);
  EXPECT_NEAR(f, rate_matrix_steady_state(even_parity_rates(gt, g, kPi / 2))(0), 1e-12);
}

TEST(SteadyFidelity, EqualsW) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.01, 3.0);
  for (int i = 0; i < 200; ++i) {
    const double gt = u(rng), g = u(rng), th = u(rng);
    EXPECT_DOUBLE_EQ(steady_fidelity(gt, g, th, Color::blue), steady_populations(gt, g, th).w);
    EXPECT_EQ(make_rate_model(gt, g, th).populations.w, steady_populations(gt, g, th).w);
  }
}

TEST(SteadyFidelity, MonotoneInRefilling) {
  for (double th : {0.3, kPi / 2, 2.5}) {
    double prev = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double f = steady_fidelity(0.01 * (i + 1), 0.07, th, Color::blue);
      EXPECT_GT(f, prev);
      prev = f;
    }
  }
}

TEST(RateMatrix, SymmetricTwoState) {
  Eigen::Matrix4d r = Eigen::Matrix4d::Zero();
  r(0, 1) = 2.0;
  r(1, 0) = 2.0;
  r(2, 0) = 1.0;
  r(3, 1) = 1.0;
  const Eigen::Vector4d p = rate_matrix_steady_state(r);
  EXPECT_NEAR(p(0), 0.5, 1e-12);
  EXPECT_NEAR(p(1), 0.5, 1e-12);
  EXPECT_NEAR(p(2) + p(3), 0.0, 1e-12);
}

TEST(RateMatrix, PureDecayEndsInLowestState) {
  Eigen::Matrix4d r = Eigen::Matrix4d::Zero();
  r(3, 2) = 1.0;
  r(2, 1) = 1.0;
  r(1, 0) = 1.0;
  const Eigen::Vector4d p = rate_matrix_steady_state(r);
  EXPECT_NEAR(p(0), 1.0, 1e-12);
}

TEST(RateMatrix, Errors) {
  EXPECT_THROW(rate_matrix_steady_state(Eigen::Matrix4d::Zero()), ReducibleChain);
  Eigen::Matrix4d split = Eigen::Matrix4d::Zero();
  split(0, 1) = split(1, 0) = 1.0;
  split(2, 3) = split(3, 2) = 1.0;
  EXPECT_THROW(rate_matrix_steady_state(split), ReducibleChain);
  Eigen::Matrix4d neg = Eigen::Matrix4d::Zero();
  neg(0, 1) = -1.0;
  EXPECT_THROW(rate_matrix_steady_state(neg), InvalidArgument);
}

TEST(OddRates, NoDecayIsPerfect) {
  const Eigen::Vector4d p = rate_matrix_steady_state(odd_parity_rates(1.0, 1e-14));
  EXPECT_NEAR(p(2), 1.0, 1e-9);
  const Eigen::Vector4d q = rate_matrix_steady_state(odd_parity_rates(1.0, 0.1));
  EXPECT_LT(q(2), 1.0);
  EXPECT_GT(q(2), 0.5);
}
