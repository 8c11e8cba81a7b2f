#include "stabsim/errors.hpp"
#include "stabsim/targets.hpp"
#include "stabsim/tomography.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace stabsim;
using stabsim::testing::amp;

namespace {

constexpr double kPi = std::numbers::pi;
const SpaceLayout kQ = SpaceLayout::qubits();

DensityMatrix psi_minus() { return DensityMatrix::pure(kQ, psi_theta(kPi / 2).amplitudes); }

std::vector<std::array<double, 4>> exact_frequencies(const Matrix& rho, double f1, double f2) {
  std::vector<std::array<double, 4>> out;
  for (const auto& s : default_settings()) out.push_back(outcome_probabilities(rho, s, f1, f2));
  return out;
}

std::vector<std::array<double, 4>> frequencies(const CountsTable& c) {
  std::vector<std::array<double, 4>> out;
  for (const auto& row : c.counts) {
    const double n = static_cast<double>(row[0] + row[1] + row[2] + row[3]);
    out.push_back({row[0] / n, row[1] / n, row[2] / n, row[3] / n});
  }
  return out;
}

Matrix pauli2(char a, char b) {
  const auto one = [](char c) {
    Matrix m = Matrix::Zero(2, 2);
    if (c == 'I') m << 1, 0, 0, 1;
    if (c == 'X') m << 0, 1, 1, 0;
    if (c == 'Y') m << 0, Complex(0, -1), Complex(0, 1), 0;
    if (c == 'Z') m << 1, 0, 0, -1;
    return m;
  };
  return kron(one(a), one(b));
}

double frobenius(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

}  // namespace

TEST(Settings, NamesAndOrder) {
  const auto s = default_settings();
  ASSERT_EQ(s.size(), 9u);
  EXPECT_EQ(s[0], (TomographySetting{PreRotation::I, PreRotation::I}));
  EXPECT_EQ(s[1], (TomographySetting{PreRotation::I, PreRotation::X90}));
  EXPECT_EQ(s[3], (TomographySetting{PreRotation::X90, PreRotation::I}));
  for (const auto& t : s) EXPECT_EQ(parse_setting(setting_name(t)), t);
  for (int o = 0; o < 4; ++o) EXPECT_EQ(parse_outcome(outcome_name(o)), o);
  EXPECT_EQ(outcome_name(2), "eg");
  EXPECT_THROW(parse_setting("Z90-I"), ConfigError);
  EXPECT_THROW(parse_outcome("xx"), ConfigError);
}

TEST(Settings, PreRotationsAreUnitary) {
  for (PreRotation r : {PreRotation::I, PreRotation::X90, PreRotation::Y90}) {
    const Matrix u = pre_rotation_matrix(r);
    EXPECT_LT(max_abs_difference(u * u.adjoint(), Matrix::Identity(2, 2)), 1e-15);
  }
  const Matrix x = pre_rotation_matrix(PreRotation::X90);
  const double s = 1.0 / std::sqrt(2.0);
  Matrix expect(2, 2);
  expect << s, Complex(0, -s), Complex(0, -s), s;
  EXPECT_LT(max_abs_difference(x, expect), 1e-15);
}

TEST(Simulate, GroundAllInGg) {
  TomographySettings s;
  s.shots_per_setting = 1000;
  const std::array<int, 2> gg{0, 0};
  const CountsTable c = simulate_tomography(DensityMatrix::basis_state(kQ, gg), s);
  EXPECT_EQ(c.counts[0][0], 1000);
  for (const auto& row : c.counts) EXPECT_EQ(row[0] + row[1] + row[2] + row[3], 1000);
}

TEST(Simulate, MaximallyMixedUniform) {
  TomographySettings s;
  s.shots_per_setting = 20000;
  const CountsTable c = simulate_tomography(DensityMatrix::maximally_mixed(kQ), s);
  const double n = s.shots_per_setting;
  const double sigma = std::sqrt(n * 0.25 * 0.75);
  for (const auto& row : c.counts) {
    for (auto k : row) EXPECT_LT(std::abs(k - n / 4), 5 * sigma);
  }
}

TEST(Simulate, ConfusionConvolvedDistribution) {
  TomographySettings s;
  s.shots_per_setting = 1000000;
  s.readout_fidelity_q1 = 0.8887;
  s.readout_fidelity_q2 = 0.8176;
  const DensityMatrix rho = psi_minus();
  const CountsTable c = simulate_tomography(rho, s);
  for (std::size_t k = 0; k < c.settings.size(); ++k) {
    const auto p = outcome_probabilities(rho.matrix(), c.settings[k], 0.8887, 0.8176);
    for (int o = 0; o < 4; ++o) {
      const double mean = s.shots_per_setting * p[o];
      const double sigma = std::sqrt(s.shots_per_setting * p[o] * (1 - p[o]));
      EXPECT_LT(std::abs(c.counts[k][o] - mean), 5 * sigma + 1e-9);
    }
  }
  // readout flips on Psi-: gg keeps f1 f2 + (1-f1)(1-f2) of the 1/2 weight
  const auto p = outcome_probabilities(rho.matrix(), c.settings[0], 0.8887, 0.8176);
  EXPECT_NEAR(p[0], 0.5 * (0.8887 * 0.8176 + 0.1113 * 0.1824), 1e-12);
}

TEST(Simulate, SeedDeterminism) {
  TomographySettings s;
  s.rng_seed = 42;
  s.trial = 3;
  const CountsTable a = simulate_tomography(psi_minus(), s);
  const CountsTable b = simulate_tomography(psi_minus(), s);
  EXPECT_EQ(a.counts, b.counts);
  s.trial = 4;
  EXPECT_NE(simulate_tomography(psi_minus(), s).counts, a.counts);
}

TEST(Reconstruct, ExactFrequenciesAreIdentity) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix rho = stabsim::testing::random_density(4, rng);
    const Matrix est = linear_inversion(default_settings(), exact_frequencies(rho, 1.0, 1.0), 1.0, 1.0);
    EXPECT_LT(max_abs_difference(est, rho), 1e-12);
    EXPECT_LT(max_abs_difference(project_to_physical(est).matrix(), rho), 1e-12);
    const Matrix noisy = linear_inversion(default_settings(), exact_frequencies(rho, 0.9, 0.75), 0.9, 0.75);
    EXPECT_LT(max_abs_difference(noisy, rho), 1e-12);
  }
}

TEST(Reconstruct, SingularConfusion) {
  EXPECT_THROW(linear_inversion(default_settings(), exact_frequencies(Matrix::Identity(4, 4) / 4.0, 1, 1), 0.5, 1.0),
               SingularConfusion);
}

TEST(Reconstruct, IncompleteSettings) {
  const std::vector<TomographySetting> only_z{{PreRotation::I, PreRotation::I}};
  const std::vector<std::array<double, 4>> f{{0.25, 0.25, 0.25, 0.25}};
  EXPECT_THROW(linear_inversion(only_z, f, 1.0, 1.0), InvalidArgument);
}

TEST(Reconstruct, ProjectionIsPhysical) {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1.2;
  m(1, 1) = -0.2;
  const DensityMatrix p = project_to_physical(m);
  EXPECT_NEAR(p.trace(), 1.0, 1e-12);
  EXPECT_NEAR(p.matrix()(0, 0).real(), 1.0, 1e-12);
}

TEST(Reconstruct, FiveThousandShotsMonteCarlo) {
  const DensityMatrix rho = psi_minus();
  int good = 0;
  for (int trial = 0; trial < 200; ++trial) {
    TomographySettings s;
    s.rng_seed = 2024;
    s.trial = trial;
    const DensityMatrix est = reconstruct(simulate_tomography(rho, s), s);
    if (frobenius(est.matrix(), rho.matrix()) < 0.05) ++good;
    EXPECT_NEAR(est.trace(), 1.0, 1e-12);
  }
  EXPECT_GE(good, 190);
}

TEST(Reconstruct, ConfusionInversionIsUnbiased) {
  const DensityMatrix rho = psi_minus();
  const std::vector<std::pair<char, char>> ops{{'Z', 'Z'}, {'X', 'X'}, {'Y', 'Y'}, {'Z', 'I'}, {'I', 'X'}};
  const int trials = 200;
  std::vector<double> sum(ops.size(), 0.0), sum2(ops.size(), 0.0);
  for (int trial = 0; trial < trials; ++trial) {
    TomographySettings s;
    s.shots_per_setting = 2000;
    s.readout_fidelity_q1 = 0.8887;
    s.readout_fidelity_q2 = 0.8176;
    s.rng_seed = 9;
    s.trial = trial;
    const Matrix est = linear_inversion(s.settings, frequencies(simulate_tomography(rho, s)), 0.8887, 0.8176);
    for (std::size_t k = 0; k < ops.size(); ++k) {
      const double v = (est * pauli2(ops[k].first, ops[k].second)).trace().real();
      sum[k] += v;
      sum2[k] += v * v;
    }
  }
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const double mean = sum[k] / trials;
    const double var = sum2[k] / trials - mean * mean;
    const double expect = (rho.matrix() * pauli2(ops[k].first, ops[k].second)).trace().real();
    EXPECT_LT(std::abs(mean - expect), 3 * std::sqrt(var / trials) + 1e-12) << ops[k].first << ops[k].second;
  }
}

TEST(Reconstruct, ErrorScalesAsInverseSqrtShots) {
  const Vector psi = psi_theta(kPi / 2).amplitudes;
  const DensityMatrix rho(kQ, 0.8 * psi * psi.adjoint() + 0.2 * Matrix::Identity(4, 4) / 4.0);
  std::vector<double> lx, ly;
  for (int n : {1000, 10000, 100000}) {
    double err = 0.0;
    const int trials = 60;
    for (int trial = 0; trial < trials; ++trial) {
      TomographySettings s;
      s.shots_per_setting = n;
      s.rng_seed = 77;
      s.trial = trial;
      err += frobenius(reconstruct(simulate_tomography(rho, s), s).matrix(), rho.matrix());
    }
    lx.push_back(std::log(n));
    ly.push_back(std::log(err / trials));
  }
  const double mx = (lx[0] + lx[1] + lx[2]) / 3;
  const double my = (ly[0] + ly[1] + ly[2]) / 3;
  double num = 0.0, den = 0.0;
  for (int i = 0; i < 3; ++i) {
    num += (lx[i] - mx) * (ly[i] - my);
    den += (lx[i] - mx) * (lx[i] - mx);
  }
  EXPECT_NEAR(num / den, -0.5, 0.1);
}

TEST(CountsCsv, RoundTrip) {
  TomographySettings s;
  s.shots_per_setting = 321;
  const CountsTable c = simulate_tomography(psi_minus(), s);
  std::stringstream ss;
  write_counts_csv(ss, c);
  EXPECT_EQ(ss.str().substr(0, 21), "setting,outcome,count");
  const CountsTable back = read_counts_csv(ss);
  EXPECT_EQ(back.settings, c.settings);
  EXPECT_EQ(back.counts, c.counts);
}

TEST(CountsCsv, MalformedInput) {
  std::stringstream none("");
  EXPECT_THROW(read_counts_csv(none), ConfigError);
  std::stringstream bad("setting,outcome,count\nI-I,gg,abc\n");
  EXPECT_THROW(read_counts_csv(bad), ConfigError);
  std::stringstream partial("setting,outcome,count\nI-I,gg,3\n");
  EXPECT_THROW(read_counts_csv(partial), ConfigError);
}
