#include "stabsim/tomography.hpp"

#include "stabsim/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

namespace stabsim {

namespace {

Matrix pauli(int k) {
  Matrix m(2, 2);
  switch (k) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

std::string_view rotation_name(PreRotation r) {
  switch (r) {
    case PreRotation::I: return "I";
    case PreRotation::X90: return "X90";
    case PreRotation::Y90: return "Y90";
  }
  return "?";
}

PreRotation parse_rotation(std::string_view s) {
  if (s == "I") return PreRotation::I;
  if (s == "X90") return PreRotation::X90;
  if (s == "Y90") return PreRotation::Y90;
  throw ConfigError("unknown pre-rotation '" + std::string(s) + "'");
}

Matrix setting_unitary(const TomographySetting& s) {
  return kron(pre_rotation_matrix(s[0]), pre_rotation_matrix(s[1]));
}

Matrix confusion(double f) {
  Matrix c(2, 2);
  c << f, 1 - f, 1 - f, f;
  return c;
}

// Expresses U^dag (Z^a x Z^b) U as sign * P_i x P_j.
struct PauliTerm {
  int p1 = 0;
  int p2 = 0;
  double sign = 1.0;
};

PauliTerm heisenberg(const Matrix& u, int a, int b) {
  const Matrix obs = kron(a ? pauli(3) : pauli(0), b ? pauli(3) : pauli(0));
  const Matrix rotated = u.adjoint() * obs * u;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const Matrix p = kron(pauli(i), pauli(j));
      const Complex c = (p * rotated).trace() / 4.0;
      if (std::abs(std::abs(c) - 1.0) < 1e-9) return {i, j, c.real() > 0 ? 1.0 : -1.0};
    }
  }
  throw Error("pre-rotation does not map Z to a Pauli operator");
}

}  // namespace

std::string setting_name(const TomographySetting& s) {
  return std::string(rotation_name(s[0])) + "-" + std::string(rotation_name(s[1]));
}

TomographySetting parse_setting(const std::string& name) {
  const auto dash = name.find('-');
  if (dash == std::string::npos) throw ConfigError("malformed setting '" + name + "'");
  return {parse_rotation(name.substr(0, dash)), parse_rotation(name.substr(dash + 1))};
}

std::string_view outcome_name(int outcome) {
  static constexpr std::array<std::string_view, 4> names{"gg", "ge", "eg", "ee"};
  if (outcome < 0 || outcome > 3) throw InvalidArgument("outcome index out of range");
  return names[outcome];
}

int parse_outcome(std::string_view name) {
  for (int k = 0; k < 4; ++k) {
    if (outcome_name(k) == name) return k;
  }
  throw ConfigError("unknown outcome '" + std::string(name) + "'");
}

std::vector<TomographySetting> default_settings() {
  std::vector<TomographySetting> out;
  for (PreRotation a : {PreRotation::I, PreRotation::X90, PreRotation::Y90}) {
    for (PreRotation b : {PreRotation::I, PreRotation::X90, PreRotation::Y90}) out.push_back({a, b});
  }
  return out;
}

Matrix pre_rotation_matrix(PreRotation r) {
  if (r == PreRotation::I) return Matrix::Identity(2, 2);
  const double c = std::cos(std::numbers::pi / 4);
  const double s = std::sin(std::numbers::pi / 4);
  const Matrix p = pauli(r == PreRotation::X90 ? 1 : 2);
  return c * Matrix::Identity(2, 2) - Complex(0, s) * p;
}

std::array<double, 4> outcome_probabilities(const Matrix& rho4, const TomographySetting& setting,
                                            double f1, double f2) {
  if (rho4.rows() != 4 || rho4.cols() != 4) throw InvalidArgument("tomography needs a two-qubit state");
  const Matrix u = setting_unitary(setting);
  const Matrix r = u * rho4 * u.adjoint();
  Eigen::Vector4d born;
  for (int k = 0; k < 4; ++k) born(k) = std::max(0.0, r(k, k).real());
  born /= born.sum();
  const Eigen::Matrix4d c = kron(confusion(f1), confusion(f2)).real();
  const Eigen::Vector4d p = c * born;
  return {p(0), p(1), p(2), p(3)};
}

CountsTable simulate_tomography(const DensityMatrix& rho, const TomographySettings& s) {
  if (rho.dim() != 4) throw InvalidArgument("tomography needs a two-qubit state");
  if (s.shots_per_setting <= 0) throw InvalidArgument("shots per setting must be > 0");
  for (double f : {s.readout_fidelity_q1, s.readout_fidelity_q2}) {
    if (!(f >= 0.0 && f <= 1.0)) throw InvalidArgument("readout fidelity must lie in [0, 1]");
  }
  CountsTable table;
  table.settings = s.settings;
  for (std::size_t k = 0; k < s.settings.size(); ++k) {
    const auto p = outcome_probabilities(rho.matrix(), s.settings[k], s.readout_fidelity_q1,
                                         s.readout_fidelity_q2);
    std::seed_seq seq{static_cast<std::uint32_t>(s.rng_seed), static_cast<std::uint32_t>(s.rng_seed >> 32),
                      static_cast<std::uint32_t>(s.trial), static_cast<std::uint32_t>(s.trial >> 32),
                      static_cast<std::uint32_t>(k)};
    std::mt19937_64 rng(seq);
    std::array<std::int64_t, 4> counts{};
    std::int64_t remaining = s.shots_per_setting;
    double mass = 1.0;
    for (int o = 0; o < 3; ++o) {
      const double q = mass > 0.0 ? std::clamp(p[o] / mass, 0.0, 1.0) : 0.0;
      std::binomial_distribution<std::int64_t> bin(remaining, q);
      counts[o] = remaining > 0 ? bin(rng) : 0;
      remaining -= counts[o];
      mass -= p[o];
    }
    counts[3] = remaining;
    table.counts.push_back(counts);
  }
  return table;
}

Matrix linear_inversion(const std::vector<TomographySetting>& settings,
                        const std::vector<std::array<double, 4>>& frequencies, double f1, double f2) {
  if (settings.size() != frequencies.size()) throw InvalidArgument("settings and frequencies differ in length");
  if (settings.empty()) throw InvalidArgument("no tomography settings");
  for (double f : {f1, f2}) {
    if (!(f > 0.5 && f <= 1.0)) throw SingularConfusion("readout fidelity must lie in (0.5, 1]");
  }
  const Eigen::Matrix4d cinv = kron(confusion(f1), confusion(f2)).real().inverse();

  std::array<std::array<double, 4>, 4> sum{};
  std::array<std::array<int, 4>, 4> n{};
  for (std::size_t k = 0; k < settings.size(); ++k) {
    Eigen::Vector4d freq(frequencies[k].data());
    const Eigen::Vector4d p = cinv * freq;
    const Matrix u = setting_unitary(settings[k]);
    for (auto [a, b] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{1, 1}}) {
      // <Z^a x Z^b> from the corrected outcome distribution.
      double e = 0.0;
      for (int o = 0; o < 4; ++o) {
        const int bit1 = o >> 1;
        const int bit2 = o & 1;
        const int parity = a * bit1 + b * bit2;
        e += (parity % 2 ? -1.0 : 1.0) * p(o);
      }
      const PauliTerm t = heisenberg(u, a, b);
      sum[t.p1][t.p2] += t.sign * e;
      n[t.p1][t.p2] += 1;
    }
  }
  Matrix rho = kron(pauli(0), pauli(0));
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i == 0 && j == 0) continue;
      if (n[i][j] == 0) throw InvalidArgument("settings do not cover every two-qubit Pauli operator");
      rho += (sum[i][j] / n[i][j]) * kron(pauli(i), pauli(j));
    }
  }
  return rho / 4.0;
}

DensityMatrix project_to_physical(const Matrix& estimate) {
  const Matrix h = 0.5 * (estimate + estimate.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0);
  const double total = vals.sum();
  if (!(total > 0.0)) throw Error("estimate has no positive spectrum");
  vals /= total;
  Matrix rho = es.eigenvectors() * vals.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  rho = 0.5 * (rho + rho.adjoint());
  return {SpaceLayout::qubits(), rho};
}

DensityMatrix reconstruct(const CountsTable& counts, const TomographySettings& s) {
  if (counts.settings.size() != counts.counts.size()) throw InvalidArgument("counts table is inconsistent");
  std::vector<std::array<double, 4>> freq;
  for (const auto& c : counts.counts) {
    const std::int64_t total = c[0] + c[1] + c[2] + c[3];
    if (total <= 0) throw InvalidArgument("setting without shots");
    freq.push_back({static_cast<double>(c[0]) / total, static_cast<double>(c[1]) / total,
                    static_cast<double>(c[2]) / total, static_cast<double>(c[3]) / total});
  }
  return project_to_physical(
      linear_inversion(counts.settings, freq, s.readout_fidelity_q1, s.readout_fidelity_q2));
}

void write_counts_csv(std::ostream& out, const CountsTable& counts) {
  out << "setting,outcome,count\n";
  for (std::size_t k = 0; k < counts.settings.size(); ++k) {
    for (int o = 0; o < 4; ++o) {
      out << setting_name(counts.settings[k]) << ',' << outcome_name(o) << ',' << counts.counts[k][o] << '\n';
    }
  }
}

CountsTable read_counts_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "setting,outcome,count") throw ConfigError("missing counts CSV header");
  CountsTable table;
  std::map<std::string, std::size_t> index;
  std::vector<std::array<bool, 4>> seen;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string setting, outcome, count;
    if (!std::getline(ss, setting, ',') || !std::getline(ss, outcome, ',') || !std::getline(ss, count)) {
      throw ConfigError("malformed counts row '" + line + "'");
    }
    auto it = index.find(setting);
    if (it == index.end()) {
      it = index.emplace(setting, table.settings.size()).first;
      table.settings.push_back(parse_setting(setting));
      table.counts.push_back({});
      seen.push_back({});
    }
    const int o = parse_outcome(outcome);
    std::int64_t value = 0;
    try {
      std::size_t used = 0;
      value = std::stoll(count, &used);
      if (used != count.size() || value < 0) throw std::invalid_argument("count");
    } catch (const std::exception&) {
      throw ConfigError("bad count '" + count + "'");
    }
    if (seen[it->second][o]) throw ConfigError("duplicate row for " + setting + "," + outcome);
    seen[it->second][o] = true;
    table.counts[it->second][o] = value;
  }
  for (std::size_t k = 0; k < seen.size(); ++k) {
    for (bool b : seen[k]) {
      if (!b) throw ConfigError("incomplete counts for setting " + setting_name(table.settings[k]));
    }
  }
  return table;
}

}  // namespace stabsim
