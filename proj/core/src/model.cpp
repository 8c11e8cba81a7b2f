#include "stabsim/model.hpp"

#include "stabsim/errors.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace stabsim {

std::string_view to_string(Color c) { return c == Color::red ? "red" : "blue"; }

Color parse_color(std::string_view s) {
  if (s == "red") return Color::red;
  if (s == "blue") return Color::blue;
  throw InvalidArgument("unknown sideband color '" + std::string(s) + "'");
}

std::string_view to_string(ColorVariant v) {
  switch (v) {
    case ColorVariant::blue_blue: return "blue_blue";
    case ColorVariant::red_red: return "red_red";
    case ColorVariant::opposite_detuning: return "opposite_detuning";
  }
  return "?";
}

ColorVariant parse_color_variant(std::string_view s) {
  if (s == "blue_blue") return ColorVariant::blue_blue;
  if (s == "red_red") return ColorVariant::red_red;
  if (s == "opposite_detuning") return ColorVariant::opposite_detuning;
  throw InvalidArgument("unknown color variant '" + std::string(s) + "'");
}

namespace {

void check_rate(double v, const char* what) {
  if (!std::isfinite(v) || v < 0.0) throw InvalidArgument(std::string(what) + " must be finite and >= 0");
}

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be finite");
}

// Two-body sideband term between factors a (qubit) and b.
ComplexOperator sideband(const SpaceLayout& layout, Subsystem a, Subsystem b, Color color) {
  const ComplexOperator la = annihilation(layout, a);
  const ComplexOperator lb = annihilation(layout, b);
  const ComplexOperator t = color == Color::blue ? la * lb : la.adjoint() * lb;
  return t + t.adjoint();
}

ComplexOperator qubit_terms(const DriveSet& d, const SpaceLayout& layout) {
  d.validate();
  ComplexOperator h = ComplexOperator::zero(layout);
  if (d.qq) {
    h = h + sideband(layout, Subsystem::q1, Subsystem::q2, d.qq->color) * Complex(d.qq->rate / 2.0);
    const double det = d.qq->detuning;
    if (det != 0.0) {
      if (d.qq->placement == DetuningPlacement::q1_excited) {
        h = h + number_operator(layout, Subsystem::q1) * Complex(det);
      } else {
        // diag(-d/2, d/2, -d/2, d/2) = d (n_q2 - 1/2)
        h = h + (number_operator(layout, Subsystem::q2) -
                 ComplexOperator::identity(layout) * Complex(0.5)) * Complex(det);
      }
    }
  }
  const std::array<std::pair<const std::optional<RabiDrive>*, Subsystem>, 2> rabis{
      {{&d.rabi_q1, Subsystem::q1}, {&d.rabi_q2, Subsystem::q2}}};
  for (const auto& [drive, q] : rabis) {
    if (!*drive) continue;
    const ComplexOperator a = annihilation(layout, q);
    h = h + (a + a.adjoint()) * Complex((*drive)->rate / 2.0);
    if ((*drive)->detuning != 0.0) h = h + number_operator(layout, q) * Complex((*drive)->detuning);
  }
  return h;
}

}  // namespace

void DriveSet::validate() const {
  if (qq) {
    check_rate(qq->rate, "QQ rate");
    check_finite(qq->detuning, "QQ detuning");
  }
  for (const auto* qr : {&qr1, &qr2}) {
    if (*qr) {
      check_rate((*qr)->rate, "QR rate");
      check_finite((*qr)->detuning, "QR detuning");
    }
  }
  for (const auto* rabi : {&rabi_q1, &rabi_q2}) {
    if (*rabi) {
      check_rate((*rabi)->rate, "Rabi rate");
      check_finite((*rabi)->detuning, "Rabi detuning");
    }
  }
}

ComplexOperator assemble_system(const DriveSet& drives, const SpaceLayout& layout) {
  ComplexOperator h = qubit_terms(drives, layout);
  const std::array<std::tuple<const std::optional<QRDrive>*, Subsystem, Subsystem>, 2> qrs{
      {{&drives.qr1, Subsystem::q1, Subsystem::r1}, {&drives.qr2, Subsystem::q2, Subsystem::r2}}};
  for (const auto& [drive, q, r] : qrs) {
    if (!*drive) continue;
    if (!layout.contains(r)) {
      throw InvalidArgument("QR drive on " + std::string(to_string(r)) + " but layout has no such factor");
    }
    h = h + sideband(layout, q, r, (*drive)->color) * Complex((*drive)->rate / 2.0);
    h = h + number_operator(layout, r) * Complex((*drive)->detuning);
  }
  return h;
}

ComplexOperator build_qubit_block(const DriveSet& drives) {
  return qubit_terms(drives, SpaceLayout::qubits());
}

DriveSet even_parity_drives(double omega, double delta, double w1, double w2,
                            ResonatorAssignment assignment) {
  const double big = std::hypot(omega, delta);
  double d1 = (big + delta) / 2.0;
  double d2 = (big - delta) / 2.0;
  if (assignment == ResonatorAssignment::matched) std::swap(d1, d2);
  DriveSet d;
  d.qq = QQDrive{Color::blue, omega, delta, DetuningPlacement::q1_excited};
  d.qr1 = QRDrive{Color::blue, w1, d1};
  d.qr2 = QRDrive{Color::blue, w2, d2};
  return d;
}

ComplexOperator build_even_parity_system(double omega, double delta, double w1, double w2,
                                         const SpaceLayout& layout, ResonatorAssignment assignment) {
  return assemble_system(even_parity_drives(omega, delta, w1, w2, assignment), layout);
}

DriveSet odd_parity_drives(double omega, double delta, double w3, double w4, OddColors colors) {
  const double big = std::hypot(omega, delta);
  DriveSet d;
  d.qq = QQDrive{Color::red, omega, delta, DetuningPlacement::q1_excited};
  if (colors == OddColors::standard) {
    d.qr1 = QRDrive{Color::red, w3, (big + delta) / 2.0};
    d.qr2 = QRDrive{Color::blue, w4, (big - delta) / 2.0};
  } else {
    d.qr1 = QRDrive{Color::blue, w3, (big - delta) / 2.0};
    d.qr2 = QRDrive{Color::red, w4, (big + delta) / 2.0};
  }
  return d;
}

ComplexOperator build_odd_parity_system(double omega, double delta, double w3, double w4,
                                        const SpaceLayout& layout, OddColors colors) {
  return assemble_system(odd_parity_drives(omega, delta, w3, w4, colors), layout);
}

DriveSet color_variant_drives(double omega, double delta, double w1, double w2, ColorVariant variant) {
  DriveSet d = even_parity_drives(omega, delta, w1, w2, ResonatorAssignment::printed);
  switch (variant) {
    case ColorVariant::blue_blue:
      break;
    case ColorVariant::red_red:
      d.qr1->color = Color::red;
      d.qr2->color = Color::red;
      break;
    case ColorVariant::opposite_detuning:
      d.qr1->detuning = -d.qr1->detuning;
      d.qr2->detuning = -d.qr2->detuning;
      break;
  }
  return d;
}

ComplexOperator build_color_variant(double omega, double delta, double w1, double w2,
                                    ColorVariant variant, const SpaceLayout& layout) {
  return assemble_system(color_variant_drives(omega, delta, w1, w2, variant), layout);
}

DriveSet StabilizationPlan::qr_drives() const {
  DriveSet d;
  d.qr1 = QRDrive{colors.qr1, w1, qr1_detuning};
  d.qr2 = QRDrive{colors.qr2, w2, qr2_detuning};
  return d;
}

double energy_matching_violation(const EigenSystem& eigen) {
  if (eigen.values.size() != 4) throw InvalidArgument("energy matching needs a 4-level spectrum");
  const auto& e = eigen.values;
  const double scale = e.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return std::abs(e(0) + e(3) - e(1) - e(2)) / scale;
}

namespace {

constexpr double kMatchingTolerance = 1e-6;

// 4x4 qubit operator the QR sideband applies to the qubit when it emits a
// photon: blue raises the qubit, red lowers it.
Matrix emission_operator(Subsystem q, Color c) {
  const SpaceLayout ql = SpaceLayout::qubits();
  const Matrix a = annihilation(ql, q).matrix();
  return c == Color::blue ? Matrix(a.adjoint()) : a;
}

double assignment_score(const EigenSystem& eig, const std::array<double, 2>& det,
                        const std::array<double, 2>& w, const QRColors& colors) {
  const auto& e = eig.values;
  const double tol = 1e-9 * std::max(1.0, e.cwiseAbs().maxCoeff());
  const std::array<Matrix, 2> ops{emission_operator(Subsystem::q1, colors.qr1),
                                  emission_operator(Subsystem::q2, colors.qr2)};
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  double outflow = 0.0;
  for (int j = 0; j < 2; ++j) {
    for (int x = 1; x <= 2; ++x) {
      if (std::abs(e(x) - e(0) - det[j]) < tol) {
        m(x - 1, j) = (w[j] / 2.0) * eig.vectors.col(0).dot(ops[j] * eig.vectors.col(x));
      }
      if (std::abs(e(3) - e(x) - det[j]) < tol) {
        outflow += std::norm((w[j] / 2.0) * eig.vectors.col(x).dot(ops[j] * eig.vectors.col(3)));
      }
    }
  }
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(m);
  return std::min(svd.singularValues()(1), std::sqrt(outflow));
}

}  // namespace

StabilizationPlan plan_stabilization(const ComplexOperator& hqq, double w1, double w2, QRColors colors) {
  if (hqq.dim() != 4 || !(hqq.layout() == SpaceLayout::qubits())) {
    throw InvalidArgument("plan_stabilization needs a two-qubit (4x4) operator");
  }
  check_rate(w1, "W1");
  check_rate(w2, "W2");
  EigenSystem eig = eigendecompose(hqq);
  const double violation = energy_matching_violation(eig);
  if (violation > kMatchingTolerance) {
    throw EnergyMatchingError("E_A + E_D != E_B + E_C (relative violation " +
                              std::to_string(violation) + ")");
  }
  const double gb = eig.values(1) - eig.values(0);
  const double gc = eig.values(2) - eig.values(0);
  const std::array<std::array<double, 2>, 2> candidates{{{gb, gc}, {gc, gb}}};
  const std::array<double, 2> w{w1, w2};
  int best = 0;
  double best_score = assignment_score(eig, candidates[0], w, colors);
  const double s1 = assignment_score(eig, candidates[1], w, colors);
  if (s1 > best_score * (1.0 + 1e-9) + 1e-12) {
    best = 1;
    best_score = s1;
  }
  StabilizationPlan plan{hqq, eig, eig.values(3) - eig.values(0), candidates[best][0],
                         candidates[best][1], colors, w1, w2,
                         fix_phase_first(eig.vectors.col(0)), best_score};
  return plan;
}

StabilizationPlan select_colors(const ComplexOperator& hqq, double w1, double w2) {
  const std::array<QRColors, 4> order{{{Color::blue, Color::blue},
                                       {Color::red, Color::red},
                                       {Color::red, Color::blue},
                                       {Color::blue, Color::red}}};
  std::optional<StabilizationPlan> best;
  for (const auto& c : order) {
    StabilizationPlan p = plan_stabilization(hqq, w1, w2, c);
    if (!best || p.score > best->score * (1.0 + 1e-9) + 1e-12) best = std::move(p);
  }
  return *best;
}

ComplexOperator assemble_planned_system(const StabilizationPlan& plan, const SpaceLayout& layout) {
  if (!layout.contains(Subsystem::q1) || !layout.contains(Subsystem::q2) || layout.position(Subsystem::q1) != 0 ||
      layout.position(Subsystem::q2) != 1) {
    throw InvalidArgument("layout must start with q1, q2");
  }
  const int rest = layout.total_dim() / 4;
  ComplexOperator h(layout, kron(plan.hqq.matrix(), Matrix::Identity(rest, rest)));
  return h + assemble_system(plan.qr_drives(), layout);
}

LindbladProblem build_lindblad(const ComplexOperator& h, const NoiseSpec& noise) {
  if (!h.hermitian()) throw NotHermitian("Hamiltonian is not Hermitian");
  const SpaceLayout& layout = h.layout();
  LindbladProblem p{h, {}};
  const auto positive = [](double v, const char* what) {
    if (std::isnan(v) || v <= 0.0) throw InvalidArgument(std::string(what) + " must be > 0");
  };
  const std::array<std::pair<double, Subsystem>, 2> kappas{{{noise.kappa1, Subsystem::r1},
                                                            {noise.kappa2, Subsystem::r2}}};
  for (const auto& [k, r] : kappas) {
    if (!layout.contains(r)) continue;
    positive(k, "resonator decay rate");
    if (std::isinf(k)) throw InvalidArgument("resonator decay rate must be finite");
    p.collapse_ops.push_back(annihilation(layout, r) * Complex(std::sqrt(k)));
  }
  const std::array<std::tuple<double, double, Subsystem>, 2> qubits{
      {{noise.t1_q1, noise.tphi_q1, Subsystem::q1}, {noise.t1_q2, noise.tphi_q2, Subsystem::q2}}};
  const double dephasing_factor = noise.dephasing == DephasingModel::rate ? 1.0 : 2.0;
  for (const auto& [t1, tphi, q] : qubits) {
    positive(t1, "qubit T1");
    positive(tphi, "qubit Tphi");
    if (!layout.contains(q)) continue;
    if (std::isfinite(t1)) p.collapse_ops.push_back(annihilation(layout, q) * Complex(std::sqrt(1.0 / t1)));
    if (std::isfinite(tphi)) {
      p.collapse_ops.push_back(number_operator(layout, q) * Complex(std::sqrt(dephasing_factor / tphi)));
    }
  }
  return p;
}

}  // namespace stabsim
