#include "stabsim/hilbert.hpp"

#include "stabsim/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

namespace stabsim {

std::string_view to_string(Subsystem s) {
  switch (s) {
    case Subsystem::q1: return "q1";
    case Subsystem::q2: return "q2";
    case Subsystem::r1: return "r1";
    case Subsystem::r2: return "r2";
  }
  return "?";
}

Subsystem parse_subsystem(std::string_view label) {
  if (label == "q1") return Subsystem::q1;
  if (label == "q2") return Subsystem::q2;
  if (label == "r1") return Subsystem::r1;
  if (label == "r2") return Subsystem::r2;
  throw InvalidArgument("unknown subsystem label '" + std::string(label) + "'");
}

SpaceLayout::SpaceLayout()
    : SpaceLayout({{Subsystem::q1, 2}, {Subsystem::q2, 2}, {Subsystem::r1, 2}, {Subsystem::r2, 2}}) {}

SpaceLayout::SpaceLayout(std::vector<Factor> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw InvalidArgument("layout needs at least one factor");
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].dim < 2) {
      throw InvalidArgument("factor " + std::string(to_string(factors_[i].label)) +
                            " has dimension < 2");
    }
    if (i > 0 && static_cast<int>(factors_[i].label) <= static_cast<int>(factors_[i - 1].label)) {
      throw InvalidArgument("layout labels must be unique and ordered q1, q2, r1, r2");
    }
    total_dim_ *= factors_[i].dim;
  }
}

SpaceLayout SpaceLayout::qubits() { return SpaceLayout({{Subsystem::q1, 2}, {Subsystem::q2, 2}}); }

SpaceLayout SpaceLayout::with_resonator_dim(int resonator_dim) {
  return SpaceLayout({{Subsystem::q1, 2},
                      {Subsystem::q2, 2},
                      {Subsystem::r1, resonator_dim},
                      {Subsystem::r2, resonator_dim}});
}

bool SpaceLayout::contains(Subsystem s) const {
  return std::any_of(factors_.begin(), factors_.end(), [s](const Factor& f) { return f.label == s; });
}

std::size_t SpaceLayout::position(Subsystem s) const {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].label == s) return i;
  }
  throw InvalidArgument("subsystem " + std::string(to_string(s)) + " not in layout");
}

int SpaceLayout::dim(Subsystem s) const { return factors_[position(s)].dim; }

int SpaceLayout::index(std::span<const int> levels) const {
  if (levels.size() != factors_.size()) throw InvalidArgument("level count does not match layout");
  int idx = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (levels[i] < 0 || levels[i] >= factors_[i].dim) throw InvalidArgument("level out of range");
    idx = idx * factors_[i].dim + levels[i];
  }
  return idx;
}

std::vector<int> SpaceLayout::levels(int index) const {
  std::vector<int> out(factors_.size());
  for (std::size_t i = factors_.size(); i-- > 0;) {
    out[i] = index % factors_[i].dim;
    index /= factors_[i].dim;
  }
  return out;
}

SpaceLayout SpaceLayout::restricted_to(const std::set<Subsystem>& keep) const {
  std::vector<Factor> kept;
  for (const auto& f : factors_) {
    if (keep.contains(f.label)) kept.push_back(f);
  }
  return SpaceLayout(std::move(kept));
}

double max_abs_difference(const Matrix& a, const Matrix& b) {
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

ComplexOperator::ComplexOperator(SpaceLayout layout, Matrix entries)
    : layout_(std::move(layout)), entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) throw InvalidArgument("operator must be square");
  if (entries_.rows() != layout_.total_dim()) {
    throw InvalidArgument("operator dimension does not match layout");
  }
  hermitian_ = max_abs_difference(entries_, entries_.adjoint()) < kHermitianTolerance;
}

ComplexOperator ComplexOperator::zero(const SpaceLayout& layout) {
  return {layout, Matrix::Zero(layout.total_dim(), layout.total_dim())};
}

ComplexOperator ComplexOperator::identity(const SpaceLayout& layout) {
  return {layout, Matrix::Identity(layout.total_dim(), layout.total_dim())};
}

ComplexOperator ComplexOperator::adjoint() const { return {layout_, entries_.adjoint()}; }

namespace {

void require_same_layout(const SpaceLayout& a, const SpaceLayout& b) {
  if (!(a == b)) throw InvalidArgument("layout mismatch");
}

}  // namespace

ComplexOperator ComplexOperator::operator+(const ComplexOperator& rhs) const {
  require_same_layout(layout_, rhs.layout_);
  return {layout_, entries_ + rhs.entries_};
}

ComplexOperator ComplexOperator::operator-(const ComplexOperator& rhs) const {
  require_same_layout(layout_, rhs.layout_);
  return {layout_, entries_ - rhs.entries_};
}

ComplexOperator ComplexOperator::operator*(const ComplexOperator& rhs) const {
  require_same_layout(layout_, rhs.layout_);
  return {layout_, entries_ * rhs.entries_};
}

ComplexOperator ComplexOperator::operator*(Complex scale) const { return {layout_, entries_ * scale}; }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

ComplexOperator embed(const SpaceLayout& layout, Subsystem s, const Matrix& local) {
  const std::size_t pos = layout.position(s);
  if (local.rows() != layout.factors()[pos].dim || local.cols() != local.rows()) {
    throw InvalidArgument("local operator dimension does not match factor");
  }
  Matrix out = Matrix::Identity(1, 1);
  for (std::size_t i = 0; i < layout.factors().size(); ++i) {
    const int d = layout.factors()[i].dim;
    out = kron(out, i == pos ? local : Matrix::Identity(d, d));
  }
  return {layout, std::move(out)};
}

ComplexOperator annihilation(const SpaceLayout& layout, Subsystem s) {
  const int d = layout.dim(s);
  Matrix a = Matrix::Zero(d, d);
  for (int m = 0; m + 1 < d; ++m) a(m, m + 1) = std::sqrt(static_cast<double>(m + 1));
  return embed(layout, s, a);
}

ComplexOperator number_operator(const SpaceLayout& layout, Subsystem s) {
  const int d = layout.dim(s);
  Matrix n = Matrix::Zero(d, d);
  for (int m = 0; m < d; ++m) n(m, m) = static_cast<double>(m);
  return embed(layout, s, n);
}

DensityMatrix::DensityMatrix(SpaceLayout layout, Matrix entries, DensityTolerance tolerance)
    : layout_(std::move(layout)), entries_(std::move(entries)), tolerance_(tolerance) {
  if (entries_.rows() != entries_.cols() || entries_.rows() != layout_.total_dim()) {
    throw InvalidArgument("density matrix dimension does not match layout");
  }
  if (!entries_.allFinite()) throw InvalidArgument("density matrix has non-finite entries");
  if (max_abs_difference(entries_, entries_.adjoint()) >= tolerance.hermitian) {
    throw InvalidArgument("density matrix is not Hermitian");
  }
  if (std::abs(entries_.trace() - Complex(1.0)) > tolerance.trace) {
    throw InvalidArgument("density matrix trace is not 1");
  }
  if (min_eigenvalue() < tolerance.min_eigenvalue) {
    throw InvalidArgument("density matrix is not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::pure(const SpaceLayout& layout, const Vector& psi) {
  if (psi.size() != layout.total_dim()) throw InvalidArgument("state vector dimension mismatch");
  const double norm = psi.norm();
  if (norm == 0.0) throw InvalidArgument("zero state vector");
  const Vector v = psi / norm;
  return {layout, v * v.adjoint()};
}

DensityMatrix DensityMatrix::basis_state(const SpaceLayout& layout, std::span<const int> levels) {
  Vector psi = Vector::Zero(layout.total_dim());
  psi(layout.index(levels)) = 1.0;
  return pure(layout, psi);
}

DensityMatrix DensityMatrix::maximally_mixed(const SpaceLayout& layout) {
  const int d = layout.total_dim();
  return {layout, Matrix::Identity(d, d) / static_cast<double>(d)};
}

double DensityMatrix::min_eigenvalue() const {
  const Matrix h = 0.5 * (entries_ + entries_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

double DensityMatrix::purity() const { return (entries_ * entries_).trace().real(); }

Vector fix_phase_largest(const Vector& v) {
  Eigen::Index best = 0;
  double best_mag = -1.0;
  const double tie = 1e-12 * std::max(1.0, v.cwiseAbs().maxCoeff());
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const double mag = std::abs(v(k));
    if (mag > best_mag + tie) {
      best_mag = mag;
      best = k;
    }
  }
  if (best_mag <= 0.0) return v;
  return v * (std::conj(v(best)) / best_mag);
}

Vector fix_phase_first(const Vector& v, double threshold) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const double mag = std::abs(v(k));
    if (mag > threshold) return v * (std::conj(v(k)) / mag);
  }
  return v;
}

EigenSystem eigendecompose(const Matrix& hermitian) {
  if (hermitian.rows() != hermitian.cols()) throw InvalidArgument("eigendecompose needs a square matrix");
  if (max_abs_difference(hermitian, hermitian.adjoint()) >= kHermitianTolerance) {
    throw NotHermitian("eigendecompose called on a non-Hermitian matrix");
  }
  const Matrix h = 0.5 * (hermitian + hermitian.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) throw Error("Hermitian eigensolver did not converge");
  EigenSystem out{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index k = 0; k < out.vectors.cols(); ++k) {
    out.vectors.col(k) = fix_phase_largest(out.vectors.col(k));
  }
  return out;
}

EigenSystem eigendecompose(const ComplexOperator& op) {
  if (!op.hermitian()) throw NotHermitian("eigendecompose called on a non-Hermitian operator");
  return eigendecompose(op.matrix());
}

Matrix partial_trace(const SpaceLayout& full, const Matrix& rho, const std::set<Subsystem>& keep) {
  if (keep.empty()) throw InvalidArgument("partial_trace needs a non-empty keep set");
  for (Subsystem s : keep) {
    if (!full.contains(s)) {
      throw InvalidArgument("partial_trace: " + std::string(to_string(s)) + " not in layout");
    }
  }
  if (rho.rows() != full.total_dim() || rho.cols() != full.total_dim()) {
    throw InvalidArgument("partial_trace: matrix does not match layout");
  }
  const SpaceLayout reduced_layout = full.restricted_to(keep);
  if (reduced_layout == full) return rho;

  std::vector<bool> kept(full.factors().size());
  for (std::size_t i = 0; i < kept.size(); ++i) kept[i] = keep.contains(full.factors()[i].label);

  const int d = full.total_dim();
  std::vector<int> kept_index(d);
  std::vector<int> traced_index(d);
  for (int i = 0; i < d; ++i) {
    const auto lv = full.levels(i);
    int k = 0;
    int t = 0;
    for (std::size_t f = 0; f < lv.size(); ++f) {
      if (kept[f]) {
        k = k * full.factors()[f].dim + lv[f];
      } else {
        t = t * full.factors()[f].dim + lv[f];
      }
    }
    kept_index[i] = k;
    traced_index[i] = t;
  }

  const int dr = reduced_layout.total_dim();
  Matrix out = Matrix::Zero(dr, dr);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (traced_index[i] == traced_index[j]) out(kept_index[i], kept_index[j]) += rho(i, j);
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::set<Subsystem>& keep) {
  Matrix out = partial_trace(rho.layout(), rho.matrix(), keep);
  return {rho.layout().restricted_to(keep), std::move(out), rho.tolerance()};
}

Complex expectation(const DensityMatrix& rho, const ComplexOperator& op) {
  if (!(rho.layout() == op.layout())) throw InvalidArgument("expectation: layout mismatch");
  return (rho.matrix() * op.matrix()).trace();
}

double trace_distance(const Matrix& a, const Matrix& b) {
  const Matrix diff = a - b;
  const Matrix h = 0.5 * (diff + diff.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace stabsim
