#pragma once

// Composite Hilbert space of two qubits and two resonators, dense operator
// algebra on it, and density-matrix utilities.
//
// Basis states are ordered |Q1 Q2 R1 R2> with the mixed-radix index
//   (((i_q1 * d_q2) + i_q2) * d_r1 + i_r1) * d_r2 + i_r2,
// level 0 = |g> (qubits) or |0> (resonators).

#include <Eigen/Dense>

#include <complex>
#include <set>
#include <span>
#include <string_view>
#include <vector>

namespace stabsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class Subsystem { q1 = 0, q2 = 1, r1 = 2, r2 = 3 };

std::string_view to_string(Subsystem s);
/// Throws InvalidArgument for anything other than "q1", "q2", "r1", "r2".
Subsystem parse_subsystem(std::string_view label);

struct Factor {
  Subsystem label;
  int dim;
  friend bool operator==(const Factor&, const Factor&) = default;
};

/// Ordered tensor-product layout. Any subset of {q1, q2, r1, r2} is allowed
/// but always in that order; every factor has dimension >= 2.
class SpaceLayout {
 public:
  /// q1, q2, r1, r2 all two-level (16 states).
  SpaceLayout();
  explicit SpaceLayout(std::vector<Factor> factors);

  static SpaceLayout qubits();
  static SpaceLayout with_resonator_dim(int resonator_dim);

  const std::vector<Factor>& factors() const { return factors_; }
  int total_dim() const { return total_dim_; }
  bool contains(Subsystem s) const;
  int dim(Subsystem s) const;
  std::size_t position(Subsystem s) const;

  /// Basis index for per-factor levels given in layout order.
  int index(std::span<const int> levels) const;
  /// Inverse of index().
  std::vector<int> levels(int index) const;

  SpaceLayout restricted_to(const std::set<Subsystem>& keep) const;

  friend bool operator==(const SpaceLayout& a, const SpaceLayout& b) {
    return a.factors_ == b.factors_;
  }

 private:
  std::vector<Factor> factors_;
  int total_dim_ = 1;
};

inline constexpr double kHermitianTolerance = 1e-9;

/// Dense operator on a layout. The hermitian flag is computed once at
/// construction: set iff max |M - M^dag| < 1e-9 element-wise.
class ComplexOperator {
 public:
  ComplexOperator(SpaceLayout layout, Matrix entries);

  static ComplexOperator zero(const SpaceLayout& layout);
  static ComplexOperator identity(const SpaceLayout& layout);

  const SpaceLayout& layout() const { return layout_; }
  const Matrix& matrix() const { return entries_; }
  int dim() const { return static_cast<int>(entries_.rows()); }
  bool hermitian() const { return hermitian_; }
  Complex operator()(int row, int col) const { return entries_(row, col); }

  ComplexOperator adjoint() const;

  ComplexOperator operator+(const ComplexOperator& rhs) const;
  ComplexOperator operator-(const ComplexOperator& rhs) const;
  ComplexOperator operator*(const ComplexOperator& rhs) const;
  ComplexOperator operator*(Complex scale) const;
  friend ComplexOperator operator*(Complex scale, const ComplexOperator& op) {
    return op * scale;
  }

 private:
  SpaceLayout layout_;
  Matrix entries_;
  bool hermitian_ = false;
};

double max_abs_difference(const Matrix& a, const Matrix& b);

Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);

/// Embeds a single-factor matrix into the layout (identity elsewhere).
ComplexOperator embed(const SpaceLayout& layout, Subsystem s, const Matrix& local);

/// Lowering operator of one factor: local entries (m, m+1) = sqrt(m+1).
ComplexOperator annihilation(const SpaceLayout& layout, Subsystem s);
ComplexOperator number_operator(const SpaceLayout& layout, Subsystem s);

struct DensityTolerance {
  double hermitian = 1e-9;
  double trace = 1e-9;
  double min_eigenvalue = -1e-8;
};

/// Physical state: Hermitian, unit trace, positive semidefinite (within the
/// tolerances, checked at construction).
class DensityMatrix {
 public:
  DensityMatrix(SpaceLayout layout, Matrix entries, DensityTolerance tolerance = {});

  /// |psi><psi| with psi normalized first.
  static DensityMatrix pure(const SpaceLayout& layout, const Vector& psi);
  static DensityMatrix basis_state(const SpaceLayout& layout, std::span<const int> levels);
  static DensityMatrix maximally_mixed(const SpaceLayout& layout);

  const SpaceLayout& layout() const { return layout_; }
  const Matrix& matrix() const { return entries_; }
  int dim() const { return static_cast<int>(entries_.rows()); }
  Complex operator()(int row, int col) const { return entries_(row, col); }

  double trace() const { return entries_.trace().real(); }
  double min_eigenvalue() const;
  double purity() const;
  const DensityTolerance& tolerance() const { return tolerance_; }

 private:
  SpaceLayout layout_;
  Matrix entries_;
  DensityTolerance tolerance_;
};

struct EigenSystem {
  Eigen::VectorXd values;  // ascending
  Matrix vectors;          // orthonormal columns
};

/// Hermitian eigendecomposition with a fixed phase convention: the
/// largest-magnitude component of every eigenvector is real positive (ties
/// go to the lowest index). Throws NotHermitian.
EigenSystem eigendecompose(const ComplexOperator& op);
EigenSystem eigendecompose(const Matrix& hermitian);

/// Reduced state on `keep`. Throws InvalidArgument for an empty set or a
/// label absent from the layout. The result is checked against the input's
/// tolerances.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::set<Subsystem>& keep);
Matrix partial_trace(const SpaceLayout& layout, const Matrix& rho, const std::set<Subsystem>& keep);

/// Tr(rho * op); throws InvalidArgument on layout mismatch.
Complex expectation(const DensityMatrix& rho, const ComplexOperator& op);

double trace_distance(const Matrix& a, const Matrix& b);

/// Multiplies v by a unit phase so its largest-magnitude entry is real
/// positive (ties to the lowest index).
Vector fix_phase_largest(const Vector& v);
/// Multiplies v by a unit phase so its first non-negligible entry is real
/// positive.
Vector fix_phase_first(const Vector& v, double threshold = 1e-12);

}  // namespace stabsim
