#pragma once

// Lindblad time evolution (fixed-step RK4 on the vectorized density matrix),
// steady states from the Liouvillian kernel, piecewise drive schedules and
// exponential time-constant fits.

#include "stabsim/hilbert.hpp"
#include "stabsim/model.hpp"
#include "stabsim/targets.hpp"

#include <Eigen/SparseCore>

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace stabsim {

using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::ColMajor>;

/// Column-stacking convention: vec(A X B) = (B^T kron A) vec(X).
SparseMatrix liouvillian_sparse(const LindbladProblem& problem);
Matrix liouvillian_dense(const LindbladProblem& problem);

/// -i[H, rho] + sum_k (L rho L^dag - {L^dag L, rho}/2), evaluated directly.
Matrix lindblad_generator(const LindbladProblem& problem, const Matrix& rho);

/// Upper bound on the generator's rate scale, used to pick the RK4 step.
double max_rate(const LindbladProblem& problem);

struct EvolveOptions {
  double max_step = 0.005;  // us
  /// Divides the automatic step; 2 halves it (convergence checks).
  int refine = 1;
  /// Trace error and negative-eigenvalue bound before IntegrationError.
  double tolerance = 1e-6;
  /// Metrics are computed on these factors (must reduce to two qubits).
  std::set<Subsystem> keep{Subsystem::q1, Subsystem::q2};
  std::optional<StabilizationTarget> target;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  std::vector<double> fidelity;  // empty without a target
  std::vector<double> purity;
  std::vector<double> parity;
  double step = 0.0;
  double max_trace_error = 0.0;
  double min_eigenvalue = 1.0;
};

/// Integrates from t = grid.front() (>= 0), recording every grid time.
/// Throws IntegrationError on non-finite states or tolerance breaches.
Trajectory evolve(const LindbladProblem& problem, const DensityMatrix& rho0, const std::vector<double>& grid,
                  const EvolveOptions& options = {});

struct SteadyStateReport {
  DensityMatrix rho;
  double generator_residual = 0.0;  // max |L(rho)|
  double smallest_singular = 0.0;
  double second_singular = 0.0;
  double largest_singular = 0.0;
};

/// Kernel of the dense Liouvillian via SVD; Hermitized and trace-normalized.
/// Throws DegenerateKernel when the second-smallest singular value is below
/// 1e-10 of the largest.
SteadyStateReport steady_state_report(const LindbladProblem& problem);
DensityMatrix steady_state(const LindbladProblem& problem);

struct ScheduleSegment {
  double duration = 0.0;
  DriveSet drives;
  std::string label;
  std::optional<StabilizationTarget> target;
};

struct DriveSchedule {
  std::vector<ScheduleSegment> segments;
  NoiseSpec noise;
  SpaceLayout layout;
  DensityMatrix initial_state;
};

/// Segments run back to back from t = 0; grid times must lie in
/// [0, total duration]. Segment targets override options.target.
Trajectory evolve_schedule(const DriveSchedule& schedule, const std::vector<double>& grid,
                           const EvolveOptions& options = {});

/// Index of the segment active at time t (the later one at a boundary).
std::size_t segment_at(const DriveSchedule& schedule, double t);

enum class FitDirection { rising, falling, either };

struct ExpFit {
  double tau = 0.0;
  double v_inf = 0.0;
  double v0 = 0.0;
  double rms_residual = 0.0;
};

/// Least squares v(t) = v_inf + (v0 - v_inf) exp(-(t - t_0)/tau), t_0 the
/// first time. Needs >= 5 points. Throws FitError when the optimum runs into
/// the tau search bounds or the sign of v_inf - v0 contradicts `direction`.
ExpFit fit_time_constant(const std::vector<double>& times, const std::vector<double>& values,
                         FitDirection direction = FitDirection::either);

}  // namespace stabsim
