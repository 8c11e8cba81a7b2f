#include "stabsim/dynamics.hpp"

#include "stabsim/errors.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace stabsim {

namespace {

using Triplet = Eigen::Triplet<Complex>;

// Appends scale * (A kron B) to the triplet list.
void add_kron(std::vector<Triplet>& out, const Matrix& a, const Matrix& b, Complex scale) {
  const Eigen::Index nb = b.rows();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) == Complex(0.0)) continue;
      for (Eigen::Index k = 0; k < nb; ++k) {
        for (Eigen::Index l = 0; l < b.cols(); ++l) {
          if (b(k, l) == Complex(0.0)) continue;
          out.emplace_back(i * nb + k, j * b.cols() + l, scale * a(i, j) * b(k, l));
        }
      }
    }
  }
}

void check_problem(const LindbladProblem& p) {
  if (!p.hamiltonian.hermitian()) throw NotHermitian("Hamiltonian is not Hermitian");
  for (const auto& l : p.collapse_ops) {
    if (!(l.layout() == p.hamiltonian.layout())) throw InvalidArgument("collapse operator layout mismatch");
  }
}

Matrix unvec(const Vector& v, int d) { return Eigen::Map<const Matrix>(v.data(), d, d); }

Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

}  // namespace

SparseMatrix liouvillian_sparse(const LindbladProblem& problem) {
  check_problem(problem);
  const int d = problem.hamiltonian.dim();
  const Matrix id = Matrix::Identity(d, d);
  const Matrix& h = problem.hamiltonian.matrix();
  std::vector<Triplet> t;
  add_kron(t, id, h, Complex(0.0, -1.0));
  add_kron(t, h.transpose(), id, Complex(0.0, 1.0));
  for (const auto& op : problem.collapse_ops) {
    const Matrix& l = op.matrix();
    const Matrix ldl = l.adjoint() * l;
    add_kron(t, l.conjugate(), l, 1.0);
    add_kron(t, id, ldl, -0.5);
    add_kron(t, ldl.transpose(), id, -0.5);
  }
  SparseMatrix out(d * d, d * d);
  out.setFromTriplets(t.begin(), t.end());
  out.prune(Complex(0.0), 0.0);
  return out;
}

Matrix liouvillian_dense(const LindbladProblem& problem) { return Matrix(liouvillian_sparse(problem)); }

Matrix lindblad_generator(const LindbladProblem& problem, const Matrix& rho) {
  check_problem(problem);
  const Matrix& h = problem.hamiltonian.matrix();
  Matrix out = Complex(0.0, -1.0) * (h * rho - rho * h);
  for (const auto& op : problem.collapse_ops) {
    const Matrix& l = op.matrix();
    const Matrix ldl = l.adjoint() * l;
    out += l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
  }
  return out;
}

double max_rate(const LindbladProblem& problem) {
  const auto row_norm = [](const Matrix& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); };
  double r = row_norm(problem.hamiltonian.matrix());
  for (const auto& op : problem.collapse_ops) r += row_norm(op.matrix().adjoint() * op.matrix());
  return r;
}

namespace {

constexpr DensityTolerance kTrajectoryTolerance{1e-6, 1e-6, -1e-6};

struct Stepper {
  SparseMatrix lv;
  double h = 0.0;

  void advance(Vector& v, double duration) const {
    if (duration <= 0.0) return;
    const int n = std::max(1, static_cast<int>(std::ceil(duration / h - 1e-9)));
    const double dt = duration / n;
    Vector k1, k2, k3, k4;
    for (int s = 0; s < n; ++s) {
      k1 = lv * v;
      k2 = lv * (v + (0.5 * dt) * k1);
      k3 = lv * (v + (0.5 * dt) * k2);
      k4 = lv * (v + dt * k3);
      v += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
  }
};

double step_for(const LindbladProblem& p, const EvolveOptions& o) {
  if (!(o.max_step > 0.0) || o.refine < 1) throw InvalidArgument("invalid integrator step options");
  const double rate = max_rate(p);
  double h = o.max_step;
  if (rate > 0.0) h = std::min(h, 1.0 / (50.0 * rate));
  return h / o.refine;
}

void record(Trajectory& traj, const SpaceLayout& layout, const Vector& v, double t, const EvolveOptions& o,
            const std::optional<StabilizationTarget>& target) {
  const int d = layout.total_dim();
  Matrix m = unvec(v, d);
  if (!m.allFinite()) throw IntegrationError("non-finite density matrix at t = " + std::to_string(t));
  m = 0.5 * (m + m.adjoint());
  const double trace_err = std::abs(m.trace().real() - 1.0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues()(0);
  traj.max_trace_error = std::max(traj.max_trace_error, trace_err);
  traj.min_eigenvalue = std::min(traj.min_eigenvalue, min_eig);
  if (trace_err > o.tolerance) {
    throw IntegrationError("trace drifted by " + std::to_string(trace_err) + " at t = " + std::to_string(t));
  }
  if (min_eig < -o.tolerance) {
    throw IntegrationError("negative eigenvalue " + std::to_string(min_eig) + " at t = " + std::to_string(t));
  }
  DensityMatrix rho(layout, m, kTrajectoryTolerance);
  const Matrix r4 = partial_trace(layout, m, o.keep);
  if (r4.rows() != 4) throw InvalidArgument("metrics need the state reduced to two qubits");
  traj.times.push_back(t);
  traj.states.push_back(std::move(rho));
  traj.purity.push_back((r4 * r4).trace().real());
  traj.parity.push_back(parity_signature(r4));
  if (target) traj.fidelity.push_back(fidelity(r4, target->amplitudes));
}

void check_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw InvalidArgument("time grid is empty");
  if (!(grid.front() >= 0.0)) throw InvalidArgument("time grid must start at t >= 0");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw InvalidArgument("time grid must be strictly ascending");
  }
}

}  // namespace

Trajectory evolve(const LindbladProblem& problem, const DensityMatrix& rho0, const std::vector<double>& grid,
                  const EvolveOptions& options) {
  check_grid(grid);
  if (!(rho0.layout() == problem.hamiltonian.layout())) throw InvalidArgument("initial state layout mismatch");
  Stepper st{liouvillian_sparse(problem), step_for(problem, options)};
  Trajectory traj;
  traj.step = st.h;
  Vector v = vec(rho0.matrix());
  double t = grid.front();
  for (double g : grid) {
    st.advance(v, g - t);
    t = g;
    record(traj, rho0.layout(), v, t, options, options.target);
  }
  return traj;
}

SteadyStateReport steady_state_report(const LindbladProblem& problem) {
  const Matrix lv = liouvillian_dense(problem);
  const int d = problem.hamiltonian.dim();
  Eigen::BDCSVD<Matrix> svd(lv, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const Eigen::Index n = sv.size();
  const double largest = sv(0);
  const double second = sv(n - 2);
  if (largest == 0.0 || second < 1e-10 * largest) {
    throw DegenerateKernel("Liouvillian kernel is not one-dimensional");
  }
  Matrix rho = unvec(svd.matrixV().col(n - 1), d);
  rho = 0.5 * (rho + rho.adjoint());
  const Complex tr = rho.trace();
  if (std::abs(tr) < 1e-300) throw DegenerateKernel("kernel vector has zero trace");
  rho /= tr.real();
  rho = 0.5 * (rho + rho.adjoint());
  const double residual = lindblad_generator(problem, rho).cwiseAbs().maxCoeff();
  DensityMatrix state(problem.hamiltonian.layout(), rho);
  return {std::move(state), residual, sv(n - 1), second, largest};
}

DensityMatrix steady_state(const LindbladProblem& problem) { return steady_state_report(problem).rho; }

std::size_t segment_at(const DriveSchedule& schedule, double t) {
  double start = 0.0;
  for (std::size_t i = 0; i < schedule.segments.size(); ++i) {
    const double end = start + schedule.segments[i].duration;
    if (t < end || i + 1 == schedule.segments.size()) return i;
    start = end;
  }
  throw InvalidArgument("schedule has no segments");
}

Trajectory evolve_schedule(const DriveSchedule& schedule, const std::vector<double>& grid,
                           const EvolveOptions& options) {
  check_grid(grid);
  if (schedule.segments.empty()) throw InvalidArgument("schedule has no segments");
  if (!(schedule.initial_state.layout() == schedule.layout)) {
    throw InvalidArgument("initial state layout mismatch");
  }
  std::vector<double> ends;
  double total = 0.0;
  for (const auto& s : schedule.segments) {
    if (!(s.duration > 0.0) || !std::isfinite(s.duration)) throw InvalidArgument("segment durations must be > 0");
    total += s.duration;
    ends.push_back(total);
  }
  const double slack = 1e-9 * std::max(1.0, total);
  if (grid.back() > total + slack) throw InvalidArgument("time grid extends past the schedule");

  std::vector<Stepper> steppers;
  for (const auto& s : schedule.segments) {
    const LindbladProblem p = build_lindblad(assemble_system(s.drives, schedule.layout), schedule.noise);
    steppers.push_back({liouvillian_sparse(p), step_for(p, options)});
  }

  Trajectory traj;
  traj.step = std::min_element(steppers.begin(), steppers.end(),
                               [](const Stepper& a, const Stepper& b) { return a.h < b.h; })->h;
  Vector v = vec(schedule.initial_state.matrix());
  double t = 0.0;
  std::size_t seg = 0;
  for (double g : grid) {
    while (seg + 1 < ends.size() && g > ends[seg] + slack) {
      steppers[seg].advance(v, ends[seg] - t);
      t = ends[seg];
      ++seg;
    }
    steppers[seg].advance(v, g - t);
    t = g;
    const auto& target = schedule.segments[segment_at(schedule, g)].target;
    record(traj, schedule.layout, v, g, options, target ? target : options.target);
  }
  return traj;
}

namespace {

struct LinearFit {
  double a = 0.0;  // v_inf
  double b = 0.0;  // v0 - v_inf
  double ssr = std::numeric_limits<double>::infinity();
};

LinearFit fit_for_tau(const std::vector<double>& t, const std::vector<double>& v, double tau) {
  double s11 = 0, s1e = 0, see = 0, sv = 0, sve = 0;
  const std::size_t n = t.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double e = std::exp(-(t[i] - t[0]) / tau);
    s11 += 1.0;
    s1e += e;
    see += e * e;
    sv += v[i];
    sve += v[i] * e;
  }
  const double det = s11 * see - s1e * s1e;
  LinearFit f;
  if (std::abs(det) < 1e-14 * s11 * see) return f;
  f.a = (see * sv - s1e * sve) / det;
  f.b = (s11 * sve - s1e * sv) / det;
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = v[i] - f.a - f.b * std::exp(-(t[i] - t[0]) / tau);
    ssr += r * r;
  }
  f.ssr = ssr;
  return f;
}

}  // namespace

ExpFit fit_time_constant(const std::vector<double>& times, const std::vector<double>& values,
                         FitDirection direction) {
  if (times.size() != values.size()) throw InvalidArgument("times and values differ in length");
  if (times.size() < 5) throw FitError("exponential fit needs at least 5 points");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || !std::isfinite(values[i])) throw FitError("non-finite fit input");
    if (i > 0 && !(times[i] > times[i - 1])) throw FitError("fit times must be strictly ascending");
  }
  const double span = times.back() - times.front();
  double min_dt = span;
  for (std::size_t i = 1; i < times.size(); ++i) min_dt = std::min(min_dt, times[i] - times[i - 1]);
  const double lo = std::log(min_dt / 20.0);
  const double hi = std::log(span * 20.0);

  const auto cost = [&](double log_tau) { return fit_for_tau(times, values, std::exp(log_tau)).ssr; };
  constexpr int kScan = 400;
  int best = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kScan; ++i) {
    const double c = cost(lo + (hi - lo) * i / kScan);
    if (c < best_cost) {
      best_cost = c;
      best = i;
    }
  }
  if (best == 0 || best == kScan) throw FitError("time constant runs into the search bounds");
  double a = lo + (hi - lo) * (best - 1) / kScan;
  double b = lo + (hi - lo) * (best + 1) / kScan;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double fc = cost(c);
  double fd = cost(d);
  for (int it = 0; it < 200 && (b - a) > 1e-13; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = cost(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = cost(d);
    }
  }
  const double tau = std::exp(0.5 * (a + b));
  const LinearFit f = fit_for_tau(times, values, tau);
  if (!std::isfinite(f.ssr)) throw FitError("exponential fit is ill-conditioned");
  ExpFit out{tau, f.a, f.a + f.b, std::sqrt(f.ssr / times.size())};
  if (direction == FitDirection::rising && !(out.v_inf > out.v0)) throw FitError("fit is not rising");
  if (direction == FitDirection::falling && !(out.v_inf < out.v0)) throw FitError("fit is not falling");
  return out;
}

}  // namespace stabsim
