#include "gaw/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "gaw/kernels.hpp"

namespace gaw {

namespace {

// C = A * B through the dispatched complex kernels (Eigen defaults to
// column-major storage, which is what the kernels expect).
Eigen::MatrixXcd kmul(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd c(a.rows(), b.cols());
  kernels::cmatmul(a.rows(), a.cols(), b.cols(), a.data(), b.data(), c.data());
  return c;
}

double one_norm(const Eigen::MatrixXcd& a) {
  return a.cwiseAbs().colwise().sum().maxCoeff();
}

// Solves (V - U) X = (V + U), the final rational step of the Pade scheme.
Eigen::MatrixXcd pade_solve(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v) {
  return Eigen::PartialPivLU<Eigen::MatrixXcd>(v - u).solve(v + u);
}

Eigen::MatrixXcd pade3(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& a2) {
  static const double b[] = {120.0, 60.0, 12.0, 1.0};
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  const Eigen::MatrixXcd u = kmul(a, b[3] * a2 + b[1] * id);
  const Eigen::MatrixXcd v = b[2] * a2 + b[0] * id;
  return pade_solve(u, v);
}

Eigen::MatrixXcd pade5(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& a2,
                       const Eigen::MatrixXcd& a4) {
  static const double b[] = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  const Eigen::MatrixXcd u = kmul(a, b[5] * a4 + b[3] * a2 + b[1] * id);
  const Eigen::MatrixXcd v = b[4] * a4 + b[2] * a2 + b[0] * id;
  return pade_solve(u, v);
}

Eigen::MatrixXcd pade7(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& a2,
                       const Eigen::MatrixXcd& a4, const Eigen::MatrixXcd& a6) {
  static const double b[] = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                             25200.0,    1512.0,    56.0,      1.0};
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  const Eigen::MatrixXcd u = kmul(a, b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  const Eigen::MatrixXcd v = b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
  return pade_solve(u, v);
}

Eigen::MatrixXcd pade9(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& a2,
                       const Eigen::MatrixXcd& a4, const Eigen::MatrixXcd& a6) {
  static const double b[] = {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
                             30270240.0,    2162160.0,    110880.0,     3960.0,
                             90.0,          1.0};
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  const Eigen::MatrixXcd a8 = kmul(a4, a4);
  const Eigen::MatrixXcd u =
      kmul(a, b[9] * a8 + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  const Eigen::MatrixXcd v = b[8] * a8 + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
  return pade_solve(u, v);
}

Eigen::MatrixXcd pade13(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& a2,
                        const Eigen::MatrixXcd& a4, const Eigen::MatrixXcd& a6) {
  static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                             1187353796428800.0,  129060195264000.0,   10559470521600.0,
                             670442572800.0,      33522128640.0,       1323241920.0,
                             40840800.0,          960960.0,            16380.0,
                             182.0,               1.0};
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  const Eigen::MatrixXcd w1 = b[13] * a6 + b[11] * a4 + b[9] * a2;
  const Eigen::MatrixXcd u =
      kmul(a, kmul(a6, w1) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  const Eigen::MatrixXcd w2 = b[12] * a6 + b[10] * a4 + b[8] * a2;
  const Eigen::MatrixXcd v = kmul(a6, w2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
  return pade_solve(u, v);
}

}  // namespace

Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) throw NumericalError("expm: matrix must be square");
  if (a.rows() == 0) return a;

  // Degree thresholds on the 1-norm (backward-error bounds for each
  // diagonal Pade approximant).
  constexpr double theta3 = 1.495585217958292e-2;
  constexpr double theta5 = 2.539398330063230e-1;
  constexpr double theta7 = 9.504178996162932e-1;
  constexpr double theta9 = 2.097847961257068e0;
  constexpr double theta13 = 5.371920351148152e0;

  const double norm = one_norm(a);
  if (!std::isfinite(norm)) throw NumericalError("expm: matrix has non-finite entries");

  if (norm <= theta9) {
    const Eigen::MatrixXcd a2 = kmul(a, a);
    if (norm <= theta3) return pade3(a, a2);
    const Eigen::MatrixXcd a4 = kmul(a2, a2);
    if (norm <= theta5) return pade5(a, a2, a4);
    const Eigen::MatrixXcd a6 = kmul(a2, a4);
    if (norm <= theta7) return pade7(a, a2, a4, a6);
    return pade9(a, a2, a4, a6);
  }

  const int squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / theta13))));
  const Eigen::MatrixXcd scaled = a / std::ldexp(1.0, squarings);
  const Eigen::MatrixXcd a2 = kmul(scaled, scaled);
  const Eigen::MatrixXcd a4 = kmul(a2, a2);
  const Eigen::MatrixXcd a6 = kmul(a2, a4);
  Eigen::MatrixXcd result = pade13(scaled, a2, a4, a6);
  for (int i = 0; i < squarings; ++i) result = kmul(result, result);
  return result;
}

void check_density_matrix(const Eigen::MatrixXcd& rho, const DensityTolerances& tol,
                          const std::string& where) {
  if (rho.rows() != rho.cols()) throw NumericalError(where + ": state is not square");

  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol.hermiticity) {
    std::ostringstream msg;
    msg << where << ": Hermiticity deviation " << herm << " exceeds " << tol.hermiticity;
    throw NumericalError(msg.str());
  }

  const double trace_err = std::abs(rho.trace() - cx(1.0, 0.0));
  if (trace_err > tol.trace) {
    std::ostringstream msg;
    msg << where << ": trace deviation " << trace_err << " exceeds " << tol.trace;
    throw NumericalError(msg.str());
  }

  const Eigen::MatrixXcd herm_part = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm_part, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < tol.eigenvalue_floor) {
    std::ostringstream msg;
    msg << where << ": negative eigenvalue " << min_eig << " below floor "
        << tol.eigenvalue_floor;
    throw NumericalError(msg.str());
  }
}

std::vector<double> uniform_grid(double t_final, double dt_target) {
  if (!(t_final > 0.0)) throw ConfigError("uniform_grid: final time must be positive");
  if (!(dt_target > 0.0)) throw ConfigError("uniform_grid: step target must be positive");
  const auto n_steps =
      std::max<std::int64_t>(1, static_cast<std::int64_t>(std::llround(t_final / dt_target)));
  std::vector<double> grid(static_cast<std::size_t>(n_steps) + 1);
  const double dt = t_final / static_cast<double>(n_steps);
  for (std::int64_t k = 0; k <= n_steps; ++k) grid[static_cast<std::size_t>(k)] = dt * k;
  grid.back() = t_final;
  return grid;
}

Trajectory evolve(const LindbladGenerator& gen, const Eigen::MatrixXcd& rho0,
                  const std::vector<double>& times, const EvolveOptions& opts) {
  const int d = gen.dim;
  if (rho0.rows() != d || rho0.cols() != d)
    throw ConfigError("evolve: initial state dimension does not match the generator");
  if (times.empty()) throw ConfigError("evolve: time grid is empty");
  if (times.front() < 0.0) throw ConfigError("evolve: time grid must start at t >= 0");
  for (std::size_t k = 1; k < times.size(); ++k)
    if (!(times[k] > times[k - 1]))
      throw ConfigError("evolve: time grid must be strictly increasing");

  if (opts.check_invariants)
    check_density_matrix(rho0, opts.tolerances, "evolve: initial state");

  // Interval lengths from t=0 through the grid. A uniform grid collapses to a
  // single distinct length (plus possibly a leading offset), so each dense
  // exponential is computed once and reused.
  std::vector<double> intervals;
  intervals.reserve(times.size());
  double prev = 0.0;
  for (double t : times) {
    intervals.push_back(t - prev);
    prev = t;
  }

  const double span = times.back();
  const double tol_dt = 1e-12 * std::max(1.0, span);
  std::map<double, Eigen::MatrixXcd> propagators;  // keyed by rounded interval length

  auto propagator_for = [&](double dt) -> const Eigen::MatrixXcd& {
    auto it = propagators.lower_bound(dt - tol_dt);
    if (it != propagators.end() && std::abs(it->first - dt) <= tol_dt) return it->second;
    auto [ins, unused] = propagators.emplace(dt, expm(gen.op * dt));
    (void)unused;
    return ins->second;
  };

  Trajectory traj;
  traj.times = times;
  traj.states.reserve(times.size());

  Eigen::VectorXcd state = vectorize(rho0);
  Eigen::VectorXcd next(state.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (intervals[k] > 0.0) {
      const Eigen::MatrixXcd& prop = propagator_for(intervals[k]);
      kernels::cmatvec(prop.rows(), prop.cols(), prop.data(), state.data(), next.data());
      state.swap(next);
    }
    Eigen::MatrixXcd snapshot = unvectorize(state);
    if (opts.check_invariants) {
      std::ostringstream where;
      where << "evolve: state at t = " << times[k];
      check_density_matrix(snapshot, opts.tolerances, where.str());
    }
    traj.states.push_back(std::move(snapshot));
  }
  return traj;
}

namespace {

double generator_scale(const LindbladGenerator& gen) {
  return gen.model.xi > 0.0 ? gen.model.xi : 1.0;
}

}  // namespace

SteadyResult steady_state(const LindbladGenerator& gen) {
  const double scale = generator_scale(gen);
  const double tol = 1e-10 * scale;

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(gen.op, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success)
    throw NumericalError("steady_state: eigendecomposition failed to converge");

  const Eigen::VectorXcd& lambda = solver.eigenvalues();
  int zero_count = 0;
  int axis_count = 0;
  Eigen::Index zero_index = -1;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (std::abs(lambda(i)) < tol) {
      ++zero_count;
      zero_index = i;
    } else if (std::abs(lambda(i).real()) < tol) {
      ++axis_count;  // oscillatory mode: on the axis but away from zero
    }
  }

  if (zero_count != 1 || axis_count != 0)
    return NoUniqueSteadyState{zero_count, axis_count};

  Eigen::MatrixXcd rho = unvectorize(solver.eigenvectors().col(zero_index));
  rho = 0.5 * (rho + rho.adjoint().eval());
  const cx tr = rho.trace();
  if (std::abs(tr) < 1e-12)
    throw NumericalError("steady_state: nullvector is traceless; cannot normalize");
  rho /= tr;

  const double residual = (gen.op * vectorize(rho)).cwiseAbs().maxCoeff();
  if (residual > 1e-9 * scale) {
    std::ostringstream msg;
    msg << "steady_state: residual " << residual << " exceeds " << 1e-9 * scale;
    throw NumericalError(msg.str());
  }
  return rho;
}

std::vector<std::complex<double>> generator_spectrum(const LindbladGenerator& gen) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(gen.op, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw NumericalError("generator_spectrum: eigendecomposition failed to converge");
  std::vector<cx> values(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(values.begin(), values.end(), [](const cx& a, const cx& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  return values;
}

double spectral_gap(const LindbladGenerator& gen) {
  const double tol = 1e-10 * generator_scale(gen);
  double gap = 0.0;
  bool found = false;
  for (const cx& lambda : generator_spectrum(gen)) {
    if (std::abs(lambda) < tol) continue;
    const double depth = -lambda.real();
    if (!found || depth < gap) {
      gap = depth;
      found = true;
    }
  }
  if (!found) throw NumericalError("spectral_gap: spectrum has no nonzero mode");
  return std::max(gap, 0.0);
}

}  // namespace gaw
