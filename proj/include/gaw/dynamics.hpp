#pragma once

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "gaw/liouvillian.hpp"

namespace gaw {

// Matrix exponential by Pade approximation with scaling and squaring,
// degree ladder 3/5/7/9/13 selected from the 1-norm.
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a);

struct DensityTolerances {
  double hermiticity = 1e-10;
  double trace = 1e-10;
  double eigenvalue_floor = -1e-9;
};

// Throws NumericalError naming `where` if rho violates the tolerances.
// Never mutates or clamps the state.
void check_density_matrix(const Eigen::MatrixXcd& rho, const DensityTolerances& tol = {},
                          const std::string& where = "density matrix");

struct Trajectory {
  std::vector<double> times;               // units 1/xi, strictly increasing
  std::vector<Eigen::MatrixXcd> states;    // one snapshot per time point
};

struct EvolveOptions {
  bool check_invariants = true;            // validate every recorded snapshot
  DensityTolerances tolerances{};
};

// Evolves rho0 (the state at t = 0) under the generator and records snapshots
// at the requested instants (all >= 0, strictly increasing). Uniform grids
// reuse one precomputed short-step propagator; irregular spacings get a
// dense exponential per distinct interval length.
Trajectory evolve(const LindbladGenerator& gen, const Eigen::MatrixXcd& rho0,
                  const std::vector<double>& times, const EvolveOptions& opts = {});

// Grid 0..t_final with steps as close to dt_target as an integer subdivision
// allows; both endpoints included.
std::vector<double> uniform_grid(double t_final, double dt_target);

// Returned instead of a state when the generator kernel is degenerate or the
// spectrum touches the imaginary axis away from zero (persistent oscillation).
struct NoUniqueSteadyState {
  int zero_count = 0;  // eigenvalues with |lambda| below threshold (degenerate manifold)
  int axis_count = 0;  // nonzero eigenvalues with |Re| below threshold (oscillation)
};

using SteadyResult = std::variant<Eigen::MatrixXcd, NoUniqueSteadyState>;

// Full eigendecomposition of the superoperator. A unique steady state requires
// exactly one eigenvalue inside |lambda| < 1e-10 * xi and no other eigenvalue
// within 1e-10 * xi of the imaginary axis; the nullvector is Hermitized,
// trace-normalized, and verified to satisfy ||gen(rho)|| <= 1e-9 * xi.
SteadyResult steady_state(const LindbladGenerator& gen);

// All superoperator eigenvalues, sorted by real part descending.
std::vector<std::complex<double>> generator_spectrum(const LindbladGenerator& gen);

// Distance from the imaginary axis to the slowest-decaying nonzero mode.
double spectral_gap(const LindbladGenerator& gen);

}  // namespace gaw
