#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "gaw/geometry.hpp"

namespace gaw {

using cx = std::complex<double>;

// One waveguide-mediated pair coefficient A_nm. Every contribution is a fourth
// root of unity over 2*xi, so 2*xi*A has exact integer real and imaginary
// parts; those are carried alongside the floating value.
struct PairCoefficient {
  cx value;               // A_nm in units of 1/xi
  std::int64_t re2xi;     // Re(2*xi*A_nm), exact
  std::int64_t im2xi;     // Im(2*xi*A_nm), exact
  int n = 0, m = 0;
};

// Coupling and dissipation matrices for a full array. h is Hermitian (here
// real symmetric) with Lamb shifts on the diagonal; Gamma is real symmetric.
struct CouplingModel {
  int n_atoms = 0;
  Eigen::MatrixXd h;       // h_nm = c_n c_m Im(A_nm)
  Eigen::MatrixXd gamma;   // Gamma_nm = c_n c_m Re(A_nm)
  std::vector<Species> species;
  double g = 0.0, f = 0.0, xi = 1.0;
  double J_scale = 0.0;    // g^2/xi

  ArrayGeometry geometry;
};

// Closed-form pair coefficient: (1/2*xi) * sum over leg pairs of i^{|p-q|},
// evaluated with exact integer phasor arithmetic.
PairCoefficient pair_coefficient(const ArrayGeometry& geom, int n, int m, double xi);

// Independent momentum-space evaluation of the single-distance phasor:
// (1/N_c) sum_k e^{ikd} / (eps + i(w_k - w_c)), w_k = w_c - 2*xi*cos k,
// k = 2*pi*n_c/N_c. Converges to i^{|d|}/(2*xi) as eps -> 0+, N_c -> inf.
// delta_c shifts the resonance (diagnostic only; no closed form claimed).
cx coefficient_oracle(std::int64_t d, double xi, double eps, std::int64_t n_c,
                      double delta_c = 0.0);

// First-order extrapolation in the regulator: 2*oracle(eps) - oracle(2*eps).
// Cancels the linear eps bias; needs N_c large enough that the trapezoid
// discretization error (~exp(-eps*N_c/(2*xi)) with a large prefactor) is
// negligible at BOTH regulator values.
cx coefficient_oracle_richardson(std::int64_t d, double xi, double eps, std::int64_t n_c);

// Sum of per-leg-pair oracle terms matching pair_coefficient's closed form.
cx oracle_pair_sum(const ArrayGeometry& geom, int n, int m, double xi, double eps,
                   std::int64_t n_c);

// Richardson-extrapolated version of oracle_pair_sum.
cx oracle_pair_sum_richardson(const ArrayGeometry& geom, int n, int m, double xi,
                              double eps, std::int64_t n_c);

// Builds h and Gamma for all pairs with species prefactors (g for A-species,
// f for B-species). Warns to stderr when g/xi or f/xi exceeds 0.2 (beyond the
// weak-coupling regime the generator is derived in).
CouplingModel assemble_model(const ArrayGeometry& geom, double g, double f, double xi);

// Full matrix of pair coefficients (units 1/xi).
Eigen::MatrixXcd coefficient_matrix(const ArrayGeometry& geom, double xi);

}  // namespace gaw
