#pragma once

#include <vector>

#include <Eigen/Dense>

#include "gaw/coefficients.hpp"
#include "gaw/geometry.hpp"

namespace gaw {

// Uniform rotating-frame drive. The phase rides on the B-species raising
// operators only (e^{-i phi}); A-species atoms are driven with phase 0.
// Dissipators carry no phase.
struct DriveSpec {
  double eta = 0.0;    // amplitude, energy units of xi
  double phi = 0.0;    // radians, canonicalized to [0, 2*pi)
  double delta = 0.0;  // common detuning Omega - omega_d

  static DriveSpec make(double eta, double phi, double delta);
};

// Per-atom lowering operators and excited-state projectors on the 2^N
// product space. Atom 0 occupies the most significant qubit; within one
// qubit |e> is index 0 and |g> index 1.
struct OperatorBasis {
  int n_atoms = 0;
  int dim = 0;  // 2^n_atoms
  std::vector<Eigen::MatrixXcd> lower;  // L_n = |g><e| on atom n
  std::vector<Eigen::MatrixXcd> proj;   // P_n = L_n^dag L_n
};

OperatorBasis build_operator_basis(int n_atoms);

// d^2 x d^2 superoperator over column-stacked density matrices.
struct LindbladGenerator {
  int n_atoms = 0;
  int dim = 0;             // Hilbert dimension d
  Eigen::MatrixXcd op;     // d^2 x d^2
  CouplingModel model;     // coupling model the generator was assembled from
  DriveSpec drive;
};

// H = sum_n delta P_n + sum_{n,m} h_nm L_n^dag L_m
//   + sum_n eta (e^{-i phi_n} L_n^dag + e^{+i phi_n} L_n),
// with the n = m coupling terms supplying the Lamb shifts.
Eigen::MatrixXcd build_hamiltonian(const CouplingModel& model, const DriveSpec& drive,
                                   const OperatorBasis& basis);

// rho -> -i[H, rho] + sum_{nm} Gamma_nm (2 L_n rho L_m^dag - L_m^dag L_n rho
//                                        - rho L_m^dag L_n),
// materialized via column-stacking: vec(A X B) = (B^T (x) A) vec(X).
LindbladGenerator build_generator(const Eigen::MatrixXcd& h,
                                  const Eigen::MatrixXd& gamma,
                                  const OperatorBasis& basis);

// Convenience: basis + Hamiltonian + generator from a model and drive.
LindbladGenerator build_generator(const CouplingModel& model, const DriveSpec& drive);

// Column stacking and its inverse.
Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& rho);
Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v);

}  // namespace gaw
