#pragma once

#include <string>
#include <vector>

#include "gaw/coefficients.hpp"
#include "gaw/dynamics.hpp"

namespace gaw {

// tr(rho * op). Throws ConfigError on dimension mismatch.
cx expectation(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& op);

// Mean excited-state population (1/N) sum_n <P_n>, in [0, 1]. The atom count
// is inferred from the Hilbert dimension.
double excited_average(const Eigen::MatrixXcd& rho);

// Reduced state over the kept atoms (ascending atom order, atom 0 being the
// most significant bit of the basis index). Trace is preserved.
Eigen::MatrixXcd partial_trace(const Eigen::MatrixXcd& rho, const std::vector<int>& keep);

// Wootters two-qubit concurrence: C = max(0, l1 - l2 - l3 - l4) with l_i the
// descending square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy).
// Eigenvalues of the product in [-1e-10, 0) are clamped to zero; anything
// lower signals an invalid state and throws NumericalError.
double concurrence(const Eigen::MatrixXcd& rho2);

struct ConcurrenceValue {
  double value = 0.0;  // in [0, 1]
  std::string pair;    // e.g. "A1B1"
};

// Concurrence of the reduced state of atoms (i, j) in a larger register,
// tagged with the atom labels.
ConcurrenceValue concurrence_of_pair(const Eigen::MatrixXcd& rho,
                                     const std::vector<std::string>& labels, int i, int j);

struct TomographyTable {
  std::vector<std::string> basis_labels;  // e.g. "e_Ag_B"
  Eigen::MatrixXcd entries;
};

// Display names for atoms: the species letter alone when a species appears
// once, letter plus 1-based index otherwise (A, B or A1, B1, A2, ...).
std::vector<std::string> atom_labels(const std::vector<Species>& species);

// Product-state names for all 2^n basis vectors in register order: atom 0
// most significant, |e> before |g> ("e_Ag_B" etc.).
std::vector<std::string> basis_labels(const std::vector<std::string>& atom_names);

// Density matrix in the bare product basis with human-readable labels:
// lexicographic order, atom 0 most significant, |e> before |g>.
TomographyTable tomography(const Eigen::MatrixXcd& rho,
                           const std::vector<std::string>& labels);

// Convenience overload labeling atoms A, B, C, ... in register order.
TomographyTable tomography(const Eigen::MatrixXcd& rho);

}  // namespace gaw
