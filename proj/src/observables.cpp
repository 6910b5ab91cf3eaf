#include "gaw/observables.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

namespace gaw {

namespace {

int atom_count_from_dim(Eigen::Index dim, const char* where) {
  if (dim < 2 || !std::has_single_bit(static_cast<unsigned long long>(dim)))
    throw ConfigError(std::string(where) + ": dimension is not a power of two");
  return std::bit_width(static_cast<unsigned long long>(dim)) - 1;
}

// Bit of atom n inside basis index b (atom 0 most significant); 0 means |e>.
int atom_bit(std::size_t b, int n, int n_atoms) {
  return static_cast<int>((b >> (n_atoms - 1 - n)) & 1u);
}

}  // namespace

cx expectation(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& op) {
  if (rho.rows() != rho.cols() || op.rows() != op.cols() || rho.rows() != op.rows())
    throw ConfigError("expectation: operator and state dimensions do not match");
  cx sum = 0.0;
  for (Eigen::Index i = 0; i < rho.rows(); ++i) sum += (rho.row(i) * op.col(i)).value();
  return sum;
}

double excited_average(const Eigen::MatrixXcd& rho) {
  const int n_atoms = atom_count_from_dim(rho.rows(), "excited_average");
  double total = 0.0;
  for (Eigen::Index b = 0; b < rho.rows(); ++b) {
    const double pop = rho(b, b).real();
    for (int n = 0; n < n_atoms; ++n)
      if (atom_bit(static_cast<std::size_t>(b), n, n_atoms) == 0) total += pop;
  }
  return total / n_atoms;
}

Eigen::MatrixXcd partial_trace(const Eigen::MatrixXcd& rho, const std::vector<int>& keep) {
  const int n_atoms = atom_count_from_dim(rho.rows(), "partial_trace");
  if (keep.empty()) throw ConfigError("partial_trace: keep set must not be empty");

  std::set<int> kept_sorted;
  for (int n : keep) {
    if (n < 0 || n >= n_atoms) {
      std::ostringstream msg;
      msg << "partial_trace: atom index " << n << " out of range for " << n_atoms
          << " atoms";
      throw ConfigError(msg.str());
    }
    if (!kept_sorted.insert(n).second)
      throw ConfigError("partial_trace: duplicate atom index in keep set");
  }

  std::vector<int> kept(kept_sorted.begin(), kept_sorted.end());
  std::vector<int> traced;
  for (int n = 0; n < n_atoms; ++n)
    if (!kept_sorted.count(n)) traced.push_back(n);

  const int n_keep = static_cast<int>(kept.size());
  const int n_trace = static_cast<int>(traced.size());
  const std::size_t d_keep = std::size_t{1} << n_keep;
  const std::size_t d_trace = std::size_t{1} << n_trace;

  // Full basis index from a kept-subsystem index and a traced-subsystem index,
  // placing each bit back at its atom's position (atom 0 most significant).
  auto full_index = [&](std::size_t k, std::size_t t) {
    std::size_t b = 0;
    for (int i = 0; i < n_keep; ++i)
      if ((k >> (n_keep - 1 - i)) & 1u) b |= std::size_t{1} << (n_atoms - 1 - kept[i]);
    for (int i = 0; i < n_trace; ++i)
      if ((t >> (n_trace - 1 - i)) & 1u) b |= std::size_t{1} << (n_atoms - 1 - traced[i]);
    return b;
  };

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d_keep),
                                                static_cast<Eigen::Index>(d_keep));
  for (std::size_t i = 0; i < d_keep; ++i)
    for (std::size_t j = 0; j < d_keep; ++j) {
      cx sum = 0.0;
      for (std::size_t t = 0; t < d_trace; ++t)
        sum += rho(static_cast<Eigen::Index>(full_index(i, t)),
                   static_cast<Eigen::Index>(full_index(j, t)));
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = sum;
    }
  return out;
}

double concurrence(const Eigen::MatrixXcd& rho2) {
  if (rho2.rows() != 4 || rho2.cols() != 4)
    throw ConfigError("concurrence: expected a 4x4 two-qubit state");
  check_density_matrix(rho2, DensityTolerances{}, "concurrence: input");

  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;

  const Eigen::Matrix4cd product = rho2 * yy * rho2.conjugate() * yy;
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(product, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw NumericalError("concurrence: eigensolve failed to converge");

  std::array<double, 4> roots{};
  for (int i = 0; i < 4; ++i) {
    const double ev = solver.eigenvalues()(i).real();
    if (ev < -1e-10) {
      std::ostringstream msg;
      msg << "concurrence: spin-flip product eigenvalue " << ev
          << " is negative beyond tolerance";
      throw NumericalError(msg.str());
    }
    roots[static_cast<std::size_t>(i)] = std::sqrt(std::max(ev, 0.0));
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return std::max(0.0, roots[0] - roots[1] - roots[2] - roots[3]);
}

ConcurrenceValue concurrence_of_pair(const Eigen::MatrixXcd& rho,
                                     const std::vector<std::string>& labels, int i, int j) {
  const int n_atoms = atom_count_from_dim(rho.rows(), "concurrence_of_pair");
  if (static_cast<int>(labels.size()) != n_atoms)
    throw ConfigError("concurrence_of_pair: one label per atom required");
  if (i == j) throw ConfigError("concurrence_of_pair: atoms must be distinct");
  const Eigen::MatrixXcd reduced = partial_trace(rho, {i, j});
  ConcurrenceValue result;
  result.value = concurrence(reduced);
  result.pair = labels[static_cast<std::size_t>(std::min(i, j))] +
                labels[static_cast<std::size_t>(std::max(i, j))];
  return result;
}

std::vector<std::string> atom_labels(const std::vector<Species>& species) {
  int n_a = 0, n_b = 0;
  for (Species s : species) {
    if (is_a_species(s))
      ++n_a;
    else
      ++n_b;
  }
  std::vector<std::string> labels;
  labels.reserve(species.size());
  int i_a = 0, i_b = 0;
  for (Species s : species) {
    const bool a = is_a_species(s);
    const int total = a ? n_a : n_b;
    int& counter = a ? i_a : i_b;
    const int index = ++counter;
    std::string label(1, species_letter(s));
    if (total > 1) label += std::to_string(index);
    labels.push_back(std::move(label));
  }
  return labels;
}

std::vector<std::string> basis_labels(const std::vector<std::string>& atom_names) {
  const int n_atoms = static_cast<int>(atom_names.size());
  if (n_atoms < 1) throw ConfigError("basis_labels: need at least one atom name");
  const std::size_t dim = std::size_t{1} << n_atoms;
  std::vector<std::string> names;
  names.reserve(dim);
  for (std::size_t b = 0; b < dim; ++b) {
    std::string name;
    for (int n = 0; n < n_atoms; ++n) {
      name += (atom_bit(b, n, n_atoms) == 0) ? 'e' : 'g';
      name += '_';
      name += atom_names[static_cast<std::size_t>(n)];
    }
    names.push_back(std::move(name));
  }
  return names;
}

TomographyTable tomography(const Eigen::MatrixXcd& rho,
                           const std::vector<std::string>& labels) {
  const int n_atoms = atom_count_from_dim(rho.rows(), "tomography");
  if (static_cast<int>(labels.size()) != n_atoms)
    throw ConfigError("tomography: one label per atom required");

  TomographyTable table;
  table.entries = rho;
  table.basis_labels = basis_labels(labels);
  return table;
}

TomographyTable tomography(const Eigen::MatrixXcd& rho) {
  const int n_atoms = atom_count_from_dim(rho.rows(), "tomography");
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n_atoms));
  for (int n = 0; n < n_atoms; ++n) labels.emplace_back(1, static_cast<char>('A' + n));
  return tomography(rho, labels);
}

}  // namespace gaw
