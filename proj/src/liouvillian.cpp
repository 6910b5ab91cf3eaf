#include "gaw/liouvillian.hpp"

#include <cmath>
#include <numbers>

namespace gaw {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

DriveSpec DriveSpec::make(double eta, double phi, double delta) {
  if (eta < 0.0) throw ConfigError("drive: amplitude eta must be >= 0");
  double p = std::fmod(phi, kTwoPi);
  if (p < 0.0) p += kTwoPi;
  return DriveSpec{eta, p, delta};
}

OperatorBasis build_operator_basis(int n_atoms) {
  if (n_atoms < 1) throw ConfigError("operator basis: need at least one atom");
  if (n_atoms > 20) throw ConfigError("operator basis: atom count implausibly large");

  Eigen::MatrixXcd sigma_minus(2, 2), id2 = Eigen::MatrixXcd::Identity(2, 2);
  sigma_minus << 0, 0, 1, 0;  // |g><e| with |e> = index 0

  OperatorBasis basis;
  basis.n_atoms = n_atoms;
  basis.dim = 1 << n_atoms;
  for (int n = 0; n < n_atoms; ++n) {
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Identity(1, 1);
    for (int k = 0; k < n_atoms; ++k) op = kron(op, k == n ? sigma_minus : id2);
    basis.proj.push_back(op.adjoint() * op);
    basis.lower.push_back(std::move(op));
  }
  return basis;
}

Eigen::MatrixXcd build_hamiltonian(const CouplingModel& model, const DriveSpec& drive,
                                   const OperatorBasis& basis) {
  if (model.n_atoms != basis.n_atoms)
    throw ConfigError("build_hamiltonian: model and basis atom counts differ");

  const int n = model.n_atoms;
  const int d = basis.dim;
  Eigen::MatrixXcd ham = Eigen::MatrixXcd::Zero(d, d);

  for (int i = 0; i < n; ++i) ham += drive.delta * basis.proj[static_cast<std::size_t>(i)];

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (model.h(i, j) != 0.0)
        ham += model.h(i, j) * (basis.lower[static_cast<std::size_t>(i)].adjoint() *
                                basis.lower[static_cast<std::size_t>(j)]);

  if (drive.eta != 0.0) {
    for (int i = 0; i < n; ++i) {
      const double phase =
          is_a_species(model.species[static_cast<std::size_t>(i)]) ? 0.0 : drive.phi;
      const cx raise_coef = drive.eta * std::polar(1.0, -phase);
      const auto& low = basis.lower[static_cast<std::size_t>(i)];
      ham += raise_coef * low.adjoint() + std::conj(raise_coef) * low;
    }
  }
  return ham;
}

LindbladGenerator build_generator(const Eigen::MatrixXcd& h, const Eigen::MatrixXd& gamma,
                                  const OperatorBasis& basis) {
  const int n = basis.n_atoms;
  const int d = basis.dim;
  if (h.rows() != d || h.cols() != d)
    throw ConfigError("build_generator: Hamiltonian dimension mismatch");
  if (gamma.rows() != n || gamma.cols() != n)
    throw ConfigError("build_generator: dissipation matrix must be n_atoms square");
  const double scale = std::max({1.0, h.cwiseAbs().maxCoeff(), gamma.cwiseAbs().maxCoeff()});
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw NumericalError("build_generator: Hamiltonian is not Hermitian");
  if ((gamma - gamma.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw NumericalError("build_generator: dissipation matrix is not symmetric");

  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);

  LindbladGenerator gen;
  gen.n_atoms = n;
  gen.dim = d;
  gen.op = cx(0.0, -1.0) * (kron(id, h) - kron(h.transpose(), id));

  for (int i = 0; i < n; ++i) {
    const auto& li = basis.lower[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) {
      const double rate = gamma(i, j);
      if (rate == 0.0) continue;
      const auto& lj = basis.lower[static_cast<std::size_t>(j)];
      const Eigen::MatrixXcd ljdag_li = lj.adjoint() * li;
      gen.op += rate * (2.0 * kron(lj.conjugate(), li) - kron(id, ljdag_li) -
                        kron(ljdag_li.transpose(), id));
    }
  }
  return gen;
}

LindbladGenerator build_generator(const CouplingModel& model, const DriveSpec& drive) {
  if ((model.gamma - model.gamma.transpose()).cwiseAbs().maxCoeff() > 1e-12 * model.xi)
    throw NumericalError("build_generator: dissipation matrix asymmetry exceeds tolerance");
  const OperatorBasis basis = build_operator_basis(model.n_atoms);
  const Eigen::MatrixXcd ham = build_hamiltonian(model, drive, basis);
  LindbladGenerator gen = build_generator(ham, model.gamma, basis);
  gen.model = model;
  gen.drive = drive;
  return gen;
}

Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& rho) {
  return Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
}

Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (d * d != v.size())
    throw NumericalError("unvectorize: length is not a perfect square");
  return Eigen::Map<const Eigen::MatrixXcd>(v.data(), d, d);
}

}  // namespace gaw
