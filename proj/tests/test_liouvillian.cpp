#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "gaw/dynamics.hpp"
#include "gaw/liouvillian.hpp"

using namespace gaw;

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::MatrixXcd random_hermitian(std::mt19937& rng, int d) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::MatrixXcd m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = cx(dist(rng), dist(rng));
  return 0.5 * (m + m.adjoint());
}

Eigen::MatrixXcd random_density(std::mt19937& rng, int d) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::MatrixXcd m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = cx(dist(rng), dist(rng));
  Eigen::MatrixXcd rho = m * m.adjoint();
  return rho / rho.trace().real();
}

Eigen::MatrixXd random_symmetric(std::mt19937& rng, int n) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = dist(rng);
  return 0.5 * (m + m.transpose());
}

}  // namespace

TEST_CASE("drive spec canonicalizes the phase and rejects negative amplitude") {
  CHECK_THROWS_AS(DriveSpec::make(-0.1, 0.0, 0.0), ConfigError);
  const double two_pi = 2.0 * M_PI;
  CHECK(DriveSpec::make(0.1, 7.0, 0.0).phi == doctest::Approx(7.0 - two_pi).epsilon(1e-14));
  CHECK(DriveSpec::make(0.1, -1.0, 0.0).phi == doctest::Approx(two_pi - 1.0).epsilon(1e-14));
  CHECK(DriveSpec::make(0.1, 0.0, -0.3).delta == -0.3);
}

TEST_CASE("operator basis entries sit where the bit convention says") {
  const OperatorBasis basis = build_operator_basis(2);
  REQUIRE(basis.dim == 4);
  // Atom 0 is the most significant qubit; |e> is bit value 0. Index order:
  // 0=|ee>, 1=|eg>, 2=|ge>, 3=|gg>.
  CHECK(basis.lower[0](2, 0) == cx(1, 0));
  CHECK(basis.lower[0](3, 1) == cx(1, 0));
  CHECK(basis.lower[0].cwiseAbs().sum() == 2.0);
  CHECK(basis.lower[1](1, 0) == cx(1, 0));
  CHECK(basis.lower[1](3, 2) == cx(1, 0));
  CHECK(basis.lower[1].cwiseAbs().sum() == 2.0);
}

TEST_CASE("operator basis satisfies the ladder algebra") {
  const OperatorBasis basis = build_operator_basis(3);
  for (int n = 0; n < 3; ++n) {
    CHECK((basis.lower[n] * basis.lower[n]).cwiseAbs().maxCoeff() == 0.0);
    CHECK((basis.proj[n] - basis.lower[n].adjoint() * basis.lower[n]).cwiseAbs().maxCoeff() ==
          0.0);
    for (int m = n + 1; m < 3; ++m) {
      const Eigen::MatrixXcd comm =
          basis.lower[n] * basis.lower[m] - basis.lower[m] * basis.lower[n];
      CHECK(comm.cwiseAbs().maxCoeff() == 0.0);
    }
  }
  CHECK_THROWS_AS(build_operator_basis(0), ConfigError);
  CHECK_THROWS_AS(build_operator_basis(21), ConfigError);
}

TEST_CASE("Hamiltonian entries: detuning, coupling, and phased drive") {
  const CouplingModel model = assemble_model(build_giant_array(1, 1, 1, 3), 0.08, 0.08, 1.0);
  const double J = model.J_scale;
  const double delta = 0.013, eta = 0.2, phi = 0.9;
  const OperatorBasis basis = build_operator_basis(2);
  const Eigen::MatrixXcd H = build_hamiltonian(model, DriveSpec::make(eta, phi, delta), basis);

  CHECK((H - H.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
  // Diagonal: detuning for each excited atom plus the self couplings (+J on A, -J on B).
  CHECK(std::abs(H(0, 0) - cx(2 * delta, 0)) < 1e-15);
  CHECK(std::abs(H(1, 1) - cx(delta + J, 0)) < 1e-15);
  CHECK(std::abs(H(2, 2) - cx(delta - J, 0)) < 1e-15);
  CHECK(std::abs(H(3, 3)) == 0.0);
  // Exchange coupling between |eg> and |ge>.
  CHECK(std::abs(H(1, 2) - cx(J, 0)) < 1e-15);
  CHECK(std::abs(H(0, 3)) == 0.0);
  // Drive: phase 0 on the A atom, e^{-i phi} on the B atom's raising part.
  CHECK(std::abs(H(0, 2) - cx(eta, 0)) < 1e-15);
  CHECK(std::abs(H(1, 3) - cx(eta, 0)) < 1e-15);
  CHECK(std::abs(H(0, 1) - eta * std::polar(1.0, -phi)) < 1e-15);
  CHECK(std::abs(H(2, 3) - eta * std::polar(1.0, -phi)) < 1e-15);
}

TEST_CASE("generator annihilates the trace and preserves Hermiticity on random inputs") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 120; ++trial) {
    const int n_atoms = 1 + trial % 3;
    const OperatorBasis basis = build_operator_basis(n_atoms);
    const int d = basis.dim;
    const Eigen::MatrixXcd H = random_hermitian(rng, d);
    const Eigen::MatrixXd gamma = random_symmetric(rng, n_atoms);
    const LindbladGenerator gen = build_generator(H, gamma, basis);

    const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
    Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(d, d);
    CHECK((vectorize(eye).adjoint() * gen.op).cwiseAbs().maxCoeff() < 1e-12 * scale);

    const Eigen::MatrixXcd rho = random_density(rng, d);
    const Eigen::MatrixXcd drho = unvectorize(gen.op * vectorize(rho));
    CHECK((drho - drho.adjoint()).cwiseAbs().maxCoeff() < 1e-12 * scale);
    CHECK(std::abs(drho.trace()) < 1e-12 * scale);
  }
}

TEST_CASE("single damped atom: spectrum and population decay rate") {
  const double gamma_rate = 0.35;
  const OperatorBasis basis = build_operator_basis(1);
  Eigen::MatrixXd gm(1, 1);
  gm(0, 0) = 2.0 * gamma_rate;  // entry 2*gamma decays the population at 4*gamma
  const Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(2, 2);
  const LindbladGenerator gen = build_generator(H, gm, basis);

  const auto spec = generator_spectrum(gen);
  REQUIRE(spec.size() == 4);
  CHECK(std::abs(spec[0]) < 1e-12);
  CHECK(std::abs(spec[1] - cx(-2 * gamma_rate, 0)) < 1e-12);
  CHECK(std::abs(spec[2] - cx(-2 * gamma_rate, 0)) < 1e-12);
  CHECK(std::abs(spec[3] - cx(-4 * gamma_rate, 0)) < 1e-12);

  // d<P>/dt = -2 Gamma_00 <P> for the bare dissipator.
  std::mt19937 rng(5);
  const Eigen::MatrixXcd rho = random_density(rng, 2);
  const Eigen::MatrixXcd drho = unvectorize(gen.op * vectorize(rho));
  const double lhs = (basis.proj[0] * drho).trace().real();
  const double rhs = -2.0 * gm(0, 0) * (basis.proj[0] * rho).trace().real();
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("pure commutator generators have purely imaginary spectra") {
  std::mt19937 rng(17);
  const OperatorBasis basis = build_operator_basis(2);
  const Eigen::MatrixXcd H = random_hermitian(rng, 4);
  const LindbladGenerator gen =
      build_generator(H, Eigen::MatrixXd::Zero(2, 2), basis);
  for (const cx& ev : generator_spectrum(gen))
    CHECK(std::abs(ev.real()) < 1e-11 * std::max(1.0, H.cwiseAbs().maxCoeff()));
}

TEST_CASE("malformed generator inputs are rejected") {
  const OperatorBasis basis = build_operator_basis(2);
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(4, 4);
  Eigen::MatrixXd gm = Eigen::MatrixXd::Zero(2, 2);

  Eigen::MatrixXcd bad_h = H;
  bad_h(0, 1) = cx(0.3, 0.0);  // no conjugate partner
  CHECK_THROWS_AS(build_generator(bad_h, gm, basis), NumericalError);

  Eigen::MatrixXd bad_gm = gm;
  bad_gm(0, 1) = 0.2;  // asymmetric
  CHECK_THROWS_AS(build_generator(H, bad_gm, basis), NumericalError);

  CHECK_THROWS_AS(build_generator(Eigen::MatrixXcd::Zero(3, 3), gm, basis), ConfigError);
  CHECK_THROWS_AS(build_generator(H, Eigen::MatrixXd::Zero(3, 3), basis), ConfigError);
}

TEST_CASE("local phase rotations conjugate the superoperator exactly") {
  // Case with diagonal dissipation so the phase rotation commutes with the
  // dissipator; the identity then tests the column-stacking Kronecker wiring.
  const CouplingModel model = assemble_model(build_giant_array(1, 1, 1, 3), 0.06, 0.06, 1.0);
  const OperatorBasis basis = build_operator_basis(2);
  const double phi = 1.3;
  const DriveSpec with_phase = DriveSpec::make(0.002, phi, 0.0);

  const Eigen::MatrixXcd H = build_hamiltonian(model, with_phase, basis);
  const LindbladGenerator gen = build_generator(H, model.gamma, basis);

  Eigen::MatrixXcd U = Eigen::MatrixXcd::Identity(4, 4);
  for (int i = 0; i < 4; ++i)
    U(i, i) = std::polar(1.0, phi * basis.proj[1](i, i).real());

  const LindbladGenerator rotated = build_generator(U * H * U.adjoint(), model.gamma, basis);
  const Eigen::MatrixXcd W = kron(U.conjugate(), U);
  const Eigen::MatrixXcd conjugated = W * gen.op * W.adjoint();
  CHECK((rotated.op - conjugated).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("the drive phase is physical once both species are driven") {
  const CouplingModel model = assemble_model(build_giant_array(1, 1, 1, 3), 0.06, 0.06, 1.0);
  const LindbladGenerator gen0 = build_generator(model, DriveSpec::make(0.002, 0.0, 0.0));
  const LindbladGenerator gen1 = build_generator(model, DriveSpec::make(0.002, 1.3, 0.0));

  const auto s0 = generator_spectrum(gen0);
  const auto s1 = generator_spectrum(gen1);
  double hausdorff = 0.0;
  for (const cx& a : s1) {
    double nearest = 1e300;
    for (const cx& b : s0) nearest = std::min(nearest, std::abs(a - b));
    hausdorff = std::max(hausdorff, nearest);
  }
  CHECK(hausdorff > 1e-6);
}

TEST_CASE("vectorize uses column stacking and round-trips") {
  Eigen::MatrixXcd rho(2, 2);
  rho << cx(1, 0), cx(2, 5), cx(3, -1), cx(4, 0);
  const Eigen::VectorXcd v = vectorize(rho);
  CHECK(v(0) == rho(0, 0));
  CHECK(v(1) == rho(1, 0));  // column-major: second entry walks down the first column
  CHECK(v(2) == rho(0, 1));
  CHECK(v(3) == rho(1, 1));
  CHECK((unvectorize(v) - rho).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(unvectorize(Eigen::VectorXcd::Zero(3)), NumericalError);
}
