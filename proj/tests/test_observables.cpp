#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "gaw/observables.hpp"

using namespace gaw;

namespace {

Eigen::MatrixXcd pure(const Eigen::VectorXcd& psi) { return psi * psi.adjoint(); }

Eigen::VectorXcd ket(int dim, int index) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(index) = cx(1, 0);
  return v;
}

Eigen::MatrixXcd random_density(std::mt19937& rng, int d) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::MatrixXcd m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = cx(dist(rng), dist(rng));
  Eigen::MatrixXcd rho = m * m.adjoint();
  return rho / rho.trace().real();
}

Eigen::MatrixXcd random_unitary(std::mt19937& rng, int d) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::MatrixXcd m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = cx(dist(rng), dist(rng));
  return Eigen::HouseholderQR<Eigen::MatrixXcd>(m).householderQ();
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

TEST_CASE("expectation evaluates tr(rho op)") {
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2, 2);
  rho(0, 0) = cx(0.7, 0);
  rho(1, 1) = cx(0.3, 0);
  Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(2, 2);
  op(0, 0) = cx(1, 0);
  CHECK(expectation(rho, op) == cx(0.7, 0));
  CHECK_THROWS_AS(expectation(rho, Eigen::MatrixXcd::Zero(3, 3)), ConfigError);
}

TEST_CASE("excited_average counts excited bits, |e> being bit value 0") {
  // Two-atom index order: 0=|ee>, 1=|eg>, 2=|ge>, 3=|gg>.
  CHECK(excited_average(pure(ket(4, 0))) == doctest::Approx(1.0));
  CHECK(excited_average(pure(ket(4, 1))) == doctest::Approx(0.5));
  CHECK(excited_average(pure(ket(4, 2))) == doctest::Approx(0.5));
  CHECK(excited_average(pure(ket(4, 3))) == doctest::Approx(0.0));
  CHECK(excited_average(0.25 * Eigen::MatrixXcd::Identity(4, 4)) == doctest::Approx(0.5));

  // Three atoms: |egg> has one of three excited.
  CHECK(excited_average(pure(ket(8, 3))) == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(excited_average(Eigen::MatrixXcd::Zero(3, 3)), ConfigError);
}

TEST_CASE("partial_trace projects product states onto their factors") {
  std::mt19937 rng(11);
  const Eigen::MatrixXcd rho_a = random_density(rng, 2);
  const Eigen::MatrixXcd rho_b = random_density(rng, 2);
  const Eigen::MatrixXcd rho_c = random_density(rng, 2);
  const Eigen::MatrixXcd rho = kron(rho_a, kron(rho_b, rho_c));

  CHECK((partial_trace(rho, {0}) - rho_a).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((partial_trace(rho, {1}) - rho_b).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((partial_trace(rho, {2}) - rho_c).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((partial_trace(rho, {0, 2}) - kron(rho_a, rho_c)).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((partial_trace(rho, {0, 1, 2}) - rho).cwiseAbs().maxCoeff() < 1e-13);

  const Eigen::MatrixXcd reduced = partial_trace(rho, {1, 2});
  CHECK(std::abs(reduced.trace() - cx(1, 0)) < 1e-13);
}

TEST_CASE("partial_trace of a Bell state is maximally mixed") {
  Eigen::VectorXcd bell = (ket(4, 0) + ket(4, 3)) / std::sqrt(2.0);
  const Eigen::MatrixXcd reduced = partial_trace(pure(bell), {0});
  CHECK((reduced - 0.5 * Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("partial_trace validates the keep set") {
  std::mt19937 rng(13);
  const Eigen::MatrixXcd rho = random_density(rng, 4);
  CHECK_THROWS_AS(partial_trace(rho, {}), ConfigError);
  CHECK_THROWS_AS(partial_trace(rho, {2}), ConfigError);
  CHECK_THROWS_AS(partial_trace(rho, {-1}), ConfigError);
  CHECK_THROWS_AS(partial_trace(rho, {0, 0}), ConfigError);
}

TEST_CASE("concurrence of reference states") {
  Eigen::VectorXcd bell = (ket(4, 0) + ket(4, 3)) / std::sqrt(2.0);
  CHECK(concurrence(pure(bell)) == doctest::Approx(1.0).epsilon(1e-10));

  Eigen::VectorXcd singlet = (ket(4, 1) - ket(4, 2)) / std::sqrt(2.0);
  CHECK(concurrence(pure(singlet)) == doctest::Approx(1.0).epsilon(1e-10));

  CHECK(concurrence(pure(ket(4, 0))) == doctest::Approx(0.0));
  CHECK(concurrence(0.25 * Eigen::MatrixXcd::Identity(4, 4)) == doctest::Approx(0.0));

  // Isotropic mixture of a Bell state at weight 1/2: C = (3p - 1)/2 = 1/4.
  const Eigen::MatrixXcd werner =
      0.5 * pure(bell) + 0.5 * 0.25 * Eigen::MatrixXcd::Identity(4, 4);
  CHECK(concurrence(werner) == doctest::Approx(0.25).epsilon(1e-10));

  CHECK_THROWS_AS(concurrence(Eigen::MatrixXcd::Identity(2, 2)), ConfigError);
}

TEST_CASE("concurrence is invariant under local unitaries") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    const Eigen::MatrixXcd rho = random_density(rng, 4);
    const Eigen::MatrixXcd u = kron(random_unitary(rng, 2), random_unitary(rng, 2));
    const double direct = concurrence(rho);
    const double rotated = concurrence(u * rho * u.adjoint());
    CHECK(std::abs(direct - rotated) < 1e-9);
  }
}

TEST_CASE("an invalid state is rejected rather than silently clamped") {
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(4, 4);
  rho(0, 0) = cx(1.2, 0);
  rho(1, 1) = cx(-0.2, 0);
  CHECK_THROWS_AS(concurrence(rho), NumericalError);
}

TEST_CASE("W state: every pair carries concurrence 2/3") {
  Eigen::VectorXcd w = (ket(8, 3) + ket(8, 5) + ket(8, 6)) / std::sqrt(3.0);
  const Eigen::MatrixXcd rho = pure(w);
  const std::vector<std::string> labels = {"A1", "B", "A2"};

  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const ConcurrenceValue c = concurrence_of_pair(rho, labels, i, j);
      CHECK(c.value == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    }

  CHECK(concurrence_of_pair(rho, labels, 0, 2).pair == "A1A2");
  CHECK(concurrence_of_pair(rho, labels, 2, 0).pair == "A1A2");
  CHECK(concurrence_of_pair(rho, labels, 1, 2).pair == "BA2");
  CHECK_THROWS_AS(concurrence_of_pair(rho, labels, 1, 1), ConfigError);
  CHECK_THROWS_AS(concurrence_of_pair(rho, {"A"}, 0, 1), ConfigError);
}

TEST_CASE("atom labels use bare letters for singleton species") {
  using S = Species;
  CHECK(atom_labels({S::GiantA, S::GiantB}) == std::vector<std::string>{"A", "B"});
  CHECK(atom_labels({S::GiantA, S::GiantB, S::GiantA}) ==
        std::vector<std::string>{"A1", "B", "A2"});
  CHECK(atom_labels({S::SmallA, S::SmallB, S::SmallA}) ==
        std::vector<std::string>{"a1", "b", "a2"});
  CHECK(atom_labels({S::SmallA}) == std::vector<std::string>{"a"});
}

TEST_CASE("basis labels enumerate product states most-significant first") {
  const auto labels = basis_labels({"A", "B"});
  REQUIRE(labels.size() == 4);
  CHECK(labels[0] == "e_Ae_B");
  CHECK(labels[1] == "e_Ag_B");
  CHECK(labels[2] == "g_Ae_B");
  CHECK(labels[3] == "g_Ag_B");
  CHECK(basis_labels({"a"})[1] == "g_a");
}

TEST_CASE("tomography echoes the state with readable labels") {
  std::mt19937 rng(3);
  const Eigen::MatrixXcd rho = random_density(rng, 4);
  const TomographyTable table = tomography(rho);
  CHECK(table.basis_labels[0] == "e_Ae_B");
  CHECK((table.entries - rho).cwiseAbs().maxCoeff() == 0.0);

  const TomographyTable named = tomography(rho, {"A1", "B"});
  CHECK(named.basis_labels[3] == "g_A1g_B");
  CHECK_THROWS_AS(tomography(rho, {"A"}), ConfigError);
}
