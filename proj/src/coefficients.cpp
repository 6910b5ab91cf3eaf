#include "gaw/coefficients.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>

namespace gaw {

namespace {

void check_pair(const ArrayGeometry& geom, int n, int m, const char* what) {
  if (n < 0 || m < 0 || n >= geom.n_atoms() || m >= geom.n_atoms())
    throw ConfigError(std::string(what) + ": atom index out of range");
}

// Accumulates i^{|d|} exactly: the result lives in Z + iZ.
void add_phasor(std::int64_t d, std::int64_t& re, std::int64_t& im) {
  switch (std::llabs(d) % 4) {
    case 0: re += 1; break;
    case 1: im += 1; break;
    case 2: re -= 1; break;
    case 3: im -= 1; break;
  }
}

}  // namespace

PairCoefficient pair_coefficient(const ArrayGeometry& geom, int n, int m, double xi) {
  check_pair(geom, n, m, "pair_coefficient");
  if (xi <= 0.0) throw ConfigError("pair_coefficient: xi must be positive");
  const AtomSpec& u = geom.atoms[static_cast<std::size_t>(n)];
  const AtomSpec& v = geom.atoms[static_cast<std::size_t>(m)];

  std::int64_t re = 0, im = 0;
  for (int p = 0; p < u.n_legs; ++p)
    for (int q = 0; q < v.n_legs; ++q)
      add_phasor(static_cast<std::int64_t>(u.leg(p)) - v.leg(q), re, im);

  PairCoefficient out;
  out.re2xi = re;
  out.im2xi = im;
  out.value = cx(static_cast<double>(re), static_cast<double>(im)) / (2.0 * xi);
  out.n = n;
  out.m = m;
  return out;
}

cx coefficient_oracle(std::int64_t d, double xi, double eps, std::int64_t n_c,
                      double delta_c) {
  if (eps <= 0.0) throw ConfigError("coefficient_oracle: regulator eps must be positive");
  if (n_c < (1 << 12)) throw ConfigError("coefficient_oracle: N_c must be at least 2^12");
  if (xi <= 0.0) throw ConfigError("coefficient_oracle: xi must be positive");

  const double dd = static_cast<double>(d);
  cx sum = 0.0;
  for (std::int64_t j = 0; j < n_c; ++j) {
    const double k = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_c);
    // omega_k - omega_c = -2*xi*cos k; delta_c detunes the resonance.
    const cx denom(eps, -2.0 * xi * std::cos(k) - delta_c);
    sum += std::polar(1.0, k * dd) / denom;
  }
  return sum / static_cast<double>(n_c);
}

cx coefficient_oracle_richardson(std::int64_t d, double xi, double eps, std::int64_t n_c) {
  return 2.0 * coefficient_oracle(d, xi, eps, n_c) -
         coefficient_oracle(d, xi, 2.0 * eps, n_c);
}

namespace {

template <typename Term>
cx pair_sum(const ArrayGeometry& geom, int n, int m, Term term) {
  const AtomSpec& u = geom.atoms[static_cast<std::size_t>(n)];
  const AtomSpec& v = geom.atoms[static_cast<std::size_t>(m)];
  cx sum = 0.0;
  for (int p = 0; p < u.n_legs; ++p)
    for (int q = 0; q < v.n_legs; ++q)
      sum += term(static_cast<std::int64_t>(u.leg(p)) - v.leg(q));
  return sum;
}

}  // namespace

cx oracle_pair_sum(const ArrayGeometry& geom, int n, int m, double xi, double eps,
                   std::int64_t n_c) {
  check_pair(geom, n, m, "oracle_pair_sum");
  return pair_sum(geom, n, m,
                  [&](std::int64_t d) { return coefficient_oracle(d, xi, eps, n_c); });
}

cx oracle_pair_sum_richardson(const ArrayGeometry& geom, int n, int m, double xi,
                              double eps, std::int64_t n_c) {
  check_pair(geom, n, m, "oracle_pair_sum_richardson");
  return pair_sum(geom, n, m, [&](std::int64_t d) {
    return coefficient_oracle_richardson(d, xi, eps, n_c);
  });
}

CouplingModel assemble_model(const ArrayGeometry& geom, double g, double f, double xi) {
  if (xi <= 0.0) throw ConfigError("assemble_model: xi must be positive");
  if (g < 0.0 || f < 0.0) throw ConfigError("assemble_model: coupling strengths must be >= 0");
  if (g / xi > 0.2 || f / xi > 0.2)
    std::fprintf(stderr,
                 "warning: coupling g/xi=%.3g f/xi=%.3g beyond the weak-coupling regime "
                 "the generator assumes\n",
                 g / xi, f / xi);

  const int n = geom.n_atoms();
  CouplingModel model;
  model.n_atoms = n;
  model.h = Eigen::MatrixXd::Zero(n, n);
  model.gamma = Eigen::MatrixXd::Zero(n, n);
  model.g = g;
  model.f = f;
  model.xi = xi;
  model.J_scale = g * g / xi;
  model.geometry = geom;
  model.species.reserve(static_cast<std::size_t>(n));
  for (const auto& atom : geom.atoms) model.species.push_back(atom.species);

  for (int i = 0; i < n; ++i) {
    const double ci = is_a_species(model.species[static_cast<std::size_t>(i)]) ? g : f;
    for (int j = 0; j < n; ++j) {
      const double cj = is_a_species(model.species[static_cast<std::size_t>(j)]) ? g : f;
      const PairCoefficient a = pair_coefficient(geom, i, j, xi);
      model.h(i, j) = ci * cj * a.value.imag();
      model.gamma(i, j) = ci * cj * a.value.real();
    }
  }
  return model;
}

Eigen::MatrixXcd coefficient_matrix(const ArrayGeometry& geom, double xi) {
  const int n = geom.n_atoms();
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = pair_coefficient(geom, i, j, xi).value;
  return a;
}

}  // namespace gaw
