#include "gaw/geometry.hpp"

#include <set>

namespace gaw {

char species_letter(Species s) {
  switch (s) {
    case Species::GiantA: return 'A';
    case Species::GiantB: return 'B';
    case Species::SmallA: return 'a';
    case Species::SmallB: return 'b';
  }
  return '?';
}

const char* to_string(ConfigurationCase c) {
  switch (c) {
    case ConfigurationCase::CaseI: return "CaseI";
    case ConfigurationCase::CaseII: return "CaseII";
    case ConfigurationCase::CaseIII: return "CaseIII";
    case ConfigurationCase::DecoupledBoth: return "DecoupledBoth";
    case ConfigurationCase::EquivCaseII: return "EquivCaseII";
    case ConfigurationCase::Unclassified: return "Unclassified";
  }
  return "Unclassified";
}

namespace {

void check_counts(int num_first, int num_second, int atom_cap, const char* what) {
  if (num_first < 1)
    throw ConfigError(std::string(what) + ": need at least one atom of the first species");
  if (num_second < 0)
    throw ConfigError(std::string(what) + ": negative atom count");
  if (num_first - num_second > 1 || num_second - num_first > 1)
    throw ConfigError(std::string(what) +
                      ": alternating array requires species counts to differ by at most 1");
  if (num_first + num_second > atom_cap)
    throw ConfigError(std::string(what) + ": " + std::to_string(num_first + num_second) +
                      " atoms exceeds the cap of " + std::to_string(atom_cap) +
                      " (Hilbert-space blowup)");
  if (num_second > num_first)
    throw ConfigError(std::string(what) + ": arrays start with the first species (counts " +
                      std::to_string(num_first) + "," + std::to_string(num_second) + ")");
}

void check_distinct_sites(const ArrayGeometry& geom, const char* what) {
  std::set<int> seen;
  for (const auto& atom : geom.atoms)
    for (int k = 0; k < atom.n_legs; ++k)
      if (!seen.insert(atom.leg(k)).second)
        throw ConfigError(std::string(what) + ": coupling sites collide at lattice position " +
                          std::to_string(atom.leg(k)));
}

}  // namespace

ArrayGeometry build_giant_array(int num_A, int num_B, int t_A, int t_B,
                                int t_I, int t_J, int atom_cap) {
  if (t_A < 1 || t_B < 1 || t_I < 1 || t_J < 1)
    throw ConfigError("build_giant_array: sizes and spacings must be positive integers");
  check_counts(num_A, num_B, atom_cap, "build_giant_array");

  ArrayGeometry geom;
  geom.flavor = Flavor::Giant;
  geom.t_A = t_A;
  geom.t_B = t_B;
  geom.t_I = t_I;
  geom.t_J = t_J;

  int x = 0;
  int made_A = 0, made_B = 0;
  while (made_A < num_A || made_B < num_B) {
    if (made_A < num_A) {
      ++made_A;
      geom.atoms.push_back({Species::GiantA, made_A, {x, x + t_A}, 2});
    }
    if (made_B < num_B) {
      int y = x + t_A + t_I;
      ++made_B;
      geom.atoms.push_back({Species::GiantB, made_B, {y, y + t_B}, 2});
      x = y + t_B + t_J;
    }
  }
  check_distinct_sites(geom, "build_giant_array");
  return geom;
}

ArrayGeometry build_small_array(int num_a, int num_b, int t_i, int t_j, int atom_cap) {
  if (t_i < 1 || t_j < 1)
    throw ConfigError("build_small_array: spacings must be positive integers");
  check_counts(num_a, num_b, atom_cap, "build_small_array");

  ArrayGeometry geom;
  geom.flavor = Flavor::Small;
  geom.t_A = t_i;
  geom.t_B = t_j;

  int x = 0;
  int made_a = 0, made_b = 0;
  while (made_a < num_a || made_b < num_b) {
    if (made_a < num_a) {
      ++made_a;
      geom.atoms.push_back({Species::SmallA, made_a, {x, 0}, 1});
    }
    if (made_b < num_b) {
      int y = x + t_i;
      ++made_b;
      geom.atoms.push_back({Species::SmallB, made_b, {y, 0}, 1});
      x = y + t_j;
    }
  }
  check_distinct_sites(geom, "build_small_array");
  return geom;
}

ConfigurationCase classify_configuration(int t_A, int t_B) {
  if (t_A < 1 || t_B < 1)
    throw ConfigError("classify_configuration: sizes must be positive integers");
  const int ra = t_A % 4, rb = t_B % 4;
  const bool a_odd = (ra % 2) == 1;
  const bool b_odd = (rb % 2) == 1;
  if (a_odd && rb == 2) return ConfigurationCase::CaseI;
  if (a_odd && b_odd) return ConfigurationCase::CaseII;
  if (a_odd && rb == 0) return ConfigurationCase::CaseIII;
  if (ra == 2 && !b_odd) return ConfigurationCase::DecoupledBoth;
  if (ra == 0 && rb == 0) return ConfigurationCase::EquivCaseII;
  return ConfigurationCase::Unclassified;
}

}  // namespace gaw
