#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gaw {

// Thrown for invalid user-supplied parameters (geometry, config files, CLI).
// The CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a numerical invariant is violated at runtime (non-Hermitian
// state, trace drift, ...). The CLI maps it to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

enum class Species : std::uint8_t { GiantA, GiantB, SmallA, SmallB };

enum class Flavor : std::uint8_t { Giant, Small };

// A-species atoms couple with strength g, B-species with f.
inline bool is_a_species(Species s) {
  return s == Species::GiantA || s == Species::SmallA;
}

// Single-letter tag used in labels and CSV output.
char species_letter(Species s);

struct AtomSpec {
  Species species;
  int index_in_species;           // 1-based within its species
  std::array<int, 2> sites;       // lattice positions; small atoms use sites[0] only
  int n_legs;                     // 2 for giant, 1 for small

  int leg(int k) const { return sites[static_cast<std::size_t>(k)]; }
};

struct ArrayGeometry {
  Flavor flavor = Flavor::Giant;
  std::vector<AtomSpec> atoms;    // ordered A,B,A,B,...
  int t_A = 1, t_B = 1;           // giant-atom sizes (or small spacings t_i, t_j)
  int t_I = 1, t_J = 1;           // intra-/extra-cell spacings (giant arrays)

  int n_atoms() const { return static_cast<int>(atoms.size()); }
};

enum class ConfigurationCase {
  CaseI,          // t_A odd, t_B = 2 (mod 4): B atoms decouple from the waveguide
  CaseII,         // t_A odd, t_B odd
  CaseIII,        // t_A odd, t_B = 0 (mod 4)
  DecoupledBoth,  // t_A = 2 (mod 4), t_B even: every coefficient vanishes
  EquivCaseII,    // t_A = 0 (mod 4), t_B = 0 (mod 4)
  Unclassified,
};

const char* to_string(ConfigurationCase c);

inline constexpr int kDefaultAtomCap = 6;  // Hilbert dim 64, superoperator 4096^2

// Atoms alternate A,B,A,B,... with first legs at x_1 = 0,
// y_i = x_i + t_A + t_I, x_{i+1} = y_i + t_B + t_J.
ArrayGeometry build_giant_array(int num_A, int num_B, int t_A, int t_B,
                                int t_I = 1, int t_J = 1,
                                int atom_cap = kDefaultAtomCap);

// Single-site atoms at x_1 = 0, y_i = x_i + t_i, x_{i+1} = y_i + t_j.
ArrayGeometry build_small_array(int num_a, int num_b, int t_i, int t_j,
                                int atom_cap = kDefaultAtomCap);

// Pure function of (t_A mod 4, t_B mod 4).
ConfigurationCase classify_configuration(int t_A, int t_B);

}  // namespace gaw
