#pragma once

#include <map>
#include <string>
#include <vector>

#include "gaw/coefficients.hpp"
#include "gaw/geometry.hpp"
#include "gaw/liouvillian.hpp"

namespace gaw {

enum class RunMode { Evolve, Steady, Sweep };
enum class SweepAxis { Delta, Eta, Phi };
enum class InitialState { AllExcited, Ground, FromFile };

const char* to_string(RunMode m);
const char* to_string(SweepAxis a);

struct GeometryConfig {
  Flavor flavor = Flavor::Giant;
  int num_a = 1, num_b = 1;
  // Giant arrays: t_a/t_b are the leg separations of A/B atoms and t_i/t_j the
  // gaps between neighbouring atoms (config keys t_A,t_B,t_I,t_J).
  // Small arrays: t_i/t_j are the spacings between consecutive atoms
  // (config keys t_i,t_j); t_a/t_b are unused.
  int t_a = 1, t_b = 1, t_i = 1, t_j = 1;
};

// All energies in units of the photon hopping rate xi = 1.
struct PhysicsConfig {
  double g = 0.0, f = 0.0;  // coupling strengths of A-/B-species atoms
  double delta = 0.0;       // drive detuning
  double eta = 0.0;         // drive amplitude
  double phi = 0.0;         // drive phase on B-species atoms
};

struct RunConfig {
  RunMode mode = RunMode::Steady;
  // evolve
  double t_final = 0.0;
  double dt = 0.05;
  // sweep
  SweepAxis axis = SweepAxis::Delta;
  double sweep_min = 0.0, sweep_max = 0.0;
  int sweep_points = 0;
  // common
  std::vector<std::string> metrics;  // tokens: pe, populations, concurrence, coherences
  InitialState initial = InitialState::AllExcited;
  std::string initial_path;  // set when initial == FromFile
};

struct ScenarioConfig {
  GeometryConfig geometry;
  PhysicsConfig physics;
  RunConfig run;
};

// Section -> key -> raw value. The common currency between the two config
// syntaxes (INI-style text and JSON manifests) and the target of --override.
using RawConfig = std::map<std::string, std::map<std::string, std::string>>;

// Accepts INI-style sections ([geometry]/[physics]/[run]) or a JSON object
// with the same section names (a previously emitted run manifest re-parses
// directly; its informational "derived" block is skipped). Errors carry
// line numbers (INI) or key names (JSON).
RawConfig parse_raw_config(const std::string& text);

// Applies "section.key=value" or, when the key is unambiguous across
// sections, plain "key=value".
void apply_override(RawConfig& raw, const std::string& spec);

// Type-checks, applies documented defaults, and validates cross-field rules.
ScenarioConfig resolve_config(const RawConfig& raw);

ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config_file(const std::string& path);

std::vector<std::string> default_metrics(RunMode mode);

ArrayGeometry make_geometry(const GeometryConfig& cfg);
CouplingModel make_model(const ScenarioConfig& cfg);
DriveSpec make_drive(const PhysicsConfig& cfg);

// all_excited / ground / file:PATH (a density-matrix JSON written by this
// tool). The result is validated before use.
Eigen::MatrixXcd make_initial_state(const RunConfig& run, int dim);

}  // namespace gaw
