#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gaw/config.hpp"
#include "gaw/dynamics.hpp"
#include "gaw/output.hpp"
#include "gaw/scenarios.hpp"

namespace {

namespace fs = std::filesystem;

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::vector<std::string> overrides;
  int threads = 1;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool needs_config) {
  auto* config = cmd->add_option("--config", args.config_path,
                                 "Configuration file (INI-style sections or a JSON manifest)");
  if (needs_config) config->required();
  cmd->add_option("--out", args.out_dir, "Output directory")->capture_default_str();
  cmd->add_option("--override", args.overrides,
                  "Config override key=value or section.key=value (repeatable)");
  cmd->add_option("--threads", args.threads, "Worker threads for sweep points")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

// fig5_caseII.manifest.json -> fig5_caseII; run.ini -> run
std::string output_name(const std::string& config_path) {
  std::string stem = fs::path(config_path).stem().string();
  const std::string suffix = ".manifest";
  if (stem.size() > suffix.size() && stem.ends_with(suffix))
    stem.resize(stem.size() - suffix.size());
  return stem.empty() ? std::string("run") : stem;
}

gaw::ScenarioConfig load_with_mode(const CommonArgs& args, const char* forced_mode) {
  std::ifstream in(args.config_path, std::ios::binary);
  if (!in) throw gaw::ConfigError("cannot open config file '" + args.config_path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  gaw::RawConfig raw = gaw::parse_raw_config(buf.str());
  if (forced_mode) raw["run"]["mode"] = forced_mode;
  for (const std::string& ov : args.overrides) gaw::apply_override(raw, ov);
  return gaw::resolve_config(raw);
}

void report_files(const gaw::RunArtifacts& artifacts) {
  for (const std::string& path : artifacts.files) std::cout << "wrote " << path << "\n";
}

int run_coeffs(const CommonArgs& args) {
  const gaw::ScenarioConfig cfg = load_with_mode(args, nullptr);
  const gaw::CouplingModel model = gaw::make_model(cfg);
  const gaw::ArrayGeometry geometry = gaw::make_geometry(cfg.geometry);
  const std::vector<std::string> atoms = gaw::atom_labels(model.species);

  // The coupling table is expressed in units of J = g^2/xi so tables with
  // different coupling strengths are directly comparable.
  if (model.J_scale <= 0.0)
    throw gaw::ConfigError("coeffs: output is in units of J = g^2/xi; set physics.g > 0");

  fs::create_directories(args.out_dir);
  const std::string stem =
      (fs::path(args.out_dir) / (output_name(args.config_path) + ".coeffs")).string();

  gaw::CsvWriter csv({"n", "m", "label_n", "label_m", "A_re", "A_im", "two_xi_A_re",
                      "two_xi_A_im", "h_over_J", "gamma_over_J"});
  for (int n = 0; n < model.n_atoms; ++n)
    for (int m = 0; m < model.n_atoms; ++m) {
      const gaw::PairCoefficient a = gaw::pair_coefficient(geometry, n, m, 1.0);
      csv.add_row({std::to_string(n), std::to_string(m),
                   atoms[static_cast<std::size_t>(n)], atoms[static_cast<std::size_t>(m)],
                   gaw::format_number(a.value.real()), gaw::format_number(a.value.imag()),
                   std::to_string(a.re2xi), std::to_string(a.im2xi),
                   gaw::format_number(model.h(n, m) / model.J_scale),
                   gaw::format_number(model.gamma(n, m) / model.J_scale)});
    }
  csv.write_file(stem + ".csv");

  gaw::ManifestInfo info;
  info.config = cfg;
  info.derived_numbers.emplace_back("J", model.J_scale);
  info.derived_numbers.emplace_back("n_atoms", model.n_atoms);
  if (cfg.geometry.flavor == gaw::Flavor::Giant)
    info.derived_strings.emplace_back(
        "configuration_case",
        gaw::to_string(gaw::classify_configuration(cfg.geometry.t_a, cfg.geometry.t_b)));
  info.outputs = {fs::path(stem + ".csv").filename().string()};
  gaw::write_manifest(info, stem + ".manifest.json");

  std::cout << "wrote " << stem << ".csv\n";
  std::cout << "wrote " << stem << ".manifest.json\n";
  return 0;
}

int run_mode_command(const CommonArgs& args, const char* mode) {
  const gaw::ScenarioConfig cfg = load_with_mode(args, mode);
  const gaw::RunArtifacts artifacts = gaw::run_scenario(
      cfg, args.out_dir, output_name(args.config_path), args.threads);
  report_files(artifacts);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Driven-dissipative dynamics of two-level atom arrays coupled to a "
               "coupled-resonator waveguide"};
  app.require_subcommand(1);

  CommonArgs coeffs_args, evolve_args, steady_args, sweep_args, preset_args;
  std::string preset_name;

  auto* coeffs = app.add_subcommand(
      "coeffs", "Write waveguide-mediated coupling/dissipation matrices as CSV");
  add_common(coeffs, coeffs_args, /*needs_config=*/true);

  auto* evolve = app.add_subcommand(
      "evolve", "Time-evolve the configured array and write trajectory CSV");
  add_common(evolve, evolve_args, /*needs_config=*/true);

  auto* steady = app.add_subcommand(
      "steady", "Solve for the steady state and write its tomography CSV");
  add_common(steady, steady_args, /*needs_config=*/true);

  auto* sweep = app.add_subcommand(
      "sweep", "Sweep a drive parameter and tabulate steady-state metrics");
  add_common(sweep, sweep_args, /*needs_config=*/true);

  auto* preset = app.add_subcommand(
      "preset", "Run a named preset scenario bundle");
  preset->add_option("name", preset_name, "Preset name (see --list)")->required(false);
  bool list_presets = false;
  preset->add_flag("--list", list_presets, "List available preset names");
  add_common(preset, preset_args, /*needs_config=*/false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (coeffs->parsed()) return run_coeffs(coeffs_args);
    if (evolve->parsed()) return run_mode_command(evolve_args, "evolve");
    if (steady->parsed()) return run_mode_command(steady_args, "steady");
    if (sweep->parsed()) return run_mode_command(sweep_args, "sweep");
    if (preset->parsed()) {
      if (list_presets) {
        for (const std::string& name : gaw::preset_names()) std::cout << name << "\n";
        return 0;
      }
      if (preset_name.empty())
        throw gaw::ConfigError("preset: name required (or use --list)");
      const gaw::RunArtifacts artifacts = gaw::run_preset(
          preset_name, preset_args.overrides, preset_args.out_dir, preset_args.threads);
      report_files(artifacts);
      return 0;
    }
  } catch (const gaw::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const gaw::NumericalError& e) {
    std::cerr << "numerical invariant failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
