#include "gaw/scenarios.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "gaw/dynamics.hpp"
#include "gaw/output.hpp"

namespace gaw {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

// Expansion of the configured metric tokens into concrete CSV columns plus a
// per-state evaluator.
struct MetricPlan {
  std::vector<std::string> columns;
  bool want_pe = false;
  bool want_pops = false;
  std::vector<std::pair<int, int>> pairs;      // atom pairs for concurrence
  std::vector<std::pair<int, int>> coh;        // basis index pairs (upper triangle)
  std::vector<std::string> atom_names;
  std::vector<std::string> basis_names;
  int dim = 0;
};

MetricPlan plan_metrics(const std::vector<std::string>& tokens, const CouplingModel& model) {
  MetricPlan plan;
  plan.atom_names = atom_labels(model.species);
  plan.basis_names = basis_labels(plan.atom_names);
  plan.dim = 1 << model.n_atoms;

  for (const std::string& token : tokens) {
    if (token == "pe") {
      plan.want_pe = true;
      plan.columns.push_back("P_e");
    } else if (token == "populations") {
      plan.want_pops = true;
      for (const std::string& name : plan.basis_names)
        plan.columns.push_back("pop[" + name + "]");
    } else if (token == "concurrence") {
      for (int i = 0; i < model.n_atoms; ++i)
        for (int j = i + 1; j < model.n_atoms; ++j) {
          plan.pairs.emplace_back(i, j);
          plan.columns.push_back("C[" + plan.atom_names[static_cast<std::size_t>(i)] +
                                 plan.atom_names[static_cast<std::size_t>(j)] + "]");
        }
    } else if (token == "coherences") {
      for (int i = 0; i < plan.dim; ++i)
        for (int j = i + 1; j < plan.dim; ++j) {
          plan.coh.emplace_back(i, j);
          const std::string tag = plan.basis_names[static_cast<std::size_t>(i)] + ":" +
                                  plan.basis_names[static_cast<std::size_t>(j)];
          plan.columns.push_back("re[" + tag + "]");
          plan.columns.push_back("im[" + tag + "]");
        }
    } else {
      throw ConfigError("metrics: unknown token '" + token + "'");
    }
  }
  return plan;
}

std::vector<double> evaluate_metrics(const MetricPlan& plan, const Eigen::MatrixXcd& rho) {
  std::vector<double> cells;
  cells.reserve(plan.columns.size());
  if (plan.want_pe) cells.push_back(excited_average(rho));
  if (plan.want_pops)
    for (int b = 0; b < plan.dim; ++b) cells.push_back(rho(b, b).real());
  for (const auto& [i, j] : plan.pairs)
    cells.push_back(concurrence_of_pair(rho, plan.atom_names, i, j).value);
  for (const auto& [i, j] : plan.coh) {
    cells.push_back(rho(i, j).real());
    cells.push_back(rho(i, j).imag());
  }
  for (double v : cells)
    if (!std::isfinite(v)) throw NumericalError("metric evaluation produced a non-finite value");
  return cells;
}

std::vector<double> axis_grid(const RunConfig& run) {
  std::vector<double> values(static_cast<std::size_t>(run.sweep_points));
  const double step = (run.sweep_max - run.sweep_min) / (run.sweep_points - 1);
  for (int k = 0; k < run.sweep_points; ++k)
    values[static_cast<std::size_t>(k)] = run.sweep_min + step * k;
  values.back() = run.sweep_max;
  return values;
}

ManifestInfo base_manifest(const ScenarioConfig& cfg, const CouplingModel& model,
                           const std::string& preset, const std::string& label) {
  ManifestInfo info;
  info.config = cfg;
  info.preset = preset;
  info.label = label;
  info.derived_numbers.emplace_back("J", model.J_scale);
  info.derived_numbers.emplace_back("n_atoms", model.n_atoms);
  if (cfg.geometry.flavor == Flavor::Giant)
    info.derived_strings.emplace_back(
        "configuration_case", to_string(classify_configuration(cfg.geometry.t_a,
                                                               cfg.geometry.t_b)));
  return info;
}

std::string basename_of(const std::string& path) { return fs::path(path).filename().string(); }

}  // namespace

SweepResult run_sweep(const ScenarioConfig& cfg, int threads) {
  if (cfg.run.mode != RunMode::Sweep)
    throw ConfigError("run_sweep: configuration mode is not 'sweep'");

  const CouplingModel model = make_model(cfg);
  const MetricPlan plan = plan_metrics(cfg.run.metrics, model);

  SweepResult result;
  result.axis_name = to_string(cfg.run.axis);
  result.axis_values = axis_grid(cfg.run);
  result.metric_columns = plan.columns;
  const std::size_t n = result.axis_values.size();
  result.rows.assign(n, std::vector<std::optional<double>>(plan.columns.size()));
  result.status.assign(n, "ok");

  std::mutex fatal_mutex;
  std::exception_ptr fatal;

  auto evaluate_point = [&](std::size_t k) {
    PhysicsConfig point = cfg.physics;
    const double value = result.axis_values[k];
    switch (cfg.run.axis) {
      case SweepAxis::Delta: point.delta = value; break;
      case SweepAxis::Eta: point.eta = value; break;
      case SweepAxis::Phi: point.phi = value; break;
    }
    try {
      const LindbladGenerator gen = build_generator(model, make_drive(point));
      const SteadyResult steady = steady_state(gen);
      if (const auto* rho = std::get_if<Eigen::MatrixXcd>(&steady)) {
        const std::vector<double> cells = evaluate_metrics(plan, *rho);
        for (std::size_t c = 0; c < cells.size(); ++c) result.rows[k][c] = cells[c];
      } else {
        result.status[k] = "no_unique_steady_state";
      }
    } catch (const NumericalError& e) {
      result.status[k] = std::string("error: ") + e.what();
    } catch (...) {
      std::lock_guard<std::mutex> lock(fatal_mutex);
      if (!fatal) fatal = std::current_exception();
    }
  };

  const int worker_count =
      std::max(1, std::min<int>(threads, static_cast<int>(n)));
  if (worker_count == 1) {
    for (std::size_t k = 0; k < n; ++k) evaluate_point(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(worker_count));
    for (int w = 0; w < worker_count; ++w)
      workers.emplace_back([&] {
        for (std::size_t k = next.fetch_add(1); k < n; k = next.fetch_add(1)) {
          {
            std::lock_guard<std::mutex> lock(fatal_mutex);
            if (fatal) return;
          }
          evaluate_point(k);
        }
      });
    for (std::thread& w : workers) w.join();
  }
  if (fatal) std::rethrow_exception(fatal);
  return result;
}

RunArtifacts run_scenario(const ScenarioConfig& cfg, const std::string& out_dir,
                          const std::string& name, int threads, const std::string& preset,
                          const std::string& label) {
  if (name.empty()) throw ConfigError("run_scenario: output name must not be empty");
  fs::create_directories(out_dir);
  const std::string stem = (fs::path(out_dir) / name).string();
  const std::string csv_path = stem + ".csv";
  const std::string state_path = stem + ".state.json";
  const std::string manifest_path = stem + ".manifest.json";

  const CouplingModel model = make_model(cfg);
  const std::vector<std::string> atoms = atom_labels(model.species);
  const std::vector<std::string> basis = basis_labels(atoms);

  ManifestInfo info = base_manifest(cfg, model, preset, label);
  RunArtifacts artifacts;

  switch (cfg.run.mode) {
    case RunMode::Evolve: {
      const LindbladGenerator gen = build_generator(model, make_drive(cfg.physics));
      const Eigen::MatrixXcd rho0 = make_initial_state(cfg.run, gen.dim);
      const std::vector<double> grid = cfg.run.t_final > 0.0
                                           ? uniform_grid(cfg.run.t_final, cfg.run.dt)
                                           : std::vector<double>{0.0};
      const Trajectory traj = evolve(gen, rho0, grid);
      const MetricPlan plan = plan_metrics(cfg.run.metrics, model);

      std::vector<std::string> header{"time"};
      header.insert(header.end(), plan.columns.begin(), plan.columns.end());
      CsvWriter csv(header);
      for (std::size_t k = 0; k < traj.times.size(); ++k) {
        std::vector<std::string> row{format_number(traj.times[k])};
        for (double v : evaluate_metrics(plan, traj.states[k])) row.push_back(format_number(v));
        csv.add_row(row);
      }
      csv.write_file(csv_path);
      write_state_json(traj.states.back(), basis, state_path);

      info.outputs = {basename_of(csv_path), basename_of(state_path)};
      write_manifest(info, manifest_path);
      artifacts.files = {csv_path, state_path, manifest_path};
      break;
    }
    case RunMode::Steady: {
      const LindbladGenerator gen = build_generator(model, make_drive(cfg.physics));
      const SteadyResult steady = steady_state(gen);
      CsvWriter csv({"row_label", "col_label", "re", "im"});
      if (const auto* rho = std::get_if<Eigen::MatrixXcd>(&steady)) {
        const TomographyTable table = tomography(*rho, atoms);
        for (Eigen::Index i = 0; i < rho->rows(); ++i)
          for (Eigen::Index j = 0; j < rho->cols(); ++j)
            csv.add_row({table.basis_labels[static_cast<std::size_t>(i)],
                         table.basis_labels[static_cast<std::size_t>(j)],
                         format_number(table.entries(i, j).real()),
                         format_number(table.entries(i, j).imag())});
        csv.write_file(csv_path);
        write_state_json(*rho, basis, state_path);
        info.derived_strings.emplace_back("steady_state", "unique");
        info.outputs = {basename_of(csv_path), basename_of(state_path)};
        write_manifest(info, manifest_path);
        artifacts.files = {csv_path, state_path, manifest_path};
      } else {
        const auto& flag = std::get<NoUniqueSteadyState>(steady);
        csv.write_file(csv_path);  // header only: no unique state to tabulate
        info.derived_strings.emplace_back("steady_state", "no_unique_steady_state");
        info.derived_numbers.emplace_back("zero_eigenvalue_count", flag.zero_count);
        info.derived_numbers.emplace_back("oscillatory_axis_count", flag.axis_count);
        info.outputs = {basename_of(csv_path)};
        write_manifest(info, manifest_path);
        artifacts.files = {csv_path, manifest_path};
      }
      break;
    }
    case RunMode::Sweep: {
      const SweepResult result = run_sweep(cfg, threads);
      std::vector<std::string> header{result.axis_name, "status"};
      header.insert(header.end(), result.metric_columns.begin(), result.metric_columns.end());
      CsvWriter csv(header);
      for (std::size_t k = 0; k < result.axis_values.size(); ++k) {
        std::vector<std::string> row{format_number(result.axis_values[k]),
                                     result.status[k]};
        for (const auto& cell : result.rows[k])
          row.push_back(cell ? format_number(*cell) : std::string{});
        csv.add_row(row);
      }
      csv.write_file(csv_path);
      info.outputs = {basename_of(csv_path)};
      write_manifest(info, manifest_path);
      artifacts.files = {csv_path, manifest_path};
      break;
    }
  }
  return artifacts;
}

namespace {

json giant_geometry(int num_a, int num_b, int t_a, int t_b) {
  return json{{"flavor", "giant"}, {"num_A", num_a}, {"num_B", num_b},
              {"t_A", t_a},        {"t_B", t_b},     {"t_I", 1},
              {"t_J", 1}};
}

json small_geometry(int num_a, int num_b, int t_i, int t_j) {
  return json{{"flavor", "small"}, {"num_A", num_a}, {"num_B", num_b},
              {"t_i", t_i},        {"t_j", t_j}};
}

json physics_block(double g, double delta, double eta, double phi) {
  return json{{"g", g}, {"f", g}, {"delta", delta}, {"eta", eta}, {"phi", phi}};
}

json evolve_block(double t_final, double dt) {
  return json{{"mode", "evolve"},
              {"t_final", t_final},
              {"dt", dt},
              {"metrics", json::array({"pe", "populations", "coherences"})},
              {"initial", "all_excited"}};
}

json steady_block() {
  return json{{"mode", "steady"}, {"initial", "all_excited"}};
}

json sweep_block(const char* axis, double lo, double hi, int points) {
  return json{{"mode", "sweep"},
              {"sweep_axis", axis},
              {"sweep_min", lo},
              {"sweep_max", hi},
              {"sweep_points", points},
              {"metrics", json::array({"pe", "concurrence"})}};
}

std::pair<std::string, RawConfig> make_run(const std::string& label, json geometry,
                                           json physics, json run) {
  json doc;
  doc["geometry"] = std::move(geometry);
  doc["physics"] = std::move(physics);
  doc["run"] = std::move(run);
  return {label, parse_raw_config(doc.dump())};
}

std::string eta_tag(double eta) { return "eta" + json(eta).dump(); }

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fig3",        "fig4",        "fig5",
                                              "fig6",        "fig7",        "fig8",
                                              "figB6_small", "figB7_small", "figB8_small"};
  return names;
}

std::vector<std::pair<std::string, RawConfig>> expand_preset(const std::string& name) {
  std::vector<std::pair<std::string, RawConfig>> runs;

  if (name == "fig3") {
    // Two-atom array whose B atom decouples from the waveguide: driven
    // indefinitely, it never settles. Long evolution from |ee>.
    runs.push_back(make_run("caseI", giant_geometry(1, 1, 1, 2),
                            physics_block(0.08, 0.0, 0.2, 0.0), evolve_block(650.0, 0.05)));
  } else if (name == "fig4") {
    for (const auto& [label, t_b] : {std::pair{"caseII", 3}, {"caseIII", 4}}) {
      json evo = evolve_block(600.0, 0.05);
      evo["metrics"] = json::array({"pe", "populations"});
      runs.push_back(make_run(std::string(label) + "_evolve", giant_geometry(1, 1, 1, t_b),
                              physics_block(0.08, 0.0, 0.2, 0.0), evo));
      runs.push_back(make_run(std::string(label) + "_steady", giant_geometry(1, 1, 1, t_b),
                              physics_block(0.08, 0.0, 0.2, 0.0), steady_block()));
    }
  } else if (name == "fig5") {
    const double g = 0.05, j = g * g;  // xi = 1
    for (const auto& [label, t_b] : {std::pair{"caseII", 3}, {"caseIII", 4}})
      for (double eta : {0.002, 0.004})
        runs.push_back(make_run(std::string(label) + "_" + eta_tag(eta),
                                giant_geometry(1, 1, 1, t_b),
                                physics_block(g, 0.0, eta, 0.0),
                                sweep_block("delta", -3.0 * j, 3.0 * j, 121)));
  } else if (name == "fig6" || name == "figB6_small") {
    const double g = 0.05, j = g * g;
    const json sweep = sweep_block("eta", 0.2 * j, 7.0 * j, 35);
    if (name == "fig6") {
      for (const auto& [label, t_b] : {std::pair{"caseII", 3}, {"caseIII", 4}})
        runs.push_back(make_run(label, giant_geometry(2, 1, 1, t_b),
                                physics_block(g, 0.0, 0.0, 0.0), sweep));
    } else {
      for (const auto& [label, t_j] : {std::pair{"ti1_tj2", 2}, {"ti1_tj3", 3}})
        runs.push_back(make_run(label, small_geometry(2, 1, 1, t_j),
                                physics_block(g, 0.0, 0.0, 0.0), sweep));
    }
  } else if (name == "fig7" || name == "figB7_small") {
    const json sweep = sweep_block("phi", 0.0, kTwoPi, 61);
    const double g = 0.06;
    if (name == "fig7") {
      for (const auto& [label, t_b] : {std::pair{"caseII", 3}, {"caseIII", 4}})
        runs.push_back(make_run(label, giant_geometry(1, 1, 1, t_b),
                                physics_block(g, 0.0, 0.002, 0.0), sweep));
    } else {
      for (const auto& [label, t_j] : {std::pair{"ti1_tj2", 2}, {"ti1_tj3", 3}})
        runs.push_back(make_run(label, small_geometry(1, 1, 1, t_j),
                                physics_block(g, 0.0, 0.002, 0.0), sweep));
    }
  } else if (name == "fig8" || name == "figB8_small") {
    const json sweep = sweep_block("phi", 0.0, kTwoPi, 61);
    const double g = 0.08;
    if (name == "fig8") {
      for (const auto& [label, t_b] : {std::pair{"caseII", 3}, {"caseIII", 4}})
        runs.push_back(make_run(label, giant_geometry(2, 1, 1, t_b),
                                physics_block(g, 0.0, 0.002, 0.0), sweep));
    } else {
      for (const auto& [label, t_j] : {std::pair{"ti1_tj2", 2}, {"ti1_tj3", 3}})
        runs.push_back(make_run(label, small_geometry(2, 1, 1, t_j),
                                physics_block(g, 0.0, 0.002, 0.0), sweep));
    }
  } else {
    std::string valid;
    for (const std::string& n : preset_names()) {
      if (!valid.empty()) valid += ", ";
      valid += n;
    }
    throw ConfigError("unknown preset '" + name + "' (expected one of: " + valid + ")");
  }
  return runs;
}

RunArtifacts run_preset(const std::string& name, const std::vector<std::string>& overrides,
                        const std::string& out_dir, int threads) {
  RunArtifacts all;
  for (const auto& [label, raw] : expand_preset(name)) {
    RawConfig merged = raw;
    for (const std::string& ov : overrides) apply_override(merged, ov);
    const ScenarioConfig cfg = resolve_config(merged);
    const RunArtifacts arts =
        run_scenario(cfg, out_dir, name + "_" + label, threads, name, label);
    all.files.insert(all.files.end(), arts.files.begin(), arts.files.end());
  }
  return all;
}

}  // namespace gaw
