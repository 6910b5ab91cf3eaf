#include "gaw/output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gaw {

namespace {

using json = nlohmann::ordered_json;

bool needs_quoting(const std::string& field) {
  return field.find_first_of(",\"\r\n") != std::string::npos;
}

std::string csv_field(const std::string& field) {
  if (!needs_quoting(field)) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string initial_to_string(const RunConfig& run) {
  switch (run.initial) {
    case InitialState::AllExcited: return "all_excited";
    case InitialState::Ground: return "ground";
    case InitialState::FromFile: return "file:" + run.initial_path;
  }
  return "?";
}

json config_to_json(const ScenarioConfig& cfg) {
  json geometry;
  geometry["flavor"] = cfg.geometry.flavor == Flavor::Giant ? "giant" : "small";
  geometry["num_A"] = cfg.geometry.num_a;
  geometry["num_B"] = cfg.geometry.num_b;
  if (cfg.geometry.flavor == Flavor::Giant) {
    geometry["t_A"] = cfg.geometry.t_a;
    geometry["t_B"] = cfg.geometry.t_b;
    geometry["t_I"] = cfg.geometry.t_i;
    geometry["t_J"] = cfg.geometry.t_j;
  } else {
    geometry["t_i"] = cfg.geometry.t_i;
    geometry["t_j"] = cfg.geometry.t_j;
  }

  json physics;
  physics["g"] = cfg.physics.g;
  physics["f"] = cfg.physics.f;
  physics["delta"] = cfg.physics.delta;
  physics["eta"] = cfg.physics.eta;
  physics["phi"] = cfg.physics.phi;

  json run;
  run["mode"] = to_string(cfg.run.mode);
  if (cfg.run.mode == RunMode::Evolve) {
    run["t_final"] = cfg.run.t_final;
    run["dt"] = cfg.run.dt;
  }
  if (cfg.run.mode == RunMode::Sweep) {
    run["sweep_axis"] = to_string(cfg.run.axis);
    run["sweep_min"] = cfg.run.sweep_min;
    run["sweep_max"] = cfg.run.sweep_max;
    run["sweep_points"] = cfg.run.sweep_points;
  }
  if (!cfg.run.metrics.empty()) run["metrics"] = cfg.run.metrics;
  run["initial"] = initial_to_string(cfg.run);

  json doc;
  doc["geometry"] = std::move(geometry);
  doc["physics"] = std::move(physics);
  doc["run"] = std::move(run);
  return doc;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::vector<std::string>& header) : columns_(header.size()) {
  if (header.empty()) throw ConfigError("CSV writer: header must not be empty");
  append_row(header);
}

void CsvWriter::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) {
    std::ostringstream msg;
    msg << "CSV writer: row has " << cells.size() << " cells, header has " << columns_;
    throw ConfigError(msg.str());
  }
  append_row(cells);
}

void CsvWriter::append_row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += csv_field(cells[i]);
  }
  buffer_ += "\r\n";
}

void CsvWriter::write_file(const std::string& path) const {
  write_text_file(path, buffer_);
}

std::string manifest_text(const ManifestInfo& info) {
  json doc = config_to_json(info.config);

  json derived;
  if (!info.preset.empty()) derived["preset"] = info.preset;
  if (!info.label.empty()) derived["label"] = info.label;
  for (const auto& [key, value] : info.derived_strings) derived[key] = value;
  for (const auto& [key, value] : info.derived_numbers) derived[key] = value;
  if (!info.outputs.empty()) derived["outputs"] = info.outputs;
  if (!derived.empty()) doc["derived"] = std::move(derived);

  return doc.dump(2) + "\n";
}

void write_manifest(const ManifestInfo& info, const std::string& path) {
  write_text_file(path, manifest_text(info));
}

std::string state_json_text(const Eigen::MatrixXcd& rho,
                            const std::vector<std::string>& basis_labels) {
  if (rho.rows() != rho.cols())
    throw ConfigError("state output: density matrix must be square");
  json doc;
  doc["dim"] = rho.rows();
  if (!basis_labels.empty()) {
    if (static_cast<Eigen::Index>(basis_labels.size()) != rho.rows())
      throw ConfigError("state output: one basis label per dimension required");
    doc["basis"] = basis_labels;
  }
  json entries = json::array();
  for (Eigen::Index i = 0; i < rho.rows(); ++i)
    for (Eigen::Index j = 0; j < rho.cols(); ++j) {
      json e;
      e["row"] = i;
      e["col"] = j;
      e["re"] = rho(i, j).real();
      e["im"] = rho(i, j).imag();
      entries.push_back(std::move(e));
    }
  doc["entries"] = std::move(entries);
  return doc.dump(2) + "\n";
}

void write_state_json(const Eigen::MatrixXcd& rho,
                      const std::vector<std::string>& basis_labels,
                      const std::string& path) {
  write_text_file(path, state_json_text(rho, basis_labels));
}

Eigen::MatrixXcd read_state_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open state file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("state file '" + path + "': " + e.what());
  }
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("entries"))
    throw ConfigError("state file '" + path + "': expected {dim, entries}");
  const auto dim = doc["dim"].get<Eigen::Index>();
  if (dim < 1 || dim > 4096)
    throw ConfigError("state file '" + path + "': implausible dimension");
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& e : doc["entries"]) {
    if (!e.is_object() || !e.contains("row") || !e.contains("col") || !e.contains("re") ||
        !e.contains("im"))
      throw ConfigError("state file '" + path + "': entries need {row, col, re, im}");
    const auto i = e["row"].get<Eigen::Index>();
    const auto j = e["col"].get<Eigen::Index>();
    if (i < 0 || i >= dim || j < 0 || j >= dim)
      throw ConfigError("state file '" + path + "': entry index out of range");
    rho(i, j) = cx(e["re"].get<double>(), e["im"].get<double>());
  }
  return rho;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot open output file '" + path + "' for writing");
  out << content;
  if (!out) throw ConfigError("failed writing output file '" + path + "'");
}

}  // namespace gaw
