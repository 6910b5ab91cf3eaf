#include "gaw/config.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <climits>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gaw/dynamics.hpp"
#include "gaw/output.hpp"

namespace gaw {

namespace {

using json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

const std::set<std::string>& section_names() {
  static const std::set<std::string> names{"geometry", "physics", "run"};
  return names;
}

// Known keys per section; the authority for bare --override resolution and
// unknown-key diagnostics.
const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"geometry", {"flavor", "num_A", "num_B", "t_A", "t_B", "t_I", "t_J", "t_i", "t_j"}},
      {"physics", {"g", "f", "delta", "eta", "phi"}},
      {"run",
       {"mode", "t_final", "dt", "sweep_axis", "sweep_min", "sweep_max", "sweep_points",
        "metrics", "initial"}},
  };
  return keys;
}

RawConfig parse_json_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config JSON: top level must be an object");

  RawConfig raw;
  for (const auto& [sec, body] : doc.items()) {
    if (sec == "derived") continue;  // informational echo written into manifests
    if (!section_names().count(sec))
      throw ConfigError("config JSON: unknown section '" + sec + "'");
    if (!body.is_object())
      throw ConfigError("config JSON: section '" + sec + "' must be an object");
    for (const auto& [key, val] : body.items()) {
      std::string s;
      if (val.is_string()) {
        s = val.get<std::string>();
      } else if (val.is_boolean()) {
        s = val.get<bool>() ? "true" : "false";
      } else if (val.is_number()) {
        s = val.dump();
      } else if (val.is_array()) {
        for (const auto& item : val) {
          if (!item.is_string())
            throw ConfigError("config JSON: array values for '" + sec + "." + key +
                              "' must be strings");
          if (!s.empty()) s += ',';
          s += item.get<std::string>();
        }
      } else {
        throw ConfigError("config JSON: unsupported value type for '" + sec + "." + key +
                          "'");
      }
      raw[sec][key] = s;
    }
  }
  return raw;
}

RawConfig parse_ini_config(const std::string& text) {
  RawConfig raw;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#' || stripped.front() == ';') continue;

    std::ostringstream at;
    at << "config line " << lineno;

    if (stripped.front() == '[') {
      if (stripped.back() != ']')
        throw ConfigError(at.str() + ": section header missing closing ']'");
      section = trim(stripped.substr(1, stripped.size() - 2));
      if (!section_names().count(section))
        throw ConfigError(at.str() + ": unknown section '" + section + "'");
      continue;
    }

    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError(at.str() + ": expected 'key = value' or a [section] header");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) throw ConfigError(at.str() + ": empty key");
    if (section.empty())
      throw ConfigError(at.str() + ": key '" + key + "' appears before any [section]");
    if (raw[section].count(key))
      throw ConfigError(at.str() + ": duplicate key '" + key + "' in [" + section + "]");
    raw[section][key] = value;
  }
  return raw;
}

double parse_double(const std::string& value, const std::string& context) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(v))
    throw ConfigError(context + ": '" + value + "' is not a finite number");
  return v;
}

int parse_int(const std::string& value, const std::string& context) {
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0' || errno == ERANGE || v < INT_MIN || v > INT_MAX)
    throw ConfigError(context + ": '" + value + "' is not an integer");
  return static_cast<int>(v);
}

// Tracks which keys of a section have been consumed so leftovers can be
// reported by name.
class SectionReader {
 public:
  SectionReader(const RawConfig& raw, std::string section) : section_(std::move(section)) {
    auto it = raw.find(section_);
    if (it != raw.end()) kv_ = &it->second;
  }

  bool has(const std::string& key) const { return kv_ && kv_->count(key); }

  std::string take(const std::string& key) {
    consumed_.insert(key);
    return kv_->at(key);
  }

  std::string take_string(const std::string& key, const std::string& fallback) {
    return has(key) ? take(key) : fallback;
  }

  std::string take_required(const std::string& key) {
    if (!has(key))
      throw ConfigError("missing required key '" + key + "' in [" + section_ + "]");
    return take(key);
  }

  double take_double(const std::string& key, double fallback) {
    return has(key) ? parse_double(take(key), context(key)) : fallback;
  }

  double take_double_required(const std::string& key) {
    return parse_double(take_required(key), context(key));
  }

  int take_int(const std::string& key, int fallback) {
    return has(key) ? parse_int(take(key), context(key)) : fallback;
  }

  int take_int_required(const std::string& key) {
    return parse_int(take_required(key), context(key));
  }

  // Call after all reads: every present key must have been consumed.
  void finish() const {
    if (!kv_) return;
    for (const auto& [key, value] : *kv_) {
      (void)value;
      if (!consumed_.count(key))
        throw ConfigError("unknown key '" + key + "' in [" + section_ + "]");
    }
  }

  std::string context(const std::string& key) const { return section_ + "." + key; }

 private:
  const std::map<std::string, std::string>* kv_ = nullptr;
  std::string section_;
  std::set<std::string> consumed_;
};

std::vector<std::string> parse_metrics(const std::string& value) {
  static const std::set<std::string> valid{"pe", "populations", "concurrence",
                                           "coherences"};
  std::vector<std::string> out;
  std::stringstream in(value);
  std::string token;
  while (std::getline(in, token, ',')) {
    const std::string t = trim(token);
    if (t.empty()) throw ConfigError("run.metrics: empty metric token");
    if (!valid.count(t))
      throw ConfigError("run.metrics: unknown metric '" + t +
                        "' (expected pe, populations, concurrence, coherences)");
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  }
  if (out.empty()) throw ConfigError("run.metrics: no metrics given");
  return out;
}

}  // namespace

const char* to_string(RunMode m) {
  switch (m) {
    case RunMode::Evolve: return "evolve";
    case RunMode::Steady: return "steady";
    case RunMode::Sweep: return "sweep";
  }
  return "?";
}

const char* to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::Delta: return "delta";
    case SweepAxis::Eta: return "eta";
    case SweepAxis::Phi: return "phi";
  }
  return "?";
}

RawConfig parse_raw_config(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') return parse_json_config(text);
    break;
  }
  return parse_ini_config(text);
}

void apply_override(RawConfig& raw, const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override '" + spec + "': expected key=value");
  const std::string key = trim(spec.substr(0, eq));
  const std::string value = trim(spec.substr(eq + 1));
  if (key.empty()) throw ConfigError("override '" + spec + "': empty key");

  const auto dot = key.find('.');
  if (dot != std::string::npos) {
    const std::string section = key.substr(0, dot);
    const std::string bare = key.substr(dot + 1);
    if (!section_names().count(section))
      throw ConfigError("override '" + spec + "': unknown section '" + section + "'");
    raw[section][bare] = value;
    return;
  }

  std::vector<std::string> owners;
  for (const auto& [section, keys] : known_keys())
    if (keys.count(key)) owners.push_back(section);
  if (owners.empty()) throw ConfigError("override: unknown key '" + key + "'");
  if (owners.size() > 1)
    throw ConfigError("override: key '" + key + "' is ambiguous; qualify as section.key");
  raw[owners.front()][key] = value;
}

std::vector<std::string> default_metrics(RunMode mode) {
  switch (mode) {
    case RunMode::Evolve: return {"pe", "populations", "coherences"};
    case RunMode::Sweep: return {"pe", "concurrence"};
    case RunMode::Steady: return {};  // steady always writes the full state table
  }
  return {};
}

ScenarioConfig resolve_config(const RawConfig& raw) {
  for (const auto& [section, kv] : raw) {
    (void)kv;
    if (!section_names().count(section))
      throw ConfigError("unknown section '" + section + "'");
  }

  ScenarioConfig cfg;

  // --- geometry ---
  {
    SectionReader sec(raw, "geometry");
    const std::string flavor = sec.take_string("flavor", "giant");
    if (flavor == "giant") {
      cfg.geometry.flavor = Flavor::Giant;
    } else if (flavor == "small") {
      cfg.geometry.flavor = Flavor::Small;
    } else {
      throw ConfigError("geometry.flavor: expected 'giant' or 'small', got '" + flavor +
                        "'");
    }
    cfg.geometry.num_a = sec.take_int("num_A", 1);
    cfg.geometry.num_b = sec.take_int("num_B", 1);

    if (cfg.geometry.flavor == Flavor::Giant) {
      for (const char* k : {"t_i", "t_j"})
        if (sec.has(k))
          throw ConfigError(std::string("geometry.") + k +
                            " applies to small arrays; giant arrays use t_A/t_B/t_I/t_J");
      cfg.geometry.t_a = sec.take_int_required("t_A");
      cfg.geometry.t_b = sec.take_int_required("t_B");
      cfg.geometry.t_i = sec.take_int("t_I", 1);
      cfg.geometry.t_j = sec.take_int("t_J", 1);
    } else {
      for (const char* k : {"t_A", "t_B", "t_I", "t_J"})
        if (sec.has(k))
          throw ConfigError(std::string("geometry.") + k +
                            " applies to giant arrays; small arrays use t_i/t_j");
      cfg.geometry.t_i = sec.take_int_required("t_i");
      cfg.geometry.t_j = sec.take_int("t_j", 1);
    }
    sec.finish();
  }

  // --- physics ---
  {
    SectionReader sec(raw, "physics");
    cfg.physics.g = sec.take_double_required("g");
    cfg.physics.f = sec.has("f") ? sec.take_double("f", 0.0) : cfg.physics.g;
    cfg.physics.delta = sec.take_double("delta", 0.0);
    cfg.physics.eta = sec.take_double("eta", 0.0);
    cfg.physics.phi = sec.take_double("phi", 0.0);
    if (cfg.physics.g < 0.0) throw ConfigError("physics.g: must be >= 0");
    if (cfg.physics.f < 0.0) throw ConfigError("physics.f: must be >= 0");
    if (cfg.physics.eta < 0.0) throw ConfigError("physics.eta: must be >= 0");
    sec.finish();
  }

  // --- run ---
  {
    SectionReader sec(raw, "run");
    const std::string mode = sec.take_string("mode", "steady");
    if (mode == "evolve") {
      cfg.run.mode = RunMode::Evolve;
    } else if (mode == "steady") {
      cfg.run.mode = RunMode::Steady;
    } else if (mode == "sweep") {
      cfg.run.mode = RunMode::Sweep;
    } else {
      throw ConfigError("run.mode: expected evolve, steady or sweep, got '" + mode + "'");
    }

    if (cfg.run.mode == RunMode::Evolve) {
      cfg.run.t_final = sec.take_double_required("t_final");
      if (cfg.run.t_final < 0.0) throw ConfigError("run.t_final: must be >= 0");
      cfg.run.dt = sec.take_double("dt", 0.05);
      if (!(cfg.run.dt > 0.0)) throw ConfigError("run.dt: must be > 0");
    } else {
      // tolerated so a mode override does not orphan grid keys
      if (sec.has("t_final")) cfg.run.t_final = sec.take_double("t_final", 0.0);
      if (sec.has("dt")) cfg.run.dt = sec.take_double("dt", 0.05);
    }

    if (cfg.run.mode == RunMode::Sweep) {
      const std::string axis = sec.take_required("sweep_axis");
      if (axis == "delta") {
        cfg.run.axis = SweepAxis::Delta;
      } else if (axis == "eta") {
        cfg.run.axis = SweepAxis::Eta;
      } else if (axis == "phi") {
        cfg.run.axis = SweepAxis::Phi;
      } else {
        throw ConfigError("run.sweep_axis: expected delta, eta or phi, got '" + axis + "'");
      }
      cfg.run.sweep_min = sec.take_double_required("sweep_min");
      cfg.run.sweep_max = sec.take_double_required("sweep_max");
      cfg.run.sweep_points = sec.take_int_required("sweep_points");
      if (cfg.run.sweep_points < 2)
        throw ConfigError("run.sweep_points: need at least 2 points");
      if (!(cfg.run.sweep_max > cfg.run.sweep_min))
        throw ConfigError("run.sweep_max must exceed run.sweep_min");
      if (cfg.run.axis == SweepAxis::Eta && cfg.run.sweep_min < 0.0)
        throw ConfigError("run.sweep_min: drive amplitude eta cannot be negative");
    } else {
      for (const char* k : {"sweep_axis", "sweep_min", "sweep_max", "sweep_points"})
        if (sec.has(k)) (void)sec.take(k);
    }

    cfg.run.metrics = sec.has("metrics") ? parse_metrics(sec.take("metrics"))
                                         : default_metrics(cfg.run.mode);

    const std::string initial = sec.take_string("initial", "all_excited");
    if (initial == "all_excited") {
      cfg.run.initial = InitialState::AllExcited;
    } else if (initial == "ground") {
      cfg.run.initial = InitialState::Ground;
    } else if (initial.rfind("file:", 0) == 0) {
      cfg.run.initial = InitialState::FromFile;
      cfg.run.initial_path = initial.substr(5);
      if (cfg.run.initial_path.empty())
        throw ConfigError("run.initial: file: prefix requires a path");
    } else {
      throw ConfigError("run.initial: expected all_excited, ground or file:PATH, got '" +
                        initial + "'");
    }
    sec.finish();
  }

  return cfg;
}

ScenarioConfig parse_config(const std::string& text) {
  return resolve_config(parse_raw_config(text));
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

ArrayGeometry make_geometry(const GeometryConfig& cfg) {
  if (cfg.flavor == Flavor::Giant)
    return build_giant_array(cfg.num_a, cfg.num_b, cfg.t_a, cfg.t_b, cfg.t_i, cfg.t_j);
  return build_small_array(cfg.num_a, cfg.num_b, cfg.t_i, cfg.t_j);
}

CouplingModel make_model(const ScenarioConfig& cfg) {
  return assemble_model(make_geometry(cfg.geometry), cfg.physics.g, cfg.physics.f,
                        /*xi=*/1.0);
}

DriveSpec make_drive(const PhysicsConfig& cfg) {
  return DriveSpec::make(cfg.eta, cfg.phi, cfg.delta);
}

Eigen::MatrixXcd make_initial_state(const RunConfig& run, int dim) {
  switch (run.initial) {
    case InitialState::AllExcited: {
      Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
      rho(0, 0) = 1.0;  // |e...e> is basis index 0
      return rho;
    }
    case InitialState::Ground: {
      Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
      rho(dim - 1, dim - 1) = 1.0;
      return rho;
    }
    case InitialState::FromFile: {
      Eigen::MatrixXcd rho = read_state_json(run.initial_path);
      if (rho.rows() != dim)
        throw ConfigError("run.initial: state in '" + run.initial_path + "' has dimension " +
                          std::to_string(rho.rows()) + ", expected " + std::to_string(dim));
      check_density_matrix(rho, DensityTolerances{}, "run.initial state");
      return rho;
    }
  }
  throw ConfigError("run.initial: unhandled initial state kind");
}

}  // namespace gaw
