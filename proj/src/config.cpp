#include "droplet/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace droplet {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": not a number: '" + value + "'");
  }
  if (used != value.size() || !std::isfinite(v)) {
    throw ConfigError(key + ": not a number: '" + value + "'");
  }
  return v;
}

long to_long(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(value, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": not an integer: '" + value + "'");
  }
  if (used != value.size()) {
    throw ConfigError(key + ": not an integer: '" + value + "'");
  }
  return v;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw ConfigError(key + ": expected true/false, got '" + value + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_double(key, item));
  }
  return out;
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += fmt_double(values[i]);
  }
  return out;
}

std::vector<double> regular_times(double step, double T) {
  std::vector<double> out;
  for (int k = 0;; ++k) {
    const double t = k * step;
    if (t > T * (1.0 + 1e-12)) break;
    out.push_back(t);
  }
  return out;
}

}  // namespace

std::vector<double> RunConfig::effective_snapshot_times() const {
  if (!snapshot_times.empty()) return snapshot_times;
  return regular_times(3.0, T);
}

std::vector<double> RunConfig::effective_table_times() const {
  if (!table_times.empty()) return table_times;
  if (center_law.kind == CenterLaw::Kind::ScaledHR) {
    std::vector<double> out;
    for (double t : {0.0, 0.1, 0.2, 0.3, 0.35, 0.4, 0.45, 0.49, 0.5, 0.51}) {
      if (t <= T * (1.0 + 1e-12)) out.push_back(t);
    }
    return out;
  }
  return regular_times(2.5, T);
}

std::map<std::string, std::string> RunConfig::to_map() const {
  return {
      {"M", std::to_string(M)},
      {"L", std::to_string(L)},
      {"dt", fmt_double(dt)},
      {"T", fmt_double(T)},
      {"scheme", to_string(scheme)},
      {"center_law", center_law.to_string()},
      {"shape", shape_spec},
      {"output_every", std::to_string(output_every)},
      {"output_dir", output_dir.string()},
      {"snapshot_times", join(snapshot_times)},
      {"table_times", join(table_times)},
      {"parallel", parallel ? "true" : "false"},
      {"allow_cfl_violation", allow_cfl_violation ? "true" : "false"},
  };
}

std::vector<double> read_custom_samples(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("shape: cannot read custom profile '" + path.string() + "'");
  std::vector<double> out;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.rfind(',');
    std::string field = trim(comma == std::string::npos ? line : line.substr(comma + 1));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(field, &used);
    } catch (const std::exception&) {
      if (out.empty()) continue;  // header row
      throw ConfigError("shape: bad sample '" + field + "' in " + path.string());
    }
    if (used != field.size()) throw ConfigError("shape: bad sample '" + field + "'");
    out.push_back(v);
  }
  return out;
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& value,
                   const std::filesystem::path& base_dir) {
  try {
    if (key == "M") {
      c.M = static_cast<int>(to_long(key, value));
    } else if (key == "L") {
      c.L = static_cast<int>(to_long(key, value));
    } else if (key == "dt") {
      c.dt = to_double(key, value);
    } else if (key == "T") {
      c.T = to_double(key, value);
    } else if (key == "scheme") {
      c.scheme = parse_scheme(value);
    } else if (key == "center_law") {
      const double lambda = c.center_law.lambda;
      c.center_law = CenterLaw::parse(value);
      if (value == "scaled") c.center_law.lambda = lambda;
    } else if (key == "lambda") {
      c.center_law.lambda = to_double(key, value);
    } else if (key == "shape") {
      if (value == "sphere") {
        c.shape = InitialShape::sphere();
      } else if (value == "prolate") {
        c.shape = InitialShape::prolate();
      } else if (value == "oblate") {
        c.shape = InitialShape::oblate();
      } else if (value.rfind("custom:", 0) == 0) {
        std::filesystem::path p = value.substr(7);
        if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
        c.shape = InitialShape::custom(read_custom_samples(p));
      } else {
        throw ConfigError("shape: expected sphere, prolate, oblate or custom:<path>");
      }
      c.shape_spec = value;
    } else if (key == "output_every") {
      c.output_every = to_long(key, value);
      if (c.output_every < 1) throw ConfigError("output_every must be >= 1");
    } else if (key == "output_dir") {
      c.output_dir = value;
    } else if (key == "snapshot_times") {
      c.snapshot_times = to_list(key, value);
    } else if (key == "table_times") {
      c.table_times = to_list(key, value);
    } else if (key == "parallel") {
      c.parallel = to_bool(key, value);
    } else if (key == "allow_cfl_violation") {
      c.allow_cfl_violation = to_bool(key, value);
    } else {
      throw ConfigError("unknown key '" + key + "'");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  RunConfig config;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::string lambda_value;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    // lambda only matters for the scaled law; apply it after center_law
    // regardless of the order the two keys appear in.
    if (key == "lambda") {
      lambda_value = value;
      continue;
    }
    try {
      apply_setting(config, key, value, base_dir);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!lambda_value.empty()) apply_setting(config, "lambda", lambda_value, base_dir);
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

}  // namespace droplet
