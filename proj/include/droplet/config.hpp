#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "droplet/core.hpp"

namespace droplet {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything needed to reproduce a run. Serialized as `key = value` lines;
/// `#` starts a comment.
struct RunConfig {
  int M = 100;
  int L = 200;
  double dt = 0.01;
  double T = 25.0;
  SchemeKind scheme = SchemeKind::UpwindFD;
  CenterLaw center_law = CenterLaw::transported();
  InitialShape shape = InitialShape::sphere();
  std::string shape_spec = "sphere";
  long output_every = 250;
  std::filesystem::path output_dir = "out";
  std::vector<double> snapshot_times;  // empty: 0,3,...,24 clipped to T
  std::vector<double> table_times;     // empty: chosen from the center law
  bool parallel = false;
  bool allow_cfl_violation = false;

  GridSpec grid() const { return make_grid(M, L, dt, T); }

  /// Default snapshot times, t = 0,3,6,... up to T.
  std::vector<double> effective_snapshot_times() const;

  /// Table sample times: t = 0,2.5,...,25 for the transported and exact
  /// laws, the short list ending at t = 0.51 for the scaled law.
  std::vector<double> effective_table_times() const;

  /// Canonical key/value listing, the same form `parse_config` accepts.
  std::map<std::string, std::string> to_map() const;
};

/// Applies one `key = value` assignment. Unknown keys and malformed values
/// raise ConfigError.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value,
                   const std::filesystem::path& base_dir = {});

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

/// Reads one positive radius per line (or the last comma-separated column).
std::vector<double> read_custom_samples(const std::filesystem::path& path);

}  // namespace droplet
