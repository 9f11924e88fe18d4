#pragma once

// Run loop and the file outputs behind the command-line front end.

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "droplet/config.hpp"
#include "droplet/diagnostics.hpp"
#include "droplet/schemes.hpp"

namespace droplet {

enum class Termination { Completed, NegativeRadius, CflViolation };

std::string to_string(Termination t);

/// Process exit status for a finished run: 0 completed, 3 CFL violation,
/// 4 negative radius. Configuration errors exit with 2.
int exit_code(Termination t);

inline constexpr int kExitConfigError = 2;

struct RecordedRow {
  long step = 0;
  bool cadence = false;  // on the output_every cadence (or the initial/terminal state)
  DiagnosticsRow row;
};

struct RunResult {
  std::vector<RecordedRow> rows;
  SimState final_state;
  Termination termination = Termination::Completed;
  std::string message;
  double max_courant = 0.0;
  long cfl_violations = 0;  // steps taken past a violated CFL bound (override on)
};

/// Called for every recorded step, in order.
using RunObserver = std::function<void(const SimState&, const RecordedRow&)>;

/// Steps recorded besides the output_every cadence, e.g. table or snapshot
/// times, as step indices round(t/dt).
std::vector<long> steps_for_times(const std::vector<double>& times, double dt);

/// Volume the relative volume error is measured against: the analytic
/// volume of the initial shape, or the discrete initial volume for custom
/// samples.
double reference_volume(const RunConfig& config, const RadiusProfile& r0);

/// Iterates to N = ceil(T/dt) steps. Stops early on a degenerate profile
/// (the offending state is recorded) or on a CFL violation when not
/// allowed; partial results are kept in both cases.
RunResult run(const RunConfig& config, const std::vector<long>& extra_steps = {},
              const RunObserver& observer = {});

struct RunOutputs {
  RunResult result;
  std::vector<std::filesystem::path> files;
};

/// Full `run` command: profile and section snapshots, diagnostics.csv,
/// sections.gp and manifest.json in config.output_dir.
RunOutputs run_to_directory(const RunConfig& config);

/// Rows at the table sample times; columns depend on the center law.
struct TableOutput {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  RunResult result;
};

TableOutput make_tables(const RunConfig& config);
void write_table(std::ostream& out, const TableOutput& table);

struct SelfCheck {
  std::string name;
  double value = 0.0;
  double reference = 0.0;
  double error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Sphere identities, the HR tangency residual, surface-vs-volume velocity
/// agreement, the transported center velocity and the flux balance, at
/// resolution (M, L) with tolerance 1/min(M, L).
std::vector<SelfCheck> run_selfcheck(int M, int L);
void write_selfcheck(std::ostream& out, const std::vector<SelfCheck>& checks);

}  // namespace droplet
