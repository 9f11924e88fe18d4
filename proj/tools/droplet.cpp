// droplet: run | tables | selfcheck

#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "droplet/config.hpp"
#include "droplet/driver.hpp"
#include "droplet/hr_oracle.hpp"

namespace {

struct Overrides {
  std::string config;
  std::optional<std::string> scheme;
  std::optional<std::string> center_law;
  std::optional<int> M;
  std::optional<int> L;
  std::optional<double> dt;
  std::optional<double> T;
  std::optional<std::string> output_dir;
  std::optional<long> output_every;
  bool parallel = false;
  bool allow_cfl = false;
};

void add_run_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "key = value configuration file");
  cmd->add_option("--scheme", o.scheme, "upwind, fv or lf");
  cmd->add_option("--center-law", o.center_law, "flow, scaled:LAMBDA or exact");
  cmd->add_option("--M", o.M, "theta cells");
  cmd->add_option("--L", o.L, "phi cells");
  cmd->add_option("--dt", o.dt, "time step");
  cmd->add_option("--T", o.T, "final time");
  cmd->add_option("--output-dir", o.output_dir, "output directory");
  cmd->add_option("--output-every", o.output_every, "diagnostics cadence in steps");
  cmd->add_flag("--parallel", o.parallel, "assemble the operator field on all cores");
  cmd->add_flag("--allow-cfl-violation", o.allow_cfl, "keep stepping when max|A1| dt/dtheta >= 1");
}

droplet::RunConfig resolve(const Overrides& o) {
  using droplet::apply_setting;
  droplet::RunConfig cfg = o.config.empty() ? droplet::RunConfig{} : droplet::load_config(o.config);
  if (o.scheme) apply_setting(cfg, "scheme", *o.scheme);
  if (o.center_law) apply_setting(cfg, "center_law", *o.center_law);
  if (o.M) apply_setting(cfg, "M", std::to_string(*o.M));
  if (o.L) apply_setting(cfg, "L", std::to_string(*o.L));
  if (o.dt) cfg.dt = *o.dt;
  if (o.T) cfg.T = *o.T;
  if (o.output_dir) cfg.output_dir = *o.output_dir;
  if (o.output_every) apply_setting(cfg, "output_every", std::to_string(*o.output_every));
  if (o.parallel) cfg.parallel = true;
  if (o.allow_cfl) cfg.allow_cfl_violation = true;
  (void)cfg.grid();  // validates M, L, dt, T
  return cfg;
}

int report(const droplet::RunResult& result) {
  if (result.termination != droplet::Termination::Completed) {
    std::cerr << "droplet: " << droplet::to_string(result.termination) << ": " << result.message << '\n';
  }
  return droplet::exit_code(result.termination);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Axisymmetric droplet sedimenting in Stokes flow"};
  app.require_subcommand(1);

  Overrides run_opts;
  auto* run_cmd = app.add_subcommand("run", "simulate and write snapshots, diagnostics and a gnuplot script");
  add_run_flags(run_cmd, run_opts);

  Overrides table_opts;
  auto* tables_cmd = app.add_subcommand("tables", "print diagnostics at the table sample times as CSV");
  add_run_flags(tables_cmd, table_opts);

  int check_M = 100;
  int check_L = 200;
  auto* check_cmd = app.add_subcommand("selfcheck", "quadrature and oracle identities");
  check_cmd->add_option("--M", check_M, "theta cells")->check(CLI::Range(4, 100000));
  check_cmd->add_option("--L", check_L, "phi cells")->check(CLI::Range(4, 100000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : droplet::kExitConfigError;
  }

  droplet::RunConfig cfg;
  try {
    if (*run_cmd) cfg = resolve(run_opts);
    if (*tables_cmd) cfg = resolve(table_opts);
  } catch (const std::exception& e) {
    std::cerr << "droplet: configuration error: " << e.what() << '\n';
    return droplet::kExitConfigError;
  }

  try {
    if (*run_cmd) {
      const auto out = droplet::run_to_directory(cfg);
      std::cerr << "droplet: " << out.result.final_state.step << " steps, t = "
                << out.result.final_state.center.t << ", outputs in " << cfg.output_dir.string() << '\n';
      return report(out.result);
    }
    if (*tables_cmd) {
      const auto table = droplet::make_tables(cfg);
      droplet::write_table(std::cout, table);
      return report(table.result);
    }
    const auto checks = droplet::run_selfcheck(check_M, check_L);
    droplet::write_selfcheck(std::cout, checks);
    for (const auto& c : checks) {
      if (!c.pass) return 1;
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "droplet: " << e.what() << '\n';
    return droplet::exit_code(droplet::Termination::CflViolation);
  }
}
