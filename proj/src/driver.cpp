#include "droplet/driver.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "droplet/hr_oracle.hpp"

namespace droplet {

namespace {

namespace fs = std::filesystem;

std::string iso_time(std::chrono::system_clock::time_point tp) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(tp);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::string time_tag(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%09.4f", t);
  return buf;
}

void write_lines(const fs::path& path, const std::string& header, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << header << '\n';
  for (const auto& l : lines) out << l << '\n';
}

std::vector<fs::path> write_snapshot(const fs::path& dir, const SimState& state) {
  const std::string tag = time_tag(state.center.t);
  const auto& grid = state.r.grid();

  std::vector<std::string> profile;
  profile.reserve(state.r.size());
  for (int i = 0; i <= grid.M(); ++i) {
    profile.push_back(format_number(grid.theta(i)) + "," + format_number(state.r[static_cast<std::size_t>(i)]));
  }
  const fs::path profile_name = "profile_t" + tag + ".csv";
  write_lines(dir / profile_name, "theta,r", profile);

  std::vector<std::string> section;
  for (const auto& p : section_curve(state.r, state.center.c3)) {
    section.push_back(format_number(p.x) + "," + format_number(p.z));
  }
  const fs::path section_name = "section_t" + tag + ".csv";
  write_lines(dir / section_name, "x,z", section);
  return {profile_name, section_name};
}

std::string gnuplot_script(const std::vector<std::pair<double, fs::path>>& sections) {
  std::ostringstream os;
  os << "# Droplet meridian sections; render with: gnuplot sections.gp\n"
     << "set terminal pngcairo size 700,1000\n"
     << "set output 'sections.png'\n"
     << "set datafile separator ','\n"
     << "set size ratio -1\n"
     << "set xlabel 'x'\n"
     << "set ylabel 'z'\n"
     << "set key outside right autotitle columnhead\n";
  if (sections.empty()) {
    os << "# no snapshots were written\n";
    return os.str();
  }
  os << "plot \\\n";
  for (std::size_t i = 0; i < sections.size(); ++i) {
    os << "  '" << sections[i].second.string() << "' using 1:2 with lines title 't = "
       << format_number(sections[i].first) << "'" << (i + 1 < sections.size() ? ", \\\n" : "\n");
  }
  return os.str();
}

std::string opt_cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

}  // namespace

std::string to_string(Termination t) {
  switch (t) {
    case Termination::Completed:
      return "completed";
    case Termination::NegativeRadius:
      return "negative-radius";
    case Termination::CflViolation:
      return "cfl-violation";
  }
  return "completed";
}

int exit_code(Termination t) {
  switch (t) {
    case Termination::Completed:
      return 0;
    case Termination::CflViolation:
      return 3;
    case Termination::NegativeRadius:
      return 4;
  }
  return 3;
}

std::vector<long> steps_for_times(const std::vector<double>& times, double dt) {
  std::vector<long> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(std::lround(t / dt));
  return out;
}

double reference_volume(const RunConfig& config, const RadiusProfile& r0) {
  if (config.shape.kind == InitialShape::Kind::Custom) return volume(r0, 1.0).vol;
  return config.shape.exact_volume();
}

RunResult run(const RunConfig& config, const std::vector<long>& extra_steps, const RunObserver& observer) {
  const GridSpec grid = config.grid();
  const RadiusProfile r0 = sample_shape(config.shape, grid);
  const double vref = reference_volume(config, r0);
  const StepOptions options{config.scheme, config.center_law,
                            config.parallel ? Assembly::Parallel : Assembly::Sequential,
                            config.allow_cfl_violation};
  const Stepper stepper(grid, options);
  const std::set<long> extra(extra_steps.begin(), extra_steps.end());
  const long every = std::max(1L, config.output_every);

  RunResult result{{}, stepper.initial(r0), Termination::Completed, {}, 0.0, 0};
  SimState& state = result.final_state;
  long last_recorded = -1;
  auto record = [&](bool cadence) {
    RecordedRow row{state.step, cadence, make_row(state.center.t, state.center.gap(), state.r, vref)};
    result.rows.push_back(row);
    last_recorded = state.step;
    if (observer) observer(state, row);
  };

  record(true);
  const long N = grid.steps();
  for (long n = 1; n <= N; ++n) {
    const CflReport cfl = stepper.check(state);
    result.max_courant = std::max(result.max_courant, cfl.courant);
    if (!cfl.ok && config.allow_cfl_violation) ++result.cfl_violations;
    try {
      state = stepper.advance(state);
    } catch (const CflViolation& e) {
      result.termination = Termination::CflViolation;
      result.message = e.what();
      if (last_recorded != state.step) record(true);
      return result;
    }
    if (state.r.degenerate()) {
      result.termination = Termination::NegativeRadius;
      std::ostringstream os;
      os << "radius became non-positive at step " << n << " (t = " << state.center.t
         << ", min r = " << state.r.min() << ")";
      result.message = os.str();
      record(true);
      return result;
    }
    const bool cadence = n % every == 0 || n == N;
    if (cadence || extra.count(n)) record(cadence);
  }
  return result;
}

RunOutputs run_to_directory(const RunConfig& config) {
  const fs::path dir = config.output_dir;
  fs::create_directories(dir);
  const auto started = std::chrono::system_clock::now();

  const auto snapshot_steps = steps_for_times(config.effective_snapshot_times(), config.dt);
  const std::set<long> snapshots(snapshot_steps.begin(), snapshot_steps.end());
  std::vector<fs::path> files;
  std::vector<std::pair<double, fs::path>> sections;
  long last_snapshot = -1;
  auto observer = [&](const SimState& state, const RecordedRow&) {
    if (!snapshots.count(state.step)) return;
    auto written = write_snapshot(dir, state);
    sections.emplace_back(state.center.t, written[1]);
    files.insert(files.end(), written.begin(), written.end());
    last_snapshot = state.step;
  };

  RunOutputs out{run(config, snapshot_steps, observer), {}};
  const RunResult& result = out.result;

  if (result.termination != Termination::Completed && last_snapshot != result.final_state.step) {
    auto written = write_snapshot(dir, result.final_state);
    files.insert(files.end(), written.begin(), written.end());
  }

  std::vector<std::string> lines;
  for (const auto& r : result.rows) {
    if (r.cadence) lines.push_back(to_csv(r.row));
  }
  write_lines(dir / "diagnostics.csv", csv_header(), lines);
  files.emplace_back("diagnostics.csv");

  {
    std::ofstream gp(dir / "sections.gp", std::ios::binary | std::ios::trunc);
    gp << gnuplot_script(sections);
  }
  files.emplace_back("sections.gp");

  const auto finished = std::chrono::system_clock::now();
  nlohmann::ordered_json manifest;
  nlohmann::ordered_json cfg;
  for (const auto& [k, v] : config.to_map()) cfg[k] = v;
  manifest["config"] = cfg;
  manifest["scheme"] = to_string(config.scheme);
  manifest["center_law"] = config.center_law.to_string();
  manifest["started"] = iso_time(started);
  manifest["finished"] = iso_time(finished);
  manifest["wall_seconds"] = std::chrono::duration<double>(finished - started).count();
  manifest["steps_completed"] = result.final_state.step;
  manifest["final_time"] = result.final_state.center.t;
  manifest["termination"] = to_string(result.termination);
  manifest["message"] = result.message;
  manifest["max_courant"] = result.max_courant;
  manifest["cfl_violations"] = result.cfl_violations;
  nlohmann::ordered_json listed = nlohmann::ordered_json::array();
  for (const auto& f : files) listed.push_back(f.string());
  manifest["outputs"] = listed;
  {
    std::ofstream mf(dir / "manifest.json", std::ios::binary | std::ios::trunc);
    mf << manifest.dump(2) << '\n';
  }
  out.files = std::move(files);
  return out;
}

TableOutput make_tables(const RunConfig& config) {
  const auto times = config.effective_table_times();
  const auto steps = steps_for_times(times, config.dt);
  const std::set<long> wanted(steps.begin(), steps.end());

  TableOutput table{{}, {}, run(config, steps)};
  const auto kind = config.center_law.kind;
  switch (kind) {
    case CenterLaw::Kind::TransportedByFlow:
      table.header = {"t", "gap_abs", "e1", "e2", "vol_rel", "e_abs_sum"};
      break;
    case CenterLaw::Kind::ScaledHR:
      table.header = {"t", "gap_abs", "e1", "e2", "min_r", "vol_rel", "e_abs_sum"};
      break;
    case CenterLaw::Kind::ExactHR:
      table.header = {"t", "e1", "e2", "vol_rel", "e_abs_sum"};
      break;
  }
  const long last = table.result.final_state.step;
  const bool stopped = table.result.termination != Termination::Completed;
  for (const auto& rec : table.result.rows) {
    if (!wanted.count(rec.step) && !(stopped && rec.step == last)) continue;
    const auto& r = rec.row;
    std::vector<std::string> cells{format_number(r.t)};
    if (kind != CenterLaw::Kind::ExactHR) cells.push_back(format_number(r.gap_abs));
    cells.push_back(opt_cell(r.e1));
    cells.push_back(opt_cell(r.e2));
    if (kind == CenterLaw::Kind::ScaledHR) cells.push_back(format_number(r.min_r));
    cells.push_back(opt_cell(r.vol_rel));
    cells.push_back(opt_cell(r.abs_sum));
    table.rows.push_back(std::move(cells));
  }
  return table;
}

void write_table(std::ostream& out, const TableOutput& table) {
  auto join = [](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
    return s;
  };
  out << join(table.header) << '\n';
  for (const auto& row : table.rows) out << join(row) << '\n';
}

std::vector<SelfCheck> run_selfcheck(int M, int L) {
  const double tol = quadrature_tolerance(M, L);
  std::vector<SelfCheck> checks;
  auto relative = [&](std::string name, double value, double reference, double tolerance) {
    const double err = std::abs(value - reference) / std::abs(reference);
    checks.push_back({std::move(name), value, reference, err, tolerance, err <= tolerance});
  };
  auto absolute = [&](std::string name, double value, double reference, double tolerance) {
    const double err = std::abs(value - reference);
    checks.push_back({std::move(name), value, reference, err, tolerance, err <= tolerance});
  };

  const auto s = sphere_identity_integrals(M, L);
  relative("I1 = int w/|e3-w| (e3 component)", s.i1.z, 4.0 * kPi / 3.0, tol);
  relative("I2 = int 1/|e3-w|", s.i2, 4.0 * kPi, tol);
  relative("I3 = int w1 w/|e3-w| (e1 component)", s.i3.x, 16.0 * kPi / 15.0, tol);
  relative("I4 = int w3 w/|e3-w| (e3 component)", s.i4.z, 28.0 * kPi / 15.0, tol);
  for (double theta : {kPi / 4.0, kPi / 2.0, 3.0 * kPi / 4.0}) {
    relative("int 1/|e(theta,0)-w| at theta=" + format_number(theta), inverse_distance_integral(M, L, theta),
             4.0 * kPi, tol);
  }

  const GridSpec grid = make_grid(M, L, 1.0, 1.0);
  const RadiusProfile unit(grid, std::vector<double>(grid.nodes(), 1.0));
  const OperatorField field = assemble_field(unit, kHrVelocity);
  absolute("HR tangency residual max|(U - v*).e|", hadamard_tangency_residual(grid.thetas(), field.u), 0.0,
           tol);

  double worst = 0.0;
  const auto dr = derivative(unit);
  for (int i = 0; i <= M; ++i) {
    const Vec3 us = velocity_surface_at_node(unit, dr, i);
    const Vec3 uv = velocity_volume_at_node(unit, i);
    worst = std::max(worst, (us - uv).max_abs() / uv.norm());
  }
  absolute("surface vs volume velocity (max rel. discrepancy)", worst, 0.0, 3.0 * tol);

  absolute("transported center velocity for r = 1", center_velocity(unit), -1.0 / 3.0, 1e-6);

  const OperatorField flow = assemble_field(unit, center_velocity(unit));
  absolute("volume flux balance for r = 1", flux_balance(unit, dr, flow), 0.0, tol);
  return checks;
}

void write_selfcheck(std::ostream& out, const std::vector<SelfCheck>& checks) {
  for (const auto& c : checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name << ": value " << format_number(c.value) << ", reference "
        << format_number(c.reference) << ", error " << format_number(c.error) << " (tol "
        << format_number(c.tolerance) << ")\n";
  }
}

}  // namespace droplet
