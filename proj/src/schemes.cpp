#include "droplet/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace droplet {

namespace {

void check_sizes(std::span<const double> r, const OperatorField& field, const GridSpec& grid) {
  if (r.size() != grid.nodes() || field.a1.size() != grid.nodes() || field.a2.size() != grid.nodes()) {
    throw std::invalid_argument("scheme update: profile/field size does not match the grid");
  }
}

// A1 vanishes at the poles, so only the source moves them.
void update_poles(std::span<const double> r, const OperatorField& field, const GridSpec& grid,
                  std::vector<double>& out) {
  const auto m = static_cast<std::size_t>(grid.M());
  out[0] = r[0] + grid.dt() * field.a2[0];
  out[m] = r[m] + grid.dt() * field.a2[m];
}

// Conservative-form update with face fluxes flux[i] = F_{i+1/2}, i = 0..M-1,
// and the source A2 + r dA1/dtheta.
std::vector<double> conservative_update(std::span<const double> r, const OperatorField& field,
                                        const GridSpec& grid, std::span<const double> flux) {
  const int M = grid.M();
  const double dt = grid.dt();
  const double h = grid.dtheta();
  std::vector<double> out(r.size());
  for (int i = 1; i < M; ++i) {
    const auto n = static_cast<std::size_t>(i);
    const double source = field.a2[n] + r[n] * (field.a1[n + 1] - field.a1[n - 1]) / (2.0 * h);
    out[n] = r[n] - dt / h * (flux[n] - flux[n - 1]) + dt * source;
  }
  update_poles(r, field, grid, out);
  return out;
}

}  // namespace

CflReport cfl_check(const OperatorField& field, const GridSpec& grid) {
  CflReport report;
  for (double a : field.a1) report.max_a1 = std::max(report.max_a1, std::abs(a));
  report.courant = report.max_a1 * grid.dt() / grid.dtheta();
  report.ok = report.courant < 1.0;
  return report;
}

std::vector<double> upwind_fd_update(std::span<const double> r, const OperatorField& field,
                                     const GridSpec& grid) {
  check_sizes(r, field, grid);
  const int M = grid.M();
  const double dt = grid.dt();
  const double h = grid.dtheta();
  std::vector<double> out(r.size());
  for (int i = 1; i < M; ++i) {
    const auto n = static_cast<std::size_t>(i);
    const double a = field.a1[n];
    const double diff = a >= 0.0 ? r[n] - r[n - 1] : r[n + 1] - r[n];
    out[n] = r[n] - dt / h * a * diff + dt * field.a2[n];
  }
  update_poles(r, field, grid, out);
  return out;
}

std::vector<double> finite_volume_update(std::span<const double> r, const OperatorField& field,
                                         const GridSpec& grid) {
  check_sizes(r, field, grid);
  const auto faces = static_cast<std::size_t>(grid.M());
  std::vector<double> flux(faces);
  for (std::size_t i = 0; i < faces; ++i) {
    const double a = (field.a1[i] + field.a1[i + 1]) / 2.0;
    flux[i] = a * (a >= 0.0 ? r[i] : r[i + 1]);
  }
  return conservative_update(r, field, grid, flux);
}

std::vector<double> lax_friedrichs_update(std::span<const double> r, const OperatorField& field,
                                          const GridSpec& grid) {
  check_sizes(r, field, grid);
  const auto faces = static_cast<std::size_t>(grid.M());
  const double h = grid.dtheta();
  const double dt = grid.dt();
  std::vector<double> flux(faces);
  for (std::size_t i = 0; i < faces; ++i) {
    flux[i] = (r[i + 1] * field.a1[i + 1] + r[i] * field.a1[i]) / 2.0 - h / (2.0 * dt) * (r[i + 1] - r[i]);
  }
  return conservative_update(r, field, grid, flux);
}

std::vector<double> scheme_update(SchemeKind kind, std::span<const double> r, const OperatorField& field,
                                  const GridSpec& grid) {
  switch (kind) {
    case SchemeKind::UpwindFD:
      return upwind_fd_update(r, field, grid);
    case SchemeKind::FiniteVolume:
      return finite_volume_update(r, field, grid);
    case SchemeKind::LaxFriedrichs:
      return lax_friedrichs_update(r, field, grid);
  }
  throw std::logic_error("unknown scheme");
}

double center_rate(const CenterLaw& law, const RadiusProfile& r) {
  switch (law.kind) {
    case CenterLaw::Kind::TransportedByFlow:
      return center_velocity(r);
    case CenterLaw::Kind::ScaledHR:
      return law.lambda * kHrVelocity;
    case CenterLaw::Kind::ExactHR:
      return kHrVelocity;
  }
  throw std::logic_error("unknown center law");
}

Stepper::Stepper(GridSpec grid, StepOptions options) : grid_(std::move(grid)), options_(options) {}

OperatorField Stepper::evaluate(const RadiusProfile& r) const {
  return assemble_field(r, center_rate(options_.law, r), options_.assembly);
}

SimState Stepper::initial(const RadiusProfile& r0) const {
  if (r0.size() != grid_.nodes()) throw std::invalid_argument("initial profile does not match the grid");
  r0.require_positive("initial state");
  SimState state{RadiusProfile(grid_, std::vector<double>(r0.values().begin(), r0.values().end())),
                 CenterState::at_origin(), 0, std::nullopt};
  state.field = evaluate(state.r);
  return state;
}

CflReport Stepper::check(const SimState& state) const {
  if (!state.field) return {};
  return cfl_check(*state.field, grid_);
}

SimState Stepper::advance(const SimState& state) const {
  if (!state.field) {
    state.r.require_positive("advance");
    throw DegenerateProfile("advance: state has no operator field");
  }
  const OperatorField& field = *state.field;
  const CflReport cfl = cfl_check(field, grid_);
  if (!cfl.ok && !options_.allow_cfl_violation) {
    std::ostringstream os;
    os << "CFL violated at step " << state.step << " (t = " << state.center.t
       << "): max|A1| dt/dtheta = " << cfl.courant;
    throw CflViolation(os.str());
  }

  std::vector<double> next = scheme_update(options_.scheme, state.r.values(), field, grid_);

  const long step = state.step + 1;
  const double t = grid_.time(step);
  CenterState center;
  center.t = t;
  center.cstar3 = kHrVelocity * t;
  center.c3 = options_.law.kind == CenterLaw::Kind::ExactHR ? center.cstar3
                                                              : state.center.c3 + grid_.dt() * field.cdot3;

  SimState out{RadiusProfile(grid_, std::move(next)), center, step, std::nullopt};
  if (!out.r.degenerate()) out.field = evaluate(out.r);
  return out;
}

}  // namespace droplet
