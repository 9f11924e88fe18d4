#pragma once

// Explicit time stepping of the coupled (radius profile, reference center)
// system. Each step freezes the operator field evaluated from r^n, updates
// the interior nodes with the selected scheme, updates the two poles with
// r += dt A2 (A1 vanishes there), and advances the center by explicit Euler.

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "droplet/core.hpp"
#include "droplet/operators.hpp"

namespace droplet {

class CflViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CflReport {
  double max_a1 = 0.0;
  double courant = 0.0;  // max|A1| dt / dtheta
  bool ok = true;        // courant < 1
};

CflReport cfl_check(const OperatorField& field, const GridSpec& grid);

/// Profile updates for one step with a frozen field. Pure functions of
/// their inputs; the returned vector has M+1 entries.
std::vector<double> upwind_fd_update(std::span<const double> r, const OperatorField& field,
                                     const GridSpec& grid);
std::vector<double> finite_volume_update(std::span<const double> r, const OperatorField& field,
                                         const GridSpec& grid);
std::vector<double> lax_friedrichs_update(std::span<const double> r, const OperatorField& field,
                                          const GridSpec& grid);

std::vector<double> scheme_update(SchemeKind kind, std::span<const double> r, const OperatorField& field,
                                  const GridSpec& grid);

/// Center velocity prescribed by the law for the profile r
/// (TransportedByFlow integrates the flow; the others are constant).
double center_rate(const CenterLaw& law, const RadiusProfile& r);

struct SimState {
  RadiusProfile r;
  CenterState center;
  long step = 0;
  /// Operator field of r at this step; empty once r is degenerate.
  std::optional<OperatorField> field;
};

struct StepOptions {
  SchemeKind scheme = SchemeKind::UpwindFD;
  CenterLaw law = CenterLaw::transported();
  Assembly assembly = Assembly::Sequential;
  bool allow_cfl_violation = false;
};

class Stepper {
 public:
  Stepper(GridSpec grid, StepOptions options);

  const GridSpec& grid() const { return grid_; }
  const StepOptions& options() const { return options_; }

  /// State at t = 0 with the center at the origin and the field evaluated.
  SimState initial(const RadiusProfile& r0) const;

  /// One step. Throws CflViolation (unless allowed) before touching the
  /// state and DegenerateProfile when asked to advance a degenerate state.
  /// A step that produces min r <= 0 returns that state with no field.
  SimState advance(const SimState& state) const;

  /// Courant report for the field cached in `state` (zero if none).
  CflReport check(const SimState& state) const;

 private:
  OperatorField evaluate(const RadiusProfile& r) const;

  GridSpec grid_;
  StepOptions options_;
};

}  // namespace droplet
