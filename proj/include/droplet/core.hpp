#pragma once

// Shared domain types for the axisymmetric droplet surface model: the
// colatitude/azimuth grid, sampled radius profiles, the reference-center
// state and the laws that drive it, and the initial shapes.

#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace droplet {

inline constexpr double kPi = std::numbers::pi;

/// Hadamard-Rybczynski fall speed (vertical component of v*) for unit
/// radius and equal viscosities.
inline constexpr double kHrVelocity = -4.0 / 15.0;

/// Thrown when an operator is asked to evaluate on a profile with min r <= 0.
class DegenerateProfile : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Discretization parameters. Nodes are theta_i = i*pi/M for i = 0..M
/// inclusive; the poles i = 0 and i = M are boundary nodes.
class GridSpec {
 public:
  GridSpec(int M, int L, double dt, double T);

  int M() const { return M_; }
  int L() const { return L_; }
  double dt() const { return dt_; }
  double T() const { return T_; }
  long steps() const { return steps_; }
  std::size_t nodes() const { return static_cast<std::size_t>(M_) + 1; }

  double dtheta() const { return kPi / M_; }
  double dphi() const { return 2.0 * kPi / L_; }

  double theta(int i) const { return theta_[static_cast<std::size_t>(i)]; }
  std::span<const double> thetas() const { return theta_; }

  /// Time of step n, computed as n*dt (never accumulated).
  double time(long n) const { return static_cast<double>(n) * dt_; }

 private:
  int M_;
  int L_;
  double dt_;
  double T_;
  long steps_;
  std::vector<double> theta_;
};

GridSpec make_grid(int M, int L, double dt, double T);

/// Step count for a horizon T: ceil(T/dt), with quotients within a few
/// ulps of an integer snapped to it (25/0.01 is 2500.0000000000005).
long step_count(double dt, double T);

/// Radius samples r(theta_i), i = 0..M. A profile with min <= 0 is
/// representable but degenerate.
class RadiusProfile {
 public:
  RadiusProfile(GridSpec grid, std::vector<double> values);

  const GridSpec& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  double min() const;
  double max() const;
  bool degenerate() const { return !(min() > 0.0); }

  /// Throws DegenerateProfile unless min r > 0.
  void require_positive(const char* what) const;

  /// Piecewise-linear interpolation between nodes.
  double at(double theta) const;

 private:
  GridSpec grid_;
  std::vector<double> values_;
};

/// Vertical position of the reference center, its Hadamard-Rybczynski
/// counterpart c*(t) = -(4/15) t, and the current time.
struct CenterState {
  double c3 = 0.0;
  double cstar3 = 0.0;
  double t = 0.0;

  double gap() const { return c3 - cstar3; }
  static CenterState at_origin() { return {}; }
};

/// How the reference center moves: transported by the flow, a multiple of
/// the HR velocity, or pinned to the HR center.
struct CenterLaw {
  enum class Kind { TransportedByFlow, ScaledHR, ExactHR };

  Kind kind = Kind::TransportedByFlow;
  double lambda = 1.0;

  static CenterLaw transported() { return {Kind::TransportedByFlow, 1.0}; }
  static CenterLaw scaled(double lambda);
  static CenterLaw exact() { return {Kind::ExactHR, 1.0}; }

  /// "flow", "scaled:<lambda>" or "exact".
  static CenterLaw parse(const std::string& text);
  std::string to_string() const;
};

struct InitialShape {
  enum class Kind { UnitSphere, ProlateEllipsoid, OblateEllipsoid, Custom };

  Kind kind = Kind::UnitSphere;
  std::vector<double> samples;  // Custom only, M+1 values

  static InitialShape sphere() { return {Kind::UnitSphere, {}}; }
  static InitialShape prolate() { return {Kind::ProlateEllipsoid, {}}; }
  static InitialShape oblate() { return {Kind::OblateEllipsoid, {}}; }
  static InitialShape custom(std::vector<double> samples);

  /// Analytic r0(theta); not available for Custom.
  double radius(double theta) const;

  /// Enclosed volume of the analytic shape, or 0 for Custom.
  double exact_volume() const;

  std::string to_string() const;
};

RadiusProfile sample_shape(const InitialShape& shape, const GridSpec& grid);

enum class SchemeKind { UpwindFD, FiniteVolume, LaxFriedrichs };

SchemeKind parse_scheme(const std::string& text);
std::string to_string(SchemeKind kind);

}  // namespace droplet
