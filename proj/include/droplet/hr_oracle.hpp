#pragma once

// Closed-form Hadamard-Rybczynski reference for a unit spherical drop with
// equal inner and outer viscosities: the sphere translates rigidly at
// v* = -(4/15) e3, so seen from any reference center c inside it the
// surface is r(theta) = -g cos(theta) + sqrt(1 - g^2 sin^2(theta)), with
// g = (c - c*)_3 the center gap.

#include <span>
#include <stdexcept>

#include "droplet/operators.hpp"

namespace droplet {

/// Thrown when the center gap leaves [-1, 1] and the reference center is no
/// longer inside the HR sphere.
class OracleDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct OracleState {
  double t = 0.0;
  double gap = 0.0;
  bool valid = true;  // |gap| <= 1

  static OracleState at(double t, double gap);
};

Vec3 v_star();

/// c*(t) = v* t.
Vec3 hr_center(double t);

/// Radius of the HR sphere seen from a center offset by `gap` (requires |gap| <= 1).
double exact_radius(double gap, double theta);

/// Center gap under the transported-center law, the solution of
/// x' = (x^2 - 1)/15 with x(0) = 0: -tanh(t/15).
double transported_center_gap(double t);

/// The same solution in its exponential-quotient form
/// (1 - e^{2t/15})/(1 + e^{2t/15}); overflows for large t.
double transported_center_gap_quotient(double t);

/// Closed-form velocity of the HR flow on the unit sphere at e(theta,0):
/// (1/15) cos(theta) Q e3 - (2/15) sin(theta) Q e1 - (1/3) e3, with Q the
/// rotation taking e3 to e(theta,0).
Vec3 hr_surface_velocity(double theta);

/// max_i |(u_i - v*) . e(theta_i, 0)|: the normal velocity relative to the
/// falling sphere, which vanishes for the exact HR field.
double hadamard_tangency_residual(std::span<const double> thetas, std::span<const Vec3> velocity);

}  // namespace droplet
