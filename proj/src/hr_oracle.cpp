#include "droplet/hr_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace droplet {

OracleState OracleState::at(double t, double gap) { return {t, gap, std::abs(gap) <= 1.0}; }

Vec3 v_star() { return {0.0, 0.0, kHrVelocity}; }

Vec3 hr_center(double t) { return t * v_star(); }

double exact_radius(double gap, double theta) {
  if (!(std::abs(gap) <= 1.0)) {
    std::ostringstream os;
    os << "exact_radius: center gap " << gap << " is outside [-1, 1]";
    throw OracleDomainError(os.str());
  }
  const double s = std::sin(theta);
  return -gap * std::cos(theta) + std::sqrt(std::max(0.0, 1.0 - gap * gap * s * s));
}

double transported_center_gap(double t) { return -std::tanh(t / 15.0); }

double transported_center_gap_quotient(double t) {
  const double e = std::exp(2.0 * t / 15.0);
  return (1.0 - e) / (e + 1.0);
}

Vec3 hr_surface_velocity(double theta) {
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const Vec3 qe3{s, 0.0, c};   // Q(theta) e3
  const Vec3 qe1{c, 0.0, -s};  // Q(theta) e1
  return (c / 15.0) * qe3 + (-2.0 * s / 15.0) * qe1 + Vec3{0.0, 0.0, -1.0 / 3.0};
}

double hadamard_tangency_residual(std::span<const double> thetas, std::span<const Vec3> velocity) {
  if (thetas.size() != velocity.size()) {
    throw std::invalid_argument("hadamard_tangency_residual: size mismatch");
  }
  const Vec3 vs = v_star();
  double worst = 0.0;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    worst = std::max(worst, std::abs(dot(velocity[i] - vs, radial(thetas[i]))));
  }
  return worst;
}

}  // namespace droplet
