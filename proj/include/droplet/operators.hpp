#pragma once

// Quadrature evaluation of the nonlocal operators of the surface model.
//
// The velocity on the surface point c + r(theta) e(theta,0) is the Stokes
// single-layer-type boundary integral over the parametrized droplet
// surface. It is discretized with a midpoint rule on a (theta_bar, phi_bar)
// grid staggered half a cell from the evaluation nodes in both directions,
// so the chord length beta never vanishes at a quadrature node. Radius and
// slope at the staggered nodes are averages of the two neighbouring node
// values.

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "droplet/core.hpp"

namespace droplet {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  friend Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
  friend double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
  double norm() const { return std::sqrt(dot(*this, *this)); }
  double max_abs() const { return std::max({std::abs(x), std::abs(y), std::abs(z)}); }
};

/// e(theta, 0) = (sin theta, 0, cos theta).
inline Vec3 radial(double theta) { return {std::sin(theta), 0.0, std::cos(theta)}; }
/// d/dtheta e(theta, 0) = (cos theta, 0, -sin theta).
inline Vec3 tangent(double theta) { return {std::cos(theta), 0.0, -std::sin(theta)}; }

/// Chord |r(theta) e(theta,0) - r(theta_bar) e(theta_bar,phi_bar)|, evaluated
/// as sqrt((r - r_bar)^2 + r r_bar |e - e_bar|^2) with
/// |e - e_bar|^2 = 4 sin^2((theta-theta_bar)/2) + 4 sin(theta) sin(theta_bar) sin^2(phi_bar/2),
/// which has no cancellation near the diagonal.
double beta(double r_theta, double r_bar, double theta, double theta_bar, double phi_bar);

/// Approximation of dr/dtheta at the nodes: centered differences inside,
/// one-sided second-order differences at the poles.
struct DerivativeStencil {
  std::vector<double> dr;
};

DerivativeStencil derivative(const RadiusProfile& r);

/// Operator values at every node for one profile and one center velocity.
struct OperatorField {
  std::vector<double> a1;  // A1[r](theta_i); exactly 0 at both poles
  std::vector<double> a2;  // A2[r](theta_i)
  std::vector<Vec3> u;     // U[r](theta_i)
  double cdot3 = 0.0;      // center velocity used for a1/a2

  std::size_t size() const { return a1.size(); }
};

enum class Assembly { Sequential, Parallel };

/// U[r](theta) = u(c + r(theta) e(theta,0)) by the staggered midpoint rule
/// with M theta-cells and L phi-cells of the profile's grid. r(theta) is
/// linearly interpolated between nodes. Full azimuthal loop, so the
/// second component is computed rather than assumed zero.
Vec3 velocity_surface(const RadiusProfile& r, const DerivativeStencil& dr, double theta);
Vec3 velocity_surface_at_node(const RadiusProfile& r, const DerivativeStencil& dr, int node);

/// U[r](theta) from the volume form: the Oseen tensor applied to -e3,
/// integrated over the droplet in spherical coordinates. theta_bar and
/// phi_bar use the same staggered midpoint cells; the radial integral uses
/// `gauss_points` Gauss-Legendre nodes per cell (4, 8, 16 or 32).
Vec3 velocity_volume(const RadiusProfile& r, double theta, int gauss_points = 8);
Vec3 velocity_volume_at_node(const RadiusProfile& r, int node, int gauss_points = 8);

/// Oseen tensor Phi(x) = (I/|x| + x x^T/|x|^3) / (8 pi) applied to `f`.
Vec3 oseen_apply(const Vec3& x, const Vec3& f);

/// A1[r](theta) = (U[r](theta) - cdot) . d_theta e(theta,0) / r(theta);
/// exactly 0 at theta in {0, pi}.
double a1(const RadiusProfile& r, const DerivativeStencil& dr, double cdot3, double theta);

/// A2[r](theta) = (U[r](theta) - cdot) . e(theta,0).
double a2(const RadiusProfile& r, const DerivativeStencil& dr, double cdot3, double theta);

/// Vertical velocity of a reference center transported by the flow:
/// -(1/4) int_0^pi r^2 sin (1 - sin^2/2) dtheta, by composite Simpson on the
/// nodes (3/8 rule on the last three cells when M is odd).
double center_velocity(const RadiusProfile& r);

/// All nodes at once. The azimuthal sum is folded onto phi_bar in (0, pi)
/// when L is even, which sets u.y to exactly 0. Every node is reduced in a
/// fixed order, so the parallel result is bit-identical to the sequential
/// one.
OperatorField assemble_field(const RadiusProfile& r, double cdot3,
                             Assembly mode = Assembly::Sequential);

/// int_0^pi (A2 - dr A1) r^2 sin dtheta by the trapezoid rule; zero for the
/// exact operators since the enclosed volume is conserved.
double flux_balance(const RadiusProfile& r, const DerivativeStencil& dr, const OperatorField& field);

/// Unit-sphere integrals with the singular point at the north pole:
/// I1 = int w/|e3-w|, I2 = int 1/|e3-w|, I3 = int w1 w/|e3-w|, I4 = int w3 w/|e3-w|.
struct SphereIdentities {
  Vec3 i1;
  double i2 = 0.0;
  Vec3 i3;
  Vec3 i4;
};

SphereIdentities sphere_identity_integrals(int M, int L);

/// int over the unit sphere of 1/|e(theta,0) - w|, with the singular point at
/// an arbitrary colatitude (4 pi for every theta).
double inverse_distance_integral(int M, int L, double theta);

/// Default quadrature tolerance for an (M, L) resolution: 1/min(M, L).
double quadrature_tolerance(int M, int L);

}  // namespace droplet
