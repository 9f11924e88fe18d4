#include "droplet/operators.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <stdexcept>
#include <thread>

namespace droplet {

namespace {

constexpr double kInv8Pi = 1.0 / (8.0 * kPi);

// Surface sampled at the staggered colatitudes theta_bar_k = (k + 1/2) dtheta.
struct StaggeredSurface {
  std::vector<double> theta;
  std::vector<double> sin_t;
  std::vector<double> cos_t;
  std::vector<double> r;
  // (r sin - r' cos) r sin: the surface-element factor shared by all
  // three velocity components.
  std::vector<double> weight;
};

StaggeredSurface stagger(const RadiusProfile& r, const DerivativeStencil& dr) {
  const int M = r.grid().M();
  const double h = r.grid().dtheta();
  StaggeredSurface s;
  const auto cells = static_cast<std::size_t>(M);
  s.theta.resize(cells);
  s.sin_t.resize(cells);
  s.cos_t.resize(cells);
  s.r.resize(cells);
  s.weight.resize(cells);
  for (std::size_t k = 0; k < cells; ++k) {
    const double t = (static_cast<double>(k) + 0.5) * h;
    const double rb = 0.5 * (r[k] + r[k + 1]);
    const double drb = 0.5 * (dr.dr[k] + dr.dr[k + 1]);
    s.theta[k] = t;
    s.sin_t[k] = std::sin(t);
    s.cos_t[k] = std::cos(t);
    s.r[k] = rb;
    s.weight[k] = (rb * s.sin_t[k] - drb * s.cos_t[k]) * rb * s.sin_t[k];
  }
  return s;
}

// Azimuthal midpoint nodes phi_j = (j + 1/2) dphi, built mirror-symmetric
// about pi so paired nodes produce bit-identical chord lengths.
struct AzimuthTable {
  std::vector<double> cos_p;
  std::vector<double> sin_p;
  std::vector<double> half_sin2;  // sin^2(phi/2)
};

AzimuthTable azimuth(int L) {
  const double dphi = 2.0 * kPi / L;
  AzimuthTable a;
  const auto n = static_cast<std::size_t>(L);
  a.cos_p.resize(n);
  a.sin_p.resize(n);
  a.half_sin2.resize(n);
  for (std::size_t j = 0; 2 * j < n; ++j) {
    const double p = (static_cast<double>(j) + 0.5) * dphi;
    const double hs = std::sin(0.5 * p);
    const std::size_t m = n - 1 - j;
    a.cos_p[j] = a.cos_p[m] = std::cos(p);
    a.sin_p[j] = std::sin(p);
    a.sin_p[m] = -a.sin_p[j];
    a.half_sin2[j] = a.half_sin2[m] = hs * hs;
  }
  if (n % 2 == 1) a.sin_p[n / 2] = 0.0;
  return a;
}

// Boundary-integral velocity at the surface point r e(theta, 0).
Vec3 boundary_velocity(const StaggeredSurface& s, const AzimuthTable& az, double dtheta, double r,
                       double theta, bool fold) {
  const double st = std::sin(theta);
  const double ct = std::cos(theta);
  const std::size_t L = az.cos_p.size();
  const double* cos_p = az.cos_p.data();
  const double* sin_p = az.sin_p.data();
  const double* hs2 = az.half_sin2.data();

  double u1 = 0.0;
  double u2 = 0.0;
  double u3 = 0.0;
  for (std::size_t k = 0; k < s.r.size(); ++k) {
    const double rb = s.r[k];
    const double hd = std::sin(0.5 * (theta - s.theta[k]));
    const double dr = r - rb;
    const double base = dr * dr + 4.0 * r * rb * hd * hd;
    const double slope = 4.0 * r * rb * st * s.sin_t[k];

    double s0 = 0.0;  // sum 1/beta
    double sc = 0.0;  // sum cos(phi)/beta
    double ss = 0.0;  // sum sin(phi)/beta
    if (fold) {
      const std::size_t half = L / 2;
#pragma omp simd reduction(+ : s0, sc)
      for (std::size_t j = 0; j < half; ++j) {
        const double inv = 1.0 / std::sqrt(base + slope * hs2[j]);
        s0 += inv;
        sc += cos_p[j] * inv;
      }
      s0 *= 2.0;
      sc *= 2.0;
    } else {
#pragma omp simd reduction(+ : s0, sc, ss)
      for (std::size_t j = 0; j < L; ++j) {
        const double inv = 1.0 / std::sqrt(base + slope * hs2[j]);
        s0 += inv;
        sc += cos_p[j] * inv;
        ss += sin_p[j] * inv;
      }
    }
    const double w = s.weight[k];
    const double vertical = r * ct - rb * s.cos_t[k];
    u1 += w * vertical * sc;
    u2 += w * vertical * ss;
    u3 += w * (rb * s.sin_t[k] * s0 - r * st * sc);
  }
  const double scale = -kInv8Pi * dtheta * (2.0 * kPi / static_cast<double>(L));
  return {scale * u1, scale * u2, scale * u3};
}

struct GaussRule {
  std::vector<double> x;  // on [-1, 1]
  std::vector<double> w;
};

template <unsigned N>
GaussRule gauss_rule() {
  using Q = boost::math::quadrature::gauss<double, N>;
  GaussRule g;
  const auto& a = Q::abscissa();
  const auto& w = Q::weights();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) {
      g.x.push_back(0.0);
      g.w.push_back(w[i]);
      continue;
    }
    g.x.push_back(-a[i]);
    g.w.push_back(w[i]);
    g.x.push_back(a[i]);
    g.w.push_back(w[i]);
  }
  return g;
}

GaussRule gauss_rule(int n) {
  switch (n) {
    case 4:
      return gauss_rule<4>();
    case 8:
      return gauss_rule<8>();
    case 16:
      return gauss_rule<16>();
    case 32:
      return gauss_rule<32>();
    default:
      throw std::invalid_argument("velocity_volume: gauss_points must be 4, 8, 16 or 32");
  }
}

Vec3 volume_velocity(const StaggeredSurface& s, const AzimuthTable& az, double dtheta, double r,
                     double theta, const GaussRule& g) {
  const Vec3 x = r * radial(theta);
  const Vec3 force{0.0, 0.0, -1.0};
  const std::size_t L = az.cos_p.size();
  Vec3 acc;
  for (std::size_t k = 0; k < s.r.size(); ++k) {
    const double rb = s.r[k];
    for (std::size_t j = 0; j < L; ++j) {
      const Vec3 dir{s.sin_t[k] * az.cos_p[j], s.sin_t[k] * az.sin_p[j], s.cos_t[k]};
      Vec3 cell;
      for (std::size_t q = 0; q < g.x.size(); ++q) {
        const double z = 0.5 * rb * (1.0 + g.x[q]);
        const double wz = 0.5 * rb * g.w[q] * z * z;
        cell += wz * oseen_apply(x - z * dir, force);
      }
      acc += s.sin_t[k] * cell;
    }
  }
  return (dtheta * 2.0 * kPi / static_cast<double>(L)) * acc;
}

double node_radius_or_interp(const RadiusProfile& r, double theta) { return r.at(theta); }

bool is_pole(double theta) { return theta == 0.0 || theta == kPi; }

}  // namespace

double beta(double r_theta, double r_bar, double theta, double theta_bar, double phi_bar) {
  const double hd = std::sin(0.5 * (theta - theta_bar));
  const double hp = std::sin(0.5 * phi_bar);
  const double chord2 = 4.0 * hd * hd + 4.0 * std::sin(theta) * std::sin(theta_bar) * hp * hp;
  const double dr = r_theta - r_bar;
  return std::sqrt(dr * dr + r_theta * r_bar * std::max(chord2, 0.0));
}

DerivativeStencil derivative(const RadiusProfile& r) {
  const int M = r.grid().M();
  const double h = r.grid().dtheta();
  DerivativeStencil d;
  d.dr.resize(r.size());
  for (int i = 1; i < M; ++i) {
    const auto u = static_cast<std::size_t>(i);
    d.dr[u] = (r[u + 1] - r[u - 1]) / (2.0 * h);
  }
  const auto m = static_cast<std::size_t>(M);
  d.dr[0] = (-3.0 * r[0] + 4.0 * r[1] - r[2]) / (2.0 * h);
  d.dr[m] = (3.0 * r[m] - 4.0 * r[m - 1] + r[m - 2]) / (2.0 * h);
  return d;
}

Vec3 oseen_apply(const Vec3& x, const Vec3& f) {
  const double n2 = dot(x, x);
  const double n = std::sqrt(n2);
  const double inv = 1.0 / n;
  const double proj = dot(x, f) * inv * inv * inv;
  return kInv8Pi * (inv * f + proj * x);
}

Vec3 velocity_surface(const RadiusProfile& r, const DerivativeStencil& dr, double theta) {
  r.require_positive("velocity_surface");
  const auto s = stagger(r, dr);
  const auto az = azimuth(r.grid().L());
  return boundary_velocity(s, az, r.grid().dtheta(), node_radius_or_interp(r, theta), theta, false);
}

Vec3 velocity_surface_at_node(const RadiusProfile& r, const DerivativeStencil& dr, int node) {
  r.require_positive("velocity_surface");
  const auto s = stagger(r, dr);
  const auto az = azimuth(r.grid().L());
  const auto i = static_cast<std::size_t>(node);
  return boundary_velocity(s, az, r.grid().dtheta(), r[i], r.grid().theta(node), false);
}

Vec3 velocity_volume(const RadiusProfile& r, double theta, int gauss_points) {
  r.require_positive("velocity_volume");
  const auto g = gauss_rule(gauss_points);
  const auto s = stagger(r, derivative(r));
  const auto az = azimuth(r.grid().L());
  return volume_velocity(s, az, r.grid().dtheta(), node_radius_or_interp(r, theta), theta, g);
}

Vec3 velocity_volume_at_node(const RadiusProfile& r, int node, int gauss_points) {
  r.require_positive("velocity_volume");
  const auto g = gauss_rule(gauss_points);
  const auto s = stagger(r, derivative(r));
  const auto az = azimuth(r.grid().L());
  const auto i = static_cast<std::size_t>(node);
  return volume_velocity(s, az, r.grid().dtheta(), r[i], r.grid().theta(node), g);
}

double a1(const RadiusProfile& r, const DerivativeStencil& dr, double cdot3, double theta) {
  r.require_positive("a1");
  if (is_pole(theta)) return 0.0;
  const Vec3 u = velocity_surface(r, dr, theta);
  const Vec3 rel = u - Vec3{0.0, 0.0, cdot3};
  return dot(rel, tangent(theta)) / r.at(theta);
}

double a2(const RadiusProfile& r, const DerivativeStencil& dr, double cdot3, double theta) {
  r.require_positive("a2");
  const Vec3 u = velocity_surface(r, dr, theta);
  const Vec3 rel = u - Vec3{0.0, 0.0, cdot3};
  return dot(rel, radial(theta));
}

double center_velocity(const RadiusProfile& r) {
  const auto& grid = r.grid();
  const int M = grid.M();
  const double h = grid.dtheta();
  auto f = [&](int i) {
    const double s = std::sin(grid.theta(i));
    const double v = r[static_cast<std::size_t>(i)];
    return v * v * s * (1.0 - 0.5 * s * s);
  };
  double sum = 0.0;
  const int simpson_end = (M % 2 == 0) ? M : M - 3;
  for (int i = 0; i < simpson_end; i += 2) {
    sum += h / 3.0 * (f(i) + 4.0 * f(i + 1) + f(i + 2));
  }
  if (simpson_end != M) {
    const int i = simpson_end;
    sum += 3.0 * h / 8.0 * (f(i) + 3.0 * f(i + 1) + 3.0 * f(i + 2) + f(i + 3));
  }
  return -0.25 * sum;
}

OperatorField assemble_field(const RadiusProfile& r, double cdot3, Assembly mode) {
  r.require_positive("assemble_field");
  const auto& grid = r.grid();
  const int M = grid.M();
  const auto dr = derivative(r);
  const auto s = stagger(r, dr);
  const auto az = azimuth(grid.L());
  const bool fold = grid.L() % 2 == 0;

  OperatorField field;
  field.cdot3 = cdot3;
  field.a1.assign(grid.nodes(), 0.0);
  field.a2.assign(grid.nodes(), 0.0);
  field.u.assign(grid.nodes(), Vec3{});

  auto evaluate = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      const auto n = static_cast<std::size_t>(i);
      const double theta = grid.theta(i);
      const Vec3 u = boundary_velocity(s, az, grid.dtheta(), r[n], theta, fold);
      const Vec3 rel = u - Vec3{0.0, 0.0, cdot3};
      field.u[n] = u;
      field.a2[n] = dot(rel, radial(theta));
      field.a1[n] = (i == 0 || i == M) ? 0.0 : dot(rel, tangent(theta)) / r[n];
    }
  };

  const int count = M + 1;
  unsigned workers = 1;
  if (mode == Assembly::Parallel) {
    workers = std::min(std::max(2u, std::thread::hardware_concurrency()), static_cast<unsigned>(count));
  }
  if (workers == 1) {
    evaluate(0, count);
    return field;
  }
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      const int begin = static_cast<int>(static_cast<long>(count) * w / workers);
      const int end = static_cast<int>(static_cast<long>(count) * (w + 1) / workers);
      pool.emplace_back(evaluate, begin, end);
    }
  }
  return field;
}

double flux_balance(const RadiusProfile& r, const DerivativeStencil& dr, const OperatorField& field) {
  const auto& grid = r.grid();
  const int M = grid.M();
  const double h = grid.dtheta();
  double sum = 0.0;
  for (int i = 0; i <= M; ++i) {
    const auto n = static_cast<std::size_t>(i);
    const double v = (field.a2[n] - dr.dr[n] * field.a1[n]) * r[n] * r[n] * std::sin(grid.theta(i));
    sum += (i == 0 || i == M) ? 0.5 * v : v;
  }
  return h * sum;
}

SphereIdentities sphere_identity_integrals(int M, int L) {
  if (M < 1 || L < 1) throw std::invalid_argument("sphere_identity_integrals: M and L must be positive");
  const double h = kPi / M;
  const auto az = azimuth(L);
  const double cell = h * 2.0 * kPi / L;
  SphereIdentities out;
  for (int k = 0; k < M; ++k) {
    const double t = (k + 0.5) * h;
    const double st = std::sin(t);
    const double ct = std::cos(t);
    const double inv_dist = 1.0 / (2.0 * std::sin(0.5 * t));  // |e3 - w|
    for (std::size_t j = 0; j < az.cos_p.size(); ++j) {
      const Vec3 w{st * az.cos_p[j], st * az.sin_p[j], ct};
      const double g = cell * st * inv_dist;
      out.i1 += g * w;
      out.i2 += g;
      out.i3 += (g * w.x) * w;
      out.i4 += (g * w.z) * w;
    }
  }
  return out;
}

double inverse_distance_integral(int M, int L, double theta) {
  if (M < 1 || L < 1) throw std::invalid_argument("inverse_distance_integral: M and L must be positive");
  const double h = kPi / M;
  const auto az = azimuth(L);
  const double st = std::sin(theta);
  double sum = 0.0;
  for (int k = 0; k < M; ++k) {
    const double t = (k + 0.5) * h;
    const double sb = std::sin(t);
    const double hd = std::sin(0.5 * (theta - t));
    for (double hs2 : az.half_sin2) {
      sum += sb / std::sqrt(4.0 * hd * hd + 4.0 * st * sb * hs2);
    }
  }
  return sum * h * 2.0 * kPi / L;
}

double quadrature_tolerance(int M, int L) { return 1.0 / std::min(M, L); }

}  // namespace droplet
