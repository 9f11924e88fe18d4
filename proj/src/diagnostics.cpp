#include "droplet/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "droplet/hr_oracle.hpp"

namespace droplet {

ErrorMetrics error_metrics(const RadiusProfile& r, double gap) {
  const auto& grid = r.grid();
  ErrorMetrics m;
  for (int i = 0; i <= grid.M(); ++i) {
    const double err = std::abs(r[static_cast<std::size_t>(i)] - exact_radius(gap, grid.theta(i)));
    m.e1 = std::max(m.e1, err);
    m.abs_sum += err;
  }
  m.e2 = m.abs_sum / static_cast<double>(grid.nodes());
  return m;
}

VolumeReport volume(const RadiusProfile& r, double reference) {
  const auto& grid = r.grid();
  const int M = grid.M();
  double sum = 0.0;
  for (int i = 0; i <= M; ++i) {
    const double v = r[static_cast<std::size_t>(i)];
    const double f = v * v * v * std::sin(grid.theta(i));
    sum += (i == 0 || i == M) ? 0.5 * f : f;
  }
  VolumeReport out;
  out.vol = 2.0 * kPi / 3.0 * grid.dtheta() * sum;
  out.vol_rel = std::abs(out.vol - reference) / reference;
  return out;
}

std::vector<Point2> section_curve(const RadiusProfile& r, double c3) {
  const auto& grid = r.grid();
  const int M = grid.M();
  std::vector<Point2> pts;
  pts.reserve(2 * static_cast<std::size_t>(M));
  for (int i = 0; i <= M; ++i) {
    const double v = r[static_cast<std::size_t>(i)];
    pts.push_back({v * std::sin(grid.theta(i)), c3 + v * std::cos(grid.theta(i))});
  }
  for (int i = M - 1; i >= 1; --i) {
    const Point2 p = pts[static_cast<std::size_t>(i)];
    pts.push_back({-p.x, p.z});
  }
  return pts;
}

DiagnosticsRow make_row(double t, double gap, const RadiusProfile& r, double reference_volume) {
  DiagnosticsRow row;
  row.t = t;
  row.gap_abs = std::abs(gap);
  row.min_r = r.min();
  if (r.degenerate()) return row;
  if (std::abs(gap) <= 1.0) {
    const auto m = error_metrics(r, gap);
    row.e1 = m.e1;
    row.e2 = m.e2;
    row.abs_sum = m.abs_sum;
  }
  row.vol_rel = volume(r, reference_volume).vol_rel;
  return row;
}

std::string csv_header() { return "t,gap_abs,e1,e2,vol_rel,min_r"; }

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string to_csv(const DiagnosticsRow& row) {
  auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
  return format_number(row.t) + "," + format_number(row.gap_abs) + "," + opt(row.e1) + "," + opt(row.e2) +
         "," + opt(row.vol_rel) + "," + format_number(row.min_r);
}

}  // namespace droplet
