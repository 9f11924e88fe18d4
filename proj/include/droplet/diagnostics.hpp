#pragma once

#include <optional>
#include <string>
#include <vector>

#include "droplet/core.hpp"

namespace droplet {

/// Errors of a profile against the HR sphere seen from the same center.
struct ErrorMetrics {
  double e1 = 0.0;       // max_i |r_i - rbar_i|
  double e2 = 0.0;       // (1/(M+1)) sum_i |r_i - rbar_i|
  double abs_sum = 0.0;  // sum_i |r_i - rbar_i|, unnormalized
};

/// Throws OracleDomainError if |gap| > 1.
ErrorMetrics error_metrics(const RadiusProfile& r, double gap);

struct VolumeReport {
  double vol = 0.0;
  double vol_rel = 0.0;  // |vol - reference| / reference
};

/// (2 pi / 3) int_0^pi r^3 sin dtheta by the trapezoid rule on the nodes.
VolumeReport volume(const RadiusProfile& r, double reference = 4.0 * kPi / 3.0);

struct Point2 {
  double x = 0.0;
  double z = 0.0;
};

/// Meridian section (r sin theta, c3 + r cos theta): the right half from the
/// north pole to the south pole, then the mirrored left half back up,
/// without repeating the poles (2M points).
std::vector<Point2> section_curve(const RadiusProfile& r, double c3);

/// One output record. Fields that require a positive profile or a valid
/// oracle are empty once those fail.
struct DiagnosticsRow {
  double t = 0.0;
  double gap_abs = 0.0;
  std::optional<double> e1;
  std::optional<double> e2;
  std::optional<double> abs_sum;
  std::optional<double> vol_rel;
  double min_r = 0.0;
};

/// Builds the row for a profile at time t with center gap `gap`.
DiagnosticsRow make_row(double t, double gap, const RadiusProfile& r, double reference_volume);

/// "t,gap_abs,e1,e2,vol_rel,min_r"
std::string csv_header();

/// 12 significant digits, empty fields for missing values, no line ending.
std::string to_csv(const DiagnosticsRow& row);

/// Number formatting shared by every CSV writer: %.12g.
std::string format_number(double v);

}  // namespace droplet
