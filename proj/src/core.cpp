#include "droplet/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace droplet {

namespace {

constexpr int kMaxNodes = 1'000'000;

}  // namespace

long step_count(double dt, double T) {
  const double q = T / dt;
  const double nearest = std::round(q);
  if (std::abs(q - nearest) <= 8.0 * std::numeric_limits<double>::epsilon() * q) {
    return static_cast<long>(nearest);
  }
  return static_cast<long>(std::ceil(q));
}

GridSpec::GridSpec(int M, int L, double dt, double T) : M_(M), L_(L), dt_(dt), T_(T) {
  if (M < 4 || L < 4) {
    throw std::invalid_argument("grid: M and L must be at least 4");
  }
  if (M > kMaxNodes || L > kMaxNodes) {
    throw std::invalid_argument("grid: M and L must not exceed 1e6");
  }
  if (!(dt > 0.0) || !(T > 0.0) || !std::isfinite(dt) || !std::isfinite(T)) {
    throw std::invalid_argument("grid: dt and T must be positive and finite");
  }
  if (T / dt > 1e12) {
    throw std::invalid_argument("grid: T/dt is too large");
  }
  steps_ = step_count(dt, T);

  // Lower half from i*pi/M, upper half mirrored so theta_i + theta_{M-i} = pi.
  theta_.resize(static_cast<std::size_t>(M) + 1);
  for (int i = 0; 2 * i <= M; ++i) {
    theta_[static_cast<std::size_t>(i)] = static_cast<double>(i) * kPi / M;
  }
  for (int i = M / 2 + 1; i <= M; ++i) {
    theta_[static_cast<std::size_t>(i)] = kPi - theta_[static_cast<std::size_t>(M - i)];
  }
  if (M % 2 == 0) theta_[static_cast<std::size_t>(M / 2)] = 0.5 * kPi;
  theta_.front() = 0.0;
  theta_.back() = kPi;
}

GridSpec make_grid(int M, int L, double dt, double T) { return GridSpec(M, L, dt, T); }

RadiusProfile::RadiusProfile(GridSpec grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.nodes()) {
    throw std::invalid_argument("profile: expected M+1 radius samples");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("profile: non-finite radius sample");
    }
  }
}

double RadiusProfile::min() const { return *std::min_element(values_.begin(), values_.end()); }

double RadiusProfile::max() const { return *std::max_element(values_.begin(), values_.end()); }

void RadiusProfile::require_positive(const char* what) const {
  if (degenerate()) {
    std::ostringstream os;
    os << what << ": degenerate radius profile (min r = " << min() << ")";
    throw DegenerateProfile(os.str());
  }
}

double RadiusProfile::at(double theta) const {
  const double h = grid_.dtheta();
  const double x = std::clamp(theta, 0.0, kPi) / h;
  const auto last = static_cast<double>(grid_.M());
  const double cell = std::min(std::floor(x), last - 1.0);
  const double w = x - cell;
  const auto k = static_cast<std::size_t>(cell);
  return (1.0 - w) * values_[k] + w * values_[k + 1];
}

CenterLaw CenterLaw::scaled(double lambda) {
  if (!std::isfinite(lambda)) {
    throw std::invalid_argument("center law: lambda must be finite");
  }
  return {Kind::ScaledHR, lambda};
}

CenterLaw CenterLaw::parse(const std::string& text) {
  if (text == "flow" || text == "transported") return transported();
  if (text == "exact") return exact();
  if (text == "scaled") return scaled(1.0);
  if (text.rfind("scaled:", 0) == 0) {
    const std::string arg = text.substr(7);
    std::size_t used = 0;
    double lambda = 0.0;
    try {
      lambda = std::stod(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != arg.size()) {
      throw std::invalid_argument("center law: bad lambda '" + arg + "'");
    }
    return scaled(lambda);
  }
  throw std::invalid_argument("center law: expected flow, scaled:<lambda> or exact, got '" + text + "'");
}

std::string CenterLaw::to_string() const {
  switch (kind) {
    case Kind::TransportedByFlow:
      return "flow";
    case Kind::ScaledHR: {
      std::ostringstream os;
      os.precision(17);
      os << "scaled:" << lambda;
      return os.str();
    }
    case Kind::ExactHR:
      return "exact";
  }
  return "flow";
}

InitialShape InitialShape::custom(std::vector<double> samples) {
  for (double v : samples) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DegenerateProfile("custom shape: radius samples must be positive and finite");
    }
  }
  return {Kind::Custom, std::move(samples)};
}

double InitialShape::radius(double theta) const {
  switch (kind) {
    case Kind::UnitSphere:
      return 1.0;
    case Kind::ProlateEllipsoid: {
      const double c = std::cos(theta);
      return 1.0 / std::sqrt(1.0 - 0.75 * c * c);
    }
    case Kind::OblateEllipsoid: {
      const double s = std::sin(theta);
      return 1.0 / std::sqrt(1.0 - 0.75 * s * s);
    }
    case Kind::Custom:
      break;
  }
  throw std::logic_error("custom shape has no analytic radius");
}

double InitialShape::exact_volume() const {
  // Semi-axes (1,1,1), (1,1,2) and (2,2,1).
  switch (kind) {
    case Kind::UnitSphere:
      return 4.0 * kPi / 3.0;
    case Kind::ProlateEllipsoid:
      return 8.0 * kPi / 3.0;
    case Kind::OblateEllipsoid:
      return 16.0 * kPi / 3.0;
    case Kind::Custom:
      break;
  }
  return 0.0;
}

std::string InitialShape::to_string() const {
  switch (kind) {
    case Kind::UnitSphere:
      return "sphere";
    case Kind::ProlateEllipsoid:
      return "prolate";
    case Kind::OblateEllipsoid:
      return "oblate";
    case Kind::Custom:
      return "custom";
  }
  return "sphere";
}

RadiusProfile sample_shape(const InitialShape& shape, const GridSpec& grid) {
  if (shape.kind == InitialShape::Kind::Custom) {
    if (shape.samples.size() != grid.nodes()) {
      throw std::invalid_argument("custom shape: sample count does not match M+1");
    }
    for (double v : shape.samples) {
      if (!(v > 0.0)) {
        throw DegenerateProfile("custom shape: non-positive radius sample");
      }
    }
    return RadiusProfile(grid, shape.samples);
  }
  std::vector<double> values(grid.nodes());
  const int M = grid.M();
  for (int i = 0; i <= M; ++i) {
    values[static_cast<std::size_t>(i)] = shape.radius(grid.theta(i));
  }
  // Exact mirror symmetry for the symmetric analytic shapes.
  for (int i = M / 2 + 1; i <= M; ++i) {
    values[static_cast<std::size_t>(i)] = values[static_cast<std::size_t>(M - i)];
  }
  return RadiusProfile(grid, std::move(values));
}

SchemeKind parse_scheme(const std::string& text) {
  if (text == "upwind" || text == "fd") return SchemeKind::UpwindFD;
  if (text == "fv") return SchemeKind::FiniteVolume;
  if (text == "lf") return SchemeKind::LaxFriedrichs;
  throw std::invalid_argument("scheme: expected upwind, fv or lf, got '" + text + "'");
}

std::string to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::UpwindFD:
      return "upwind";
    case SchemeKind::FiniteVolume:
      return "fv";
    case SchemeKind::LaxFriedrichs:
      return "lf";
  }
  return "upwind";
}

}  // namespace droplet
