#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "droplet/diagnostics.hpp"
#include "droplet/hr_oracle.hpp"

using namespace droplet;

namespace {

RadiusProfile oracle_profile(const GridSpec& g, double gap) {
  std::vector<double> v(g.nodes());
  for (int i = 0; i <= g.M(); ++i) v[i] = exact_radius(gap, g.theta(i));
  return RadiusProfile(g, v);
}

}  // namespace

TEST_CASE("errors vanish on the oracle") {
  const GridSpec g = make_grid(100, 200, 0.01, 1.0);
  for (double gap : {0.0, -0.3, -0.93, 0.5}) {
    const auto m = error_metrics(oracle_profile(g, gap), gap);
    CHECK(m.e1 == 0.0);
    CHECK(m.e2 == 0.0);
    CHECK(m.abs_sum == 0.0);
  }
}

TEST_CASE("single-node perturbation") {
  const GridSpec g = make_grid(100, 200, 0.01, 1.0);
  std::vector<double> v(101, 1.0);
  v[42] += 0.01;
  const auto m = error_metrics(RadiusProfile(g, v), 0.0);
  CHECK(m.e1 == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(m.e2 == doctest::Approx(0.01 / 101).epsilon(1e-12));
  CHECK(m.abs_sum == doctest::Approx(0.01).epsilon(1e-12));
  CHECK_THROWS_AS(error_metrics(RadiusProfile(g, v), -1.2), OracleDomainError);
}

TEST_CASE("max error dominates mean error") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(0.5, 1.5);
  const GridSpec g = make_grid(30, 8, 0.01, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(31);
    for (auto& x : v) x = d(rng);
    const auto m = error_metrics(RadiusProfile(g, v), -0.2);
    CHECK(m.e1 >= m.e2);
    CHECK(m.e2 >= 0.0);
  }
}

TEST_CASE("volume") {
  const GridSpec g = make_grid(100, 200, 0.01, 1.0);
  const auto one = volume(RadiusProfile(g, std::vector<double>(101, 1.0)));
  CHECK(one.vol == doctest::Approx(4.18879).epsilon(1e-4));
  CHECK(one.vol_rel <= 1e-4);
  CHECK(one.vol_rel >= 0.0);
  const auto two = volume(RadiusProfile(g, std::vector<double>(101, 2.0)), 32 * kPi / 3);
  CHECK(two.vol == doctest::Approx(32 * kPi / 3).epsilon(1e-4));
  CHECK(volume(oracle_profile(g, -0.5)).vol_rel <= 1e-2);
}

TEST_CASE("section curve") {
  const GridSpec g = make_grid(100, 200, 0.01, 1.0);
  const RadiusProfile one(g, std::vector<double>(101, 1.0));
  const auto pts = section_curve(one, 0.0);
  REQUIRE(pts.size() == 200);
  CHECK(pts[0].x == 0.0);
  CHECK(pts[0].z == 1.0);
  CHECK(pts[100].z == -1.0);
  for (const auto& p : pts) CHECK(std::hypot(p.x, p.z) == doctest::Approx(1.0).epsilon(1e-15));
  for (int i = 1; i < 100; ++i) {
    CHECK(pts[i].x > 0.0);
    CHECK(pts[200 - i].x == -pts[i].x);
    CHECK(pts[200 - i].z == pts[i].z);
  }

  const auto shifted = section_curve(one, -5.0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(shifted[i].x == pts[i].x);
    CHECK(shifted[i].z == doctest::Approx(pts[i].z - 5.0).epsilon(1e-15));
  }
}

TEST_CASE("section of the exact shape lies on the HR sphere") {
  const GridSpec g = make_grid(100, 200, 0.01, 1.0);
  const double t = 10.0;
  const double gap = transported_center_gap(t);
  const double cstar = kHrVelocity * t;
  for (const auto& p : section_curve(oracle_profile(g, gap), cstar + gap)) {
    CHECK(std::abs(std::hypot(p.x, p.z - cstar) - 1.0) <= 1e-10);
  }
}

TEST_CASE("diagnostics rows") {
  const GridSpec g = make_grid(4, 4, 0.01, 1.0);
  const RadiusProfile one(g, std::vector<double>(5, 1.0));
  const auto row = make_row(2.5, -0.1, one, 4 * kPi / 3);
  CHECK(row.t == 2.5);
  CHECK(row.gap_abs == doctest::Approx(0.1));
  REQUIRE(row.e1);
  REQUIRE(row.e2);
  REQUIRE(row.vol_rel);
  CHECK(*row.e1 >= *row.e2);
  CHECK(row.min_r == 1.0);

  const auto far = make_row(2.5, -1.5, one, 4 * kPi / 3);
  CHECK_FALSE(far.e1);
  CHECK(far.vol_rel);

  const RadiusProfile neg(g, {1.0, 0.5, -0.1, 0.5, 1.0});
  const auto bad = make_row(0.51, -1.02, neg, 4 * kPi / 3);
  CHECK_FALSE(bad.e1);
  CHECK_FALSE(bad.e2);
  CHECK_FALSE(bad.vol_rel);
  CHECK(bad.min_r == -0.1);
}

TEST_CASE("csv serialization") {
  CHECK(csv_header() == "t,gap_abs,e1,e2,vol_rel,min_r");
  DiagnosticsRow row;
  row.t = 2.5;
  row.gap_abs = 1.0 / 3;
  row.e1 = 0.001;
  row.e2 = 0.0005;
  row.vol_rel = 1e-5;
  row.min_r = 0.75;
  CHECK(to_csv(row) == "2.5,0.333333333333,0.001,0.0005,1e-05,0.75");
  row.e1.reset();
  row.e2.reset();
  row.vol_rel.reset();
  row.min_r = -0.13;
  CHECK(to_csv(row) == "2.5,0.333333333333,,,,-0.13");
  CHECK(format_number(kPi) == "3.14159265359");
}
