#include <cmath>
#include <numbers>

#include "casimir/approx.hpp"
#include "casimir/errors.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace casimir::approx;
using casimir::testing::rel_diff;

TEST_CASE("proximity force baseline") {
  const auto e = pfa_energy(1.0, 1.0);
  CHECK(e.value == doctest::Approx(-0.0228376).epsilon(1e-6));
  CHECK_FALSE(e.degenerate);
  CHECK(pfa_energy(0.25, 1.0).value == doctest::Approx(32 * e.value).epsilon(1e-14));
  CHECK(pfa_energy(1.0, 4.0).value == doctest::Approx(2 * e.value).epsilon(1e-14));
  const auto edge = pfa_energy(1.0, 0.0);
  CHECK(edge.degenerate);
  CHECK(edge.value == 0.0);
  CHECK_THROWS_AS(pfa_energy(0.0, 1.0), casimir::DomainError);
}

TEST_CASE("parallel plates") {
  CHECK(parallel_plates(1.0) == doctest::Approx(-0.0137078).epsilon(1e-6));
  CHECK(parallel_plates(2.0) == doctest::Approx(parallel_plates(1.0) / 8).epsilon(1e-15));
}

TEST_CASE("edge PFA for a disk") {
  // int_{-1}^{1} (2 - sqrt(1 - x^2))^{-2} dx, evaluated to 16 digits with mpmath
  const auto e = edge_pfa_disk(1.0, 1.0, 1.0);
  CHECK(e.exact_integral == doctest::Approx(-1.4727997174374302).epsilon(1e-12));
  CHECK(edge_pfa_disk(1.0, 1.0, 0.0067).exact_integral == doctest::Approx(0.0067 * e.exact_integral).epsilon(1e-14));
  const auto thin = edge_pfa_disk(1e-4, 1.0, 0.0067);
  CHECK(thin.exact_integral / thin.asymptote == doctest::Approx(0.99992530).epsilon(1e-7));
  CHECK(thin.asymptote == doctest::Approx(-0.0067 * std::numbers::pi * std::sqrt(1 / (2 * 1e-12))).epsilon(1e-14));
  CHECK_THROWS_AS(edge_pfa_disk(1.0, -1.0, 1.0), casimir::DomainError);
}

TEST_CASE("edge coefficient fit on synthetic data") {
  const double half = 0.0034, slope = 0.0005, curv = 0.0;
  std::vector<EdgeSample> s;
  for (double deg = 60; deg <= 88; deg += 1) {
    const double t = deg * std::numbers::pi / 180 - std::numbers::pi / 2;
    s.push_back({deg * std::numbers::pi / 180, half + slope * t + curv * t * t, 1e-7});
  }
  const auto fit = edge_coefficient_fit(s);
  CHECK(fit.c_parallel_half == doctest::Approx(half).epsilon(1e-10));
  CHECK(fit.c_edge == doctest::Approx(slope).epsilon(1e-8));
  CHECK(fit.samples == 8);
  CHECK(fit.residual < 1e-14);

  // curvature shows up as a window dependence of the slope
  for (auto& p : s) {
    const double t = p.theta - std::numbers::pi / 2;
    p.value += 0.001 * t * t;
  }
  const double rad = std::numbers::pi / 180;
  const auto sens = window_sensitivity(s, {{70 * rad, 87 * rad}, {80 * rad, 87 * rad}, {84 * rad, 85 * rad}});
  CHECK(sens.fits.size() == 2);
  CHECK(sens.slope_spread > 1e-5);
  CHECK(sens.fits[1].c_edge > sens.fits[0].c_edge);

  CHECK_THROWS_AS(edge_coefficient_fit(s, 84 * rad, 85 * rad), casimir::DomainError);
}
