#include <cmath>
#include <numbers>

#include "casimir/errors.hpp"
#include "casimir/specfun.hpp"
#include "doctest.h"
#include "fixture_table.hpp"
#include "test_util.hpp"

using namespace casimir;
using namespace casimir::specfun;
using casimir::testing::rel_diff;
using casimir::testing::residual;

TEST_CASE("pcf_regular closed forms") {
  CHECK(pcf_regular(0, 0.0).value.value() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(pcf_regular(1, 1.0).value.value() == doctest::Approx(std::exp(-0.25)).epsilon(1e-15));
  CHECK(pcf_regular(2, 0.0).value.value() == doctest::Approx(-1.0).epsilon(1e-15));
  // D_1'(x) = (1 - x^2/2) e^{-x^2/4}
  CHECK(pcf_regular(1, 0.7, true).derivative.value() ==
        doctest::Approx((1 - 0.245) * std::exp(-0.1225)).epsilon(1e-14));
}

TEST_CASE("pcf_regular_imag closed forms") {
  CHECK(pcf_regular_imag(0, 0.0).value.value() == doctest::Approx(1.0));
  CHECK(pcf_regular_imag(1, 1.0).value.value() == doctest::Approx(-std::exp(0.25)).epsilon(1e-15));
  CHECK(pcf_regular_imag(0, 2.0, true).derivative.value() == doctest::Approx(std::numbers::e).epsilon(1e-15));
}

TEST_CASE("pcf_outgoing seeds") {
  const double s = std::sqrt(std::numbers::pi / 2);
  CHECK(pcf_outgoing(0, 0.0).value.value() == doctest::Approx(s).epsilon(1e-15));
  const double ref = std::exp(0.25) * s * std::erfc(1 / std::numbers::sqrt2);
  CHECK(pcf_outgoing(0, 1.0).value.value() == doctest::Approx(ref).epsilon(1e-14));
  CHECK(ref == doctest::Approx(0.5106440).epsilon(1e-6));
  CHECK(pcf_outgoing(1, 0.0).value.value() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("bateman_k zeros and errors") {
  CHECK(bateman_k(-2, 0.7) == 0.0);
  CHECK(bateman_k(-4, 3.1) == 0.0);
  for (int ell = -2; ell >= -400; ell -= 2) CHECK(bateman_k_log(ell, 0.37 * -ell).is_zero());
  CHECK_THROWS_AS(bateman_k(-1, 0.0), DomainError);
  CHECK_THROWS_AS(bateman_k(-1, -2.0), DomainError);
  CHECK_THROWS_AS(bateman_k(0, 1.0), UnsupportedOrderError);
  CHECK_THROWS_AS(bateman_k(3, 1.0), UnsupportedOrderError);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(pcf_regular(-1, 0.3), DomainError);
  CHECK_THROWS_AS(pcf_regular(2, NAN), DomainError);
  CHECK_THROWS_AS(pcf_regular_imag(2, -0.1), DomainError);
  CHECK_THROWS_AS(pcf_outgoing(0, -1e-3), DomainError);
  CHECK_THROWS_AS(confluent_u_half(1, 0.0), DomainError);
}

TEST_CASE("k_{-1} matches U(1/2, 0, 1)") {
  // k_{-1}(1/2) = e^{-1/2} U(1/2, 0, 1) / Gamma(1/2)
  const double u = confluent_u_half(0, 1.0).value();
  CHECK(bateman_k(-1, 0.5) == doctest::Approx(std::exp(-0.5) * u / std::sqrt(std::numbers::pi)).epsilon(1e-13));
  // frozen fixture value
  CHECK(rel_diff(bateman_k_log(-1, 0.5), SignedLogd::from_log(1, -1.4566745300456723234)) < 1e-12);
}

TEST_CASE("three-term recurrences hold for all families") {
  for (int trial = 0; trial < 200; ++trial) {
    const int n = testing::uniform_int(1, 199);
    const double x = testing::uniform(0.0, 60.0);
    {
      const auto a = pcf_regular(n + 1, x).value, b = pcf_regular(n, x).value, c = pcf_regular(n - 1, x).value;
      // D_{n+1} - x D_n + n D_{n-1}; relative to the largest term
      CHECK(residual(a, -(b * x), c * double(n)) < 1e-10);
    }
    {
      const auto g = regular_imag_sequence(n + 1, x);
      CHECK(residual(g[n + 1], g[n] * x, -(g[n - 1] * double(n))) < 1e-10);
    }
    {
      const auto y = outgoing_sequence(n + 1, x);
      CHECK(residual(y[n - 1], -(y[n] * x), -(y[n + 1] * double(n + 1))) < 1e-10);
    }
  }
}

TEST_CASE("derivative identities") {
  for (int trial = 0; trial < 200; ++trial) {
    const int n = testing::uniform_int(1, 199);
    const double x = testing::uniform(0.0, 60.0);
    {
      const auto d = pcf_regular(n, x, true);
      const auto lower = pcf_regular(n - 1, x).value;
      CHECK(residual(d.derivative, d.value * (0.5 * x), -(lower * double(n))) < 1e-10);
    }
    {
      std::vector<SignedLogd> g, gp;
      regular_imag_sequence(n, x, g, gp);
      CHECK(residual(gp[n], -(g[n] * (0.5 * x)), g[n - 1] * double(n)) < 1e-10);
    }
    {
      // D_nu' = (x/2) D_nu - D_{nu+1}, nu = -n-1
      const auto d = pcf_outgoing(n, x, true);
      const auto above = pcf_outgoing(n - 1, x).value;
      CHECK(residual(d.derivative, -(d.value * (0.5 * x)), above) < 1e-10);
    }
  }
}

TEST_CASE("agreement with arbitrary-precision fixtures") {
  const auto table = testing::load_fixtures(std::string(CASIMIR_FIXTURE_DIR) + "/specfun.txt");
  REQUIRE(table.size() >= 200);
  double worst = 0;
  for (const auto& r : table) {
    SignedLogd got;
    if (r.family == "reg") got = pcf_regular(r.n, r.x).value;
    else if (r.family == "reg_deriv") got = pcf_regular(r.n, r.x, true).derivative;
    else if (r.family == "imag") got = pcf_regular_imag(r.n, r.x).value;
    else if (r.family == "imag_deriv") got = pcf_regular_imag(r.n, r.x, true).derivative;
    else if (r.family == "out") got = pcf_outgoing(r.n, r.x).value;
    else if (r.family == "out_deriv") got = pcf_outgoing(r.n, r.x, true).derivative;
    else if (r.family == "bateman") got = bateman_k_log(r.n, r.x);
    else FAIL("unknown family " << r.family);
    const auto want = SignedLogd::from_log(r.sign, r.logmag);
    const double d = rel_diff(got, want);
    worst = std::max(worst, d);
    CHECK_MESSAGE(d <= 1e-10, r.family << " n=" << r.n << " x=" << r.x << " got " << got << " want " << want);
  }
  MESSAGE("worst fixture relative error " << worst);
}

TEST_CASE("no overflow at high order and large argument") {
  for (double x : {0.0, 1e-6, 3.0, 40.0, 100.0}) {
    const auto g = regular_imag_sequence(200, x);
    const auto y = outgoing_sequence(200, x);
    CHECK(std::isfinite(g[200].logmag()));
    CHECK(std::isfinite(y[200].logmag()));
    CHECK(std::isfinite(pcf_regular(200, x, true).derivative.logmag()));
    if (x > 0) CHECK(std::isfinite(bateman_k_odd_sequence(200, x)[200].logmag()));
  }
}

TEST_CASE("parabolic coordinates round trip") {
  for (int trial = 0; trial < 500; ++trial) {
    const double x = testing::uniform(-5, 5), y = testing::uniform(-5, 5);
    const auto p = ParabolicPoint::from_cartesian(x, y, 0.3);
    CHECK(p.mu >= 0);
    CHECK(std::abs(p.x() - x) <= 1e-14 * std::hypot(x, y) + 1e-300);
    CHECK(std::abs(p.y() - y) <= 1e-14 * std::hypot(x, y) + 1e-300);
  }
  const auto a = ScaledArgument::make(0.5, 3.0, 4.0);
  CHECK(a.q == doctest::Approx(5.0));
  CHECK(a.scaled == doctest::Approx(0.5 * std::sqrt(10.0)));
}
