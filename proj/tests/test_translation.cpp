#include <cmath>
#include <complex>
#include <numbers>

#include "casimir/errors.hpp"
#include "casimir/translation.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace casimir;
using namespace casimir::translation;
using namespace casimir::translation::testing;
using casimir::testing::rel_diff;
using casimir::testing::uniform;
using casimir::testing::uniform_int;
using specfun::ParabolicPoint;

namespace {

using cplx = std::complex<double>;

// J_{n n2} straight from the k_x integral: complex reflection angle from
// tan(phi) = k_x / k_y with k_y = i sqrt(q^2 + k_x^2), composite Simpson in k_x.
double kx_oracle(int n, int n2, double q, double d, double theta) {
  const double kmax = q + 40.0 / d;
  const int steps = 40000;
  const double h = 2 * kmax / steps;
  auto f = [&](double kx) {
    const cplx ky(0.0, std::hypot(q, kx));
    const cplx phi = std::atan(kx / ky);
    const cplx tp = std::tan((phi + theta) / 2.0), tm = std::tan((phi - theta) / 2.0);
    const cplx denom = std::cos((phi + theta) / 2.0) * std::cos((phi - theta) / 2.0);
    return (cplx(0, 1) / ky * std::pow(tp, n) * std::pow(tm, n2) / denom * std::exp(2.0 * cplx(0, 1) * ky * d)).real();
  };
  double s = f(-kmax) + f(kmax);
  for (int i = 1; i < steps; ++i) s += (i % 2 ? 4 : 2) * f(-kmax + i * h);
  return s * h / 3;
}

}  // namespace

TEST_CASE("theta = 0 closed form agrees with quadrature") {
  for (int i = 0; i < 20; ++i) {
    const int n = uniform_int(0, 30);
    const int n2 = 2 * uniform_int(0, 15) + n % 2;
    const double q = uniform(0.1, 3.0), d = uniform(0.2, 2.0);
    const auto e = tilted_element(n, n2, q, d, 0.0, 1e-12);
    CHECK(rel_diff(e.value(), theta0_element(n, n2, q, d).value()) < 1e-8);
  }
}

TEST_CASE("odd n + n2 vanish at theta = 0") {
  for (auto [n, n2] : {std::pair{0, 1}, {3, 0}, {4, 7}, {12, 9}}) {
    const auto e = tilted_element(n, n2, 0.7, 1.1, 0.0, 1e-12);
    CHECK(std::abs(e.scaled) <= 1e-12 * e.peak);
    CHECK(theta0_element(n, n2, 0.7, 1.1).is_zero());
  }
}

TEST_CASE("theta = 0 series matches single elements") {
  const auto s = theta0_series(12, 0.4, 1.5);
  for (int m = 0; m <= 12; ++m) CHECK(rel_diff(s[m], theta0_element(m, m, 0.4, 1.5)) < 1e-13);
}

TEST_CASE("J_00 obeys the Bessel relation g'' - g = 4 (K1 - K0)") {
  // with q = 1/2 the argument 2qd is d itself
  const double x = 1.3, h = 1e-3;
  auto g = [](double d) { return theta0_element(0, 0, 0.5, d).value(); };
  const double second = (g(x + h) - 2 * g(x) + g(x - h)) / (h * h);
  const double rhs = 4 * (std::cyl_bessel_k(1.0, x) - std::cyl_bessel_k(0.0, x));
  CHECK(second - g(x) == doctest::Approx(rhs).epsilon(1e-6));
}

TEST_CASE("quadrature agrees with the k_x oracle for tilted elements") {
  for (auto [n, n2, theta] : {std::tuple{0, 0, 0.0}, {1, 1, 0.0}, {0, 1, 0.4}, {2, 3, -0.7}, {5, 2, 1.1}}) {
    const double ref = kx_oracle(n, n2, 0.8, 0.9, theta);
    const auto e = tilted_element(n, n2, 0.8, 0.9, theta, 1e-12);
    CHECK(std::abs(e.value() - ref) < 1e-9 * std::exp(-1.44) * e.peak + 1e-12);
  }
}

TEST_CASE("tilt reversal transposes the elements") {
  for (auto [n, n2] : {std::pair{0, 1}, {2, 5}, {4, 4}, {7, 3}}) {
    const double a = tilted_element(n, n2, 1.0, 0.6, 0.5).value();
    const double b = tilted_element(n2, n, 1.0, 0.6, -0.5).value();
    CHECK(rel_diff(a, b) < 1e-9);
    const double c = tilted_element(n2, n, 1.0, 0.6, 0.5).value();
    CHECK(rel_diff(a, ((n + n2) % 2 ? -1.0 : 1.0) * c) < 1e-9);
  }
}

TEST_CASE("elements decay when the distance doubles") {
  for (int n : {0, 3, 10}) {
    for (double theta : {0.0, 0.6}) {
      const double near = std::abs(tilted_element(n, n, 1.0, 0.5, theta).value());
      const double far = std::abs(tilted_element(n, n, 1.0, 1.0, theta).value());
      CHECK(far < near);
    }
  }
}

TEST_CASE("block quadrature reproduces adaptive elements") {
  const int nu = 24;
  for (double theta : {0.0, 0.3, 1.2}) {
    const auto b = tilted_block(nu, 0.9, 0.8, theta);
    CHECK(b.error <= 1e-10);
    const double scale = b.scaled.cwiseAbs().maxCoeff();
    for (auto [n, n2] : {std::pair{0, 0}, {nu, nu}, {3, 17}, {20, 1}, {12, 12}}) {
      const auto e = tilted_element(n, n2, 0.9, 0.8, theta, 1e-12);
      CHECK(std::abs(b.scaled(n, n2) - e.scaled) < 1e-10 * scale);
    }
    if (theta == 0.0) {
      for (int n = 0; n <= nu; n += 5) {
        const double ref = theta0_element(n, n, 0.9, 0.8).scaled_value(b.log_scale);
        CHECK(std::abs(b.scaled(n, n) - ref) < 1e-10 * scale);
      }
    }
  }
}

TEST_CASE("Green's function expansion at nu = 40") {
  const auto r1 = ParabolicPoint{0.2, 0.1, 0.1};
  const auto r2 = ParabolicPoint{0.1, 2.0, -0.2};
  const double free = green_free(r1, r2, 1.0);
  CHECK(rel_diff(green_parabolic(r1, r2, 1.0, 40), free) < 1e-6);
  CHECK(rel_diff(green_parabolic(r2, r1, 1.0, 40), green_parabolic(r1, r2, 1.0, 40)) < 1e-12);
  const double rho = std::hypot(r1.x() - r2.x(), r1.y() - r2.y());
  CHECK(rel_diff(green_parabolic_2d(r1, r2, 1.3, 40), std::cyl_bessel_k(0.0, 1.3 * rho) / (2 * std::numbers::pi)) <
        1e-8);
}

TEST_CASE("evanescent plane wave expansion at nu = 60") {
  for (double u : {-1.0, 0.0, 0.5, 1.5}) {
    const auto r = ParabolicPoint{0.7, 0.5, 0.0};
    const cplx exact = plane_wave(r, 1.0, u);
    CHECK(std::abs(plane_wave_partial_sum(r, 1.0, u, 60) - exact) < 1e-8 * std::abs(exact));
  }
}

TEST_CASE("translation domain errors") {
  CHECK_THROWS_AS(tilted_element(-1, 0, 1.0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(tilted_element(0, 0, 0.0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(tilted_element(0, 0, 1.0, 1.0, std::numbers::pi / 2), DomainError);
  CHECK_THROWS_AS(tilted_block(3, 1.0, -1.0, 0.0), DomainError);
  CHECK_THROWS_AS(theta0_element(0, 0, 1.0, 0.0), DomainError);
}
