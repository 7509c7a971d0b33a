#include <cmath>
#include <complex>
#include <numbers>

#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"
#include "doctest.h"

using namespace casimir;

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
  for (int n : {1, 2, 5, 16, 32, 64}) {
    const auto& g = quad::gauss_legendre(n);
    CHECK(g.weights.sum() == doctest::Approx(2.0).epsilon(1e-14));
    // x^(2n-2) is the largest even power the rule must get right
    const int p = 2 * n - 2;
    const double exact = 2.0 / (p + 1);
    CHECK((g.weights.array() * g.nodes.array().pow(p)).sum() == doctest::Approx(exact).epsilon(1e-13));
  }
}

TEST_CASE("composite rules cover their panels") {
  const auto r = quad::composite(quad::uniform_breaks(0.0, 3.0, 6), 8);
  CHECK(r.nodes.size() == 48);
  CHECK(r.weights.sum() == doctest::Approx(3.0).epsilon(1e-14));
  CHECK((r.weights.array() * r.nodes.array().exp()).sum() == doctest::Approx(std::expm1(3.0)).epsilon(1e-14));
}

TEST_CASE("adaptive integration of peaked and complex integrands") {
  const auto e = quad::integrate_adaptive([](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0, 1e-10);
  CHECK(e.value == doctest::Approx(2 * std::atan(100.0) * 100).epsilon(1e-11));
  const auto c = quad::integrate_adaptive(
      [](double x) { return std::exp(std::complex<double>(0, 40 * x)); }, 0.0, std::numbers::pi, 1e-12);
  CHECK(std::abs(c.value) < 1e-11);
}

TEST_CASE("adaptive integration reports failure") {
  CHECK_THROWS_AS(quad::integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-14, 4, 3),
                  AccuracyError);
}
