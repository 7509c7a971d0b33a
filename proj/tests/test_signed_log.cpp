#include <cmath>

#include "casimir/signed_log.hpp"
#include "doctest.h"
#include "test_util.hpp"

using casimir::SignedLogd;
using casimir::testing::uniform;

TEST_CASE("SignedLog arithmetic matches plain doubles") {
  for (int i = 0; i < 200; ++i) {
    const double a = uniform(-5, 5), b = uniform(-5, 5);
    const auto la = SignedLogd::from_value(a), lb = SignedLogd::from_value(b);
    CHECK((la * lb).value() == doctest::Approx(a * b).epsilon(1e-14));
    CHECK((la / lb).value() == doctest::Approx(a / b).epsilon(1e-14));
    CHECK((la + lb).value() == doctest::Approx(a + b).epsilon(1e-12).scale(std::abs(a) + std::abs(b)));
    CHECK((la - lb).value() == doctest::Approx(a - b).epsilon(1e-12).scale(std::abs(a) + std::abs(b)));
  }
}

TEST_CASE("SignedLog zero and extreme magnitudes") {
  const auto z = SignedLogd::zero();
  CHECK(z.is_zero());
  CHECK(z.value() == 0.0);
  CHECK((z * SignedLogd::from_value(3.0)).is_zero());
  CHECK((z + SignedLogd::from_value(-2.0)).value() == -2.0);
  CHECK((SignedLogd::from_value(2.0) - SignedLogd::from_value(2.0)).is_zero());

  // 300! * (1/300!) stays exact in log space
  const auto big = SignedLogd::from_log(1, casimir::log_factorial(300));
  CHECK(std::isinf(big.value()));
  CHECK((big / big).value() == doctest::Approx(1.0));
  CHECK(big.scaled_value(big.logmag()) == doctest::Approx(1.0));
  CHECK((-big).sign() == -1);
  CHECK((-big).abs().sign() == 1);
}

TEST_CASE("division by zero gives an infinite magnitude") {
  const auto r = SignedLogd::from_value(-3.0) / SignedLogd::zero();
  CHECK(r.sign() == -1);
  CHECK(std::isinf(r.logmag()));
}
