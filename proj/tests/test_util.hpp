#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "casimir/signed_log.hpp"

namespace casimir::testing {

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0 ? 0.0 : std::abs(a - b) / scale;
}

/// Relative distance between two SignedLog values (1 when signs differ).
inline double rel_diff(const SignedLogd& a, const SignedLogd& b) {
  if (a.is_zero() || b.is_zero()) return (a.is_zero() && b.is_zero()) ? 0.0 : 1.0;
  if (a.sign() != b.sign()) return 1.0;
  return std::abs(std::expm1(a.logmag() - b.logmag()));
}

/// |a + b + c| relative to the largest of |a|, |b|, |c|.
inline double residual(const SignedLogd& a, const SignedLogd& b, const SignedLogd& c) {
  const auto sum = a + b + c;
  if (sum.is_zero()) return 0.0;
  double biggest = -INFINITY;
  for (const auto* t : {&a, &b, &c})
    if (!t->is_zero()) biggest = std::max(biggest, t->logmag());
  return std::exp(sum.logmag() - biggest);
}

/// Deterministic generator for hand-rolled property tests.
inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng()); }
inline int uniform_int(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng()); }

}  // namespace casimir::testing
