#include "casimir/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "casimir/errors.hpp"

namespace casimir::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
// rescale recurrences once a term leaves [1e-150, 1e150]
constexpr double kBig = 1e150;
constexpr double kLogBig = 345.38776394910684;  // log(1e150)

void require_order(int n, const char* who) {
  if (n < 0) throw DomainError(std::string(who) + ": order must be a non-negative integer");
}

void require_finite(double x, const char* who) {
  if (!std::isfinite(x)) throw DomainError(std::string(who) + ": argument must be finite");
}

// Pair (prev, cur) of a three-term recurrence sharing one log scale.
struct ScaledPair {
  double prev = 0, cur = 1, log_scale = 0;
  void renormalize() {
    const double m = std::max(std::abs(prev), std::abs(cur));
    if (m > kBig) {
      prev /= kBig;
      cur /= kBig;
      log_scale += kLogBig;
    } else if (m < 1.0 / kBig && m > 0) {
      prev *= kBig;
      cur *= kBig;
      log_scale -= kLogBig;
    }
  }
  SignedLogd value(double v, double extra_log) const {
    auto s = SignedLogd::from_value(v);
    return s.is_zero() ? s : SignedLogd::from_log(s.sign(), s.logmag() + log_scale + extra_log);
  }
};

// Number of backward steps for a minimal-solution continued fraction whose
// dominance ratio behaves like exp(-rate * (sqrt(N) - sqrt(top))).
int cf_depth(int top, double rate) {
  const double span = 40.0 / rate + std::sqrt(static_cast<double>(top) + 1.0);
  return top + 16 + static_cast<int>(std::ceil(span * span));
}

// e^{u} (K_1(u) - K_0(u)) for u > 0.
double scaled_bessel_k_difference(double u) {
  if (u < 25.0) return std::exp(u) * (std::cyl_bessel_k(1.0, u) - std::cyl_bessel_k(0.0, u));
  // Hankel expansions of K_1 and K_0 subtracted term by term.
  double a1 = 1.0, a0 = 1.0, sum = 0.0, power = 1.0;
  for (int k = 1; k < 40; ++k) {
    const double odd = 2.0 * k - 1.0;
    a1 *= (4.0 - odd * odd) / (k * 8.0);
    a0 *= (0.0 - odd * odd) / (k * 8.0);
    power /= u;
    const double term = (a1 - a0) * power;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return std::sqrt(kPi / (2.0 * u)) * sum;
}

}  // namespace

ParabolicPoint ParabolicPoint::from_cartesian(double x, double y, double z) {
  // lambda^2 = r + y, mu^2 = r - y with r = sqrt(x^2 + y^2); sign(lambda) = sign(x)
  const double r = std::hypot(x, y);
  double mu2 = r - y, lam2 = r + y;
  // avoid cancellation on the near-axis branch
  if (y > 0 && mu2 < 1e-3 * r) mu2 = x * x / lam2;
  if (y < 0 && lam2 < 1e-3 * r) lam2 = x * x / mu2;
  ParabolicPoint p;
  p.mu = std::sqrt(std::max(mu2, 0.0));
  p.lambda = std::copysign(std::sqrt(std::max(lam2, 0.0)), x);
  if (x == 0.0) p.lambda = std::sqrt(std::max(lam2, 0.0));
  p.z = z;
  return p;
}

ScaledArgument ScaledArgument::make(double raw, double q) {
  if (!(q > 0)) throw DomainError("ScaledArgument: q must be positive");
  return {raw, q, raw * std::sqrt(2.0 * q)};
}

ScaledArgument ScaledArgument::make(double raw, double kz, double kappa) {
  return make(raw, std::hypot(kz, kappa));
}

PcfValue pcf_regular(int n, double x, bool with_derivative) {
  require_order(n, "pcf_regular");
  require_finite(x, "pcf_regular");
  // He_{k+1} = x He_k - k He_{k-1}
  ScaledPair p{0.0, 1.0, 0.0};
  for (int k = 0; k < n; ++k) {
    const double next = x * p.cur - k * p.prev;
    p.prev = p.cur;
    p.cur = next;
    p.renormalize();
  }
  const double gauss = -0.25 * x * x;
  PcfValue out;
  out.value = p.value(p.cur, gauss);
  if (with_derivative) out.derivative = p.value(n * p.prev - 0.5 * x * p.cur, gauss);
  return out;
}

std::vector<SignedLogd> regular_sequence(int n_max, double x) {
  require_order(n_max, "regular_sequence");
  require_finite(x, "regular_sequence");
  std::vector<SignedLogd> out(n_max + 1);
  ScaledPair p{0.0, 1.0, 0.0};
  for (int k = 0; k <= n_max; ++k) {
    out[k] = p.value(p.cur, -0.25 * x * x);
    const double next = x * p.cur - k * p.prev;
    p.prev = p.cur;
    p.cur = next;
    p.renormalize();
  }
  return out;
}

void regular_imag_sequence(int n_max, double x, std::vector<SignedLogd>& value,
                           std::vector<SignedLogd>& derivative) {
  require_order(n_max, "regular_imag_sequence");
  require_finite(x, "regular_imag_sequence");
  if (x < 0) throw DomainError("regular_imag_sequence: argument must be >= 0");
  value.assign(n_max + 1, SignedLogd());
  derivative.assign(n_max + 1, SignedLogd());
  // E_{k+1} = x E_k + k E_{k-1}, all terms non-negative; i^k D_k(ix) = (-1)^k e^{x^2/4} E_k
  const double gauss = 0.25 * x * x;
  ScaledPair p{0.0, 1.0, 0.0};
  for (int k = 0; k <= n_max; ++k) {
    const int sgn = (k % 2 == 0) ? 1 : -1;
    value[k] = p.value(sgn * p.cur, gauss);
    derivative[k] = p.value(sgn * (0.5 * x * p.cur + k * p.prev), gauss);
    const double next = x * p.cur + k * p.prev;
    p.prev = p.cur;
    p.cur = next;
    p.renormalize();
  }
}

std::vector<SignedLogd> regular_imag_sequence(int n_max, double x) {
  std::vector<SignedLogd> v, d;
  regular_imag_sequence(n_max, x, v, d);
  return v;
}

PcfValue pcf_regular_imag(int n, double x, bool with_derivative) {
  require_order(n, "pcf_regular_imag");
  std::vector<SignedLogd> v, d;
  regular_imag_sequence(n, x, v, d);
  PcfValue out{v[n], SignedLogd()};
  if (with_derivative) out.derivative = d[n];
  return out;
}

std::vector<SignedLogd> outgoing_sequence(int n_max, double x) {
  require_order(n_max, "outgoing_sequence");
  require_finite(x, "outgoing_sequence");
  if (x < 0) throw DomainError("outgoing_sequence: outgoing solutions need x >= 0");
  std::vector<SignedLogd> y(n_max + 1);
  // y_k = D_{-k-1}(x):  y_{k-1} - x y_k - (k+1) y_{k+1} = 0, minimal as k -> inf.
  // Forward recurrence amplifies relative error by ~exp(2 x sqrt(2k)).
  if (2.0 * x * std::sqrt(2.0 * (n_max + 1)) <= 7.0) {
    const double g = 0.25 * x * x;
    ScaledPair p{1.0, std::exp(2.0 * g) * std::sqrt(kPi / 2.0) * std::erfc(x / std::numbers::sqrt2), 0.0};
    // prev = e^{g} y_{-1}, cur = e^{g} y_0
    for (int k = 0; k <= n_max; ++k) {
      y[k] = p.value(p.cur, -g);
      const double next = (p.prev - x * p.cur) / (k + 1);
      p.prev = p.cur;
      p.cur = next;
      p.renormalize();
    }
    return y;
  }
  // Backward continued fraction for r_k = y_k / y_{k-1} = 1 / (x + (k+1) r_{k+1}).
  std::vector<double> ratio(n_max + 1);
  auto run = [&](int depth) {
    double r = 0.0;
    for (int k = depth; k >= 0; --k) {
      r = 1.0 / (x + (k + 1) * r);
      if (k <= n_max) ratio[k] = r;
    }
  };
  int depth = cf_depth(n_max, 2.0 * std::numbers::sqrt2 * x);
  run(depth);
  double top = ratio[n_max];
  for (int attempt = 0; attempt < 8; ++attempt) {
    depth *= 2;
    run(depth);
    const bool ok = std::abs(ratio[n_max] - top) <= 1e-15 * std::abs(top);
    top = ratio[n_max];
    if (ok) break;
  }
  double logy = -0.25 * x * x;  // y_{-1} = D_0(x)
  for (int k = 0; k <= n_max; ++k) {
    logy += std::log(ratio[k]);
    y[k] = SignedLogd::from_log(1, logy);
  }
  return y;
}

PcfValue pcf_outgoing(int n, double x, bool with_derivative) {
  require_order(n, "pcf_outgoing");
  const auto y = outgoing_sequence(n + (with_derivative ? 1 : 0), x);
  PcfValue out{y[n], SignedLogd()};
  if (with_derivative) {
    // D_nu' = -(x/2) D_nu + nu D_{nu-1}, nu = -n-1: both terms negative
    out.derivative = -(y[n] * (0.5 * x) + y[n + 1] * double(n + 1));
  }
  return out;
}

std::vector<SignedLogd> bateman_k_odd_sequence(int m_max, double u) {
  if (m_max < 0) throw DomainError("bateman_k_odd_sequence: m_max must be >= 0");
  if (!(u > 0) || !std::isfinite(u)) throw DomainError("bateman_k: argument must be positive");
  std::vector<SignedLogd> k(m_max + 1);
  // k_{-1}(u) = (2u/pi) (K_1(u) - K_0(u))
  const double log_k0 = std::log(2.0 * u / kPi) - u + std::log(scaled_bessel_k_difference(u));
  k[0] = SignedLogd::from_log(1, log_k0);
  if (m_max == 0) return k;
  // c_m = k_{-2m-1}(u):  (1/2 - m) c_{m-1} - (2m + 1 + 2u) c_m - (m + 3/2) c_{m+1} = 0
  // c_m is minimal; forward recurrence loses ~exp(4 sqrt(2 u m)).
  if (4.0 * std::sqrt(2.0 * u * m_max) <= 7.0) {
    const double k0 = std::cyl_bessel_k(0.0, u), k1 = std::cyl_bessel_k(1.0, u);
    // k_{-3}(u) = -(1/2pi) [ (4/3) u K_1 - 4 u K_0 + (16/3) u^2 (K_1 - K_0) ]
    const double c1 = -(4.0 / 3.0 * u * k1 - 4.0 * u * k0 + 16.0 / 3.0 * u * u * (k1 - k0)) / (2.0 * kPi);
    const double c0 = std::exp(log_k0);
    ScaledPair p{c0, c1, 0.0};
    k[1] = p.value(p.cur, 0.0);
    for (int m = 1; m < m_max; ++m) {
      const double next = ((0.5 - m) * p.prev - (2.0 * m + 1.0 + 2.0 * u) * p.cur) / (m + 1.5);
      p.prev = p.cur;
      p.cur = next;
      p.renormalize();
      k[m + 1] = p.value(p.cur, 0.0);
    }
    return k;
  }
  // r_m = c_m / c_{m-1} = (1/2 - m) / ((2m + 1 + 2u) + (m + 3/2) r_{m+1})
  std::vector<double> ratio(m_max + 1);
  auto run = [&](int depth) {
    double r = 0.0;
    for (int m = depth; m >= 1; --m) {
      r = (0.5 - m) / ((2.0 * m + 1.0 + 2.0 * u) + (m + 1.5) * r);
      if (m <= m_max) ratio[m] = r;
    }
  };
  int depth = cf_depth(m_max, 4.0 * std::sqrt(2.0 * u));
  run(depth);
  double top = ratio[m_max];
  for (int attempt = 0; attempt < 8; ++attempt) {
    depth *= 2;
    run(depth);
    const bool ok = std::abs(ratio[m_max] - top) <= 1e-15 * std::abs(top);
    top = ratio[m_max];
    if (ok) break;
  }
  for (int m = 1; m <= m_max; ++m) k[m] = k[m - 1] * SignedLogd::from_value(ratio[m]);
  return k;
}

SignedLogd bateman_k_log(int ell, double u) {
  if (ell >= 0) throw UnsupportedOrderError("bateman_k: only negative orders are supported");
  if (!(u > 0) || !std::isfinite(u)) throw DomainError("bateman_k: argument must be positive");
  if ((-ell) % 2 == 0) return SignedLogd();
  const int m = (-ell - 1) / 2;
  return bateman_k_odd_sequence(m, u)[m];
}

double bateman_k(int ell, double u) { return bateman_k_log(ell, u).value(); }

SignedLogd confluent_u_half(int m, double z) {
  require_order(m, "confluent_u_half");
  if (!(z > 0)) throw DomainError("confluent_u_half: argument must be positive");
  // U(m+1/2, 0, z) = e^{z/2} Gamma(1/2 - m) k_{-2m-1}(z/2),  Gamma(1/2 - m) = (-1)^m pi / Gamma(m + 1/2)
  const auto k = bateman_k_odd_sequence(m, 0.5 * z)[m];
  const double log_gamma = std::log(kPi) - std::lgamma(m + 0.5);
  const int sgn = (m % 2 == 0) ? 1 : -1;
  return k * SignedLogd::from_log(sgn, log_gamma + 0.5 * z);
}

}  // namespace casimir::specfun
