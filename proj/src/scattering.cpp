#include "casimir/scattering.hpp"

#include <cmath>
#include <numbers>

#include "casimir/errors.hpp"
#include "casimir/specfun.hpp"

namespace casimir {

const char* to_string(BoundaryMode mode) { return mode == BoundaryMode::Dirichlet ? "dirichlet" : "neumann"; }

double Geometry::mu0() const { return std::sqrt(radius); }

Geometry Geometry::make(double radius, double separation, double theta) {
  if (!(radius >= 0) || !std::isfinite(radius)) throw DomainError("geometry: radius must be >= 0");
  if (!(separation > 0) || !std::isfinite(separation)) throw DomainError("geometry: separation must be > 0");
  if (!(std::abs(theta) < std::numbers::pi / 2)) throw DomainError("geometry: |theta| must be < pi/2");
  return {radius, separation, theta};
}

namespace scattering {

namespace {
const double kLogSqrt2OverPi = 0.5 * std::log(2.0 / std::numbers::pi);
}

double plane_amplitude(BoundaryMode mode) { return mode == BoundaryMode::Neumann ? 1.0 : -1.0; }

BoundaryMode knife_edge_mode(int n) { return n % 2 == 0 ? BoundaryMode::Dirichlet : BoundaryMode::Neumann; }

bool active_at_knife_edge(int n, BoundaryMode mode) { return knife_edge_mode(n) == mode; }

SignedLogd knife_edge_amplitude(int n) { return SignedLogd::from_log(-1, log_factorial(n) + kLogSqrt2OverPi); }

std::vector<SignedLogd> parabolic_amplitudes(int n_max, BoundaryMode mode, double mu0_scaled) {
  if (n_max < 0) throw DomainError("parabolic_amplitudes: n_max must be >= 0");
  if (!(mu0_scaled >= 0)) throw DomainError("parabolic_amplitudes: mu0_scaled must be >= 0");
  std::vector<SignedLogd> f(n_max + 1);
  if (mu0_scaled == 0.0) {
    for (int n = 0; n <= n_max; ++n)
      f[n] = active_at_knife_edge(n, mode) ? knife_edge_amplitude(n) : SignedLogd();
    return f;
  }
  std::vector<SignedLogd> reg, reg_d;
  specfun::regular_imag_sequence(n_max, mu0_scaled, reg, reg_d);
  const auto out = specfun::outgoing_sequence(n_max + 1, mu0_scaled);
  for (int n = 0; n <= n_max; ++n) {
    if (mode == BoundaryMode::Dirichlet) {
      // -i^n D_n(i mu) / D_{-n-1}(mu)
      f[n] = -(reg[n] / out[n]);
    } else {
      // -i^{n+1} D_n'(i mu) / D_{-n-1}'(mu)
      const SignedLogd out_d = -(out[n] * (0.5 * mu0_scaled) + out[n + 1] * double(n + 1));
      if (out_d.is_zero()) throw SingularDenominatorError("Neumann amplitude: D_{-n-1}' vanished");
      f[n] = -(reg_d[n] / out_d);
    }
  }
  return f;
}

SignedLogd parabolic_amplitude(int n, BoundaryMode mode, double mu0_scaled) {
  if (n < 0) throw DomainError("parabolic_amplitude: order must be >= 0");
  return parabolic_amplitudes(n, mode, mu0_scaled)[n];
}

std::vector<SignedLogd> reduced_amplitudes(int n_max, BoundaryMode mode, double mu0_scaled) {
  auto f = parabolic_amplitudes(n_max, mode, mu0_scaled);
  for (int n = 0; n <= n_max; ++n) f[n] /= SignedLogd::from_log(1, log_factorial(n));
  return f;
}

}  // namespace scattering
}  // namespace casimir
