#pragma once

// Parabolic cylinder functions of integer order and the Bateman k-function.
//
// Everything is returned as SignedLog so that orders up to a few hundred and
// scaled arguments up to ~100 never overflow.  All functions are pure.

#include <vector>

#include "casimir/signed_log.hpp"

namespace casimir::specfun {

/// Point in parabolic cylinder coordinates: x = mu*lambda, y = (lambda^2 - mu^2)/2.
struct ParabolicPoint {
  double lambda = 0;
  double mu = 0;
  double z = 0;

  double x() const { return mu * lambda; }
  double y() const { return 0.5 * (lambda * lambda - mu * mu); }

  /// Inverse map with mu >= 0.
  static ParabolicPoint from_cartesian(double x, double y, double z);
};

/// Parabolic coordinate rescaled by sqrt(2 q), the argument of D_nu.
struct ScaledArgument {
  double raw = 0;
  double q = 0;
  double scaled = 0;

  static ScaledArgument make(double raw, double q);
  /// q = sqrt(kz^2 + kappa^2)
  static ScaledArgument make(double raw, double kz, double kappa);
};

struct PcfValue {
  SignedLogd value;
  SignedLogd derivative;  ///< zero unless requested
};

/// D_n(x), n >= 0, through the Hermite closed form.
PcfValue pcf_regular(int n, double x, bool with_derivative = false);

/// D_n(x) for n = 0..n_max.
std::vector<SignedLogd> regular_sequence(int n_max, double x);

/// i^n D_n(ix) and i^(n+1) D_n'(ix) for x >= 0; both real.
PcfValue pcf_regular_imag(int n, double x, bool with_derivative = false);

/// D_{-n-1}(x) and its derivative for x >= 0.
PcfValue pcf_outgoing(int n, double x, bool with_derivative = false);

/// i^n D_n(ix) for n = 0..n_max.
std::vector<SignedLogd> regular_imag_sequence(int n_max, double x);

/// Both i^n D_n(ix) and i^(n+1) D_n'(ix) for n = 0..n_max.
void regular_imag_sequence(int n_max, double x, std::vector<SignedLogd>& value,
                           std::vector<SignedLogd>& derivative);

/// D_{-n-1}(x) for n = 0..n_max, x >= 0.
std::vector<SignedLogd> outgoing_sequence(int n_max, double x);

/// Bateman function k_ell(u) for negative integer ell and u > 0.
/// Exactly zero for even ell.
double bateman_k(int ell, double u);
SignedLogd bateman_k_log(int ell, double u);

/// k_{-2m-1}(u) for m = 0..m_max.
std::vector<SignedLogd> bateman_k_odd_sequence(int m_max, double u);

/// Tricomi U(m + 1/2, 0, z) for m >= 0, z > 0.
SignedLogd confluent_u_half(int m, double z);

}  // namespace casimir::specfun
