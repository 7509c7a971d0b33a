#pragma once

// Plane <-> parabolic-cylinder translation integrals.
//
// The round-trip kernel needs, for every pair of partial waves (n, n2), the
// k_x integral of two translation factors and the plane reflection:
//
//   J_{n n2}(q, d, theta) = int dk_x (i/k_y) tan^n((phi+theta)/2) tan^{n2}((phi-theta)/2)
//                           / [cos((phi+theta)/2) cos((phi-theta)/2)] e^{2 i k_y d}
//
// with k_y = i sqrt(q^2 + k_x^2) and tan(phi) = k_x/k_y.  After k_x = q sinh(u)
// the exponential becomes the real damping e^{-2qd cosh u}, tan(phi/2) =
// -i tanh(u/2), and the integrand is a smooth function of u.  The translation
// matrix normalization 1/(2 sqrt(2 pi) sqrt(n! n2!)) is applied by the caller.

#include <Eigen/Core>

#include <complex>

#include "casimir/signed_log.hpp"
#include "casimir/specfun.hpp"

namespace casimir::translation {

/// Euclidean wave vector (kappa, k_z) with transverse k_x.
struct SpectralPoint {
  double kappa = 0;
  double kz = 0;
  double kx = 0;

  double q() const;
  /// |k_y| = sqrt(q^2 + k_x^2)
  double decay() const;
  /// tan(phi/2) = -i tanh(u/2) for k_x = q sinh(u).
  std::complex<double> tan_half_angle() const;

  static SpectralPoint from_rapidity(double kappa, double kz, double u);
};

/// J_{n n2} at theta = 0: 2 pi k_{-n-n2-1}(2 q d), exactly zero for odd n + n2.
SignedLogd theta0_element(int n, int n2, double q, double d);

/// J at theta = 0 for all n + n2 = 2m, m = 0..m_max: entry m is 2 pi k_{-2m-1}(2qd).
std::vector<SignedLogd> theta0_series(int m_max, double q, double d);

/// Quadrature estimate of one J element.  J = scaled * exp(log_scale).
struct ElementEstimate {
  double scaled = 0;
  double log_scale = 0;
  double abs_error = 0;       ///< on `scaled`
  double imag_residual = 0;   ///< |Im| of the integral on the same scale
  double peak = 0;            ///< largest |integrand| on the same scale
  double value() const;
};

/// J_{n n2}(q, d, theta) by adaptive quadrature over u in (-U, U).
/// Throws AccuracyError when the error estimate exceeds tol * peak.
ElementEstimate tilted_element(int n, int n2, double q, double d, double theta, double tol = 1e-10);

/// All J_{n n2}, 0 <= n, n2 <= nu_max, on a shared composite rule.
struct TranslationBlock {
  Eigen::MatrixXd scaled;   ///< J = scaled * exp(log_scale)
  double log_scale = 0;
  double error = 0;         ///< probe-based quadrature error, relative to max |scaled|
};

struct BlockOptions {
  double tolerance = 1e-10;
  int panel_order = 32;
  double panel_width = 0.25;
};

TranslationBlock tilted_block(int nu_max, double q, double d, double theta, const BlockOptions& opts = {});

/// log of the translation-matrix normalization 1/(2 sqrt(2 pi) sqrt(n! n2!)).
double log_normalization(int n, int n2);

namespace testing {

/// Free scalar Green's function e^{-kappa r} / (4 pi r).
double green_free(const specfun::ParabolicPoint& r1, const specfun::ParabolicPoint& r2, double kappa);

/// Parabolic partial-wave expansion of the free Green's function truncated at
/// nu_max, with the k_z integral done numerically.  Validation oracle for the
/// regular/outgoing wave machinery.
double green_parabolic(const specfun::ParabolicPoint& r1, const specfun::ParabolicPoint& r2, double kappa,
                       int nu_max);

/// Same expansion at fixed q = sqrt(kz^2 + kappa^2) (the 2D kernel K_0(q rho)/(2 pi)).
double green_parabolic_2d(const specfun::ParabolicPoint& r1, const specfun::ParabolicPoint& r2, double q,
                          int nu_max);

/// Partial sum of the regular-wave expansion of the evanescent plane wave
/// exp(i q sinh(u) x - q cosh(u) y), |tan(phi/2)| = tanh(|u|/2) < 1.
std::complex<double> plane_wave_partial_sum(const specfun::ParabolicPoint& r, double q, double u, int nu_max);

std::complex<double> plane_wave(const specfun::ParabolicPoint& r, double q, double u);

}  // namespace testing

}  // namespace casimir::translation
