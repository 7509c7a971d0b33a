#pragma once

// Scattering amplitudes of the perfectly conducting plane and parabolic
// cylinder for the two scalar channels of the electromagnetic field.

#include <vector>

#include "casimir/signed_log.hpp"

namespace casimir {

enum class BoundaryMode { Dirichlet, Neumann };

const char* to_string(BoundaryMode mode);

/// Parabolic cylinder of tip radius R above a plane: tip-plane separation H,
/// tilt theta.  The focus sits at d = H + R/2 from the plane and the surface
/// is mu = sqrt(R).  R = 0 is the knife edge (semi-infinite plate).
struct Geometry {
  double radius = 0;
  double separation = 1;
  double theta = 0;

  double focus_distance() const { return separation + 0.5 * radius; }
  double mu0() const;
  bool knife_edge() const { return radius == 0.0; }

  /// Validating constructor; throws DomainError.
  static Geometry make(double radius, double separation, double theta = 0.0);
};

namespace scattering {

/// Perfect mirror: +1 (Neumann), -1 (Dirichlet), independent of k_x.
double plane_amplitude(BoundaryMode mode);

/// Amplitude F_n of the parabolic cylinder at mu0_scaled = sqrt(R) sqrt(2q).
SignedLogd parabolic_amplitude(int n, BoundaryMode mode, double mu0_scaled);

/// F_n for n = 0..n_max.
std::vector<SignedLogd> parabolic_amplitudes(int n_max, BoundaryMode mode, double mu0_scaled);

/// F_n / n! for n = 0..n_max; the combination that enters the round-trip kernel.
std::vector<SignedLogd> reduced_amplitudes(int n_max, BoundaryMode mode, double mu0_scaled);

/// Channel carried by partial wave n at R = 0: even -> Dirichlet, odd -> Neumann.
BoundaryMode knife_edge_mode(int n);

/// True when partial wave n has a non-vanishing amplitude at R = 0 in `mode`.
bool active_at_knife_edge(int n, BoundaryMode mode);

/// -n! sqrt(2/pi)
SignedLogd knife_edge_amplitude(int n);

}  // namespace scattering
}  // namespace casimir
