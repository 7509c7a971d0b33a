#pragma once

// Casimir energy per unit length from the log-determinant formula
//
//   E / (hbar c L) = int_0^inf q dq / (4 pi) log det(1 - N(q))
//
// together with nu_max extrapolation, the tilted knife edge c(theta) and the
// Matsubara sum at finite temperature.  Internal units hbar = c = 1.

#include <utility>
#include <vector>

#include "casimir/roundtrip.hpp"

namespace casimir::energy {

enum class Mapping { ExpMap, LinearPanels };

const char* to_string(Mapping m);
Mapping mapping_from_string(const std::string& name);

/// Spectral quadrature.  Wavenumbers are in units of 1/H.  The exp map
/// places q = (0.3/H) e^s with Gauss-Legendre panels in s; linear panels
/// cover [qmin, qmax] directly.
struct QuadratureSpec {
  int node_count = 60;
  double qmin_scaled = 1.8e-6;  ///< 0.3 e^{-12}
  double qmax_scaled = 27.0;    ///< 0.3 e^{4.5}
  Mapping mapping = Mapping::ExpMap;
  double tolerance = 1e-6;
  int panel_order = 20;
};

/// Nodes and weights for int_qmin^qmax g(q) dq with q in units of 1/H.
struct SpectralRule {
  std::vector<double> q;
  std::vector<double> w;
};
SpectralRule spectral_rule(const QuadratureSpec& spec);
/// Same mapping with half the nodes per panel; used for the error estimate.
SpectralRule spectral_rule_half(const QuadratureSpec& spec);

struct EnergyResult {
  double value = 0;                          ///< at the largest nu_max
  std::vector<std::pair<int, double>> series;  ///< (nu_max, value)
  double extrapolated = 0;
  double trunc_error = 0;
  double quad_error = 0;
  Channel channel = Channel::Full;
};

/// The nu_max levels a run evaluates: nu/8, nu/4, nu/2, nu (deduplicated).
std::vector<int> series_levels(int nu_max);

/// Energy per unit length in units hbar c / length^2.
EnergyResult energy_per_length(const Geometry& geom, const QuadratureSpec& spec, int nu_max,
                               Channel channel = Channel::Full);

struct ChannelEnergies {
  EnergyResult full, dirichlet, neumann;
};

/// All three channels from one set of kernels.
ChannelEnergies energy_all_channels(const Geometry& geom, const QuadratureSpec& spec, int nu_max);

/// log det(1 - N(q)) per scalar channel and nu level; exposed for sweeps.
struct LogDetSample {
  double q = 0;
  std::vector<double> dirichlet;  ///< one entry per series level
  std::vector<double> neumann;
};
LogDetSample logdet_sample(const Geometry& geom, double q, const std::vector<int>& levels, Channel channel);

struct Extrapolation {
  double limit = 0;
  double error = 0;
  const char* model = "none";  ///< "geometric", "algebraic" or "none"
};

/// Fits v = v_inf + A exp(-a n) and v = v_inf + B n^{-p} through the last
/// three points, keeps the model that better predicts the earlier points and
/// reports the spread between the two limits as the error.  Needs >= 4
/// points with increasing nu_max.  Throws FitRejectedError when the tail
/// is not monotone.
Extrapolation extrapolate_numax(const std::vector<std::pair<int, double>>& series);

/// c(theta) = cos(theta) C(theta), with E/(hbar c L) = -C(theta)/H^2 for the knife edge.
struct CTheta {
  double theta = 0;
  double value = 0;        ///< extrapolated in nu_max
  double error = 0;        ///< truncation + quadrature
  double raw = 0;          ///< at the largest nu_max
  int nu_max = 0;          ///< after the near-parallel floor
  bool near_endpoint_warning = false;
  double dirichlet = 0;
  double neumann = 0;
  double dirichlet_error = 0;
  double neumann_error = 0;
};

constexpr int kNearParallelFloor = 200;
constexpr double kNearParallelAngle = 80.0 * 3.14159265358979323846 / 180.0;
constexpr double kWarningAngle = 85.0 * 3.14159265358979323846 / 180.0;

/// theta = +-pi/2 returns the parallel-plate value pi^2/1440 (split evenly
/// between the channels).
CTheta c_theta(double theta, int nu_max, const QuadratureSpec& spec);

/// E/L at temperature T (units of hbar c/H), Matsubara sum with the n = 0
/// term at half weight.
EnergyResult thermal_energy(const Geometry& geom, double t_scaled, int nu_max, const QuadratureSpec& spec,
                            Channel channel = Channel::Full);

/// Classical limit of the knife edge, E/L = -T C/H: the n = 0 Matsubara term.
/// value/extrapolated hold -C.
EnergyResult classical_limit(int nu_max, const QuadratureSpec& spec, Channel channel = Channel::Full);

/// C_{T=inf} (positive), extrapolated in nu_max.
double classical_coefficient(int nu_max, const QuadratureSpec& spec, Channel channel = Channel::Full);

}  // namespace casimir::energy
