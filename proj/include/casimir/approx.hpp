#pragma once

// Proximity-force baselines and the near-parallel edge fit.

#include <vector>

namespace casimir::approx {

struct PfaEnergy {
  double value = 0;         ///< E / (hbar c L)
  bool degenerate = false;  ///< R = 0: the proximity force sum vanishes
};

/// -pi^3 / (960 sqrt 2) sqrt(R / H^5) per unit length.
PfaEnergy pfa_energy(double separation, double radius);

/// Edge PFA for a thin disk of radius r: the knife-edge energy per length,
/// -c_perp / h^2, integrated along the rim over the local gap
/// h(x) = H + r - sqrt(r^2 - x^2).
struct EdgePfa {
  double exact_integral = 0;
  double asymptote = 0;  ///< -c_perp pi sqrt(r / (2 H^3)), the H << r limit
};

EdgePfa edge_pfa_disk(double separation, double disk_radius, double c_perp);

/// Parallel plates, energy per unit area: -pi^2 / (720 H^3).
double parallel_plates(double separation);

struct EdgeSample {
  double theta = 0;
  double value = 0;
  double error = 0;  ///< one sigma; zero means unit weight
};

/// c(theta) ~ intercept + slope (theta - pi/2) fitted near the parallel limit.
struct EdgeFit {
  double c_parallel_half = 0;  ///< intercept
  double c_edge = 0;           ///< slope
  double theta_min = 0;
  double theta_max = 0;
  double residual = 0;         ///< max |data - fit| over the window
  double slope_error = 0;
  double intercept_error = 0;
  int samples = 0;
};

constexpr double kDefaultWindowMin = 80.0 * 3.14159265358979323846 / 180.0;
constexpr double kDefaultWindowMax = 87.0 * 3.14159265358979323846 / 180.0;

/// Weighted least squares over the samples with theta in [theta_min, theta_max].
/// Needs at least 4 samples in the window.
EdgeFit edge_coefficient_fit(const std::vector<EdgeSample>& samples, double theta_min = kDefaultWindowMin,
                             double theta_max = kDefaultWindowMax);

struct WindowSensitivity {
  std::vector<EdgeFit> fits;
  double slope_spread = 0;      ///< max - min slope over the windows
  double intercept_spread = 0;
};

/// Refits over each window [lo, hi]; windows with fewer than 4 samples are skipped.
WindowSensitivity window_sensitivity(const std::vector<EdgeSample>& samples,
                                     const std::vector<std::pair<double, double>>& windows);

}  // namespace casimir::approx
