#include "casimir/approx.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"

namespace casimir::approx {

namespace {
constexpr double kPi = std::numbers::pi;

void require_positive(double v, const char* what) {
  if (!(v > 0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive");
}
}  // namespace

PfaEnergy pfa_energy(double separation, double radius) {
  require_positive(separation, "separation");
  if (!(radius >= 0) || !std::isfinite(radius)) throw DomainError("radius must be >= 0");
  if (radius == 0) return {0.0, true};
  const double c = std::pow(kPi, 3) / (960 * std::numbers::sqrt2);
  return {-c * std::sqrt(radius / std::pow(separation, 5)), false};
}

EdgePfa edge_pfa_disk(double separation, double disk_radius, double c_perp) {
  require_positive(separation, "separation");
  require_positive(disk_radius, "disk radius");
  const double h = separation, r = disk_radius;
  EdgePfa out;
  out.asymptote = -c_perp * kPi * std::sqrt(r / (2 * h * h * h));
  // x = r sin(phi); the gap is H + 2 r sin^2(phi/2), the integrand is even
  auto f = [&](double phi) {
    const double s = std::sin(0.5 * phi);
    const double gap = h + 2 * r * s * s;
    return 2 * r * std::cos(phi) / (gap * gap);
  };
  // the peak has width ~ sqrt(H/r); split there so the adaptive rule sees it
  const double knee = std::min(kPi / 2, 8 * std::sqrt(h / r));
  const double scale = std::abs(kPi * std::sqrt(r / (2 * h * h * h)));
  double total = quad::integrate_adaptive(f, 0.0, knee, 1e-13 * scale).value;
  if (knee < kPi / 2) total += quad::integrate_adaptive(f, knee, kPi / 2, 1e-13 * scale).value;
  out.exact_integral = -c_perp * total;
  return out;
}

double parallel_plates(double separation) {
  require_positive(separation, "separation");
  return -kPi * kPi / (720 * std::pow(separation, 3));
}

EdgeFit edge_coefficient_fit(const std::vector<EdgeSample>& samples, double theta_min, double theta_max) {
  std::vector<EdgeSample> in;
  for (const auto& s : samples)
    if (s.theta >= theta_min - 1e-12 && s.theta <= theta_max + 1e-12) in.push_back(s);
  if (in.size() < 4) throw DomainError("edge fit: need at least 4 samples in the window");

  const int m = static_cast<int>(in.size());
  Eigen::MatrixXd a(m, 2);
  Eigen::VectorXd b(m), w(m);
  for (int i = 0; i < m; ++i) {
    w[i] = in[i].error > 0 ? 1.0 / in[i].error : 1.0;
    a(i, 0) = w[i];
    a(i, 1) = w[i] * (in[i].theta - kPi / 2);
    b[i] = w[i] * in[i].value;
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  const Eigen::Vector2d x = qr.solve(b);

  EdgeFit fit;
  fit.c_parallel_half = x[0];
  fit.c_edge = x[1];
  fit.theta_min = theta_min;
  fit.theta_max = theta_max;
  fit.samples = m;
  double chi2 = 0;
  for (int i = 0; i < m; ++i) {
    const double model = x[0] + x[1] * (in[i].theta - kPi / 2);
    fit.residual = std::max(fit.residual, std::abs(in[i].value - model));
    chi2 += std::pow(w[i] * (in[i].value - model), 2);
  }
  // parameter covariance from the normal equations, scaled by the reduced chi^2
  const Eigen::Matrix2d cov = (a.transpose() * a).inverse() * (m > 2 ? chi2 / (m - 2) : 1.0);
  fit.intercept_error = std::sqrt(std::max(0.0, cov(0, 0)));
  fit.slope_error = std::sqrt(std::max(0.0, cov(1, 1)));
  return fit;
}

WindowSensitivity window_sensitivity(const std::vector<EdgeSample>& samples,
                                     const std::vector<std::pair<double, double>>& windows) {
  WindowSensitivity out;
  for (const auto& [lo, hi] : windows) {
    try {
      out.fits.push_back(edge_coefficient_fit(samples, lo, hi));
    } catch (const DomainError&) {
    }
  }
  if (out.fits.empty()) return out;
  auto [smin, smax] = std::minmax_element(out.fits.begin(), out.fits.end(),
                                          [](const EdgeFit& a, const EdgeFit& b) { return a.c_edge < b.c_edge; });
  out.slope_spread = smax->c_edge - smin->c_edge;
  auto [imin, imax] = std::minmax_element(
      out.fits.begin(), out.fits.end(),
      [](const EdgeFit& a, const EdgeFit& b) { return a.c_parallel_half < b.c_parallel_half; });
  out.intercept_spread = imax->c_parallel_half - imin->c_parallel_half;
  return out;
}

}  // namespace casimir::approx
