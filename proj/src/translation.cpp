#include "casimir/translation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"

namespace casimir::translation {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// -log of the integrand floor relative to its value at u = 0
constexpr double kFloor = 41.5;

void require_positive(double v, const char* what) {
  if (!(v > 0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive and finite");
}

void require_tilt(double theta) {
  if (!(std::abs(theta) < kPi / 2)) throw DomainError("tilt must satisfy |theta| < pi/2");
}

// cosh(u) - 1 without cancellation
double cosh_m1(double u) {
  const double s = std::sinh(0.5 * u);
  return 2.0 * s * s;
}

// Upper rapidity beyond which the damping has fallen below the floor.
double rapidity_cutoff(double x) { return std::min(std::acosh(1.0 + kFloor / x), 60.0); }

// tan((phi + theta)/2) at k_x = q sinh u
cplx tilted_tangent(double u, double tau) {
  const double t = std::tanh(0.5 * u);
  return cplx(tau, -t) / cplx(1.0, t * tau);
}

// Damping and measure, scaled by e^{x}: 2 e^{-x (cosh u - 1)} / (cosh u + cos theta)
double measure(double u, double x, double cos_theta) {
  return 2.0 * std::exp(-x * cosh_m1(u)) / (std::cosh(u) + cos_theta);
}

cplx integer_power(cplx a, int n) {
  if (n == 0) return 1.0;
  return std::polar(std::pow(std::abs(a), n), n * std::arg(a));
}

// Panels of the given width and order up to u = 8, then unit panels with
// max(16, order/2) nodes.
quad::Rule<double> block_rule(double upper, double width, int order) {
  const double fine_end = std::min(upper, 8.0);
  const int fine_panels = std::max(1, static_cast<int>(std::ceil(fine_end / width)));
  auto fine = quad::composite(quad::uniform_breaks(0.0, fine_end, fine_panels), order);
  if (upper <= fine_end) return fine;
  const int coarse_panels = static_cast<int>(std::ceil(upper - fine_end));
  auto coarse = quad::composite(quad::uniform_breaks(fine_end, upper, coarse_panels), std::max(16, order / 2));
  quad::Rule<double> r;
  r.nodes.resize(fine.nodes.size() + coarse.nodes.size());
  r.weights.resize(r.nodes.size());
  r.nodes << fine.nodes, coarse.nodes;
  r.weights << fine.weights, coarse.weights;
  return r;
}

// Rows are nodes, columns are powers 0..nu_max of the tilted tangent, each
// row carrying the square root of the quadrature weight times the measure.
void power_table(const quad::Rule<double>& rule, int nu_max, double x, double theta, Eigen::MatrixXd& re,
                 Eigen::MatrixXd& im) {
  const double tau = std::tan(0.5 * theta);
  const double ct = std::cos(theta);
  const int m = static_cast<int>(rule.nodes.size());
  re.resize(m, nu_max + 1);
  im.resize(m, nu_max + 1);
  for (int i = 0; i < m; ++i) {
    const double u = rule.nodes[i];
    const cplx a = tilted_tangent(u, tau);
    cplx p = std::sqrt(rule.weights[i] * measure(u, x, ct));
    for (int k = 0; k <= nu_max; ++k) {
      re(i, k) = p.real();
      im(i, k) = p.imag();
      p *= a;
    }
  }
}

// 2 Re(P^T conj P) with the (-1)^{n2} from tan((phi - theta)/2) = -conj(A)
Eigen::MatrixXd assemble(const Eigen::MatrixXd& re, const Eigen::MatrixXd& im) {
  Eigen::MatrixXd s(re.cols(), re.cols());
  s.noalias() = re.transpose() * re;
  s.noalias() += im.transpose() * im;
  s *= 2.0;
  for (int j = 1; j < s.cols(); j += 2) s.col(j) *= -1.0;
  return s;
}

// A few rows and the diagonal of assemble(), cheap enough for a refined rule.
struct Probe {
  std::vector<int> rows;
  Eigen::MatrixXd row_values;
  Eigen::VectorXd diagonal;
};

Probe probe(const Eigen::MatrixXd& re, const Eigen::MatrixXd& im, const std::vector<int>& rows) {
  Probe p;
  p.rows = rows;
  const int n = static_cast<int>(re.cols());
  p.row_values.resize(rows.size(), n);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    p.row_values.row(r) = 2.0 * (re.col(rows[r]).transpose() * re + im.col(rows[r]).transpose() * im);
  }
  p.diagonal = 2.0 * (re.array().square() + im.array().square()).colwise().sum().transpose();
  for (int j = 1; j < n; j += 2) {
    p.row_values.col(j) *= -1.0;
    p.diagonal[j] *= -1.0;
  }
  return p;
}

double probe_difference(const Eigen::MatrixXd& s, const Probe& p) {
  double diff = (s.diagonal() - p.diagonal).cwiseAbs().maxCoeff();
  for (std::size_t r = 0; r < p.rows.size(); ++r) {
    diff = std::max(diff, (s.row(p.rows[r]) - p.row_values.row(r)).cwiseAbs().maxCoeff());
  }
  return diff;
}

}  // namespace

double SpectralPoint::q() const { return std::hypot(kappa, kz); }

double SpectralPoint::decay() const { return std::hypot(q(), kx); }

std::complex<double> SpectralPoint::tan_half_angle() const {
  const double qq = q();
  if (qq == 0) return {0.0, kx > 0 ? -1.0 : (kx < 0 ? 1.0 : 0.0)};
  return {0.0, -std::tanh(0.5 * std::asinh(kx / qq))};
}

SpectralPoint SpectralPoint::from_rapidity(double kappa, double kz, double u) {
  SpectralPoint p{kappa, kz, 0.0};
  p.kx = p.q() * std::sinh(u);
  return p;
}

SignedLogd theta0_element(int n, int n2, double q, double d) {
  if (n < 0 || n2 < 0) throw DomainError("theta0_element: orders must be non-negative");
  require_positive(q, "q");
  require_positive(d, "d");
  if ((n + n2) % 2 != 0) return SignedLogd::zero();
  return specfun::bateman_k_log(-n - n2 - 1, 2 * q * d) * SignedLogd::from_value(2 * kPi);
}

std::vector<SignedLogd> theta0_series(int m_max, double q, double d) {
  require_positive(q, "q");
  require_positive(d, "d");
  auto out = specfun::bateman_k_odd_sequence(m_max, 2 * q * d);
  const auto two_pi = SignedLogd::from_value(2 * kPi);
  for (auto& v : out) v *= two_pi;
  return out;
}

double ElementEstimate::value() const { return scaled * std::exp(log_scale); }

ElementEstimate tilted_element(int n, int n2, double q, double d, double theta, double tol) {
  if (n < 0 || n2 < 0) throw DomainError("tilted_element: orders must be non-negative");
  require_positive(q, "q");
  require_positive(d, "d");
  require_tilt(theta);
  const double x = 2 * q * d;
  const double tau = std::tan(0.5 * theta);
  const double ct = std::cos(theta);
  const double sign2 = n2 % 2 == 0 ? 1.0 : -1.0;
  auto f = [&](double u) -> cplx {
    const cplx a = tilted_tangent(u, tau);
    return measure(u, x, ct) * integer_power(a, n) * sign2 * integer_power(std::conj(a), n2);
  };
  const double upper = rapidity_cutoff(x);

  ElementEstimate e;
  e.log_scale = -x;
  for (int i = 0; i <= 4000; ++i) e.peak = std::max(e.peak, std::abs(f(upper * i / 4000.0)));
  if (e.peak == 0) return e;

  const double abs_tol = 0.5 * tol * e.peak;
  const auto lo = quad::integrate_adaptive(f, -upper, 0.0, abs_tol, 16, 40);
  const auto hi = quad::integrate_adaptive(f, 0.0, upper, abs_tol, 16, 40);
  const cplx total = lo.value + hi.value;
  e.scaled = total.real();
  e.imag_residual = std::abs(total.imag());
  e.abs_error = lo.error + hi.error;
  if (e.abs_error > tol * e.peak) throw AccuracyError("tilted_element: quadrature error above tolerance", e.abs_error);
  return e;
}

TranslationBlock tilted_block(int nu_max, double q, double d, double theta, const BlockOptions& opts) {
  if (nu_max < 0) throw DomainError("tilted_block: nu_max must be non-negative");
  require_positive(q, "q");
  require_positive(d, "d");
  require_tilt(theta);
  const double x = 2 * q * d;
  const double upper = rapidity_cutoff(x);

  std::vector<int> rows{0, nu_max};
  if (nu_max > 1) rows.push_back(nu_max / 2);

  TranslationBlock out;
  out.log_scale = -x;
  int order = opts.panel_order;
  double width = opts.panel_width;
  Eigen::MatrixXd re, im;
  power_table(block_rule(upper, width, order), nu_max, x, theta, re, im);
  out.scaled = assemble(re, im);
  for (int attempt = 0; attempt < 4; ++attempt) {
    Eigen::MatrixXd re2, im2;
    power_table(block_rule(upper, width, 2 * order), nu_max, x, theta, re2, im2);
    const Probe p = probe(re2, im2, rows);
    const double scale = std::max(out.scaled.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
    out.error = probe_difference(out.scaled, p) / scale;
    if (out.error <= opts.tolerance) return out;
    // refine: the doubled rule becomes the base
    order *= 2;
    re = std::move(re2);
    im = std::move(im2);
    out.scaled = assemble(re, im);
  }
  throw AccuracyError("tilted_block: quadrature did not reach tolerance", out.error);
}

double log_normalization(int n, int n2) {
  return -std::log(2 * std::sqrt(2 * kPi)) - 0.5 * (log_factorial(n) + log_factorial(n2));
}

namespace testing {

using specfun::ParabolicPoint;

double green_free(const ParabolicPoint& r1, const ParabolicPoint& r2, double kappa) {
  const double r = std::sqrt(std::pow(r1.x() - r2.x(), 2) + std::pow(r1.y() - r2.y(), 2) + std::pow(r1.z - r2.z, 2));
  if (r == 0) throw DomainError("green_free: coincident points");
  return std::exp(-kappa * r) / (4 * kPi * r);
}

double green_parabolic_2d(const ParabolicPoint& r1, const ParabolicPoint& r2, double q, int nu_max) {
  require_positive(q, "q");
  if (r1.mu < 0 || r2.mu < 0) throw DomainError("green_parabolic: mu must be non-negative");
  if (r1.mu == r2.mu) throw DomainError("green_parabolic: the expansion needs distinct mu");
  const ParabolicPoint& in = r1.mu < r2.mu ? r1 : r2;
  const ParabolicPoint& out = r1.mu < r2.mu ? r2 : r1;
  const double s = std::sqrt(2 * q);
  const auto d_in = specfun::regular_sequence(nu_max, in.lambda * s);
  const auto d_out = specfun::regular_sequence(nu_max, out.lambda * s);
  const auto reg = specfun::regular_imag_sequence(nu_max, in.mu * s);
  const auto outgoing = specfun::outgoing_sequence(nu_max, out.mu * s);
  SignedLogd sum;
  for (int n = 0; n <= nu_max; ++n) {
    const auto norm = SignedLogd::from_log(n % 2 == 0 ? 1 : -1, -log_factorial(n) - 0.5 * std::log(2 * kPi));
    sum = sum + norm * d_in[n] * d_out[n] * reg[n] * outgoing[n];
  }
  return sum.value();
}

double green_parabolic(const ParabolicPoint& r1, const ParabolicPoint& r2, double kappa, int nu_max) {
  require_positive(kappa, "kappa");
  const double rho = std::hypot(r1.x() - r2.x(), r1.y() - r2.y());
  if (rho == 0 && r1.z == r2.z) throw DomainError("green_parabolic: coincident points");
  const double dz = r1.z - r2.z;
  // k_z = kappa sinh(s); the 2D kernel decays like exp(-q rho)
  const double upper = std::asinh(std::max(1.0, 45.0 / (kappa * std::max(rho, 1e-3))));
  auto f = [&](double s) {
    const double kz = kappa * std::sinh(s);
    return kappa * std::cosh(s) * std::cos(kz * dz) * green_parabolic_2d(r1, r2, std::hypot(kappa, kz), nu_max);
  };
  const double scale = green_free(r1, r2, kappa) * 4 * kPi;
  const auto est = quad::integrate_adaptive(f, 0.0, upper, 1e-12 * scale, 16, 30);
  return est.value / kPi;
}

std::complex<double> plane_wave_partial_sum(const ParabolicPoint& r, double q, double u, int nu_max) {
  require_positive(q, "q");
  const double s = std::sqrt(2 * q);
  const auto d = specfun::regular_sequence(nu_max, r.lambda * s);
  const auto g = specfun::regular_imag_sequence(nu_max, std::abs(r.mu) * s);
  const double t = std::tanh(0.5 * u);
  const auto tl = SignedLogd::from_value(t);
  const double log_c = std::log(std::cosh(0.5 * u));
  std::complex<double> sum = 0.0;
  const std::complex<double> phase[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
  SignedLogd tn = SignedLogd::one();
  for (int n = 0; n <= nu_max; ++n) {
    const SignedLogd term = tn * d[n] * g[n] * SignedLogd::from_log(1, -log_factorial(n) - log_c);
    sum += phase[n % 4] * term.value();
    tn *= tl;
  }
  return sum;
}

std::complex<double> plane_wave(const ParabolicPoint& r, double q, double u) {
  return std::exp(std::complex<double>(-q * std::cosh(u) * r.y(), q * std::sinh(u) * r.x()));
}

}  // namespace testing

}  // namespace casimir::translation
