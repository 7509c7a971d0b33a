#include "casimir/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "casimir/errors.hpp"
#include "casimir/parallel.hpp"
#include "casimir/quadrature.hpp"

namespace casimir::energy {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPeak = 0.3;

SpectralRule make_rule(const QuadratureSpec& spec, bool half) {
  if (spec.node_count < 2) throw DomainError("quadrature: node_count must be >= 2");
  if (!(spec.qmax_scaled > spec.qmin_scaled) || !(spec.qmin_scaled >= 0))
    throw DomainError("quadrature: need 0 <= qmin < qmax");
  const int panels = std::max(1, (spec.node_count + spec.panel_order - 1) / spec.panel_order);
  int order = (spec.node_count + panels - 1) / panels;
  if (half) order = std::max(1, order / 2);
  SpectralRule r;
  if (spec.mapping == Mapping::ExpMap) {
    if (!(spec.qmin_scaled > 0)) throw DomainError("quadrature: the exp map needs qmin > 0");
    const auto g = quad::composite(
        quad::uniform_breaks(std::log(spec.qmin_scaled / kPeak), std::log(spec.qmax_scaled / kPeak), panels), order);
    for (int i = 0; i < g.nodes.size(); ++i) {
      const double q = kPeak * std::exp(g.nodes[i]);
      r.q.push_back(q);
      r.w.push_back(g.weights[i] * q);
    }
  } else {
    const auto g = quad::composite(quad::uniform_breaks(spec.qmin_scaled, spec.qmax_scaled, panels), order);
    r.q.assign(g.nodes.data(), g.nodes.data() + g.nodes.size());
    r.w.assign(g.weights.data(), g.weights.data() + g.weights.size());
  }
  return r;
}

bool wants(Channel channel, BoundaryMode mode) {
  return channel == Channel::Full || (channel == Channel::Dirichlet) == (mode == BoundaryMode::Dirichlet);
}

// Weighted sums of log det over nodes, per level and scalar channel.
struct Sums {
  std::vector<double> d, n;
  explicit Sums(std::size_t levels = 0) : d(levels, 0.0), n(levels, 0.0) {}
  void add(const LogDetSample& s, double w) {
    for (std::size_t l = 0; l < d.size(); ++l) {
      d[l] += w * s.dirichlet[l];
      n[l] += w * s.neumann[l];
    }
  }
  std::vector<double> channel(Channel c) const {
    std::vector<double> out(d.size());
    for (std::size_t l = 0; l < d.size(); ++l)
      out[l] = c == Channel::Full ? d[l] + n[l] : (c == Channel::Dirichlet ? d[l] : n[l]);
    return out;
  }
};

// sum_i weight(q_i) log det(1 - N(q_i)); nodes are evaluated in parallel and
// reduced in node order.
template <typename Weight>
Sums integrate(const Geometry& geom, const std::vector<double>& q, const std::vector<int>& levels, Channel channel,
               Weight&& weight) {
  const auto samples = parallel::map<LogDetSample>(
      q.size(), [&](std::size_t i) { return logdet_sample(geom, q[i], levels, channel); });
  Sums s(levels.size());
  for (std::size_t i = 0; i < q.size(); ++i) s.add(samples[i], weight(i));
  return s;
}

EnergyResult finish(const std::vector<int>& levels, const std::vector<double>& values, double quad_error,
                    Channel channel) {
  EnergyResult r;
  r.channel = channel;
  for (std::size_t l = 0; l < levels.size(); ++l) r.series.emplace_back(levels[l], values[l]);
  r.value = values.back();
  r.quad_error = quad_error;
  r.extrapolated = r.value;
  r.trunc_error = values.size() > 1 ? std::abs(values.back() - values[values.size() - 2]) : 0.0;
  if (r.series.size() >= 4) {
    try {
      const auto ex = extrapolate_numax(r.series);
      r.extrapolated = ex.limit;
      r.trunc_error = ex.error;
    } catch (const FitRejectedError&) {
      // keep the raw value with the last step as a conservative error bar
    }
  }
  return r;
}

struct Model {
  bool ok = false;
  double limit = 0;
  double rate = 0;
};

// v = v_inf + A exp(-a xi) through three points with increasing xi.
Model fit_exponential(const double xi[3], const double v[3]) {
  Model m;
  const double d1 = v[0] - v[1], d2 = v[1] - v[2];
  if (d1 == 0 || d2 == 0 || (d1 > 0) != (d2 > 0)) return m;
  const double target = std::log(d1 / d2);
  const double h1 = xi[1] - xi[0], h2 = xi[2] - xi[1];
  // log of (e^{-a xi0} - e^{-a xi1}) / (e^{-a xi1} - e^{-a xi2}); increasing in a
  auto g = [&](double a) { return a * h1 + std::log(-std::expm1(-a * h1)) - std::log(-std::expm1(-a * h2)); };
  double lo = 1e-10, hi = 1.0;
  if (g(lo) >= target) return m;
  while (g(hi) < target) {
    hi *= 2;
    if (hi > 1e4) return m;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < target ? lo : hi) = mid;
  }
  m.rate = 0.5 * (lo + hi);
  m.limit = v[2] - d2 / std::expm1(m.rate * h2);
  m.ok = std::isfinite(m.limit);
  return m;
}

double predict(const Model& m, double xi_last, double v_last, double xi) {
  return m.limit + (v_last - m.limit) * std::exp(m.rate * (xi_last - xi));
}

}  // namespace

const char* to_string(Mapping m) { return m == Mapping::ExpMap ? "exp-map" : "linear-panels"; }

Mapping mapping_from_string(const std::string& name) {
  if (name == "exp-map" || name == "exp") return Mapping::ExpMap;
  if (name == "linear-panels" || name == "linear") return Mapping::LinearPanels;
  throw std::invalid_argument("unknown mapping '" + name + "'");
}

SpectralRule spectral_rule(const QuadratureSpec& spec) { return make_rule(spec, false); }
SpectralRule spectral_rule_half(const QuadratureSpec& spec) { return make_rule(spec, true); }

std::vector<int> series_levels(int nu_max) {
  if (nu_max < 0) throw DomainError("nu_max must be >= 0");
  std::vector<int> out;
  for (int div : {8, 4, 2, 1}) {
    const int n = nu_max / div;
    if (out.empty() || n > out.back()) out.push_back(n);
  }
  return out;
}

LogDetSample logdet_sample(const Geometry& geom, double q, const std::vector<int>& levels, Channel channel) {
  LogDetSample s;
  s.q = q;
  const auto kernel = roundtrip::build_kernel(geom, q, levels.back(), channel);
  for (int nu : levels) {
    const auto k = nu == kernel.nu_max ? kernel : kernel.truncated(nu);
    const double qs = k.q_scaled;
    s.dirichlet.push_back(wants(channel, BoundaryMode::Dirichlet)
                              ? roundtrip::logdet_one_minus(k.block(BoundaryMode::Dirichlet), qs)
                              : 0.0);
    s.neumann.push_back(wants(channel, BoundaryMode::Neumann)
                            ? roundtrip::logdet_one_minus(k.block(BoundaryMode::Neumann), qs)
                            : 0.0);
  }
  return s;
}

ChannelEnergies energy_all_channels(const Geometry& geom, const QuadratureSpec& spec, int nu_max) {
  const auto levels = series_levels(nu_max);
  const double h = geom.separation;
  auto run = [&](const SpectralRule& rule) {
    std::vector<double> q(rule.q.size());
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = rule.q[i] / h;
    return integrate(geom, q, levels, Channel::Full,
                     [&](std::size_t i) { return rule.w[i] / h * q[i] / (4 * kPi); });
  };
  const Sums fine = run(spectral_rule(spec));
  const Sums coarse = run(spectral_rule_half(spec));
  ChannelEnergies out;
  auto make = [&](Channel c) {
    const auto f = fine.channel(c), g = coarse.channel(c);
    return finish(levels, f, std::abs(f.back() - g.back()), c);
  };
  out.full = make(Channel::Full);
  out.dirichlet = make(Channel::Dirichlet);
  out.neumann = make(Channel::Neumann);
  return out;
}

EnergyResult energy_per_length(const Geometry& geom, const QuadratureSpec& spec, int nu_max, Channel channel) {
  const auto levels = series_levels(nu_max);
  const double h = geom.separation;
  auto run = [&](const SpectralRule& rule) {
    std::vector<double> q(rule.q.size());
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = rule.q[i] / h;
    return integrate(geom, q, levels, channel, [&](std::size_t i) { return rule.w[i] / h * q[i] / (4 * kPi); })
        .channel(channel);
  };
  const auto fine = run(spectral_rule(spec));
  const auto coarse = run(spectral_rule_half(spec));
  return finish(levels, fine, std::abs(fine.back() - coarse.back()), channel);
}

Extrapolation extrapolate_numax(const std::vector<std::pair<int, double>>& series) {
  if (series.size() < 4) throw DomainError("extrapolate_numax: need at least 4 points");
  for (std::size_t i = 1; i < series.size(); ++i)
    if (series[i].first <= series[i - 1].first) throw DomainError("extrapolate_numax: nu_max must increase");
  const std::size_t m = series.size();
  const double v_last = series.back().second;
  const double scale = std::max(std::abs(v_last), std::numeric_limits<double>::min());
  const double noise = 64 * std::numeric_limits<double>::epsilon() * scale;

  // tail steps must keep one sign and shrink
  std::vector<double> steps;
  for (std::size_t i = m - 3; i + 1 < m; ++i) steps.push_back(series[i + 1].second - series[i].second);
  Extrapolation out;
  if (std::all_of(steps.begin(), steps.end(), [&](double s) { return std::abs(s) <= noise; })) {
    out.limit = v_last;
    out.error = std::abs(steps.back());
    out.model = "constant";
    return out;
  }
  for (double s : steps)
    if (std::abs(s) > noise && (s > 0) != (steps.back() > 0)) throw FitRejectedError("nu_max tail is not monotone");
  if (std::abs(steps[1]) > std::abs(steps[0]) + noise) throw FitRejectedError("nu_max tail is not converging");

  double v[3], xi_geo[3], xi_alg[3];
  for (int k = 0; k < 3; ++k) {
    const auto& p = series[m - 3 + k];
    v[k] = p.second;
    xi_geo[k] = p.first;
    xi_alg[k] = std::log(std::max(p.first, 1));
  }
  const Model geo = fit_exponential(xi_geo, v);
  const Model alg = fit_exponential(xi_alg, v);
  if (!geo.ok && !alg.ok) throw FitRejectedError("neither tail model fits");

  // prediction error on the earlier points
  auto miss = [&](const Model& mdl, const double* xi, bool log_axis) {
    double e = 0;
    for (std::size_t i = 0; i + 3 < m; ++i) {
      const double x = log_axis ? std::log(std::max(series[i].first, 1)) : series[i].first;
      e = std::max(e, std::abs(predict(mdl, xi[2], v[2], x) - series[i].second));
    }
    return e;
  };
  if (geo.ok && alg.ok) {
    const bool use_geo = miss(geo, xi_geo, false) <= miss(alg, xi_alg, true);
    out.limit = use_geo ? geo.limit : alg.limit;
    out.model = use_geo ? "geometric" : "algebraic";
    out.error = std::abs(geo.limit - alg.limit);
  } else {
    const Model& only = geo.ok ? geo : alg;
    out.limit = only.limit;
    out.model = geo.ok ? "geometric" : "algebraic";
    out.error = std::abs(only.limit - v_last);
  }
  out.error = std::max(out.error, noise);
  return out;
}

CTheta c_theta(double theta, int nu_max, const QuadratureSpec& spec) {
  CTheta c;
  c.theta = theta;
  if (std::abs(std::abs(theta) - kPi / 2) < 1e-12) {
    c.value = c.raw = kPi * kPi / 1440;
    c.dirichlet = c.neumann = c.value / 2;
    c.nu_max = nu_max;
    return c;
  }
  const double a = std::abs(theta);
  c.nu_max = nu_max;
  if (a > kNearParallelAngle && nu_max < kNearParallelFloor) {
    c.nu_max = kNearParallelFloor;
    c.near_endpoint_warning = a > kWarningAngle;
  }
  const auto e = energy_all_channels(Geometry::make(0.0, 1.0, theta), spec, c.nu_max);
  const double ct = std::cos(theta);
  c.value = -ct * e.full.extrapolated;
  c.raw = -ct * e.full.value;
  c.error = ct * (e.full.trunc_error + e.full.quad_error);
  c.dirichlet = -ct * e.dirichlet.extrapolated;
  c.neumann = -ct * e.neumann.extrapolated;
  c.dirichlet_error = ct * (e.dirichlet.trunc_error + e.dirichlet.quad_error);
  c.neumann_error = ct * (e.neumann.trunc_error + e.neumann.quad_error);
  return c;
}

EnergyResult classical_limit(int nu_max, const QuadratureSpec& spec, Channel channel) {
  const auto geom = Geometry::make(0.0, 1.0, 0.0);
  const auto levels = series_levels(nu_max);
  auto run = [&](const SpectralRule& rule) {
    return integrate(geom, rule.q, levels, channel, [&](std::size_t i) { return rule.w[i] / (2 * kPi); })
        .channel(channel);
  };
  const auto fine = run(spectral_rule(spec));
  const auto coarse = run(spectral_rule_half(spec));
  return finish(levels, fine, std::abs(fine.back() - coarse.back()), channel);
}

double classical_coefficient(int nu_max, const QuadratureSpec& spec, Channel channel) {
  return -classical_limit(nu_max, spec, channel).extrapolated;
}

EnergyResult thermal_energy(const Geometry& geom, double t_scaled, int nu_max, const QuadratureSpec& spec,
                            Channel channel) {
  if (!(t_scaled > 0) || !std::isfinite(t_scaled)) throw DomainError("thermal_energy: T must be positive");
  const auto levels = series_levels(nu_max);
  const double h = geom.separation;
  const double t = t_scaled / h;
  const double d = geom.focus_distance();

  // n = 0: (T/2) (1/pi) int_0^inf L(q) dq
  auto zero_term = [&](const SpectralRule& rule) {
    std::vector<double> q(rule.q.size());
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = rule.q[i] / h;
    return integrate(geom, q, levels, channel, [&](std::size_t i) { return t * rule.w[i] / h / (2 * kPi); })
        .channel(channel);
  };
  // n >= 1: T (1/pi) int_0^inf dk_z L(sqrt(kappa^2 + k_z^2)), k_z = kappa sinh s
  auto matsubara_term = [&](double kappa, bool half) {
    const double upper = std::acosh(std::max(1.0 + 1e-12, 45.0 / (2 * kappa * d)));
    const int panels = std::max(1, (spec.node_count + spec.panel_order - 1) / spec.panel_order);
    int order = (spec.node_count + panels - 1) / panels;
    if (half) order = std::max(1, order / 2);
    const auto g = quad::composite(quad::uniform_breaks(0.0, upper, panels), order);
    std::vector<double> q(g.nodes.size()), w(g.nodes.size());
    for (int i = 0; i < g.nodes.size(); ++i) {
      q[i] = kappa * std::cosh(g.nodes[i]);
      w[i] = t / kPi * g.weights[i] * kappa * std::cosh(g.nodes[i]);
    }
    return integrate(geom, q, levels, channel, [&](std::size_t i) { return w[i]; }).channel(channel);
  };

  std::vector<double> fine = zero_term(spectral_rule(spec));
  std::vector<double> coarse = zero_term(spectral_rule_half(spec));
  for (int n = 1; n < 100000; ++n) {
    const double kappa = 2 * kPi * n * t;
    if (2 * kappa * d > 90) break;
    const auto f = matsubara_term(kappa, false);
    const auto c = matsubara_term(kappa, true);
    for (std::size_t l = 0; l < levels.size(); ++l) {
      fine[l] += f[l];
      coarse[l] += c[l];
    }
    if (std::abs(f.back()) < 1e-3 * spec.tolerance * std::abs(fine.back())) break;
  }
  return finish(levels, fine, std::abs(fine.back() - coarse.back()), channel);
}

}  // namespace casimir::energy
