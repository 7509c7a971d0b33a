#include "cli/run.hpp"

#include <json.hpp>

#include <Eigen/LU>

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "casimir/approx.hpp"
#include "casimir/energy.hpp"
#include "casimir/errors.hpp"
#include "casimir/specfun.hpp"
#include "casimir/translation.hpp"

namespace casimir::cli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180;
// empty in CSV, null in JSON
constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

std::string shortest(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

energy::QuadratureSpec quadrature(const RunConfig& cfg) {
  energy::QuadratureSpec spec;
  spec.node_count = cfg.quad_nodes;
  spec.qmax_scaled = cfg.qmax_scaled;
  spec.tolerance = cfg.tolerance;
  return spec;
}

std::vector<double> sweep(const RunConfig& cfg, bool logarithmic) {
  std::vector<double> out;
  const int n = cfg.sweep_points;
  for (int i = 0; i < n; ++i) {
    const double f = n == 1 ? 0.0 : double(i) / (n - 1);
    out.push_back(logarithmic ? cfg.sweep_from * std::pow(cfg.sweep_to / cfg.sweep_from, f)
                              : cfg.sweep_from + (cfg.sweep_to - cfg.sweep_from) * f);
  }
  return out;
}

const energy::EnergyResult& pick(const energy::ChannelEnergies& e, Channel c) {
  return c == Channel::Dirichlet ? e.dirichlet : (c == Channel::Neumann ? e.neumann : e.full);
}

Table energy_table(const RunConfig& cfg) {
  const auto geom = Geometry::make(cfg.radius, cfg.separation, cfg.angle_deg * kDeg);
  const auto e = energy::energy_per_length(geom, quadrature(cfg), cfg.numax, cfg.channel);
  const double h2 = cfg.separation * cfg.separation;
  Table t;
  t.columns = {"radius", "separation", "angle_deg", "channel", "numax", "energy", "extrapolated", "trunc_error",
               "quad_error", "energy_h2", "pfa_ratio"};
  const auto pfa = approx::pfa_energy(cfg.separation, cfg.radius);
  t.rows.push_back({cfg.radius, cfg.separation, cfg.angle_deg, std::string(to_string(cfg.channel)), cfg.numax,
                    e.value, e.extrapolated, e.trunc_error, e.quad_error, e.extrapolated * h2,
                    pfa.degenerate || cfg.channel != Channel::Full || cfg.angle_deg != 0
                        ? Cell(kMissing)
                        : Cell(e.extrapolated / pfa.value)});
  return t;
}

Table cperp_table(const RunConfig& cfg) {
  const auto e = energy::energy_per_length(Geometry::make(0.0, 1.0, 0.0), quadrature(cfg), cfg.numax, cfg.channel);
  Table t;
  t.columns = {"channel", "numax", "c_perp", "error", "c_perp_raw", "trunc_error", "quad_error"};
  t.rows.push_back({std::string(to_string(cfg.channel)), cfg.numax, -e.extrapolated, e.trunc_error + e.quad_error,
                    -e.value, e.trunc_error, e.quad_error});
  return t;
}

Table ctheta_table(const RunConfig& cfg) {
  Table t;
  t.columns = {"theta_deg", "c_theta", "error", "channel", "numax", "near_endpoint_warning"};
  for (double deg : sweep(cfg, false)) {
    const auto c = energy::c_theta(deg * kDeg, cfg.numax, quadrature(cfg));
    double v = c.value, err = c.error;
    if (cfg.channel == Channel::Dirichlet) v = c.dirichlet, err = c.dirichlet_error;
    if (cfg.channel == Channel::Neumann) v = c.neumann, err = c.neumann_error;
    t.rows.push_back({deg, v, err, std::string(to_string(cfg.channel)), c.nu_max, c.near_endpoint_warning});
  }
  return t;
}

Table hsweep_table(const RunConfig& cfg) {
  if (!(cfg.radius > 0)) throw DomainError("h-sweep needs --radius > 0");
  if (!(cfg.sweep_from > 0) || !(cfg.sweep_to > 0)) throw DomainError("h-sweep needs positive H/R bounds");
  Table t;
  t.columns = {"h_over_r", "separation", "energy_h2", "error_h2", "pfa_ratio", "channel"};
  for (double x : sweep(cfg, true)) {
    const double h = x * cfg.radius;
    const auto all = energy::energy_all_channels(Geometry::make(cfg.radius, h, 0.0), quadrature(cfg), cfg.numax);
    const auto& e = pick(all, cfg.channel);
    const double pfa = approx::pfa_energy(h, cfg.radius).value;
    // each scalar channel carries half of the proximity-force energy
    const double pfa_share = cfg.channel == Channel::Full ? pfa : 0.5 * pfa;
    t.rows.push_back({x, h, e.extrapolated * h * h, (e.trunc_error + e.quad_error) * h * h, e.extrapolated / pfa_share,
                      std::string(to_string(cfg.channel))});
  }
  return t;
}

Table thermal_table(const RunConfig& cfg) {
  Table t;
  if (cfg.classical) {
    const auto e = energy::classical_limit(cfg.numax, quadrature(cfg), cfg.channel);
    t.columns = {"channel", "numax", "c_t_inf", "error", "trunc_error", "quad_error"};
    t.rows.push_back({std::string(to_string(cfg.channel)), cfg.numax, -e.extrapolated, e.trunc_error + e.quad_error,
                      e.trunc_error, e.quad_error});
    return t;
  }
  const auto geom = Geometry::make(cfg.radius, cfg.separation, cfg.angle_deg * kDeg);
  const auto e = energy::thermal_energy(geom, cfg.temperature, cfg.numax, quadrature(cfg), cfg.channel);
  t.columns = {"temperature", "radius", "separation", "angle_deg", "channel", "numax",
               "energy",      "extrapolated", "trunc_error", "quad_error"};
  t.rows.push_back({cfg.temperature, cfg.radius, cfg.separation, cfg.angle_deg, std::string(to_string(cfg.channel)),
                    cfg.numax, e.value, e.extrapolated, e.trunc_error, e.quad_error});
  return t;
}

Table pfa_table(const RunConfig& cfg) {
  const auto p = approx::pfa_energy(cfg.separation, cfg.radius);
  Table t;
  t.columns = {"separation", "radius", "pfa_energy", "degenerate", "parallel_plates", "error"};
  t.rows.push_back({cfg.separation, cfg.radius, p.value, p.degenerate, approx::parallel_plates(cfg.separation), 0.0});
  return t;
}

// Oracle and identity checks; each row is (check, value, tolerance, status).
Table validate_table() {
  Table t;
  t.columns = {"check", "value", "tolerance", "status"};
  auto add = [&](const std::string& name, double value, double tol) {
    t.rows.push_back({name, value, tol, std::string(value <= tol ? "pass" : "fail")});
  };
  auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  {
    double worst = rel(specfun::pcf_regular(1, 1.0).value.value(), std::exp(-0.25));
    worst = std::max(worst, rel(specfun::pcf_outgoing(0, 1.0).value.value(),
                                std::exp(0.25) * std::sqrt(kPi / 2) * std::erfc(1 / std::sqrt(2.0))));
    worst = std::max(worst, rel(specfun::pcf_regular_imag(1, 1.0).value.value(), -std::exp(0.25)));
    add("pcf_closed_forms", worst, 1e-12);
  }
  {
    double worst = 0;
    for (int i = 0; i < 50; ++i) {
      const int n = 1 + static_cast<int>(unit(rng) * 150);
      const double x = 40 * unit(rng);
      const auto s = specfun::outgoing_sequence(n + 1, x);
      // D_{-n-2} recurrence: D_{v+1} - x D_v + v D_{v-1} = 0 at v = -n-1
      const double a = s[n - 1].logmag(), scale = std::max({a, s[n].logmag(), s[n + 1].logmag()});
      const double r = s[n - 1].scaled_value(scale) - x * s[n].scaled_value(scale) -
                       (n + 1) * s[n + 1].scaled_value(scale);
      const double big = std::max({std::abs(s[n - 1].scaled_value(scale)), std::abs(x * s[n].scaled_value(scale)),
                                   std::abs((n + 1) * s[n + 1].scaled_value(scale))});
      worst = std::max(worst, std::abs(r) / big);
    }
    add("outgoing_recurrence", worst, 1e-10);
  }
  {
    double worst = 0;
    for (int n = 0; n <= 60; ++n) {
      const auto mode = scattering::knife_edge_mode(n);
      const double ref = -std::exp(log_factorial(n)) * std::sqrt(2 / kPi);
      worst = std::max(worst, rel(scattering::parabolic_amplitude(n, mode, 1e-8).value(), ref));
    }
    add("knife_edge_continuity", worst, 1e-6);
  }
  {
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
      const int n = static_cast<int>(unit(rng) * 30);
      const int n2 = static_cast<int>(unit(rng) * 15) * 2 + (n % 2);
      const double q = 0.02 + 2 * unit(rng), d = 0.5 + 2 * unit(rng);
      worst = std::max(worst, rel(translation::tilted_element(n, n2, q, d, 0.0).value(),
                                  translation::theta0_element(n, n2, q, d).value()));
    }
    add("bateman_identity", worst, 1e-8);
  }
  {
    double worst = 0;
    for (auto [n, n2] : {std::pair{0, 1}, {3, 8}, {20, 7}})
      worst = std::max(worst, std::abs(translation::tilted_element(n, n2, 0.3, 1.0, 0.0).value()));
    add("odd_parity_elements", worst, 1e-12);
  }
  {
    const specfun::ParabolicPoint r1{0.0, 0.5, 0.0}, r2{0.0, 3.0, 0.2};
    add("green_function_numax40",
        rel(translation::testing::green_parabolic(r1, r2, 1.0, 40), translation::testing::green_free(r1, r2, 1.0)),
        1e-6);
  }
  {
    const specfun::ParabolicPoint p{0.7, 1.1, 0.0};
    const auto s = translation::testing::plane_wave_partial_sum(p, 0.8, 0.6, 60);
    const auto e = translation::testing::plane_wave(p, 0.8, 0.6);
    add("plane_wave_numax60", std::abs(s - e) / std::abs(e), 1e-8);
  }
  {
    const auto k = roundtrip::build_kernel(Geometry::make(0.0, 1.0, 0.0), 0.3, 40);
    add("block_additivity", std::abs(roundtrip::logdet_one_minus(k.entries) - roundtrip::logdet_one_minus(k)), 1e-12);
  }
  {
    Eigen::Matrix3d m;
    for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = 0.3 * (unit(rng) - 0.5);
    const Eigen::Matrix3d a = Eigen::Matrix3d::Identity() - m;
    const double cof = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
                       a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                       a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
    add("determinant_3x3", rel(roundtrip::logdet_one_minus(Eigen::MatrixXd(m)), std::log(cof)), 1e-13);
  }
  {
    energy::QuadratureSpec spec;
    spec.node_count = 40;
    const double ref = energy::energy_per_length(Geometry::make(0.0, 1.0, 0.0), spec, 20).value;
    double worst = 0;
    for (double h : {0.5, 2.0})
      worst = std::max(worst, rel(h * h * energy::energy_per_length(Geometry::make(0.0, h, 0.0), spec, 20).value, ref));
    add("scale_invariance", worst, 1e-10);
  }
  {
    const auto e = energy::energy_per_length(Geometry::make(0.0, 1.0, 0.0), {}, 80);
    add("c_perp_numax80", std::abs(-e.extrapolated - 0.0067415), 5e-5);
  }
  return t;
}

nlohmann::json to_json(const Cell& c) {
  return std::visit([](const auto& v) -> nlohmann::json {
    using T = std::decay_t<decltype(v)>;
    if constexpr (std::is_same_v<T, double>) {
      if (!std::isfinite(v)) return nullptr;
    }
    return v;
  }, c);
}

std::string to_text(const Cell& c) {
  return std::visit([](const auto& v) -> std::string {
    using T = std::decay_t<decltype(v)>;
    if constexpr (std::is_same_v<T, double>) return std::isfinite(v) ? shortest(v) : std::string();
    else if constexpr (std::is_same_v<T, int>) return std::to_string(v);
    else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
    else return v;
  }, c);
}

void write_error(std::ostream& os, const RunConfig& cfg, const std::string& kind, const std::string& message,
                 double q) {
  if (cfg.format == OutputFormat::Json) {
    nlohmann::json j{{"error", kind}, {"message", message}};
    if (std::isfinite(q)) j["q"] = q;
    os << j.dump() << "\n";
    return;
  }
  Table t;
  t.columns = {"error", "message", "q"};
  t.rows.push_back({kind, message, Cell(q)});
  std::vector<std::string> meta{"status = error"};
  write_csv(os, t, meta);
}

}  // namespace

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_csv(std::ostream& os, const Table& table, const std::vector<std::string>& metadata) {
  for (const auto& m : metadata) os << "# " << m << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << csv_escape(table.columns[i]);
  os << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_escape(to_text(row[i]));
    os << "\n";
  }
}

void write_json_lines(std::ostream& os, const Table& table) {
  for (const auto& row : table.rows) {
    nlohmann::ordered_json j;
    for (std::size_t i = 0; i < row.size(); ++i) j[table.columns[i]] = to_json(row[i]);
    os << j.dump() << "\n";
  }
}

Table compute(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::Energy:
      return energy_table(cfg);
    case Command::Cperp:
      return cperp_table(cfg);
    case Command::CthetaSweep:
      return ctheta_table(cfg);
    case Command::HSweep:
      return hsweep_table(cfg);
    case Command::Thermal:
      return thermal_table(cfg);
    case Command::Pfa:
      return pfa_table(cfg);
    case Command::Validate:
      return validate_table();
  }
  throw std::invalid_argument("unknown command");
}

int run(const RunConfig& cfg, std::ostream& os) {
  Table table;
  try {
    table = compute(cfg);
  } catch (const PhysicalRegimeError& e) {
    write_error(os, cfg, "physical_regime", e.what(), e.q());
    return kFailed;
  } catch (const AccuracyError& e) {
    write_error(os, cfg, "accuracy", e.what(), NAN);
    return kFailed;
  } catch (const FitRejectedError& e) {
    write_error(os, cfg, "fit_rejected", e.what(), NAN);
    return kFailed;
  } catch (const DomainError& e) {
    write_error(os, cfg, "invalid_input", e.what(), NAN);
    return kUsage;
  }

  bool ok = true;
  if (cfg.command == Command::Validate) {
    for (const auto& row : table.rows) ok = ok && std::get<std::string>(row.back()) == "pass";
  }
  if (cfg.format == OutputFormat::Json) {
    write_json_lines(os, table);
  } else {
    std::vector<std::string> meta{"tool = parabolic-casimir"};
    std::istringstream cfg_lines(serialize(cfg));
    for (std::string line; std::getline(cfg_lines, line);) meta.push_back(line);
    meta.push_back(std::string("status = ") + (ok ? "ok" : "failed"));
    write_csv(os, table, meta);
  }
  return ok ? kOk : kFailed;
}

}  // namespace casimir::cli
