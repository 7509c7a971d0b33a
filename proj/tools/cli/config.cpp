#include "cli/config.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace casimir::cli {

namespace {

const std::pair<Command, const char*> kCommands[] = {
    {Command::Energy, "energy"},         {Command::Cperp, "cperp"}, {Command::CthetaSweep, "ctheta-sweep"},
    {Command::HSweep, "h-sweep"},        {Command::Thermal, "thermal"}, {Command::Pfa, "pfa"},
    {Command::Validate, "validate"},
};

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& key, const std::string& s) {
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::invalid_argument("config: '" + key + "' expects a number, got '" + s + "'");
  return v;
}

int parse_int(const std::string& key, const std::string& s) {
  int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::invalid_argument("config: '" + key + "' expects an integer, got '" + s + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& s) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw std::invalid_argument("config: '" + key + "' expects true or false, got '" + s + "'");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Field accessors in serialization order.
struct Field {
  const char* key;
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, const std::string&)> set;
};

template <typename T>
Field number(const char* key, T RunConfig::*member) {
  if constexpr (std::is_same_v<T, int>) {
    return {key, [member](const RunConfig& c) { return std::to_string(c.*member); },
            [key, member](RunConfig& c, const std::string& v) { c.*member = parse_int(key, v); }};
  } else {
    return {key, [member](const RunConfig& c) { return format_double(c.*member); },
            [key, member](RunConfig& c, const std::string& v) { c.*member = parse_double(key, v); }};
  }
}

const std::vector<Field>& fields() {
  static const std::vector<Field> f = {
      {"command", [](const RunConfig& c) { return std::string(to_string(c.command)); },
       [](RunConfig& c, const std::string& v) { c.command = command_from_string(v); }},
      number("radius", &RunConfig::radius),
      number("separation", &RunConfig::separation),
      number("angle_deg", &RunConfig::angle_deg),
      number("numax", &RunConfig::numax),
      number("quad_nodes", &RunConfig::quad_nodes),
      number("qmax_scaled", &RunConfig::qmax_scaled),
      number("tolerance", &RunConfig::tolerance),
      {"channel", [](const RunConfig& c) { return std::string(casimir::to_string(c.channel)); },
       [](RunConfig& c, const std::string& v) { c.channel = channel_from_string(v); }},
      number("sweep_from", &RunConfig::sweep_from),
      number("sweep_to", &RunConfig::sweep_to),
      number("sweep_points", &RunConfig::sweep_points),
      number("temperature", &RunConfig::temperature),
      {"classical", [](const RunConfig& c) { return std::string(c.classical ? "true" : "false"); },
       [](RunConfig& c, const std::string& v) { c.classical = parse_bool("classical", v); }},
      {"format", [](const RunConfig& c) { return std::string(to_string(c.format)); },
       [](RunConfig& c, const std::string& v) { c.format = format_from_string(v); }},
      {"output", [](const RunConfig& c) { return c.output_path; },
       [](RunConfig& c, const std::string& v) { c.output_path = v; }},
  };
  return f;
}

}  // namespace

const char* to_string(Command c) {
  for (const auto& [cmd, name] : kCommands)
    if (cmd == c) return name;
  return "?";
}

Command command_from_string(const std::string& s) {
  for (const auto& [cmd, name] : kCommands)
    if (s == name) return cmd;
  throw std::invalid_argument("unknown command '" + s + "'");
}

const char* to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

OutputFormat format_from_string(const std::string& s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  throw std::invalid_argument("unknown output format '" + s + "'");
}

std::string serialize(const RunConfig& cfg) {
  std::ostringstream os;
  for (const auto& f : fields()) os << f.key << " = " << f.get(cfg) << "\n";
  return os.str();
}

RunConfig parse_config(const std::string& text, RunConfig base) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    bool known = false;
    for (const auto& f : fields()) {
      if (key == f.key) {
        f.set(base, value);
        known = true;
        break;
      }
    }
    if (!known) throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  return base;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

void configure_app(CLI::App& app, RunConfig& cfg, std::string& config_path) {
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--config", config_path, "File of key = value lines applied before the flags");
  app.add_option("--radius,-R", cfg.radius, "Parabolic radius R (>= 0)")->capture_default_str();
  app.add_option("--separation,-H", cfg.separation, "Tip-plane separation H")->capture_default_str();
  app.add_option("--angle", cfg.angle_deg, "Tilt in degrees")->capture_default_str();
  app.add_option("--numax", cfg.numax, "Largest partial-wave index")->capture_default_str()->check(
      CLI::NonNegativeNumber);
  app.add_option("--quad-nodes", cfg.quad_nodes, "Spectral quadrature nodes")->capture_default_str()->check(
      CLI::Range(2, 100000));
  app.add_option("--qmax", cfg.qmax_scaled, "Upper spectral cutoff in units of 1/H")->capture_default_str();
  app.add_option("--tolerance", cfg.tolerance, "Error budget for truncated sums")->capture_default_str();
  app.add_option_function<std::string>(
         "--channel", [&cfg](const std::string& s) { cfg.channel = channel_from_string(s); },
         "em, dirichlet or neumann")
      ->check(CLI::IsMember({"em", "dirichlet", "neumann"}));
  app.add_option("--from", cfg.sweep_from, "Sweep start (H/R or degrees)")->capture_default_str();
  app.add_option("--to", cfg.sweep_to, "Sweep end (H/R or degrees)")->capture_default_str();
  app.add_option("--points", cfg.sweep_points, "Sweep points")->capture_default_str()->check(CLI::Range(1, 10000));
  app.add_option("--temperature,-T", cfg.temperature, "T H / (hbar c)")->capture_default_str();
  app.add_flag("--classical", cfg.classical, "Thermal: report the T -> infinity coefficient");
  app.add_option_function<std::string>(
         "--format", [&cfg](const std::string& s) { cfg.format = format_from_string(s); }, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output,-o", cfg.output_path, "Output file (default: stdout)");

  const std::pair<Command, const char*> help[] = {
      {Command::Energy, "Energy per unit length for one geometry"},
      {Command::Cperp, "Knife-edge coefficient at theta = 0"},
      {Command::CthetaSweep, "c(theta) over a range of tilts"},
      {Command::HSweep, "E H^2 and the PFA ratio over H/R"},
      {Command::Thermal, "Finite-temperature energy"},
      {Command::Pfa, "Proximity-force and parallel-plate baselines"},
      {Command::Validate, "Identity and oracle checks"},
  };
  for (const auto& [cmd, text] : help) {
    auto* sub = app.add_subcommand(to_string(cmd), text);
    sub->callback([&cfg, cmd = cmd] { cfg.command = cmd; });
  }
}

}  // namespace casimir::cli
