#pragma once

#include <string>

#include "casimir/roundtrip.hpp"

namespace CLI {
class App;
}

namespace casimir::cli {

enum class Command { Energy, Cperp, CthetaSweep, HSweep, Thermal, Pfa, Validate };
enum class OutputFormat { Csv, Json };

const char* to_string(Command c);
Command command_from_string(const std::string& s);
const char* to_string(OutputFormat f);
OutputFormat format_from_string(const std::string& s);

struct RunConfig {
  Command command = Command::Validate;

  // geometry; lengths in any consistent unit, angle in degrees
  double radius = 0.0;
  double separation = 1.0;
  double angle_deg = 0.0;

  // numerics
  int numax = 100;
  int quad_nodes = 60;
  double qmax_scaled = 27.0;
  double tolerance = 1e-6;

  Channel channel = Channel::Full;

  // sweeps: H/R for h-sweep, degrees for ctheta-sweep
  double sweep_from = 0.25;
  double sweep_to = 4.0;
  int sweep_points = 5;

  // thermal: T H / (hbar c); classical selects the T -> infinity coefficient
  double temperature = 0.1;
  bool classical = false;

  OutputFormat format = OutputFormat::Csv;
  std::string output_path;  ///< empty: standard output

  bool operator==(const RunConfig&) const = default;
};

/// `key = value` lines, one per field, in a fixed order.
std::string serialize(const RunConfig& cfg);

/// Parses `key = value` lines on top of `base`.  Blank lines and `#`
/// comments are skipped.  Throws std::invalid_argument on unknown keys or
/// malformed values.
RunConfig parse_config(const std::string& text, RunConfig base = {});

RunConfig load_config_file(const std::string& path, RunConfig base = {});

/// Registers the subcommands and flags, bound to `cfg`.  The --config value
/// lands in `config_path`; callers apply it before the flags (see main).
void configure_app(CLI::App& app, RunConfig& cfg, std::string& config_path);

}  // namespace casimir::cli
