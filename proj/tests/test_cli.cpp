#include <CLI11.hpp>
#include <json.hpp>

#include <sstream>

#include "cli/config.hpp"
#include "cli/run.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace casimir;
using namespace casimir::cli;
using casimir::testing::uniform;
using casimir::testing::uniform_int;

namespace {

RunConfig random_config() {
  RunConfig c;
  c.command = static_cast<Command>(uniform_int(0, 6));
  c.radius = uniform(0, 10);
  c.separation = uniform(0.01, 5);
  c.angle_deg = uniform(-89, 89);
  c.numax = uniform_int(1, 500);
  c.quad_nodes = 20 * uniform_int(1, 6);
  c.qmax_scaled = uniform(1, 50);
  c.tolerance = std::pow(10.0, uniform(-12, -3));
  c.channel = static_cast<Channel>(uniform_int(0, 2));
  c.sweep_from = uniform(0.01, 1);
  c.sweep_to = uniform(1, 10);
  c.sweep_points = uniform_int(2, 40);
  c.temperature = uniform(0, 3);
  c.classical = uniform_int(0, 1) == 1;
  c.format = static_cast<OutputFormat>(uniform_int(0, 1));
  c.output_path = uniform_int(0, 1) ? "" : "out_" + std::to_string(uniform_int(0, 999)) + ".csv";
  return c;
}

int parse_args(std::vector<std::string> args, RunConfig& cfg) {
  CLI::App app;
  std::string path;
  configure_app(app, cfg, path);
  std::vector<const char*> argv{"parabolic-casimir"};
  for (auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError&) {
    return kUsage;
  }
  return kOk;
}

}  // namespace

TEST_CASE("config round trip") {
  for (int i = 0; i < 100; ++i) {
    const RunConfig c = random_config();
    CHECK(parse_config(serialize(c)) == c);
  }
}

TEST_CASE("config parsing") {
  const auto c = parse_config("# comment\n\ncommand = h-sweep\nradius = 2.5\nchannel = neumann\nclassical = true\n");
  CHECK(c.command == Command::HSweep);
  CHECK(c.radius == 2.5);
  CHECK(c.channel == Channel::Neumann);
  CHECK(c.classical);
  CHECK_THROWS_AS(parse_config("colour = blue"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("radius = wide"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("radius"), std::invalid_argument);
}

TEST_CASE("command line flags") {
  RunConfig cfg;
  REQUIRE(parse_args({"energy", "-R", "2", "-H", "0.5", "--angle", "30", "--numax", "80", "--channel", "dirichlet"},
                     cfg) == kOk);
  CHECK(cfg.command == Command::Energy);
  CHECK(cfg.radius == 2.0);
  CHECK(cfg.separation == 0.5);
  CHECK(cfg.angle_deg == 30.0);
  CHECK(cfg.numax == 80);
  CHECK(cfg.channel == Channel::Dirichlet);

  RunConfig other;
  CHECK(parse_args({}, other) == kUsage);
  CHECK(parse_args({"energy", "--numax", "many"}, other) == kUsage);
  CHECK(parse_args({"teleport"}, other) == kUsage);
}

TEST_CASE("csv escaping") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_escape("two\nlines") == "\"two\nlines\"");

  Table t{{"name", "value", "n", "ok"}, {{std::string("x,y"), 0.1, 3, true}}};
  std::ostringstream os;
  write_csv(os, t, {"radius = 1"});
  CHECK(os.str() == "# radius = 1\nname,value,n,ok\n\"x,y\",0.1,3,true\n");
}

TEST_CASE("json lines output") {
  Table t{{"name", "value"}, {{std::string("a"), 1.5}, {std::string("b"), -2.0}}};
  std::ostringstream os;
  write_json_lines(os, t);
  std::istringstream in(os.str());
  std::string line;
  std::vector<nlohmann::json> rows;
  while (std::getline(in, line)) rows.push_back(nlohmann::json::parse(line));
  REQUIRE(rows.size() == 2);
  CHECK(rows[0]["name"] == "a");
  CHECK(rows[1]["value"] == -2.0);
}

TEST_CASE("run exit codes") {
  RunConfig cfg;
  cfg.command = Command::Pfa;
  cfg.radius = 1.0;
  std::ostringstream ok;
  CHECK(run(cfg, ok) == kOk);
  CHECK(ok.str().find("pfa") != std::string::npos);

  cfg.separation = -1.0;
  std::ostringstream bad;
  CHECK(run(cfg, bad) == kUsage);

  cfg = RunConfig{};
  cfg.command = Command::Energy;
  cfg.numax = 8;
  cfg.format = OutputFormat::Json;
  std::ostringstream js;
  CHECK(run(cfg, js) == kOk);
  const auto row = nlohmann::json::parse(js.str().substr(0, js.str().find('\n')));
  CHECK(row["energy"].get<double>() < 0);
}
