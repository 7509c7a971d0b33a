#include <CLI11.hpp>

#include <cstring>
#include <fstream>
#include <iostream>

#include "cli/config.hpp"
#include "cli/run.hpp"

int main(int argc, char** argv) {
  using namespace casimir::cli;
  RunConfig cfg;

  // --config is applied first so that explicit flags override the file
  for (int i = 1; i < argc; ++i) {
    std::string path;
    if (std::strcmp(argv[i], "--config") == 0 && i + 1 < argc) path = argv[i + 1];
    else if (std::strncmp(argv[i], "--config=", 9) == 0) path = argv[i] + 9;
    if (path.empty()) continue;
    try {
      cfg = load_config_file(path, cfg);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kUsage;
    }
  }

  CLI::App app{"Casimir energy of a parabolic cylinder facing a plane"};
  std::string config_path;
  configure_app(app, cfg, config_path);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  if (cfg.output_path.empty()) return run(cfg, std::cout);
  std::ofstream out(cfg.output_path);
  if (!out) {
    std::cerr << "error: cannot write '" << cfg.output_path << "'\n";
    return kFailed;
  }
  return run(cfg, out);
}
