#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace casimir::testing {

/// One record of tests/fixtures/specfun.txt.
struct FixtureRecord {
  std::string family;
  int n = 0;
  double x = 0;
  int sign = 0;
  double logmag = 0;
};

inline std::vector<FixtureRecord> load_fixtures(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open fixture table " + path);
  std::vector<FixtureRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    FixtureRecord r;
    if (ls >> r.family >> r.n >> r.x >> r.sign >> r.logmag) out.push_back(r);
  }
  return out;
}

}  // namespace casimir::testing
