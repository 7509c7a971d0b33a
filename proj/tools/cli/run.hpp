#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "cli/config.hpp"

namespace casimir::cli {

using Cell = std::variant<std::string, double, int, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// `# key = value` metadata lines, the header, then one RFC 4180 row per
/// record.  Doubles use the shortest round-trip form.
void write_csv(std::ostream& os, const Table& table, const std::vector<std::string>& metadata);

/// One JSON object per row.
void write_json_lines(std::ostream& os, const Table& table);

std::string csv_escape(const std::string& field);

enum ExitStatus { kOk = 0, kFailed = 1, kUsage = 2 };

/// Runs the configured command, writing the table to `os`.  Physical-regime
/// and accuracy failures are reported in the output and give kFailed.
int run(const RunConfig& cfg, std::ostream& os);

/// The command's result table; throws on numerical failure.
Table compute(const RunConfig& cfg);

}  // namespace casimir::cli
