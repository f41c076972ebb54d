#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace titshom::cli {

inline constexpr int kReportSchema = 1;

struct CheckResult {
  std::string description;
  std::string anchor;  // what the check is about, e.g. "Solomon-Tits"
  std::string expected;
  std::string computed;
  bool pass = false;
  double elapsed_ms = 0;
};

struct SuiteReport {
  std::string suite;
  std::map<std::string, std::string> parameters;
  std::vector<CheckResult> checks;

  bool ok() const;
  size_t failures() const;
};

// Timings are the only run-dependent field; leave them out (written as 0)
// for byte-stable output.
nlohmann::ordered_json to_json(const SuiteReport& r, bool timings = false);
nlohmann::ordered_json to_json(const std::vector<SuiteReport>& rs, bool timings = false);
std::string to_csv(const std::vector<SuiteReport>& rs, bool timings = false);

// Plain-text summary, one line per check.
std::string to_text(const SuiteReport& r);

// Writes JSON, or CSV when the path ends in ".csv".
void write_report(const std::string& path, const std::vector<SuiteReport>& rs, bool timings = false);

}  // namespace titshom::cli
