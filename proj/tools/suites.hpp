#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "report.hpp"

namespace titshom::cli {

struct SuiteParams {
  std::optional<int> n;
  std::optional<int> q;
  std::optional<int> size;   // barset: largest |S|
  std::optional<int> count;  // random samples per case
  std::string shape = "all"; // part6
  uint64_t seed = 1;
  size_t budget = 2'000'000; // flag budget for building enumerations
  unsigned jobs = 0;         // 0: one worker per hardware thread
};

const std::vector<std::string>& registered_suites();

// Throws UnknownSuite; BudgetExceeded from any check propagates.  Other
// errors become failed checks.
SuiteReport run_suite(const std::string& name, const SuiteParams& params);

// A unit of work producing one or more checks, run on the worker pool.
using Job = std::function<std::vector<CheckResult>()>;

// Runs jobs concurrently; results are concatenated in job order.
std::vector<CheckResult> run_jobs(const std::vector<Job>& jobs, unsigned workers);

// Shorthand for a check whose verdict is expected == computed.
CheckResult make_check(std::string description, std::string anchor, std::string expected,
                       std::string computed);

}  // namespace titshom::cli
