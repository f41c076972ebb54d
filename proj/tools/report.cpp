#include "report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "titshom/errors.hpp"

namespace titshom::cli {

bool SuiteReport::ok() const { return failures() == 0; }

size_t SuiteReport::failures() const {
  return static_cast<size_t>(std::count_if(checks.begin(), checks.end(),
                                           [](const CheckResult& c) { return !c.pass; }));
}

namespace {

double rounded_ms(double ms) { return static_cast<double>(static_cast<long long>(ms * 1000.0 + 0.5)) / 1000.0; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

nlohmann::ordered_json to_json(const SuiteReport& r, bool timings) {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["suite"] = r.suite;
  j["parameters"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.parameters) j["parameters"][k] = v;
  j["pass"] = r.ok();
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json e;
    e["description"] = c.description;
    e["anchor"] = c.anchor;
    e["expected"] = c.expected;
    e["computed"] = c.computed;
    e["pass"] = c.pass;
    e["elapsed_ms"] = timings ? rounded_ms(c.elapsed_ms) : 0.0;
    j["checks"].push_back(std::move(e));
  }
  return j;
}

nlohmann::ordered_json to_json(const std::vector<SuiteReport>& rs, bool timings) {
  if (rs.size() == 1) return to_json(rs.front(), timings);
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["pass"] = std::all_of(rs.begin(), rs.end(), [](const SuiteReport& r) { return r.ok(); });
  j["suites"] = nlohmann::ordered_json::array();
  for (const auto& r : rs) j["suites"].push_back(to_json(r, timings));
  return j;
}

std::string to_csv(const std::vector<SuiteReport>& rs, bool timings) {
  std::ostringstream os;
  os << "suite,description,anchor,expected,computed,pass,elapsed_ms\n";
  for (const auto& r : rs)
    for (const auto& c : r.checks) {
      os << csv_field(r.suite) << ',' << csv_field(c.description) << ',' << csv_field(c.anchor) << ','
         << csv_field(c.expected) << ',' << csv_field(c.computed) << ',' << (c.pass ? "true" : "false")
         << ',' << (timings ? rounded_ms(c.elapsed_ms) : 0.0) << '\n';
    }
  return os.str();
}

std::string to_text(const SuiteReport& r) {
  std::ostringstream os;
  os << "suite " << r.suite;
  for (const auto& [k, v] : r.parameters) os << ' ' << k << '=' << v;
  os << '\n';
  for (const auto& c : r.checks) {
    os << (c.pass ? "  PASS  " : "  FAIL  ") << c.description << ": " << c.computed;
    if (!c.pass) os << " (expected " << c.expected << ')';
    os << '\n';
  }
  os << "  " << r.checks.size() - r.failures() << '/' << r.checks.size() << " checks passed\n";
  return os.str();
}

void write_report(const std::string& path, const std::vector<SuiteReport>& rs, bool timings) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write report to " + path);
  const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  if (csv)
    out << to_csv(rs, timings);
  else
    out << to_json(rs, timings).dump(2) << '\n';
}

}  // namespace titshom::cli
