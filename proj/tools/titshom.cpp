// titshom: verification suites and calculators over the library.
//
// Exit status: 0 when every check passes, 1 when some check fails, 2 on
// usage or input errors.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "report.hpp"
#include "suites.hpp"
#include "titshom/actions.hpp"
#include "titshom/bounds.hpp"
#include "titshom/errors.hpp"
#include "titshom/fq_groups.hpp"
#include "titshom/integral_symbols.hpp"
#include "titshom/part6.hpp"

using namespace titshom;
using namespace titshom::cli;

namespace {

struct Globals {
  std::optional<int> n, q, count;
  std::string report;
  uint64_t seed = 1;
  size_t budget = 2'000'000;
  unsigned jobs = 0;
  bool timings = false;
  bool quiet = false;
};

SuiteParams params_from(const Globals& g) {
  SuiteParams p;
  p.n = g.n;
  p.q = g.q;
  p.count = g.count;
  p.seed = g.seed;
  p.budget = g.budget;
  p.jobs = g.jobs;
  return p;
}

CheckResult info_check(std::string description, std::string anchor, std::string computed) {
  CheckResult c;
  c.description = std::move(description);
  c.anchor = std::move(anchor);
  c.expected = "-";
  c.computed = std::move(computed);
  c.pass = true;
  return c;
}

int finish(const Globals& g, const std::vector<SuiteReport>& reports) {
  bool ok = true;
  for (const auto& r : reports) {
    if (!g.quiet) std::cout << to_text(r);
    ok = ok && r.ok();
  }
  if (!g.report.empty()) write_report(g.report, reports, g.timings);
  return ok ? 0 : 1;
}

// "0,1;2,3" -> blocks {0,1} and {2,3}
std::vector<std::vector<int>> parse_blocks(const std::string& text) {
  std::vector<std::vector<int>> blocks;
  std::stringstream groups(text);
  std::string group;
  while (std::getline(groups, group, ';')) {
    std::vector<int> b;
    std::stringstream items(group);
    std::string item;
    while (std::getline(items, item, ',')) {
      try {
        size_t used = 0;
        b.push_back(std::stoi(item, &used));
        if (item.find_first_not_of(" \t", used) != std::string::npos) throw ParseError(item);
      } catch (const std::logic_error&) {
        throw ParseError("bad block entry '" + item + "'");
      }
    }
    if (!b.empty()) blocks.push_back(std::move(b));
  }
  return blocks;
}

SuiteReport reduce_report(const std::vector<std::string>& symbols, bool verbose) {
  SuiteReport r;
  r.suite = "reduce";
  for (const auto& text : symbols) {
    auto s = ApartmentSymbol::parse(text);
    auto res = ash_rudolph(s);
    SteinbergChainQ sum;
    std::string combo;
    for (const auto& [c, t] : res.terms) {
      add_chain(sum, apartment_eval(t), c);
      combo += (combo.empty() ? "" : " + ") + c.to_string() + t.to_string();
    }
    if (verbose) std::cout << s.to_string() << " = " << (combo.empty() ? "0" : combo) << '\n';
    const bool uni = res.all_unimodular(), dec = res.determinants_decrease(), eq = sum == apartment_eval(s);
    std::string got = std::string(uni ? "unimodular" : "not unimodular") + ", " +
                      (dec ? "determinants decrease" : "determinants do not decrease") + ", " +
                      (eq ? "chain preserved" : "chain differs");
    r.checks.push_back(make_check("reduce " + s.to_string() + " -> " + (combo.empty() ? "0" : combo),
                                  "unimodular reduction",
                                  "unimodular, determinants decrease, chain preserved", got));
  }
  return r;
}

std::string expected_coinvariants(const GroupSpec& spec, ModuleKind kind) {
  if (kind == ModuleKind::Trivial) return "Z";
  if (kind == ModuleKind::Steinberg) return spec.family == GroupFamily::Borel ? "Z" : "0";
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of Tits building and Steinberg module computations"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file; command-line flags take precedence");

  Globals g;
  app.add_option("--n", g.n, "rank / dimension");
  app.add_option("--q", g.q, "field size");
  app.add_option("--report", g.report, "write the report to PATH (.json, or .csv)");
  app.add_option("--seed", g.seed, "seed for randomized checks");
  app.add_option("--budget", g.budget, "flag enumeration budget");
  app.add_option("--count", g.count, "random samples per case");
  app.add_option("--jobs", g.jobs, "worker threads (0 = all cores)");
  app.add_flag("--timings", g.timings, "record elapsed_ms in reports (breaks byte stability)");
  app.add_flag("--quiet", g.quiet, "no per-check output");

  auto* building = app.add_subcommand("building", "Solomon-Tits checks for the building of F_q^n");
  auto* bar = app.add_subcommand("bar", "exactness of the bar resolution over F_q");
  auto* rank2 = app.add_subcommand("rank2", "rank-2 bottom row for GL_3(F_q)");

  auto* coinv = app.add_subcommand("coinv", "coinvariants / low-degree homology of a module");
  std::string group_spec, module_spec = "st";
  int degree = 0;
  coinv->add_option("--group", group_spec, "GL:n:q, SL:n:q or B:n:q")->required();
  coinv->add_option("--module", module_spec, "trivial, st, stst or chst");
  coinv->add_option("--degree", degree, "homology degree (0..2)")->check(CLI::Range(0, 2));

  auto* reduce = app.add_subcommand("reduce", "unimodular reduction of apartment symbols");
  std::string symbol, batch;
  auto* sym_opt = reduce->add_option("--symbol", symbol, "vectors separated by ';', e.g. \"1,0;1,2\"");
  reduce->add_option("--file", batch, "one symbol per line")->excludes(sym_opt);

  auto* byk = app.add_subcommand("bykovskii", "Bykovskii relations on generator shapes");

  auto* barset = app.add_subcommand("barset", "homology of restricted partition complexes");
  int size = 5;
  std::string blocks;
  barset->add_option("--size", size, "|S| (all restriction sets up to this size without --blocks)");
  barset->add_option("--blocks", blocks, "a single restriction set, e.g. \"0,1;2,3\"");

  auto* part6 = app.add_subcommand("part6", "Part VI claims and the κ/η certificate");
  std::string shape = "all";
  part6->add_option("--shape", shape, "all, frame, frame+pair, ...");

  auto* bounds = app.add_subcommand("bounds", "vanishing bound of a root system");
  std::string descriptor;
  bool integral = false;
  bounds->add_option("descriptor", descriptor, "e.g. A5, A1xA1, \"B3 x D4\", empty")->required();
  bounds->add_flag("--integral", integral, "integral (type A only) bound");

  auto* suite = app.add_subcommand("suite", "run registered suites");
  std::vector<std::string> suite_names;
  suite->add_option("names", suite_names, "suite names, or 'all'")->required();
  std::optional<int> suite_size;
  suite->add_option("--size", suite_size, "barset: largest |S|");
  suite->add_option("--shape", shape, "part6 shape");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    SuiteParams p = params_from(g);
    if (building->parsed()) {
      if (!p.n) p.n = 3;
      if (!p.q) p.q = 2;
      return finish(g, {run_suite("building", p)});
    }
    if (bar->parsed()) {
      if (!p.n) p.n = 2;
      if (!p.q) p.q = 2;
      return finish(g, {run_suite("bar", p)});
    }
    if (rank2->parsed()) {
      if (!p.q) p.q = 2;
      return finish(g, {run_suite("rank2", p)});
    }
    if (coinv->parsed()) {
      const auto spec = GroupSpec::parse(group_spec);
      const auto kind = parse_module_kind(module_spec);
      auto m = fq_module_action(spec, kind, degree > 0);
      const auto h = degree == 0 ? coinvariants(m) : group_homology(m, degree);
      SuiteReport r;
      r.suite = "coinv";
      r.parameters = {{"group", spec.to_string()}, {"module", to_string(kind)}, {"degree", std::to_string(degree)}};
      const std::string what = "H_" + std::to_string(degree) + "(" + spec.to_string() + "; " + to_string(kind) + ")";
      const std::string want = degree == 0 ? expected_coinvariants(spec, kind) : "";
      r.checks.push_back(want.empty() ? info_check(what, "group homology", h.to_string())
                                      : make_check(what, "Steinberg coinvariants", want, h.to_string()));
      return finish(g, {r});
    }
    if (reduce->parsed()) {
      std::vector<std::string> symbols;
      if (!symbol.empty()) symbols.push_back(symbol);
      if (!batch.empty()) {
        std::ifstream in(batch);
        if (!in) throw InvalidArgument("cannot read " + batch);
        for (std::string line; std::getline(in, line);)
          if (line.find_first_not_of(" \t\r") != std::string::npos && line[0] != '#') symbols.push_back(line);
      }
      if (symbols.empty()) throw InvalidArgument("give --symbol or --file");
      return finish(g, {reduce_report(symbols, !g.quiet)});
    }
    if (byk->parsed()) return finish(g, {run_suite("bykovskii", p)});
    if (barset->parsed()) {
      if (blocks.empty()) {
        p.size = size;
        return finish(g, {run_suite("barset", p)});
      }
      RestrictionSet rs{size, parse_blocks(blocks)};
      rs.validate();
      std::vector<HomologyGroup> want(static_cast<size_t>(rs.size));
      want[static_cast<size_t>(rs.d() - 1)] = HomologyGroup{1, {}};
      auto h = all_homology(zcomplex(rs));
      auto join = [](const std::vector<HomologyGroup>& v) {
        std::string s;
        for (size_t i = 0; i < v.size(); ++i) s += (i ? " | " : "") + v[i].to_string();
        return s;
      };
      SuiteReport r;
      r.suite = "barset";
      r.parameters = {{"restriction", rs.to_string()}, {"size", std::to_string(rs.size)}};
      r.checks.push_back(make_check("Z(" + rs.to_string() + "), d=" + std::to_string(rs.d()),
                                    "restricted partition complex", join(want), join(h)));
      return finish(g, {r});
    }
    if (part6->parsed()) {
      if (!p.n) p.n = 4;
      p.shape = shape;
      return finish(g, {run_suite("part6", p)});
    }
    if (bounds->parsed()) {
      const auto d = RootSystemDescriptor::parse(descriptor);
      const int b = vanishing_bound(d, integral ? BoundMode::Integral : BoundMode::Field);
      if (g.report.empty()) {
        std::cout << b << '\n';
        return 0;
      }
      SuiteReport r;
      r.suite = "bounds";
      r.parameters = {{"descriptor", d.to_string()}, {"mode", integral ? "integral" : "field"}};
      r.checks.push_back(info_check("b(" + d.to_string() + ")", "vanishing bounds", std::to_string(b)));
      std::cout << b << '\n';
      write_report(g.report, {r}, g.timings);
      return 0;
    }
    if (suite->parsed()) {
      if (suite_names.size() == 1 && suite_names[0] == "all") suite_names = registered_suites();
      p.size = suite_size;
      p.shape = shape;
      std::vector<SuiteReport> reports;
      for (const auto& name : suite_names) reports.push_back(run_suite(name, p));
      return finish(g, reports);
    }
  } catch (const titshom::Error& e) {
    std::cerr << "titshom: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
