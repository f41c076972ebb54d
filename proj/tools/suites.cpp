#include "suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "titshom/bar_fq.hpp"
#include "titshom/bounds.hpp"
#include "titshom/chain_complex.hpp"
#include "titshom/errors.hpp"
#include "titshom/fq_building.hpp"
#include "titshom/fq_groups.hpp"
#include "titshom/integral_symbols.hpp"
#include "titshom/part6.hpp"
#include "titshom/smith.hpp"

namespace titshom::cli {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

size_t ipow(size_t b, int e) {
  size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::string ratio(size_t k, size_t n) { return std::to_string(k) + "/" + std::to_string(n); }

std::string join_homology(const std::vector<HomologyGroup>& h) {
  std::string s;
  for (size_t i = 0; i < h.size(); ++i) s += (i ? " | " : "") + h[i].to_string();
  return s;
}

std::string pair_name(int n, int q) { return "n=" + std::to_string(n) + " q=" + std::to_string(q); }

std::vector<std::pair<int, int>> fq_cases(const SuiteParams& p, std::vector<std::pair<int, int>> defaults) {
  if (!p.n && !p.q) return defaults;
  return {{p.n.value_or(2), p.q.value_or(2)}};
}

EnumerationOptions enum_options(const SuiteParams& p) {
  EnumerationOptions opt;
  opt.flag_budget = p.budget;
  return opt;
}

// ---------------------------------------------------------------- linalg

DenseIntMatrix random_matrix(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(1, 8), entry(-9, 9);
  DenseIntMatrix a(static_cast<size_t>(dim(rng)), static_cast<size_t>(dim(rng)));
  for (size_t r = 0; r < a.rows(); ++r)
    for (size_t c = 0; c < a.cols(); ++c) a(r, c) = Integer(entry(rng));
  return a;
}

std::vector<Job> linalg_jobs(const SuiteParams& p) {
  const size_t count = static_cast<size_t>(p.count.value_or(50));
  const uint64_t seed = p.seed;
  return {[count, seed] {
    std::mt19937_64 rng(seed);
    size_t transforms = 0, chain = 0, unimodular = 0, ranks = 0, sparse = 0;
    for (size_t t = 0; t < count; ++t) {
      DenseIntMatrix a = random_matrix(rng);
      SmithForm s = snf_dense(a, true);
      DenseIntMatrix d(a.rows(), a.cols());
      for (size_t i = 0; i < s.diagonal.size(); ++i) d(i, i) = s.diagonal[i];
      transforms += (*s.U * a * *s.V) == d;
      bool divides = true;
      for (size_t i = 1; i < s.diagonal.size(); ++i)
        divides = divides && (s.diagonal[i] % s.diagonal[i - 1]).is_zero();
      chain += divides;
      unimodular += abs(determinant(*s.U)).is_one() && abs(determinant(*s.V)).is_one();
      ranks += s.rank == rank_q(a);
      sparse += snf(SparseIntMatrix::from_dense(a)).diagonal == s.diagonal;
    }
    const std::string all = ratio(count, count);
    return std::vector<CheckResult>{
        make_check("U·A·V equals the Smith diagonal", "Smith normal form", all, ratio(transforms, count)),
        make_check("diagonal is a divisibility chain", "Smith normal form", all, ratio(chain, count)),
        make_check("transforms are unimodular", "Smith normal form", all, ratio(unimodular, count)),
        make_check("rank agrees with rank over Q", "Smith normal form", all, ratio(ranks, count)),
        make_check("sparse and dense elimination agree", "Smith normal form", all, ratio(sparse, count))};
  }};
}

// ---------------------------------------------------------------- building

std::vector<Job> building_jobs(const SuiteParams& p) {
  std::vector<Job> jobs;
  const auto opt = enum_options(p);
  for (auto [n, q] : fq_cases(p, {{2, 2}, {2, 3}, {3, 2}})) {
    jobs.push_back([n, q, opt] {
      std::vector<CheckResult> out;
      const std::string tag = " (" + pair_name(n, q) + ")";
      TitsBuilding b(n, q, opt);
      const size_t top = ipow(static_cast<size_t>(q), n * (n - 1) / 2);
      size_t chambers = 1;
      for (int k = 2; k <= n; ++k) chambers *= (ipow(static_cast<size_t>(q), k) - 1) / static_cast<size_t>(q - 1);
      out.push_back(make_check("chamber count" + tag, "Gaussian flag count", std::to_string(chambers),
                               std::to_string(b.chambers().size())));
      std::vector<HomologyGroup> expected(static_cast<size_t>(n));
      expected.back() = HomologyGroup{top, {}};
      out.push_back(make_check("reduced homology, degrees -1..n-2" + tag, "Solomon-Tits",
                               join_homology(expected), join_homology(all_homology(b.complex()))));
      out.push_back(make_check("Steinberg rank" + tag, "Solomon-Tits", std::to_string(top),
                               std::to_string(steinberg(b).kernel.cols())));
      auto a = apartment_class_fq(b, FqMatrix::identity(n));
      auto image = b.complex().boundary(n - 2).apply(a);
      const bool cycle = std::all_of(image.begin(), image.end(), [](const Integer& x) { return x.is_zero(); });
      out.push_back(make_check("standard apartment is a cycle" + tag, "apartment classes", "true",
                               cycle ? "true" : "false"));
      if (top <= 729) {
        auto chk = unipotent_basis_check(n, q, opt);
        out.push_back(make_check("unipotent apartments form a basis" + tag, "Solomon-Tits basis", "true",
                                 chk.unimodular() ? "true" : "false"));
      }
      if (n <= 3) {
        FqMatrix u = bruhat_witness(n, q);
        out.push_back(make_check("Bruhat witness verified" + tag, "big cell witness", "true",
                                 verify_bruhat_witness(b.field(), u) ? "true" : "false"));
      }
      return out;
    });
  }
  return jobs;
}

// ---------------------------------------------------------------- bar, rank2

std::vector<Job> bar_jobs(const SuiteParams& p) {
  std::vector<Job> jobs;
  const auto opt = enum_options(p);
  for (auto [n, q] : fq_cases(p, {{2, 2}, {2, 3}, {3, 2}})) {
    jobs.push_back([n, q, opt] {
      const std::string tag = " (" + pair_name(n, q) + ")";
      auto r = verify_bar_exactness(n, q, opt);
      std::vector<CheckResult> out;
      std::vector<HomologyGroup> lower, zero(r.lower.size());
      for (const auto& v : r.lower) lower.push_back(v.homology);
      out.push_back(make_check("homology in degrees -1..n-3" + tag, "bar resolution exactness",
                               join_homology(zero), join_homology(lower)));
      out.push_back(make_check("top kernel rank" + tag, "bar resolution exactness",
                               std::to_string(r.expected_top_rank), std::to_string(r.top_kernel_rank)));
      out.push_back(make_check("truncated Euler characteristic" + tag, "bar resolution exactness",
                               std::to_string(r.expected_top_rank), std::to_string(r.truncated_euler)));
      out.push_back(make_check("exact with the St⊗St term attached" + tag, "bar resolution exactness",
                               "0 | 0", r.top_homology.to_string() + " | " + r.augmentation_homology.to_string()));
      return out;
    });
  }
  return jobs;
}

std::vector<Job> rank2_jobs(const SuiteParams& p) {
  std::vector<Job> jobs;
  std::vector<int> qs = p.q ? std::vector<int>{*p.q} : std::vector<int>{2, 3};
  for (int q : qs) {
    jobs.push_back([q] {
      const std::string tag = " (q=" + std::to_string(q) + ")";
      auto r = rank2_e1_surjectivity(q);
      return std::vector<CheckResult>{
          make_check("E1_10 = (Z[chambers]⊗St)_G" + tag, "rank-2 bottom row", "Z", r.e1_10.to_string()),
          make_check("St_B" + tag, "rank-2 bottom row", "Z", r.st_borel.to_string()),
          make_check("F⊗x ↦ x[F] is invariant" + tag, "rank-2 bottom row", "true",
                     r.phi_invariant ? "true" : "false"),
          make_check("E1_20 → E1_10 surjective" + tag, "rank-2 bottom row", "true",
                     r.surjective ? "true" : "false"),
          make_check("image of A_1⊗A_u, u = " + r.witness + tag, "rank-2 bottom row", "1",
                     r.witness_value.to_string())};
    });
  }
  return jobs;
}

// ---------------------------------------------------------------- coinv

std::vector<Job> coinv_jobs(const SuiteParams& p) {
  std::vector<std::pair<std::string, std::string>> cases;  // spec, expected
  if (p.n || p.q) {
    const std::string nq = std::to_string(p.n.value_or(2)) + ":" + std::to_string(p.q.value_or(2));
    cases = {{"GL:" + nq, "0"}, {"SL:" + nq, "0"}, {"B:" + nq, "Z"}};
  } else {
    cases = {{"GL:2:2", "0"}, {"GL:2:3", "0"}, {"GL:3:2", "0"}, {"SL:2:3", "0"},
             {"B:2:2", "Z"},  {"B:2:3", "Z"},  {"B:2:5", "Z"},  {"B:3:2", "Z"}, {"B:3:3", "Z"}};
  }
  std::vector<Job> jobs;
  for (const auto& [spec, expected] : cases) {
    jobs.push_back([spec, expected] {
      auto m = fq_module_action(GroupSpec::parse(spec), ModuleKind::Steinberg);
      return std::vector<CheckResult>{
          make_check("St coinvariants under " + spec, "Steinberg coinvariants", expected,
                     coinvariants(m).to_string())};
    });
  }
  return jobs;
}

// ---------------------------------------------------------------- symbols

ApartmentSymbol random_symbol(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> entry(-9, 9);
  while (true) {
    std::vector<ZVector> cols(static_cast<size_t>(n), ZVector(static_cast<size_t>(n)));
    bool zero = false;
    for (auto& c : cols) {
      for (auto& x : c) x = Integer(entry(rng));
      zero = zero || std::all_of(c.begin(), c.end(), [](const Integer& x) { return x.is_zero(); });
    }
    if (zero) continue;
    auto s = ApartmentSymbol::from_vectors(cols);
    if (!s.det().is_zero()) return s;
  }
}

std::vector<Job> symbols_jobs(const SuiteParams& p) {
  std::vector<Job> jobs;
  jobs.push_back([] {
    auto r = ash_rudolph(ApartmentSymbol::parse("1,0;1,2"));
    std::string got;
    for (const auto& [c, t] : r.terms) got += (got.empty() ? "" : " + ") + c.to_string() + t.to_string();
    return std::vector<CheckResult>{make_check("reduce [(1,0),(1,2)]", "unimodular reduction",
                                               "1[(1,0),(1,1)] + 1[(1,1),(1,2)]", got)};
  });
  std::vector<int> ns = p.n ? std::vector<int>{*p.n} : std::vector<int>{2, 3};
  const size_t count = static_cast<size_t>(p.count.value_or(100));
  for (int n : ns) {
    jobs.push_back([n, count, seed = p.seed] {
      std::mt19937_64 rng(seed + static_cast<uint64_t>(n));
      size_t uni = 0, dec = 0, eq = 0;
      for (size_t t = 0; t < count; ++t) {
        auto s = random_symbol(n, rng);
        auto r = ash_rudolph(s);
        uni += r.all_unimodular();
        dec += r.determinants_decrease();
        SteinbergChainQ sum;
        for (const auto& [c, term] : r.terms) add_chain(sum, apartment_eval(term), c);
        eq += sum == apartment_eval(s);
      }
      const std::string tag = " (n=" + std::to_string(n) + ")";
      const std::string all = ratio(count, count);
      return std::vector<CheckResult>{
          make_check("outputs unimodular" + tag, "unimodular reduction", all, ratio(uni, count)),
          make_check("determinant decreases per level" + tag, "unimodular reduction", all, ratio(dec, count)),
          make_check("chain evaluation preserved" + tag, "unimodular reduction", all, ratio(eq, count))};
    });
  }
  return jobs;
}

// ---------------------------------------------------------------- bykovskii

std::vector<ZLine> lines_of(const std::vector<ZVector>& v) {
  std::vector<ZLine> out;
  for (const auto& x : v) out.push_back(line_of(x));
  return out;
}

std::vector<Job> bykovskii_jobs(const SuiteParams& p) {
  std::vector<Job> jobs;
  std::vector<int> ns = p.n ? std::vector<int>{*p.n} : std::vector<int>{2, 3, 4};
  const size_t count = static_cast<size_t>(p.count.value_or(20));
  for (int n : ns) {
    for (XShape shape : all_shapes()) {
      if (shape_degree(shape) == 0 || shape_min_rank(shape) > n) continue;
      jobs.push_back([n, shape, count, seed = p.seed] {
        std::mt19937_64 rng(seed * 31 + static_cast<uint64_t>(n));
        size_t total = 0, zero = 0;
        for (size_t rep = 0; rep < count; ++rep) {
          auto basis = random_unimodular_basis(n, rng);
          for (const auto& eps : sign_patterns(shape_sign_count(shape))) {
            auto lines = lines_of(shape_vectors(shape, basis, eps));
            auto cert = recognize_apf(lines);
            ++total;
            if (!cert) continue;
            auto gen = byk_generator(lines, *cert, n);
            auto d = byk_delta(gen.lines, n);
            zero += shape_degree(shape) == 1 ? byk_psi(d).empty() : byk_delta(d, n).empty();
          }
        }
        const std::string rel = shape_degree(shape) == 1 ? "ψ∘δ = 0" : "δ∘δ = 0";
        return std::vector<CheckResult>{make_check(rel + " on " + to_string(shape) + " (n=" + std::to_string(n) + ")",
                                                   "Bykovskii relations", ratio(total, total), ratio(zero, total))};
      });
    }
  }
  return jobs;
}

// ---------------------------------------------------------------- barset

// One restriction set per multiset of block sizes, up to relabeling.
std::vector<RestrictionSet> restriction_sets(int m) {
  std::vector<RestrictionSet> out;
  std::vector<int> sizes;
  std::function<void(int, int)> rec = [&](int left, int max_part) {
    RestrictionSet r;
    r.size = m;
    int next = 0;
    for (int s : sizes) {
      std::vector<int> b;
      for (int i = 0; i < s; ++i) b.push_back(next++);
      r.blocks.push_back(b);
    }
    out.push_back(r);
    for (int part = std::min(left, max_part); part >= 1; --part) {
      sizes.push_back(part);
      rec(left - part, part);
      sizes.pop_back();
    }
  };
  rec(m, m);
  return out;
}

std::vector<HomologyGroup> barset_prediction(const RestrictionSet& r) {
  std::vector<HomologyGroup> h(static_cast<size_t>(r.size));
  h[static_cast<size_t>(r.d() - 1)] = HomologyGroup{1, {}};
  return h;
}

std::vector<Job> barset_jobs(const SuiteParams& p) {
  const int size = p.size.value_or(5);
  if (size < 1) throw InvalidArgument("barset size must be positive");
  if (size > kZComplexMaxSize) throw BudgetExceeded("|S| = " + std::to_string(size));
  std::vector<Job> jobs;
  for (int m = 1; m <= size; ++m)
    for (const auto& r : restriction_sets(m))
      jobs.push_back([r] {
        return std::vector<CheckResult>{make_check("Z(" + r.to_string() + "), d=" + std::to_string(r.d()),
                                                   "restricted partition complex",
                                                   join_homology(barset_prediction(r)),
                                                   join_homology(all_homology(zcomplex(r))))};
      });
  return jobs;
}

// ---------------------------------------------------------------- part6

std::string eps_string(const std::vector<int>& eps) {
  std::string s = "(";
  for (size_t i = 0; i < eps.size(); ++i) s += (i ? "," : "") + std::string(eps[i] > 0 ? "+" : "-");
  return s + ")";
}

std::vector<Job> part6_jobs(const SuiteParams& p) {
  const int n = p.n.value_or(4);
  std::vector<XShape> shapes;
  if (p.shape == "all") {
    for (XShape s : all_shapes())
      if (shape_min_rank(s) <= n) shapes.push_back(s);
  } else {
    auto all = all_shapes();
    auto it = std::find_if(all.begin(), all.end(), [&](XShape s) { return to_string(s) == p.shape; });
    if (it == all.end()) throw InvalidArgument("unknown shape '" + p.shape + "'");
    if (shape_min_rank(*it) > n) throw ShapeUnavailable(p.shape + " needs n >= " + std::to_string(shape_min_rank(*it)));
    shapes.push_back(*it);
  }
  if (n < 2 || n > 6) throw InvalidArgument("n must be in 2..6");
  std::vector<Job> jobs;
  for (XShape s : shapes) {
    jobs.push_back([n, s] {
      std::vector<CheckResult> out;
      for (const auto& c : part6_claims(n, s).checks) {
        std::string got = c.claim_holds ? "holds" : "fails";
        got += c.matches_lemma ? ", matches Z(S,r)" : ", differs from Z(S,r)";
        if (c.kappa_generates) got += *c.kappa_generates ? ", [κ] generates H_0" : ", [κ] does not generate H_0";
        std::string want = "holds, matches Z(S,r)";
        if (c.kappa_generates) want += ", [κ] generates H_0";
        auto chk = make_check(c.claim + " " + to_string(s) + " " + eps_string(c.eps) + ": H = " +
                                  join_homology(c.homology),
                              "Part VI claims", want, got);
        chk.elapsed_ms = c.elapsed_ms;
        out.push_back(std::move(chk));
      }
      return out;
    });
  }
  const bool kappa = n == 4 && (p.shape == "all" || p.shape == to_string(XShape::X1Triple));
  if (kappa) {
    std::mt19937_64 rng(p.seed);
    std::vector<std::vector<ZVector>> bases{standard_basis(4)};
    for (int i = 0; i < p.count.value_or(2); ++i) bases.push_back(random_unimodular_basis(4, rng));
    for (size_t bi = 0; bi < bases.size(); ++bi)
      for (const auto& eps : sign_patterns(3))
        jobs.push_back([basis = bases[bi], eps, bi] {
          std::string got;
          try {
            got = kappa_eta_certificate(basis, eps).ok() ? "all steps verified" : "no steps";
          } catch (const CertificateFailure& e) {
            got = "failed at " + e.step();
          }
          return std::vector<CheckResult>{make_check(
              "κ/η certificate, basis " + std::to_string(bi) + " " + eps_string(eps), "κ/η certificate",
              "all steps verified", got)};
        });
  }
  return jobs;
}

// ---------------------------------------------------------------- bounds

std::vector<Job> bounds_jobs(const SuiteParams&) {
  std::vector<Job> jobs;
  jobs.push_back([] {
    const std::vector<std::tuple<std::string, BoundMode, int>> table{
        {"A5", BoundMode::Field, 2},      {"empty", BoundMode::Field, -1}, {"A1xA1", BoundMode::Field, 1},
        {"A3", BoundMode::Field, 1},      {"B3", BoundMode::Field, 0},     {"C4", BoundMode::Field, 1},
        {"BC5", BoundMode::Field, 1},     {"D5", BoundMode::Field, 1},     {"D3", BoundMode::Field, 1},
        {"E8", BoundMode::Field, 0},      {"A3xB4", BoundMode::Field, 3},  {"A4", BoundMode::Integral, 1},
        {"A7", BoundMode::Integral, 2},   {"A4xA4", BoundMode::Integral, 3}};
    std::vector<CheckResult> out;
    for (const auto& [text, mode, want] : table) {
      const auto d = RootSystemDescriptor::parse(text);
      out.push_back(make_check(std::string("b(") + d.to_string() + ")" + (mode == BoundMode::Integral ? ", integral" : ""),
                               "vanishing bounds", std::to_string(want), std::to_string(vanishing_bound(d, mode))));
    }
    return out;
  });
  jobs.push_back([] {
    auto d = RootSystemDescriptor::parse("A2xB3xD5");
    const int want = vanishing_bound(d);
    size_t same = 0, total = 0;
    std::sort(d.factors.begin(), d.factors.end(),
              [](const RootFactor& a, const RootFactor& b) { return to_string(a) < to_string(b); });
    do {
      ++total;
      same += vanishing_bound(d) == want;
    } while (std::next_permutation(d.factors.begin(), d.factors.end(), [](const RootFactor& a, const RootFactor& b) {
      return to_string(a) < to_string(b);
    }));
    return std::vector<CheckResult>{
        make_check("invariant under factor reordering (A2xB3xD5)", "vanishing bounds", ratio(total, total),
                   ratio(same, total))};
  });
  jobs.push_back([] {
    auto sweep = floor_inequality_sweep();
    return std::vector<CheckResult>{make_check("1+⌊a/d⌋+⌊b/d⌋ ≥ ⌊(a+b+1)/d⌋, |a|,|b| ≤ 20, 2 ≤ d ≤ 5",
                                               "floor inequality", "0 failures of " + std::to_string(sweep.checked),
                                               std::to_string(sweep.failures) + " failures of " +
                                                   std::to_string(sweep.checked))};
  });
  return jobs;
}

using SuiteFn = std::vector<Job> (*)(const SuiteParams&);

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> r{
      {"linalg", linalg_jobs}, {"building", building_jobs}, {"bar", bar_jobs},
      {"rank2", rank2_jobs},   {"coinv", coinv_jobs},       {"symbols", symbols_jobs},
      {"bykovskii", bykovskii_jobs}, {"barset", barset_jobs}, {"part6", part6_jobs},
      {"bounds", bounds_jobs}};
  return r;
}

std::map<std::string, std::string> describe(const SuiteParams& p) {
  std::map<std::string, std::string> out;
  if (p.n) out["n"] = std::to_string(*p.n);
  if (p.q) out["q"] = std::to_string(*p.q);
  if (p.size) out["size"] = std::to_string(*p.size);
  if (p.count) out["count"] = std::to_string(*p.count);
  out["seed"] = std::to_string(p.seed);
  out["budget"] = std::to_string(p.budget);
  return out;
}

}  // namespace

const std::vector<std::string>& registered_suites() {
  static const std::vector<std::string> names{"linalg", "building", "bar",    "rank2", "coinv",
                                              "symbols", "bykovskii", "barset", "part6", "bounds"};
  return names;
}

CheckResult make_check(std::string description, std::string anchor, std::string expected, std::string computed) {
  CheckResult c;
  c.description = std::move(description);
  c.anchor = std::move(anchor);
  c.pass = expected == computed;
  c.expected = std::move(expected);
  c.computed = std::move(computed);
  return c;
}

std::vector<CheckResult> run_jobs(const std::vector<Job>& jobs, unsigned workers) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<size_t>(jobs.size(), 1)));
  std::vector<std::vector<CheckResult>> slots(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < jobs.size(); i = next++) {
      const auto t0 = Clock::now();
      try {
        slots[i] = jobs[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
      const double ms = ms_since(t0);
      for (auto& c : slots[i])
        if (c.elapsed_ms == 0) c.elapsed_ms = ms / static_cast<double>(slots[i].size());
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<CheckResult> out;
  for (size_t i = 0; i < jobs.size(); ++i) {
    if (errors[i]) {
      try {
        std::rethrow_exception(errors[i]);
      } catch (const BudgetExceeded&) {
        throw;
      } catch (const std::exception& e) {
        CheckResult c;
        c.description = "job " + std::to_string(i);
        c.expected = "completed";
        c.computed = std::string("error: ") + e.what();
        out.push_back(std::move(c));
      }
      continue;
    }
    for (auto& c : slots[i]) out.push_back(std::move(c));
  }
  return out;
}

SuiteReport run_suite(const std::string& name, const SuiteParams& params) {
  auto it = registry().find(name);
  if (it == registry().end()) throw UnknownSuite("'" + name + "'");
  SuiteReport r;
  r.suite = name;
  r.parameters = describe(params);
  r.checks = run_jobs(it->second(params), params.jobs);
  return r;
}

}  // namespace titshom::cli
