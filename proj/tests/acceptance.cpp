// Acceptance run: one line per criterion with its verdict, elapsed time and
// time limit.  Exit status is nonzero if any criterion fails or overruns.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles/minors.hpp"
#include "oracles/q_flags.hpp"
#include "support/barset.hpp"
#include "titshom/actions.hpp"
#include "titshom/bar_fq.hpp"
#include "titshom/bounds.hpp"
#include "titshom/chain_complex.hpp"
#include "titshom/errors.hpp"
#include "titshom/fq_building.hpp"
#include "titshom/fq_groups.hpp"
#include "titshom/integral_symbols.hpp"
#include "titshom/part6.hpp"
#include "titshom/smith.hpp"

using namespace titshom;

namespace {

// Empty on success, otherwise the first failure.
using Verdict = std::string;

struct Criterion {
  int id;
  std::string title;
  double limit_s;
  std::function<Verdict()> run;
};

template <class... Parts>
std::string cat(const Parts&... parts) {
  std::ostringstream os;
  (os << ... << parts);
  return os.str();
}

size_t ipow(size_t b, int e) {
  size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// ---------------------------------------------------------------- 1

Verdict snf_oracle() {
  std::mt19937_64 rng(20240);
  std::uniform_int_distribution<int> dim(1, 8), entry(-9, 9);
  for (int t = 0; t < 200; ++t) {
    const size_t rows = static_cast<size_t>(dim(rng)), cols = static_cast<size_t>(dim(rng));
    std::vector<std::vector<int64_t>> m(rows, std::vector<int64_t>(cols));
    SparseIntMatrix s(rows, cols);
    for (size_t r = 0; r < rows; ++r)
      for (size_t c = 0; c < cols; ++c) {
        m[r][c] = entry(rng);
        s.set(r, c, Integer(static_cast<long long>(m[r][c])));
      }
    auto want = oracle::invariant_factors(m);
    auto got = snf(s).diagonal;
    if (got.size() != want.size()) return cat("matrix ", t, ": rank ", got.size(), " vs ", want.size());
    for (size_t i = 0; i < want.size(); ++i)
      if (got[i] != Integer(static_cast<long long>(want[i])))
        return cat("matrix ", t, ": d_", i + 1, " = ", got[i].to_string(), ", minors give ", want[i]);
  }
  return {};
}

// ---------------------------------------------------------------- 2, 3

Verdict solomon_tits() {
  for (auto [n, q] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {2, 5}, {3, 2}, {3, 3}, {4, 2}}) {
    auto h = all_homology(building_complex(n, q));
    const size_t top = ipow(static_cast<size_t>(q), n * (n - 1) / 2);
    for (size_t k = 0; k < h.size(); ++k) {
      const HomologyGroup want = k + 2 == static_cast<size_t>(n) + 1 ? HomologyGroup{top, {}} : HomologyGroup{};
      if (h[k] != want)
        return cat("(", n, ",", q, ") H_", static_cast<int>(k) - 1, " = ", h[k].to_string(), ", want ",
                   want.to_string());
    }
  }
  return {};
}

Verdict unipotent_basis() {
  for (auto [n, q] : std::vector<std::pair<int, int>>{{3, 2}, {3, 3}}) {
    auto s = unipotent_basis_matrix(n, q);
    const size_t u = ipow(static_cast<size_t>(q), n * (n - 1) / 2);
    if (s.diagonal.size() != u) return cat("(", n, ",", q, ") rank ", s.diagonal.size(), " of ", u);
    for (const auto& d : s.diagonal)
      if (!d.is_one()) return cat("(", n, ",", q, ") invariant factor ", d.to_string());
  }
  return {};
}

// ---------------------------------------------------------------- 4-8

Verdict bar_exactness() {
  for (auto [n, q] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {2, 5}, {3, 2}}) {
    auto r = verify_bar_exactness(n, q);
    for (const auto& v : r.lower)
      if (!v.homology.is_zero()) return cat("(", n, ",", q, ") H_", v.degree, " = ", v.homology.to_string());
    const size_t want = ipow(static_cast<size_t>(q), n * (n - 1));
    if (r.top_kernel_rank != want) return cat("(", n, ",", q, ") top kernel rank ", r.top_kernel_rank, " vs ", want);
    if (!r.top_homology.torsion.empty() || !r.augmented_exact())
      return cat("(", n, ",", q, ") St⊗St term: ", r.top_homology.to_string(), " / ",
                 r.augmentation_homology.to_string());
  }
  return {};
}

Verdict coinvariants_vanish() {
  for (const char* g : {"GL:2:2", "GL:2:3", "GL:3:2", "SL:2:3"}) {
    auto h = coinvariants(fq_module_action(GroupSpec::parse(g), ModuleKind::Steinberg));
    if (!h.is_zero()) return cat(g, ": ", h.to_string());
  }
  return {};
}

Verdict borel_coinvariants() {
  for (const char* g : {"B:2:2", "B:2:3", "B:2:5", "B:3:2", "B:3:3"}) {
    auto h = coinvariants(fq_module_action(GroupSpec::parse(g), ModuleKind::Steinberg));
    if (!h.is_z()) return cat(g, ": ", h.to_string());
  }
  return {};
}

Verdict rank2_surjective() {
  for (int q : {2, 3}) {
    auto r = rank2_e1_surjectivity(q);
    if (!r.e1_10.is_z()) return cat("q=", q, ": E1_10 = ", r.e1_10.to_string());
    if (!r.surjective) return cat("q=", q, ": not surjective");
    if (!abs(r.witness_value).is_one()) return cat("q=", q, ": witness maps to ", r.witness_value.to_string());
  }
  return {};
}

Verdict bruhat() {
  for (int n : {2, 3})
    for (int q : {2, 3}) {
      const FieldTable& f = FieldTable::get(q);
      if (!verify_bruhat_witness(f, bruhat_witness(n, q))) return cat("(", n, ",", q, ") returned witness fails");
      // Every entry above the diagonal nonzero.
      for (int a = 1; a < q; ++a) {
        FqMatrix u = FqMatrix::identity(n);
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j) u(i, j) = a;
        if (!verify_bruhat_witness(f, u)) return cat("(", n, ",", q, ") ", u.to_string(), " fails");
      }
    }
  return {};
}

// ---------------------------------------------------------------- 9, 10

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

oracle::Chain oracle_eval(const ApartmentSymbol& s) {
  std::vector<oracle::V> cols;
  for (const auto& l : s.lines) {
    oracle::V v;
    for (const auto& x : l.v) v.push_back(x.small_value());
    cols.push_back(v);
  }
  return oracle::apartment(cols);
}

Verdict ash_rudolph_random() {
  for (int n : {2, 3}) {
    std::mt19937_64 rng(900 + static_cast<uint64_t>(n));
    for (int t = 0; t < 100; ++t) {
      auto s = random_symbol(n, rng);
      auto r = ash_rudolph(s);
      if (!r.all_unimodular()) return cat(s.to_string(), ": non-unimodular output");
      for (const auto& st : r.trace)
        for (const auto& c : st.children)
          if (!(c < st.det)) return cat(s.to_string(), ": determinant ", c.to_string(), " after ", st.det.to_string());
      oracle::Chain sum;
      SteinbergChainQ lib;
      for (const auto& [c, term] : r.terms) {
        oracle::add(sum, oracle_eval(term), c.small_value());
        add_chain(lib, apartment_eval(term), c);
      }
      if (sum != oracle_eval(s)) return cat(s.to_string(), ": oracle chains differ");
      if (lib != apartment_eval(s)) return cat(s.to_string(), ": chains differ");
    }
  }
  return {};
}

std::vector<ZLine> lines_of(const std::vector<ZVector>& v) {
  std::vector<ZLine> out;
  for (const auto& x : v) out.push_back(line_of(x));
  return out;
}

Verdict bykovskii_shape(XShape shape, int n, const std::vector<ZVector>& basis) {
  for (const auto& eps : sign_patterns(shape_sign_count(shape))) {
    auto lines = lines_of(shape_vectors(shape, basis, eps));
    auto cert = recognize_apf(lines);
    if (!cert) return cat(to_string(shape), " n=", n, ": not recognized");
    auto gen = byk_generator(lines, *cert, n);
    auto d = byk_delta(gen.lines, n);
    if (shape_degree(shape) == 1) {
      if (!byk_psi(d).empty()) return cat("ψδ ≠ 0 on ", to_string(shape), " n=", n);
      continue;
    }
    if (!byk_delta(d, n).empty()) return cat("δδ ≠ 0 on ", to_string(shape), " n=", n);
    for (const auto& [term, c] : d)
      if (!byk_psi(byk_delta(term, n)).empty()) return cat("ψδ ≠ 0 on a face of ", to_string(shape), " n=", n);
  }
  return {};
}

Verdict bykovskii() {
  for (int n : {2, 3, 4}) {
    std::mt19937_64 rng(77 + static_cast<uint64_t>(n));
    for (int rep = 0; rep < 100; ++rep) {
      auto basis = random_unimodular_basis(n, rng);
      for (XShape s : all_shapes()) {
        if (shape_degree(s) == 0 || shape_min_rank(s) > n) continue;
        if (auto v = bykovskii_shape(s, n, basis); !v.empty()) return v;
      }
    }
  }
  // The two X_2 shapes that need more room; ψ on Z^6 sums over 720
  // orderings per term, so only a couple of bases here.
  for (auto [s, n] : {std::pair{XShape::X2TriplePair, 5}, std::pair{XShape::X2TwoTriples, 6}}) {
    std::mt19937_64 rng(91 + static_cast<uint64_t>(n));
    for (int rep = 0; rep < 2; ++rep)
      if (auto v = bykovskii_shape(s, n, random_unimodular_basis(n, rng)); !v.empty()) return v;
  }
  return {};
}

// ---------------------------------------------------------------- 11-14

Verdict barset() {
  for (int m = 1; m <= 6; ++m)
    for (const auto& r : support::restriction_sets(m))
      if (auto v = support::check_barset(r); !v.empty()) return r.to_string() + ": " + v;
  std::mt19937_64 rng(16);
  for (int t = 0; t < 50; ++t) {
    auto r = support::random_restriction_set(7, rng);
    if (auto v = support::check_barset(r); !v.empty()) return r.to_string() + ": " + v;
  }
  return {};
}

Verdict claims_of(const Part6Report& rep) {
  for (const auto& c : rep.checks)
    if (!c.ok()) return cat(c.claim, " ", to_string(c.shape), " n=", rep.n, " fails");
  return {};
}

Verdict part6() {
  auto r4 = part6_claims(4);
  if (auto v = claims_of(r4); !v.empty()) return v;
  size_t badcase = 0;
  for (const auto& c : r4.checks)
    if (c.shape == XShape::X1Triple) {
      if (c.homology.size() < 2 || !c.homology[1].is_z() || !c.kappa_generates.value_or(false))
        return "H_0 of the triple case is not generated by κ";
      ++badcase;
    }
  if (badcase != 8) return cat(badcase, " triple-case patterns");
  if (auto v = claims_of(part6_claims(5, XShape::X2TriplePair)); !v.empty()) return v;
  return claims_of(part6_claims(6, XShape::X2TwoTriples));
}

Verdict kappa_eta() {
  std::mt19937_64 rng(4);
  std::vector<std::vector<ZVector>> bases{standard_basis(4)};
  for (int i = 0; i < 10; ++i) bases.push_back(random_unimodular_basis(4, rng));
  for (size_t b = 0; b < bases.size(); ++b)
    for (const auto& eps : sign_patterns(3)) {
      try {
        if (!kappa_eta_certificate(bases[b], eps).ok()) return cat("basis ", b, ": no steps");
      } catch (const CertificateFailure& e) {
        return cat("basis ", b, ": ", e.step());
      }
    }
  return {};
}

Verdict double_identities() {
  auto r = verify_double_identities(200, 5, 14);
  if (r.cells < 200) return cat("only ", r.cells, " cells");
  return {};
}

// ---------------------------------------------------------------- 15

Verdict bounds() {
  const std::vector<std::pair<const char*, int>> golden{
      {"A1", 0},    {"A2", 0},    {"A3", 1},       {"A5", 2},      {"A6", 2},
      {"B2", 0},    {"B3", 0},    {"C4", 1},       {"BC5", 1},     {"D4", 0},
      {"D5", 1},    {"D3", 1},    {"G2", 0},       {"E8", 0},      {"", -1},
      {"A1xA1", 1}, {"A3xB4", 3}, {"A2xA2xA2", 2}, {"D6 x F4", 2}, {"A7×C2×E6", 5}};
  for (const auto& [text, want] : golden) {
    const int got = vanishing_bound(RootSystemDescriptor::parse(text));
    if (got != want) return cat("b(", text, ") = ", got, ", want ", want);
  }
  if (vanishing_bound(RootSystemDescriptor::parse("A4"), BoundMode::Integral) != 1) return "integral A4";
  auto sweep = floor_inequality_sweep();
  if (sweep.failures != 0) return cat(sweep.failures, " floor inequality failures");
  return {};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Smith form vs determinantal divisors (200 matrices)", 5, snf_oracle},
      {2, "Solomon-Tits homology of the building", 60, solomon_tits},
      {3, "unipotent apartments form a Z-basis", 10, unipotent_basis},
      {4, "bar resolution exactness over F_q", 120, bar_exactness},
      {5, "Steinberg coinvariants under GL/SL vanish", 30, coinvariants_vanish},
      {6, "St_B = Z", 30, borel_coinvariants},
      {7, "rank-2 map (St x St)_G -> Z surjective", 120, rank2_surjective},
      {8, "Bruhat witness", 10, bruhat},
      {9, "Ash-Rudolph reduction (100 symbols, n = 2, 3)", 60, ash_rudolph_random},
      {10, "Bykovskii relations", 60, bykovskii},
      {11, "restricted partition complexes (|S| <= 6, 50 x |S| = 7)", 120, barset},
      {12, "Part VI claims 0-2 (n = 4, 5, 6)", 300, part6},
      {13, "kappa/eta certificate (11 bases x 8 sign patterns)", 60, kappa_eta},
      {14, "double complex identities (200 cells)", 30, double_identities},
      {15, "vanishing bounds and floor inequality", 5, bounds},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (v.empty() && s > c.limit_s) v = "time limit exceeded";
    const bool ok = v.empty();
    failed += !ok;
    std::printf("criterion %2d  %s  %-58s %8.2f s / %g s%s%s\n", c.id, ok ? "PASS" : "FAIL", c.title.c_str(), s,
                c.limit_s, ok ? "" : "  -- ", v.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
