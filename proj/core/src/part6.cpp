#include "titshom/part6.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <set>

#include "titshom/errors.hpp"
#include "titshom/smith.hpp"

namespace titshom {

namespace {

template <class T>
int sort_with_sign(std::vector<T>& v) {
  int sign = 1;
  for (size_t i = 1; i < v.size(); ++i)
    for (size_t j = i; j > 0 && v[j] < v[j - 1]; --j) {
      std::swap(v[j], v[j - 1]);
      sign = -sign;
    }
  return sign;
}

std::vector<int> members(unsigned mask) {
  std::vector<int> out;
  for (int i = 0; mask; ++i, mask >>= 1)
    if (mask & 1u) out.push_back(i);
  return out;
}

// Calls `emit` with every ordered partition of {0..m-1} whose blocks pass
// `block_ok` and which passes `partition_ok`.
void for_each_partition(int m, const std::function<bool(unsigned)>& block_ok,
                        const std::function<bool(const std::vector<unsigned>&)>& partition_ok,
                        const std::function<void(const std::vector<unsigned>&)>& emit) {
  std::vector<unsigned> blocks;
  std::function<void(unsigned)> rec = [&](unsigned remaining) {
    if (remaining == 0) {
      if (!partition_ok || partition_ok(blocks)) emit(blocks);
      return;
    }
    // Ascending submasks keep the enumeration order deterministic.
    std::vector<unsigned> subs;
    for (unsigned s = remaining; s; s = (s - 1) & remaining) subs.push_back(s);
    std::reverse(subs.begin(), subs.end());
    for (unsigned s : subs) {
      if (!block_ok(s)) continue;
      blocks.push_back(s);
      rec(remaining & ~s);
      blocks.pop_back();
    }
  };
  rec(m == 0 ? 0u : (1u << m) - 1u);
}

Label label_of(const std::vector<unsigned>& blocks) {
  Label l;
  for (size_t j = 0; j < blocks.size(); ++j) {
    if (j) l.push_back(kSeparator);
    for (int i : members(blocks[j])) l.push_back(i);
  }
  return l;
}

std::vector<std::vector<int>> split_label(const Label& l) {
  std::vector<std::vector<int>> out(1);
  for (Token t : l) {
    if (t == kSeparator) out.emplace_back();
    else out.back().push_back(t);
  }
  return out;
}

Label join_blocks(const std::vector<std::vector<int>>& blocks) {
  Label l;
  for (size_t j = 0; j < blocks.size(); ++j) {
    if (j) l.push_back(kSeparator);
    l.insert(l.end(), blocks[j].begin(), blocks[j].end());
  }
  return l;
}

Chain merge_boundary(int /*degree*/, const Label& label) {
  auto blocks = split_label(label);
  Chain out;
  for (size_t j = 0; j + 1 < blocks.size(); ++j) {
    int inversions = 0;
    for (int a : blocks[j])
      for (int b : blocks[j + 1])
        if (a > b) ++inversions;
    std::vector<std::vector<int>> merged;
    for (size_t k = 0; k < blocks.size(); ++k) {
      if (k == j + 1) continue;
      merged.push_back(blocks[k]);
      if (k == j) {
        merged.back().insert(merged.back().end(), blocks[j + 1].begin(), blocks[j + 1].end());
        std::sort(merged.back().begin(), merged.back().end());
      }
    }
    const int sign = ((j + static_cast<size_t>(inversions)) % 2) ? -1 : 1;
    out.emplace_back(join_blocks(merged), Integer(sign));
  }
  return out;
}

std::vector<ZVector> vectors_of(const LineBlock& b) {
  std::vector<ZVector> out;
  for (const auto& l : b) out.push_back(l.v);
  return out;
}

size_t rank_of_lines(const LineBlock& b) {
  if (b.empty()) return 0;
  const size_t n = b.front().v.size();
  DenseIntMatrix m(b.size(), n);
  for (size_t r = 0; r < b.size(); ++r)
    for (size_t c = 0; c < n; ++c) m(r, c) = b[r].v[c];
  return rank_q(m);
}

// Σ ranks = n and the saturated spans are a Z-direct decomposition.
bool direct_decomposition(const std::vector<QSubspace>& spans, int n) {
  size_t total = 0;
  for (const auto& s : spans) total += static_cast<size_t>(s.dim());
  if (total != static_cast<size_t>(n)) return false;
  DenseIntMatrix m(static_cast<size_t>(n), static_cast<size_t>(n));
  size_t r = 0;
  for (const auto& s : spans)
    for (const auto& v : s.basis) {
      for (int c = 0; c < n; ++c) m(r, static_cast<size_t>(c)) = v[static_cast<size_t>(c)];
      ++r;
    }
  return abs(determinant(m)).is_one();
}

std::string term_string(const BarTerm& t) {
  std::string s = "<";
  for (size_t j = 0; j < t.size(); ++j) {
    if (j) s += "|";
    for (size_t k = 0; k < t[j].size(); ++k) {
      if (k) s += ",";
      s += to_string(t[j][k].v);
    }
  }
  return s + ">";
}

}  // namespace

// ------------------------------------------------------------ Z_•(S,𝔯)

void RestrictionSet::validate() const {
  if (size < 1) throw InvalidArgument("restriction set: S must be nonempty");
  std::vector<bool> seen(static_cast<size_t>(size), false);
  for (const auto& b : blocks) {
    if (b.empty()) throw InvalidArgument("restriction set: empty block");
    for (int i : b) {
      if (i < 0 || i >= size) throw InvalidArgument("restriction set: element outside S");
      if (seen[static_cast<size_t>(i)]) throw InvalidArgument("restriction set: blocks are not disjoint");
      seen[static_cast<size_t>(i)] = true;
    }
  }
}

int RestrictionSet::d() const {
  int covered = 0;
  for (const auto& b : blocks) covered += static_cast<int>(b.size());
  return size - covered + static_cast<int>(blocks.size());
}

std::string RestrictionSet::to_string() const {
  std::string s = "S=" + std::to_string(size) + " r={";
  for (size_t j = 0; j < blocks.size(); ++j) {
    if (j) s += ",";
    s += "{";
    for (size_t k = 0; k < blocks[j].size(); ++k) {
      if (k) s += ",";
      s += std::to_string(blocks[j][k]);
    }
    s += "}";
  }
  return s + "}";
}

ChainComplexZ block_partition_complex(int m, const std::function<bool(unsigned)>& block_ok,
                                      const std::function<bool(const std::vector<unsigned>&)>& partition_ok) {
  if (m < 1 || m > 16) throw InvalidArgument("block_partition_complex: size out of range");
  std::vector<std::vector<Label>> bases(static_cast<size_t>(m));
  for_each_partition(m, block_ok, partition_ok,
                     [&](const std::vector<unsigned>& b) { bases[b.size() - 1].push_back(label_of(b)); });
  return assemble_complex(-1, std::move(bases), merge_boundary);
}

ChainComplexZ zcomplex(const RestrictionSet& r) {
  r.validate();
  if (r.size > kZComplexMaxSize)
    throw BudgetExceeded("zcomplex: |S| = " + std::to_string(r.size) + " exceeds " +
                         std::to_string(kZComplexMaxSize));
  std::vector<unsigned> masks;
  for (const auto& b : r.blocks) {
    unsigned mask = 0;
    for (int i : b) mask |= 1u << i;
    masks.push_back(mask);
  }
  auto block_ok = [&](unsigned blk) {
    for (unsigned rm : masks)
      if ((rm & blk) && (rm & blk) != rm) return false;
    return true;
  };
  return block_partition_complex(r.size, block_ok);
}

// ------------------------------------------------------------ X_{•,•}

int bar_degree(const BarTerm& t) { return static_cast<int>(t.size()) - 2; }

int x_degree(const BarTerm& t, int n) {
  int lines = 0;
  for (const auto& b : t) lines += static_cast<int>(b.size());
  return lines - n;
}

bool valid_block(const LineBlock& b) {
  if (b.empty()) return false;
  LineBlock sorted = b;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  const size_t r = rank_of_lines(b);
  if (b.size() > r + 2) return false;
  return recognize_apf(b).has_value();
}

bool valid_bar_term(const BarTerm& t, int n) {
  std::vector<QSubspace> spans;
  for (const auto& b : t) {
    if (!valid_block(b)) return false;
    spans.push_back(saturated_span(vectors_of(b), n));
  }
  return direct_decomposition(spans, n);
}

BarCanonical canonical_bar(BarTerm t, int n) {
  BarCanonical c;
  int sign = 1;
  for (auto& b : t) {
    if (b.empty()) return c;
    sign *= sort_with_sign(b);
  }
  if (!valid_bar_term(t, n)) return c;
  c.zero = false;
  c.sign = sign;
  c.term = std::move(t);
  return c;
}

void add_term(DChain& acc, BarTerm t, const Integer& coeff, int n) {
  if (coeff.is_zero()) return;
  auto c = canonical_bar(std::move(t), n);
  if (c.zero) return;
  auto& slot = acc[c.term];
  if (c.sign > 0) slot += coeff;
  else slot -= coeff;
  if (slot.is_zero()) acc.erase(c.term);
}

DChain bar(std::initializer_list<std::pair<long long, BarTerm>> terms, int n) {
  DChain out;
  for (const auto& [c, t] : terms) add_term(out, t, Integer(c), n);
  return out;
}

DChain bar_boundary(const DChain& x, int n) {
  DChain out;
  for (const auto& [t, c] : x) {
    for (size_t j = 0; j + 1 < t.size(); ++j) {
      BarTerm merged;
      for (size_t k = 0; k < t.size(); ++k) {
        if (k == j + 1) continue;
        merged.push_back(t[k]);
        if (k == j) merged.back().insert(merged.back().end(), t[j + 1].begin(), t[j + 1].end());
      }
      add_term(out, std::move(merged), j % 2 ? -c : c, n);
    }
  }
  return out;
}

DChain bar_delta(const DChain& x, int n) {
  DChain out;
  for (const auto& [t, c] : x) {
    size_t position = 0;
    for (size_t j = 0; j < t.size(); ++j) {
      for (size_t k = 0; k < t[j].size(); ++k, ++position) {
        if (t[j].size() == 1) continue;  // would empty the block
        BarTerm face = t;
        face[j].erase(face[j].begin() + static_cast<long>(k));
        add_term(out, std::move(face), position % 2 ? -c : c, n);
      }
    }
  }
  return out;
}

std::map<LineBlock, Integer> block_delta(const LineBlock& b) {
  std::map<LineBlock, Integer> out;
  const size_t r = rank_of_lines(b);
  for (size_t k = 0; k < b.size(); ++k) {
    LineBlock face = b;
    face.erase(face.begin() + static_cast<long>(k));
    if (face.empty() || rank_of_lines(face) != r || !valid_block(face)) continue;
    int sign = sort_with_sign(face) * (k % 2 ? -1 : 1);
    auto& slot = out[face];
    slot += Integer(sign);
    if (slot.is_zero()) out.erase(face);
  }
  return out;
}

std::map<LineBlock, Integer> block_product(const std::map<LineBlock, Integer>& a,
                                           const std::map<LineBlock, Integer>& b) {
  std::map<LineBlock, Integer> out;
  for (const auto& [x, cx] : a)
    for (const auto& [y, cy] : b) {
      LineBlock z = x;
      z.insert(z.end(), y.begin(), y.end());
      if (!valid_block(z)) continue;
      int sign = sort_with_sign(z);
      Integer c = cx * cy;
      auto& slot = out[z];
      if (sign > 0) slot += c;
      else slot -= c;
      if (slot.is_zero()) out.erase(z);
    }
  return out;
}

// ------------------------------------------------------------ X_{•,q}[S]

namespace {

struct PartitionOracle {
  int n;
  std::vector<ZLine> lines;
  std::vector<signed char> ok;  // -1 unknown
  std::vector<std::optional<QSubspace>> span;

  PartitionOracle(const std::vector<ZLine>& s, int n_) : n(n_), lines(s) {
    ok.assign(size_t{1} << s.size(), -1);
    span.resize(ok.size());
  }
  LineBlock block(unsigned mask) const {
    LineBlock b;
    for (int i : members(mask)) b.push_back(lines[static_cast<size_t>(i)]);
    return b;
  }
  bool block_ok(unsigned mask) {
    auto& v = ok[mask];
    if (v < 0) {
      auto b = block(mask);
      v = valid_block(b) ? 1 : 0;
      if (v) span[mask] = saturated_span(vectors_of(b), n);
    }
    return v == 1;
  }
  bool partition_ok(const std::vector<unsigned>& blocks) const {
    std::vector<QSubspace> spans;
    for (unsigned b : blocks) spans.push_back(*span[b]);
    return direct_decomposition(spans, n);
  }
};

void check_support(const std::vector<ZLine>& S, int n) {
  if (n < 1 || n > 6) throw InvalidArgument("x_localized: n must be in 1..6");
  const int q = static_cast<int>(S.size()) - n;
  if (q < 0 || q > 2) throw InvalidArgument("x_localized: |S| - n must be 0, 1 or 2");
  for (const auto& l : S)
    if (l.dim() != n) throw InvalidArgument("x_localized: line outside Z^n");
  std::set<ZLine> distinct(S.begin(), S.end());
  if (distinct.size() != S.size()) throw InvalidArgument("x_localized: repeated line");
  if (rank_of_lines(S) != static_cast<size_t>(n)) throw NotSpanning("x_localized: S does not span Q^n");
}

}  // namespace

LocalizedComplex x_localized(const std::vector<ZLine>& S, int n) {
  check_support(S, n);
  PartitionOracle oracle(S, n);
  LocalizedComplex lc;
  lc.n = n;
  lc.lines = S;
  lc.complex = block_partition_complex(
      static_cast<int>(S.size()), [&](unsigned m) { return oracle.block_ok(m); },
      [&](const std::vector<unsigned>& b) { return oracle.partition_ok(b); });
  return lc;
}

Chain LocalizedComplex::localize(const DChain& x, int* degree) const {
  Chain out;
  int deg = 0;
  bool first = true;
  for (const auto& [t, c] : x) {
    if (first) deg = bar_degree(t);
    else if (deg != bar_degree(t)) throw InvalidArgument("localize: mixed bar degrees");
    first = false;
    std::vector<std::vector<int>> blocks;
    int sign = 1;
    for (const auto& b : t) {
      std::vector<int> idx;
      for (const auto& l : b) {
        auto it = std::find(lines.begin(), lines.end(), l);
        if (it == lines.end()) throw InvalidArgument("localize: term not supported on S: " + term_string(t));
        idx.push_back(static_cast<int>(it - lines.begin()));
      }
      sign *= sort_with_sign(idx);
      blocks.push_back(std::move(idx));
    }
    out.emplace_back(join_blocks(blocks), sign > 0 ? c : -c);
  }
  if (degree) *degree = deg;
  return out;
}

RestrictionSet shape_restrictions(XShape shape, int n) {
  RestrictionSet r;
  r.size = n + shape_degree(shape);
  switch (shape) {
    case XShape::X0: break;
    case XShape::X1Pair: r.blocks = {{0, 1, n}}; break;
    case XShape::X1Triple: r.blocks = {{0, 1, 2, n}}; break;
    case XShape::X2Nested: r.blocks = {{0, 1, 2, n, n + 1}}; break;
    case XShape::X2TwoPairs: r.blocks = {{0, 1, n}, {2, 3, n + 1}}; break;
    case XShape::X2TriplePair: r.blocks = {{0, 1, 2, n}, {3, 4, n + 1}}; break;
    case XShape::X2TwoTriples: r.blocks = {{0, 1, 2, n}, {3, 4, 5, n + 1}}; break;
  }
  return r;
}

// ------------------------------------------------------------ claims

bool Part6Report::ok() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const ClaimCheck& c) { return c.ok(); });
}

namespace {

std::string claim_name(XShape s) {
  switch (s) {
    case XShape::X0: return "claim 0";
    case XShape::X1Pair: return "claim 1 (i)";
    case XShape::X1Triple: return "claim 1 (ii)";
    case XShape::X2Nested: return "claim 2 (i)";
    case XShape::X2TwoPairs: return "claim 2 (ii)";
    case XShape::X2TriplePair: return "claim 2 (iii)";
    case XShape::X2TwoTriples: return "claim 2 (iv)";
  }
  return "?";
}

// The range stated by the claim itself (meaningful for n >= 4).
int claimed_range(XShape s, int n) {
  switch (shape_degree(s)) {
    case 0: return 1;
    case 1: return (s == XShape::X1Triple && n == 4) ? -1 : 0;
    default: return -1;
  }
}

std::vector<Integer> dense_column(const ChainComplexZ& c, int d, const Chain& x) { return c.to_vector(d, x); }

SparseIntMatrix with_column(SparseIntMatrix m, const std::vector<Integer>& v) {
  SparseIntMatrix::Column col;
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) col.emplace_back(static_cast<int>(i), v[i]);
  m.append_column(std::move(col));
  return m;
}

// [x] generates H_0 ≅ Z: B_0 + Zx is saturated of the rank of Z_0.
bool generates_h0(const ChainComplexZ& c, const Chain& x) {
  auto v = dense_column(c, 0, x);
  auto d0 = c.boundary(0);
  auto d1 = c.boundary(1);
  const size_t rank_z0 = c.rank_of(0) - rank(d0);
  auto coker = cokernel_invariants(with_column(d1, v));
  return coker.torsion.empty() && coker.betti == c.rank_of(0) - rank_z0;
}

bool is_boundary(const ChainComplexZ& c, int d, const Chain& x) {
  auto v = dense_column(c, d, x);
  return solve_integer(c.boundary(d + 1).to_dense(), v).has_value();
}

std::vector<ZLine> lines_from(const std::vector<ZVector>& v) {
  std::vector<ZLine> out;
  for (const auto& x : v) out.push_back(line_of(x));
  return out;
}

}  // namespace

Part6Report part6_claims(int n, std::optional<XShape> shape, const std::vector<ZVector>* basis) {
  if (n < 2 || n > 6) throw InvalidArgument("part6_claims: n must be in 2..6");
  if (shape && shape_min_rank(*shape) > n)
    throw ShapeUnavailable(to_string(*shape) + " needs n >= " + std::to_string(shape_min_rank(*shape)));
  const auto b = basis ? *basis : standard_basis(n);
  if (static_cast<int>(b.size()) != n) throw InvalidArgument("part6_claims: basis size");
  Part6Report rep;
  rep.n = n;
  for (XShape s : all_shapes()) {
    if (shape && s != *shape) continue;
    if (shape_min_rank(s) > n) continue;
    const auto restriction = shape_restrictions(s, n);
    const auto zh = all_homology(zcomplex(restriction));
    for (const auto& eps : sign_patterns(shape_sign_count(s))) {
      const auto t0 = std::chrono::steady_clock::now();
      ClaimCheck cc;
      cc.claim = claim_name(s);
      cc.shape = s;
      cc.eps = eps;
      cc.q = shape_degree(s);
      cc.d = restriction.d();
      cc.vanishing_bound = cc.d - 3;
      cc.claimed_bound = n >= 4 ? claimed_range(s, n) : cc.vanishing_bound;
      auto lc = x_localized(lines_from(shape_vectors(s, b, eps)), n);
      cc.homology = all_homology(lc.complex);
      bool lemma = cc.homology == zh;
      for (size_t k = 0; k < cc.homology.size(); ++k) {
        const int deg = static_cast<int>(k) - 1;
        lemma = lemma && (deg == cc.d - 2 ? cc.homology[k].is_z() : cc.homology[k].is_zero());
      }
      cc.matches_lemma = lemma;
      cc.claim_holds = true;
      for (int deg = -1; deg <= cc.claimed_bound; ++deg) {
        const size_t k = static_cast<size_t>(deg + 1);
        if (k < cc.homology.size() && !cc.homology[k].is_zero()) cc.claim_holds = false;
      }
      if (n == 4 && s == XShape::X1Triple) {
        cc.claim_holds = cc.claim_holds && cc.homology.size() > 1 && cc.homology[1].is_z();
        cc.kappa_generates = generates_h0(lc.complex, lc.localize(kappa_chain(b, eps)));
      }
      cc.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      rep.checks.push_back(std::move(cc));
    }
  }
  return rep;
}

// ------------------------------------------------------------ κ / η

namespace {

struct Kappa {
  ZLine l1, l2, l3, l4, l12, l123;
};

Kappa kappa_lines(const std::vector<ZVector>& v, const std::vector<int>& eps) {
  if (v.size() != 4 || eps.size() < 3) throw InvalidArgument("κ/η: need a basis of Z^4 and three signs");
  std::vector<ZVector> cols = v;
  {
    DenseIntMatrix m(4, 4);
    for (size_t r = 0; r < 4; ++r)
      for (size_t c = 0; c < 4; ++c) m(r, c) = v[r][c];
    if (!abs(determinant(m)).is_one()) throw InvalidArgument("κ/η: basis is not unimodular");
  }
  auto comb = [&](std::initializer_list<int> idx) {
    ZVector w(4);
    for (int i : idx)
      for (size_t c = 0; c < 4; ++c) {
        if (eps[static_cast<size_t>(i)] > 0) w[c] += v[static_cast<size_t>(i)][c];
        else w[c] -= v[static_cast<size_t>(i)][c];
      }
    return line_of(w);
  };
  return {line_of(v[0]), line_of(v[1]), line_of(v[2]), line_of(v[3]), comb({0, 1}), comb({0, 1, 2})};
}

}  // namespace

DChain kappa_chain(const std::vector<ZVector>& basis, const std::vector<int>& eps) {
  auto k = kappa_lines(basis, eps);
  return bar({{1, {{k.l4}, {k.l1, k.l2, k.l3, k.l123}}}, {-1, {{k.l1, k.l2, k.l3, k.l123}, {k.l4}}}}, 4);
}

DChain eta_chain(const std::vector<ZVector>& basis, const std::vector<int>& eps) {
  auto k = kappa_lines(basis, eps);
  return bar({{1, {{k.l12, k.l1, k.l2, k.l3, k.l123}, {k.l4}}}, {1, {{k.l4}, {k.l12, k.l1, k.l2, k.l3, k.l123}}}}, 4);
}

KappaEtaReport kappa_eta_certificate(const std::vector<ZVector>& basis, const std::vector<int>& eps,
                                     const DChain* eta_in) {
  const int n = 4;
  auto k = kappa_lines(basis, eps);
  KappaEtaReport rep;
  auto step = [&](const std::string& name, bool ok) {
    if (!ok) throw CertificateFailure(name);
    rep.steps.push_back(name);
  };
  const DChain kappa = kappa_chain(basis, eps);
  const DChain eta = eta_in ? *eta_in : eta_chain(basis, eps);
  step("∂κ = 0", bar_boundary(kappa, n).empty());
  step("∂η = 0", bar_boundary(eta, n).empty());

  // The terms of δη as listed, one per deleted line other than L_4.
  const std::vector<DChain> pieces = {
      bar({{1, {{k.l1, k.l2, k.l3, k.l123}, {k.l4}}}, {-1, {{k.l4}, {k.l1, k.l2, k.l3, k.l123}}}}, n),
      bar({{-1, {{k.l12, k.l2, k.l3, k.l123}, {k.l4}}}, {1, {{k.l4}, {k.l12, k.l2, k.l3, k.l123}}}}, n),
      bar({{1, {{k.l12, k.l1, k.l3, k.l123}, {k.l4}}}, {-1, {{k.l4}, {k.l12, k.l1, k.l3, k.l123}}}}, n),
      bar({{-1, {{k.l12, k.l1, k.l2, k.l123}, {k.l4}}}, {1, {{k.l4}, {k.l12, k.l1, k.l2, k.l123}}}}, n),
      bar({{1, {{k.l12, k.l1, k.l2, k.l3}, {k.l4}}}, {-1, {{k.l4}, {k.l12, k.l1, k.l2, k.l3}}}}, n),
  };
  DChain sum;
  for (const auto& p : pieces)
    for (const auto& [t, c] : p) add_term(sum, t, c, n);
  step("δη = κ + κ_2 + κ_3 + κ_4 + κ_5", bar_delta(eta, n) == sum);

  DChain neg;
  for (const auto& [t, c] : kappa) neg[t] = -c;
  step("first term is -κ", pieces[0] == neg);

  for (size_t j = 1; j < pieces.size(); ++j) {
    const std::string name = "κ_" + std::to_string(j + 1);
    step("∂" + name + " = 0", bar_boundary(pieces[j], n).empty());
    std::vector<ZLine> support;
    for (const auto& blk : pieces[j].begin()->first)
      support.insert(support.end(), blk.begin(), blk.end());
    auto lc = x_localized(support, n);
    step("[" + name + "] = 0", is_boundary(lc.complex, 0, lc.localize(pieces[j])));
  }
  {
    std::vector<ZLine> support = {k.l1, k.l2, k.l3, k.l4, k.l123};
    auto lc = x_localized(support, n);
    auto h = homology(lc.complex, 0);
    step("H_0 ≅ Z", h.is_z());
    step("[κ] generates H_0", generates_h0(lc.complex, lc.localize(kappa)));
  }
  return rep;
}

// ------------------------------------------------------------ identities

IdentityReport verify_double_identities(size_t samples, int max_n, uint64_t seed) {
  if (max_n < 2 || max_n > 6) throw InvalidArgument("verify_double_identities: max_n must be in 2..6");
  std::mt19937_64 rng(seed);
  IdentityReport rep;
  std::uniform_int_distribution<int> pick_n(2, max_n);
  for (size_t s = 0; s < samples; ++s) {
    const int n = pick_n(rng);
    std::vector<XShape> shapes;
    for (XShape sh : all_shapes())
      if (shape_min_rank(sh) <= n) shapes.push_back(sh);
    XShape sh = shapes[std::uniform_int_distribution<size_t>(0, shapes.size() - 1)(rng)];
    auto eps = sign_patterns(shape_sign_count(sh));
    const auto& e = eps[std::uniform_int_distribution<size_t>(0, eps.size() - 1)(rng)];
    auto lines = lines_from(shape_vectors(sh, random_unimodular_basis(n, rng), e));
    std::shuffle(lines.begin(), lines.end(), rng);

    PartitionOracle oracle(lines, n);
    std::vector<std::vector<unsigned>> cells;
    for_each_partition(
        static_cast<int>(lines.size()), [&](unsigned m) { return oracle.block_ok(m); },
        [&](const std::vector<unsigned>& b) { return oracle.partition_ok(b); },
        [&](const std::vector<unsigned>& b) { cells.push_back(b); });
    if (cells.empty()) throw Error("verify_double_identities: no valid cell");
    const auto& chosen = cells[std::uniform_int_distribution<size_t>(0, cells.size() - 1)(rng)];
    BarTerm cell;
    for (unsigned m : chosen) {
      auto b = oracle.block(m);
      std::shuffle(b.begin(), b.end(), rng);
      cell.push_back(std::move(b));
    }
    const std::string where = term_string(cell);
    DChain x;
    add_term(x, cell, Integer(1), n);
    ++rep.cells;

    if (!bar_boundary(bar_boundary(x, n), n).empty()) throw IdentityViolation("∂∂ = 0", where);
    ++rep.dd;
    if (!bar_delta(bar_delta(x, n), n).empty()) throw IdentityViolation("δδ = 0", where);
    ++rep.delta_delta;
    if (bar_boundary(bar_delta(x, n), n) != bar_delta(bar_boundary(x, n), n)) throw IdentityViolation("∂δ = δ∂", where);
    ++rep.commute;

    if (cell.size() >= 2) {
      const auto& a = cell[0];
      const auto& b = cell[1];
      LineBlock ab = a;
      ab.insert(ab.end(), b.begin(), b.end());
      auto lhs = block_delta(ab);
      const int sign = static_cast<int>(a.size()) % 2 ? -1 : 1;  // (-1)^{r+i}
      auto rhs = block_product(block_delta(a), {{b, Integer(1)}});
      for (auto& [blk, c] : block_product({{a, Integer(1)}}, block_delta(b))) {
        auto& slot = rhs[blk];
        slot += sign > 0 ? c : -c;
        if (slot.is_zero()) rhs.erase(blk);
      }
      if (lhs != rhs) throw IdentityViolation("Leibniz rule for δ", where);
      ++rep.leibniz;
    }
  }
  return rep;
}

}  // namespace titshom
