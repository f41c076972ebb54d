#include "titshom/integral_symbols.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

#include "titshom/errors.hpp"
#include "titshom/smith.hpp"

namespace titshom {

namespace {

DenseIntMatrix rows_matrix(const std::vector<ZVector>& rows, int n) {
  DenseIntMatrix m(rows.size(), static_cast<size_t>(n));
  for (size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < n; ++c) m(r, static_cast<size_t>(c)) = rows[r][static_cast<size_t>(c)];
  return m;
}

DenseIntMatrix columns_matrix(const std::vector<ZVector>& cols, int n) {
  return rows_matrix(cols, n).transpose();
}

std::vector<ZVector> matrix_rows(const DenseIntMatrix& m) {
  std::vector<ZVector> out;
  for (size_t r = 0; r < m.rows(); ++r) out.push_back(m.row(r));
  return out;
}

int dim_of(const std::vector<ZVector>& v) { return v.empty() ? 0 : static_cast<int>(v.front().size()); }

size_t rank_of(const std::vector<ZVector>& v, int n) {
  if (v.empty()) return 0;
  return rank_q(rows_matrix(v, n));
}

ZVector combination(const std::vector<ZVector>& basis, const std::vector<int>& idx,
                    const std::vector<int>& signs) {
  ZVector out(basis.front().size());
  for (size_t k = 0; k < idx.size(); ++k) {
    const auto& v = basis[static_cast<size_t>(idx[k])];
    for (size_t c = 0; c < out.size(); ++c) {
      if (signs[k] > 0) out[c] += v[c];
      else out[c] -= v[c];
    }
  }
  return out;
}

// Parity of the permutation sorting `v` (ties are the caller's problem).
template <class T>
int sort_sign(std::vector<T>& v) {
  int sign = 1;
  for (size_t i = 1; i < v.size(); ++i)
    for (size_t j = i; j > 0 && v[j] < v[j - 1]; --j) {
      std::swap(v[j], v[j - 1]);
      sign = -sign;
    }
  return sign;
}

}  // namespace

ZVector zvec(std::initializer_list<long long> v) {
  ZVector out;
  for (long long x : v) out.emplace_back(x);
  return out;
}

std::string to_string(const ZVector& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].to_string();
  }
  return s + ")";
}

NormalizedLine normalize_line(const ZVector& v) {
  Integer g;
  for (const auto& x : v) g = gcd(g, x);
  if (g.is_zero()) throw ZeroVector("normalize_line " + to_string(v));
  NormalizedLine out;
  out.line.v.reserve(v.size());
  for (const auto& x : v) out.line.v.push_back(divexact(x, g));
  auto first = std::find_if(out.line.v.begin(), out.line.v.end(), [](const Integer& x) { return !x.is_zero(); });
  if (first->sign() < 0) {
    out.sign = -1;
    for (auto& x : out.line.v) x = -x;
  }
  return out;
}

ZLine line_of(const ZVector& v) { return normalize_line(v).line; }

ApartmentSymbol ApartmentSymbol::from_vectors(const std::vector<ZVector>& vectors) {
  ApartmentSymbol s;
  const size_t n = vectors.size();
  for (const auto& v : vectors) {
    if (v.size() != n) throw InvalidArgument("apartment symbol needs n vectors in Z^n");
    auto nl = normalize_line(v);
    s.lines.push_back(std::move(nl.line));
    s.signs.push_back(nl.sign);
  }
  return s;
}

ApartmentSymbol ApartmentSymbol::parse(const std::string& text) {
  std::vector<ZVector> vectors;
  std::stringstream groups(text);
  std::string group;
  while (std::getline(groups, group, ';')) {
    ZVector v;
    std::stringstream entries(group);
    std::string e;
    while (std::getline(entries, e, ',')) {
      e.erase(std::remove_if(e.begin(), e.end(), [](unsigned char c) { return std::isspace(c); }), e.end());
      if (e.empty()) throw ParseError("empty entry in symbol '" + text + "'");
      try {
        v.push_back(Integer::parse(e));
      } catch (const std::exception&) {
        throw ParseError("bad integer '" + e + "' in symbol '" + text + "'");
      }
    }
    vectors.push_back(std::move(v));
  }
  if (vectors.empty()) throw ParseError("empty symbol");
  for (const auto& v : vectors)
    if (v.size() != vectors.size()) throw ParseError("symbol '" + text + "' is not n vectors in Z^n");
  return from_vectors(vectors);
}

Integer ApartmentSymbol::det() const {
  std::vector<ZVector> cols;
  for (const auto& l : lines) cols.push_back(l.v);
  return determinant(columns_matrix(cols, ambient()));
}

std::string ApartmentSymbol::to_string() const {
  std::string s = "[";
  for (size_t i = 0; i < lines.size(); ++i) {
    if (i) s += ",";
    s += titshom::to_string(lines[i].v);
  }
  return s + "]";
}

QSubspace saturated_span(const std::vector<ZVector>& vectors, int n) {
  QSubspace s;
  if (vectors.empty()) return s;
  auto h = saturated_row_basis(rows_matrix(vectors, n));
  s.basis = matrix_rows(h);
  return s;
}

void add_chain(SteinbergChainQ& acc, const SteinbergChainQ& x, const Integer& c) {
  for (const auto& [flag, v] : x) {
    auto& slot = acc[flag];
    slot.add_mul(c, v);
    if (slot.is_zero()) acc.erase(flag);
  }
}

SteinbergChainQ apartment_eval(const std::vector<ZLine>& lines) {
  SteinbergChainQ out;
  const int n = static_cast<int>(lines.size());
  if (n == 0) return out;
  std::vector<ZVector> vecs;
  for (const auto& l : lines) vecs.push_back(l.v);
  if (static_cast<int>(rank_of(vecs, n)) < n) return out;

  std::map<unsigned, QSubspace> memo;
  auto span_of = [&](unsigned mask) -> const QSubspace& {
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    std::vector<ZVector> sub;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1u) sub.push_back(vecs[static_cast<size_t>(i)]);
    return memo.emplace(mask, saturated_span(sub, n)).first->second;
  };

  std::vector<int> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[static_cast<size_t>(i)] > perm[static_cast<size_t>(j)]) ++inversions;
    QFlag flag;
    unsigned mask = 0;
    for (int k = 0; k + 1 < n; ++k) {
      mask |= 1u << perm[static_cast<size_t>(k)];
      flag.push_back(span_of(mask));
    }
    out[std::move(flag)] += Integer(inversions % 2 ? -1 : 1);
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

SteinbergChainQ apartment_eval(const ApartmentSymbol& s) { return apartment_eval(s.lines); }

std::map<QFlag, Integer> chain_boundary(const SteinbergChainQ& c) {
  std::map<QFlag, Integer> out;
  for (const auto& [flag, v] : c) {
    for (size_t k = 0; k < flag.size(); ++k) {
      QFlag face;
      for (size_t j = 0; j < flag.size(); ++j)
        if (j != k) face.push_back(flag[j]);
      auto& slot = out[face];
      if (k % 2) slot -= v;
      else slot += v;
    }
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

// ------------------------------------------------------------ Ash–Rudolph

bool AshRudolphResult::determinants_decrease() const {
  for (const auto& st : trace)
    for (const auto& c : st.children)
      if (!(c < st.det)) return false;
  return true;
}

bool AshRudolphResult::all_unimodular() const {
  return std::all_of(terms.begin(), terms.end(), [](const auto& t) { return t.second.unimodular(); });
}

namespace {

struct Candidate {
  ZVector w;
  std::vector<Integer> q;  // Cramer numerators: w = Σ (q_i / det) v_i
  Integer score;
  int negatives = 0;
};

// Nearest integer to a/b, halves rounded toward zero.
Integer round_half_to_zero(const Integer& a, const Integer& b) {
  Integer na = abs(a), nb = abs(b);
  Integer q = na / nb, r = na % nb;
  if (r + r > nb) q += Integer(1);
  return a.sign() * b.sign() < 0 ? -q : q;
}

std::optional<Candidate> reduce_candidate(const std::vector<ZVector>& cols, const Integer& d, ZVector w) {
  const size_t n = cols.size();
  std::vector<Integer> q(n);
  for (size_t i = 0; i < n; ++i) {
    auto c = cols;
    c[i] = w;
    q[i] = determinant(columns_matrix(c, static_cast<int>(n)));
  }
  for (size_t i = 0; i < n; ++i) {
    Integer r = round_half_to_zero(q[i], d);
    if (r.is_zero()) continue;
    for (size_t k = 0; k < n; ++k) w[k].sub_mul(r, cols[i][k]);
    q[i].sub_mul(r, d);
  }
  Integer g;
  for (const auto& x : w) g = gcd(g, x);
  if (g.is_zero()) return std::nullopt;
  Candidate c;
  for (auto& x : w) x = divexact(x, g);
  for (auto& x : q) x = divexact(x, g);
  c.w = std::move(w);
  c.q = std::move(q);
  for (const auto& x : c.q) {
    c.score += abs(x);
    if (x.sign() < 0) ++c.negatives;
  }
  return c;
}

}  // namespace

AshRudolphResult ash_rudolph(const ApartmentSymbol& s) {
  AshRudolphResult res;
  const int n = s.ambient();
  struct Item {
    std::vector<ZVector> cols;
    Integer coeff;
    int depth;
  };
  std::vector<Item> stack;
  {
    std::vector<ZVector> cols;
    for (const auto& l : s.lines) cols.push_back(l.v);
    stack.push_back({std::move(cols), Integer(1), 0});
  }
  std::vector<std::pair<Integer, ApartmentSymbol>> raw;
  while (!stack.empty()) {
    Item it = std::move(stack.back());
    stack.pop_back();
    Integer d = determinant(columns_matrix(it.cols, n));
    if (d.is_zero()) continue;
    if (abs(d).is_one()) {
      raw.emplace_back(it.coeff, ApartmentSymbol::from_vectors(it.cols));
      continue;
    }
    std::vector<ZVector> cands;
    for (int k = 0; k < n; ++k) {
      ZVector e(static_cast<size_t>(n));
      e[static_cast<size_t>(k)] = Integer(1);
      cands.push_back(e);
    }
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int sgn : {1, -1}) {
          ZVector e(static_cast<size_t>(n));
          e[static_cast<size_t>(j)] = Integer(1);
          e[static_cast<size_t>(k)] = Integer(sgn);
          cands.push_back(e);
        }
    std::optional<Candidate> best;
    for (auto& w : cands) {
      auto c = reduce_candidate(it.cols, d, w);
      if (!c) continue;
      if (!best || std::tie(c->score, c->negatives, c->w) < std::tie(best->score, best->negatives, best->w))
        best = std::move(c);
    }
    // Some e_k lies outside the column lattice when |det| > 1.
    if (!best) throw Error("ash_rudolph: no reducing vector found");

    ReductionStep step;
    step.depth = it.depth;
    step.det = abs(d);
    step.pivot = best->w;
    std::vector<Item> children;
    for (int i = 0; i < n; ++i) {
      if (best->q[static_cast<size_t>(i)].is_zero()) continue;
      step.children.push_back(abs(best->q[static_cast<size_t>(i)]));
      auto cols = it.cols;
      cols[static_cast<size_t>(i)] = best->w;
      children.push_back({std::move(cols), it.coeff, it.depth + 1});
    }
    res.trace.push_back(std::move(step));
    for (auto c = children.rbegin(); c != children.rend(); ++c) stack.push_back(std::move(*c));
  }
  // Merge equal symbols; terms are reported in lexicographic order.
  for (auto& [c, sym] : raw) {
    auto f = std::find_if(res.terms.begin(), res.terms.end(), [&](const auto& t) { return t.second == sym; });
    if (f == res.terms.end()) res.terms.emplace_back(c, std::move(sym));
    else f->first += c;
  }
  std::erase_if(res.terms, [](const auto& t) { return t.first.is_zero(); });
  std::sort(res.terms.begin(), res.terms.end(),
            [](const auto& x, const auto& y) { return x.second.lines < y.second.lines; });
  return res;
}

// ------------------------------------------------------------ X complex

XTerm canonical_x(const std::vector<ZLine>& lines, int n) {
  XTerm t;
  t.lines = lines;
  int sign = sort_sign(t.lines);
  for (size_t i = 1; i < t.lines.size(); ++i)
    if (t.lines[i] == t.lines[i - 1]) return XTerm{true, 0, {}};
  std::vector<ZVector> vecs;
  for (const auto& l : t.lines) vecs.push_back(l.v);
  if (static_cast<int>(rank_of(vecs, n)) < n) return XTerm{true, 0, {}};
  t.zero = false;
  t.sign = sign;
  return t;
}

bool is_primitive_system(const std::vector<ZVector>& vectors) {
  if (vectors.empty()) return true;
  auto sf = snf_dense(rows_matrix(vectors, dim_of(vectors)));
  if (sf.rank != vectors.size()) return false;
  return std::all_of(sf.diagonal.begin(), sf.diagonal.end(), [](const Integer& d) { return d.is_one(); });
}

XTerm byk_generator(const std::vector<ZLine>& lines, const AugCertificate& cert, int n) {
  std::vector<ZVector> frame;
  std::set<int> used;
  for (int i : cert.frame) {
    if (i < 0 || static_cast<size_t>(i) >= lines.size() || !used.insert(i).second)
      throw BadCertificate("frame index out of range or repeated");
    frame.push_back(lines[static_cast<size_t>(i)].v);
  }
  if (!is_primitive_system(frame)) throw BadCertificate("frame is not a partial basis");
  std::multiset<ZLine> expected, actual(lines.begin(), lines.end());
  for (const auto& v : frame) expected.insert(ZLine{v});
  std::set<int> covered;
  for (const auto& part : cert.parts) {
    const size_t k = part.indices.size();
    if ((k != 2 && k != 3) || part.signs.size() != k || (part.two_lines && k != 3))
      throw BadCertificate("augmentation part must be a signed 2- or 3-set");
    for (int i : part.indices)
      if (i < 0 || static_cast<size_t>(i) >= frame.size() || !covered.insert(i).second)
        throw BadCertificate("augmentation parts must be disjoint subsets of the frame");
    if (part.two_lines) {
      expected.insert(line_of(combination(frame, {part.indices[0], part.indices[1]}, {part.signs[0], part.signs[1]})));
    }
    expected.insert(line_of(combination(frame, part.indices, part.signs)));
  }
  if (expected != actual) throw BadCertificate("certificate does not reproduce the lines");
  return canonical_x(lines, n);
}

XChain byk_delta(const std::vector<ZLine>& lines, int n) {
  if (static_cast<int>(lines.size()) <= n) throw DegreeZero("delta is not defined on X_0");
  XChain out;
  for (size_t j = 0; j < lines.size(); ++j) {
    std::vector<ZLine> face;
    for (size_t k = 0; k < lines.size(); ++k)
      if (k != j) face.push_back(lines[k]);
    auto t = canonical_x(face, n);
    if (t.zero) continue;
    auto& slot = out[t.lines];
    slot += Integer((j % 2 ? -1 : 1) * t.sign);
    if (slot.is_zero()) out.erase(t.lines);
  }
  return out;
}

XChain byk_delta(const XChain& x, int n) {
  XChain out;
  for (const auto& [lines, c] : x) {
    for (const auto& [face, v] : byk_delta(lines, n)) {
      auto& slot = out[face];
      slot.add_mul(c, v);
      if (slot.is_zero()) out.erase(face);
    }
  }
  return out;
}

SteinbergChainQ byk_psi(const XChain& x0) {
  SteinbergChainQ out;
  for (const auto& [lines, c] : x0) add_chain(out, apartment_eval(lines), c);
  return out;
}

std::optional<AugCertificate> recognize_apf(const std::vector<ZVector>& vectors) {
  std::vector<ZLine> lines;
  for (const auto& v : vectors) lines.push_back(line_of(v));
  return recognize_apf(lines);
}

std::optional<AugCertificate> recognize_apf(const std::vector<ZLine>& lines) {
  const size_t m = lines.size();
  if (m == 0) return AugCertificate{};
  const int n = lines.front().dim();
  std::vector<ZVector> vecs;
  for (const auto& l : lines) vecs.push_back(l.v);
  const size_t r = rank_of(vecs, n);
  if (m > r + 2 || m > 20) return std::nullopt;

  // Frames are r-subsets; the first (lexicographic) success wins.
  std::vector<int> pick(r);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    std::vector<ZVector> frame;
    for (int i : pick) frame.push_back(vecs[static_cast<size_t>(i)]);
    if (is_primitive_system(frame)) {
      auto fm = columns_matrix(frame, n);
      struct Extra {
        std::vector<int> support;
        std::vector<int> signs;
      };
      std::vector<Extra> extras;
      bool ok = true;
      for (size_t j = 0; j < m && ok; ++j) {
        if (std::find(pick.begin(), pick.end(), static_cast<int>(j)) != pick.end()) continue;
        auto x = solve_integer(fm, vecs[j]);
        if (!x) {
          ok = false;
          break;
        }
        Extra e;
        for (size_t k = 0; k < x->size(); ++k) {
          const auto& c = (*x)[k];
          if (c.is_zero()) continue;
          if (!c.is_unit()) ok = false;
          e.support.push_back(static_cast<int>(k));
          e.signs.push_back(c.sign());
        }
        if (e.support.size() != 2 && e.support.size() != 3) ok = false;
        extras.push_back(std::move(e));
      }
      if (ok) {
        AugCertificate cert;
        cert.frame = pick;
        auto disjoint = [](const Extra& a, const Extra& b) {
          for (int i : a.support)
            if (std::find(b.support.begin(), b.support.end(), i) != b.support.end()) return false;
          return true;
        };
        if (extras.size() == 1) {
          cert.parts.push_back({extras[0].support, extras[0].signs, false});
          return cert;
        }
        if (extras.empty()) return cert;
        const auto& a = extras[0];
        const auto& b = extras[1];
        if (disjoint(a, b)) {
          cert.parts.push_back({a.support, a.signs, false});
          cert.parts.push_back({b.support, b.signs, false});
          return cert;
        }
        // Nested: a 2-set inside a 3-set with proportional restriction.
        const Extra* two = a.support.size() == 2 ? &a : &b;
        const Extra* three = a.support.size() == 3 ? &a : &b;
        if (two != three && two->support.size() == 2 && three->support.size() == 3) {
          std::vector<int> idx, sg;
          int rel = 0;
          bool nested = true;
          for (size_t k = 0; k < 2; ++k) {
            auto f = std::find(three->support.begin(), three->support.end(), two->support[k]);
            if (f == three->support.end()) {
              nested = false;
              break;
            }
            int s3 = three->signs[static_cast<size_t>(f - three->support.begin())];
            int ratio = s3 * two->signs[k];
            if (rel == 0) rel = ratio;
            else if (rel != ratio) nested = false;
            idx.push_back(two->support[k]);
            sg.push_back(s3);
          }
          if (nested) {
            for (size_t k = 0; k < 3; ++k)
              if (std::find(idx.begin(), idx.end(), three->support[k]) == idx.end()) {
                idx.push_back(three->support[k]);
                sg.push_back(three->signs[k]);
              }
            cert.parts.push_back({idx, sg, true});
            return cert;
          }
        }
      }
    }
    // Next r-subset of {0..m-1}.
    int i = static_cast<int>(r) - 1;
    while (i >= 0 && pick[static_cast<size_t>(i)] == static_cast<int>(m - r) + i) --i;
    if (i < 0) break;
    ++pick[static_cast<size_t>(i)];
    for (size_t k = static_cast<size_t>(i) + 1; k < r; ++k) pick[k] = pick[k - 1] + 1;
  }
  return std::nullopt;
}

// ------------------------------------------------------------ shapes

int shape_degree(XShape s) {
  switch (s) {
    case XShape::X0: return 0;
    case XShape::X1Pair:
    case XShape::X1Triple: return 1;
    default: return 2;
  }
}

int shape_min_rank(XShape s) {
  switch (s) {
    case XShape::X0: return 1;
    case XShape::X1Pair: return 2;
    case XShape::X1Triple:
    case XShape::X2Nested: return 3;
    case XShape::X2TwoPairs: return 4;
    case XShape::X2TriplePair: return 5;
    case XShape::X2TwoTriples: return 6;
  }
  return 0;
}

int shape_sign_count(XShape s) { return s == XShape::X0 ? 0 : shape_min_rank(s); }

std::string to_string(XShape s) {
  switch (s) {
    case XShape::X0: return "frame";
    case XShape::X1Pair: return "frame+pair";
    case XShape::X1Triple: return "frame+triple";
    case XShape::X2Nested: return "frame+pair<triple";
    case XShape::X2TwoPairs: return "frame+pair+pair";
    case XShape::X2TriplePair: return "frame+triple+pair";
    case XShape::X2TwoTriples: return "frame+triple+triple";
  }
  return "?";
}

std::vector<XShape> all_shapes() {
  return {XShape::X0,       XShape::X1Pair,       XShape::X1Triple,    XShape::X2Nested,
          XShape::X2TwoPairs, XShape::X2TriplePair, XShape::X2TwoTriples};
}

std::vector<ZVector> shape_vectors(XShape s, const std::vector<ZVector>& basis, const std::vector<int>& eps) {
  if (static_cast<int>(basis.size()) < shape_min_rank(s))
    throw ShapeUnavailable(to_string(s) + " needs rank " + std::to_string(shape_min_rank(s)));
  if (static_cast<int>(eps.size()) < shape_sign_count(s)) throw InvalidArgument("not enough signs for " + to_string(s));
  auto out = basis;
  auto part = [&](std::vector<int> idx) {
    std::vector<int> sg;
    for (int i : idx) sg.push_back(eps[static_cast<size_t>(i)]);
    out.push_back(combination(basis, idx, sg));
  };
  switch (s) {
    case XShape::X0: break;
    case XShape::X1Pair: part({0, 1}); break;
    case XShape::X1Triple: part({0, 1, 2}); break;
    case XShape::X2Nested:
      part({0, 1});
      part({0, 1, 2});
      break;
    case XShape::X2TwoPairs:
      part({0, 1});
      part({2, 3});
      break;
    case XShape::X2TriplePair:
      part({0, 1, 2});
      part({3, 4});
      break;
    case XShape::X2TwoTriples:
      part({0, 1, 2});
      part({3, 4, 5});
      break;
  }
  return out;
}

std::vector<std::vector<int>> sign_patterns(int count) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << count); ++mask) {
    std::vector<int> e(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) e[static_cast<size_t>(i)] = (mask >> i & 1u) ? -1 : 1;
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<ZVector> standard_basis(int n) {
  std::vector<ZVector> out(static_cast<size_t>(n), ZVector(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)][static_cast<size_t>(i)] = Integer(1);
  return out;
}

std::vector<ZVector> random_unimodular_basis(int n, std::mt19937_64& rng, int steps) {
  auto cols = standard_basis(n);
  if (n <= 1) return cols;
  if (steps <= 0) steps = 3 * n;
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int s = 0; s < steps; ++s) {
    int a = pick(rng), b = pick(rng);
    if (a == b) continue;
    Integer f(coin(rng) ? 1 : -1);
    for (int k = 0; k < n; ++k) cols[static_cast<size_t>(a)][static_cast<size_t>(k)].add_mul(f, cols[static_cast<size_t>(b)][static_cast<size_t>(k)]);
  }
  std::shuffle(cols.begin(), cols.end(), rng);
  for (auto& c : cols)
    if (coin(rng))
      for (auto& x : c) x = -x;
  return cols;
}

// ------------------------------------------------------------ flags

namespace {

// Saturated lattice basis of V ∩ W for saturated V, W (rows).
std::vector<ZVector> intersect(const std::vector<ZVector>& a, const std::vector<ZVector>& b, int n) {
  if (a.empty() || b.empty()) return {};
  std::vector<ZVector> gens = a;
  for (const auto& v : b) {
    ZVector w(v.size());
    for (size_t k = 0; k < v.size(); ++k) w[k] = -v[k];
    gens.push_back(std::move(w));
  }
  // Columns of m are the generators; kernel vectors (α, β) give Σ α a_i.
  auto ker = integer_kernel(columns_matrix(gens, n));
  std::vector<ZVector> out;
  for (size_t c = 0; c < ker.cols(); ++c) {
    ZVector x(static_cast<size_t>(n));
    for (size_t i = 0; i < a.size(); ++i)
      for (int k = 0; k < n; ++k) x[static_cast<size_t>(k)].add_mul(ker(i, c), a[i][static_cast<size_t>(k)]);
    out.push_back(std::move(x));
  }
  return saturated_span(out, n).basis;
}

bool is_saturated_lattice(const std::vector<ZVector>& gens, int n) {
  if (gens.empty()) return true;
  auto m = rows_matrix(gens, n);
  return hermite_rows(m) == saturated_row_basis(m);
}

std::vector<std::vector<ZVector>> complete_flag(const ZFlag& f, int n, const char* which) {
  std::vector<std::vector<ZVector>> out;
  out.push_back({});
  size_t prev = 0;
  for (const auto& member : f) {
    for (const auto& v : member)
      if (static_cast<int>(v.size()) != n) throw InvalidArgument(std::string(which) + ": wrong ambient dimension");
    if (!is_saturated_lattice(member, n))
      throw NotSaturated(std::string(which) + ": member is not a saturated sublattice");
    auto basis = saturated_span(member, n).basis;
    std::vector<ZVector> both = out.back();
    both.insert(both.end(), basis.begin(), basis.end());
    if (rank_of(both, n) != basis.size() || basis.size() < prev)
      throw InvalidArgument(std::string(which) + ": members are not nested");
    prev = basis.size();
    out.push_back(std::move(basis));
  }
  if (prev < static_cast<size_t>(n)) out.push_back(standard_basis(n));
  return out;
}

}  // namespace

BasisSearchResult common_basis_search(const ZFlag& a, const ZFlag& b, int n, size_t budget) {
  auto va = complete_flag(a, n, "first flag");
  auto wb = complete_flag(b, n, "second flag");
  BasisSearchResult res;
  const size_t ka = va.size(), kb = wb.size();
  std::vector<std::vector<std::vector<ZVector>>> grid(ka, std::vector<std::vector<ZVector>>(kb));
  for (size_t i = 0; i < ka; ++i)
    for (size_t j = 0; j < kb; ++j) grid[i][j] = intersect(va[i], wb[j], n);

  for (size_t i = 1; i < ka; ++i) {
    for (size_t j = 1; j < kb; ++j) {
      if (++res.expansions > budget) {
        res.budget_exhausted = true;
        res.reason = "budget exhausted";
        return res;
      }
      const auto& cell = grid[i][j];
      std::vector<ZVector> s = grid[i - 1][j];
      s.insert(s.end(), grid[i][j - 1].begin(), grid[i][j - 1].end());
      const size_t rs = rank_of(s, n);
      if (rs == cell.size()) continue;
      if (!is_saturated_lattice(s, n)) {
        res.reason = "cell (" + std::to_string(i) + "," + std::to_string(j) +
                     "): sum of neighbouring intersections is not saturated";
        return res;
      }
      // Coordinates of s in the cell basis, then complete to a basis.
      auto cm = columns_matrix(cell, n);
      std::vector<ZVector> coords;
      for (const auto& v : s) {
        auto x = solve_integer(cm, v);
        if (!x) throw Error("common_basis_search: neighbour not inside cell");
        coords.push_back(std::move(*x));
      }
      const int r = static_cast<int>(cell.size());
      auto k = saturated_row_basis(rows_matrix(coords, r));
      auto ech = column_echelon(k);
      for (size_t t = ech.rank; t < static_cast<size_t>(r); ++t) {
        ZVector v(static_cast<size_t>(n));
        for (size_t u = 0; u < static_cast<size_t>(r); ++u)
          for (int c = 0; c < n; ++c) v[static_cast<size_t>(c)].add_mul(ech.Vinv(t, u), cell[u][static_cast<size_t>(c)]);
        res.basis.push_back(std::move(v));
      }
    }
  }
  if (!verify_adapted_basis(res.basis, a, b, n)) {
    res.basis.clear();
    res.reason = "assembled basis failed verification";
    return res;
  }
  res.found = true;
  return res;
}

bool verify_adapted_basis(const std::vector<ZVector>& basis, const ZFlag& a, const ZFlag& b, int n) {
  if (static_cast<int>(basis.size()) != n) return false;
  if (!abs(determinant(columns_matrix(basis, n))).is_one()) return false;
  auto check = [&](const ZFlag& f) {
    for (const auto& member : f) {
      const size_t r = rank_of(member, n);
      size_t inside = 0;
      for (const auto& v : basis) {
        auto ext = member;
        ext.push_back(v);
        if (rank_of(ext, n) == r) ++inside;
      }
      if (inside != r) return false;
    }
    return true;
  };
  return check(a) && check(b);
}

}  // namespace titshom
