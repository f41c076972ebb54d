#include "titshom/smith.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "titshom/errors.hpp"

namespace titshom {

bool is_prime(int64_t p) {
  if (p < 2) return false;
  for (int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

CoefficientRing CoefficientRing::prime_field(int64_t p) {
  if (!is_prime(p)) throw InvalidArgument("prime field requires a prime, got " + std::to_string(p));
  return {RingKind::PrimeField, p};
}

std::string CoefficientRing::name() const {
  switch (kind) {
    case RingKind::Integers: return "Z";
    case RingKind::Rationals: return "Q";
    case RingKind::PrimeField: return "F" + std::to_string(p);
  }
  return "?";
}

std::vector<Integer> invariant_factors(std::vector<Integer> diagonal) {
  size_t ones = 0;
  std::vector<Integer> rest;
  for (auto& d : diagonal) {
    if (d.is_zero()) throw InvalidArgument("invariant_factors: zero entry");
    Integer a = abs(d);
    if (a.is_one()) {
      ++ones;
    } else {
      rest.push_back(std::move(a));
    }
  }
  std::sort(rest.begin(), rest.end());
  bool chain = true;
  for (size_t i = 1; i < rest.size() && chain; ++i) chain = divides(rest[i - 1], rest[i]);
  if (!chain) {
    for (size_t i = 0; i < rest.size(); ++i)
      for (size_t j = i + 1; j < rest.size(); ++j) {
        Integer g = gcd(rest[i], rest[j]);
        if (g == rest[i]) continue;
        Integer l = divexact(rest[i], g) * rest[j];
        rest[i] = std::move(g);
        rest[j] = std::move(l);
      }
  }
  std::vector<Integer> out(ones, Integer(1));
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

namespace {

struct IntPolicy {
  using T = Integer;
  static constexpr bool kEuclidean = true;
  T convert(const Integer& v) const { return v; }
  bool is_unit(const T& v) const { return v.is_unit(); }
  T unit_quotient(const T& b, const T& a) const { return a.is_one() ? b : -b; }
  void sub_mul(T& dst, const T& f, const T& src) const { dst.sub_mul(f, src); }
};

struct ModPolicy {
  using T = int64_t;
  static constexpr bool kEuclidean = false;
  int64_t p;
  T convert(const Integer& v) const { return floor_mod(v, Integer(static_cast<long long>(p))).small_value(); }
  bool is_unit(T v) const { return v != 0; }
  T mul(T a, T b) const { return static_cast<T>(static_cast<__int128>(a) * b % p); }
  T inverse(T a) const {
    int64_t r0 = p, r1 = a, t0 = 0, t1 = 1;
    while (r1 != 0) {
      int64_t q = r0 / r1;
      std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
      std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
    }
    return t0 < 0 ? t0 + p : t0;
  }
  T unit_quotient(T b, T a) const { return mul(b, inverse(a)); }
  void sub_mul(T& dst, T f, T src) const {
    dst -= mul(f, src);
    if (dst < 0) dst += p;
  }
};

bool is_zero_value(const Integer& v) { return v.is_zero(); }
bool is_zero_value(int64_t v) { return v == 0; }

// Structured elimination on the rows of the transpose.  Unit pivots are
// taken greedily (shortest row, then sparsest column); when none remain a
// Euclidean step on the entry of least absolute value makes progress.
template <class Policy>
class Eliminator {
 public:
  using T = typename Policy::T;
  using Row = std::vector<std::pair<int, T>>;

  Eliminator(const SparseIntMatrix& m, Policy pol)
      : pol_(pol),
        rows_(m.cols()),
        alive_(m.cols(), 1),
        col_rows_(m.rows()),
        col_count_(m.rows(), 0) {
    for (size_t k = 0; k < m.cols(); ++k) {
      Row& row = rows_[k];
      for (const auto& [r, v] : m.column(k)) {
        T x = pol_.convert(v);
        if (is_zero_value(x)) continue;
        row.emplace_back(r, std::move(x));
        col_rows_[r].push_back(static_cast<int>(k));
        ++col_count_[r];
      }
      if (row.empty()) {
        alive_[k] = 0;
      } else {
        queue_.emplace(row.size(), static_cast<int>(k));
      }
    }
  }

  // Returns the nonzero pivots; over Z their product structure gives the SNF.
  std::vector<Integer> run() {
    for (;;) {
      drain_unit_pivots();
      if constexpr (!Policy::kEuclidean) {
        break;
      } else {
        int p = -1, c = -1;
        Integer best;
        size_t best_len = 0;
        for (size_t k = 0; k < rows_.size(); ++k) {
          if (!alive_[k]) continue;
          for (const auto& [col, v] : rows_[k]) {
            Integer a = abs(v);
            if (p < 0 || a < best || (a == best && rows_[k].size() < best_len)) {
              p = static_cast<int>(k);
              c = col;
              best = std::move(a);
              best_len = rows_[k].size();
            }
          }
        }
        if (p < 0) break;
        euclidean_step(p, c);
      }
    }
    return std::move(pivots_);
  }

 private:
  typename Row::iterator find(Row& row, int col) {
    auto it = std::lower_bound(row.begin(), row.end(), col,
                               [](const auto& e, int c) { return e.first < c; });
    return (it != row.end() && it->first == col) ? it : row.end();
  }

  void drain_unit_pivots() {
    while (!queue_.empty()) {
      auto [len, k] = queue_.top();
      queue_.pop();
      if (!alive_[k] || rows_[k].size() != len) continue;
      int best = -1;
      int best_count = std::numeric_limits<int>::max();
      for (size_t i = 0; i < rows_[k].size(); ++i) {
        const auto& [col, v] = rows_[k][i];
        if (pol_.is_unit(v) && col_count_[col] < best_count) {
          best = static_cast<int>(i);
          best_count = col_count_[col];
        }
      }
      if (best >= 0) unit_pivot(k, best);
    }
  }

  void unit_pivot(int k, int idx) {
    const int c = rows_[k][idx].first;
    const T a = rows_[k][idx].second;
    std::vector<int> list = std::move(col_rows_[c]);
    col_rows_[c].clear();
    for (int j : list) {
      if (j == k || !alive_[j]) continue;
      auto it = find(rows_[j], c);
      if (it == rows_[j].end()) continue;
      T f = pol_.unit_quotient(it->second, a);
      subtract(j, k, f);
      queue_.emplace(rows_[j].size(), j);
    }
    pivots_.emplace_back(1);
    kill(k);
  }

  // rows[j] -= f * rows[k]
  void subtract(int j, int k, const T& f) {
    const Row& a = rows_[j];
    const Row& b = rows_[k];
    Row out;
    out.reserve(a.size() + b.size());
    size_t i = 0, l = 0;
    while (i < a.size() || l < b.size()) {
      if (l == b.size() || (i < a.size() && a[i].first < b[l].first)) {
        out.push_back(a[i++]);
      } else if (i == a.size() || b[l].first < a[i].first) {
        T v{};
        pol_.sub_mul(v, f, b[l].second);
        const int col = b[l].first;
        col_rows_[col].push_back(j);
        ++col_count_[col];
        out.emplace_back(col, std::move(v));
        ++l;
      } else {
        T v = a[i].second;
        pol_.sub_mul(v, f, b[l].second);
        if (is_zero_value(v)) {
          --col_count_[a[i].first];
        } else {
          out.emplace_back(a[i].first, std::move(v));
        }
        ++i;
        ++l;
      }
    }
    rows_[j].swap(out);
    if (rows_[j].empty()) alive_[j] = 0;
  }

  void kill(int k) {
    for (const auto& e : rows_[k]) --col_count_[e.first];
    Row().swap(rows_[k]);
    alive_[k] = 0;
  }

  // Installs a new row k, keeping column occurrence data consistent.
  void replace_row(int k, Row fresh) {
    const Row& old = rows_[k];
    size_t i = 0, l = 0;
    while (i < old.size() || l < fresh.size()) {
      if (l == fresh.size() || (i < old.size() && old[i].first < fresh[l].first)) {
        --col_count_[old[i++].first];
      } else if (i == old.size() || fresh[l].first < old[i].first) {
        col_rows_[fresh[l].first].push_back(k);
        ++col_count_[fresh[l].first];
        ++l;
      } else {
        ++i;
        ++l;
      }
    }
    rows_[k] = std::move(fresh);
    alive_[k] = rows_[k].empty() ? 0 : 1;
  }

  static Row combine(const Integer& x, const Row& a, const Integer& y, const Row& b) {
    Row out;
    out.reserve(a.size() + b.size());
    size_t i = 0, l = 0;
    while (i < a.size() || l < b.size()) {
      Integer v;
      int col;
      if (l == b.size() || (i < a.size() && a[i].first < b[l].first)) {
        col = a[i].first;
        v = x * a[i++].second;
      } else if (i == a.size() || b[l].first < a[i].first) {
        col = b[l].first;
        v = y * b[l++].second;
      } else {
        col = a[i].first;
        v = x * a[i++].second;
        v.add_mul(y, b[l++].second);
      }
      if (!v.is_zero()) out.emplace_back(col, std::move(v));
    }
    return out;
  }

  void euclidean_step(int p, int c) {
    for (;;) {
      std::vector<int> list = std::move(col_rows_[c]);
      col_rows_[c].assign(1, p);
      for (int j : list) {
        if (j == p || !alive_[j]) continue;
        auto it = find(rows_[j], c);
        if (it == rows_[j].end()) continue;
        const Integer b = it->second;
        const Integer a = find(rows_[p], c)->second;
        if (divides(a, b)) {
          subtract(j, p, b / a);
        } else {
          ExtendedGcd eg = extended_gcd(a, b);
          Row new_p = combine(eg.s, rows_[p], eg.t, rows_[j]);
          Row new_j = combine(divexact(a, eg.g), rows_[j], -divexact(b, eg.g), rows_[p]);
          replace_row(p, std::move(new_p));
          replace_row(j, std::move(new_j));
        }
        if (alive_[j]) queue_.emplace(rows_[j].size(), j);
      }
      // Column c is now supported on row p alone, so column operations that
      // reduce the rest of row p modulo the pivot touch nothing else.
      const Integer a = find(rows_[p], c)->second;
      Row out;
      for (auto& [col, v] : rows_[p]) {
        if (col == c) {
          out.emplace_back(col, v);
          continue;
        }
        Integer r = v % a;
        if (r.is_zero()) {
          --col_count_[col];
        } else {
          out.emplace_back(col, std::move(r));
        }
      }
      rows_[p].swap(out);
      if (rows_[p].size() == 1) {
        pivots_.push_back(abs(a));
        kill(p);
        return;
      }
      int next = -1;
      Integer best;
      for (const auto& [col, v] : rows_[p]) {
        if (col == c) continue;
        Integer m = abs(v);
        if (next < 0 || m < best) {
          next = col;
          best = std::move(m);
        }
      }
      c = next;
    }
  }

  Policy pol_;
  std::vector<Row> rows_;
  std::vector<char> alive_;
  std::vector<std::vector<int>> col_rows_;
  std::vector<int> col_count_;
  std::vector<Integer> pivots_;
  std::priority_queue<std::pair<size_t, int>, std::vector<std::pair<size_t, int>>,
                      std::greater<>>
      queue_;
};

int64_t mod_inverse(int64_t a, int64_t p) { return ModPolicy{p}.inverse(a); }

}  // namespace

SmithForm snf(const SparseIntMatrix& m, bool with_transforms) {
  if (with_transforms) return snf_dense(m.to_dense(), true);
  Eliminator<IntPolicy> e(m, IntPolicy{});
  SmithForm out;
  out.diagonal = invariant_factors(e.run());
  out.rank = out.diagonal.size();
  return out;
}

SmithForm snf_dense(const DenseIntMatrix& a, bool with_transforms) {
  const size_t m = a.rows(), n = a.cols();
  DenseIntMatrix S = a;
  DenseIntMatrix U = DenseIntMatrix::identity(with_transforms ? m : 0);
  DenseIntMatrix V = DenseIntMatrix::identity(with_transforms ? n : 0);
  auto swap_rows = [&](size_t i, size_t j) {
    S.swap_rows(i, j);
    if (with_transforms) U.swap_rows(i, j);
  };
  auto swap_cols = [&](size_t i, size_t j) {
    S.swap_cols(i, j);
    if (with_transforms) V.swap_cols(i, j);
  };
  auto add_row = [&](size_t i, size_t j, const Integer& f) {
    S.add_row_multiple(i, j, f);
    if (with_transforms) U.add_row_multiple(i, j, f);
  };
  auto add_col = [&](size_t i, size_t j, const Integer& f) {
    S.add_col_multiple(i, j, f);
    if (with_transforms) V.add_col_multiple(i, j, f);
  };

  size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    // smallest nonzero entry of the trailing block
    size_t pi = m, pj = n;
    for (size_t i = t; i < m; ++i)
      for (size_t j = t; j < n; ++j)
        if (!S(i, j).is_zero() && (pi == m || abs(S(i, j)) < abs(S(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi == m) break;
    swap_rows(t, pi);
    swap_cols(t, pj);
    for (;;) {
      bool clean = true;
      for (size_t i = t + 1; i < m; ++i) {
        if (S(i, t).is_zero()) continue;
        add_row(i, t, -(S(i, t) / S(t, t)));
        if (!S(i, t).is_zero()) clean = false;
      }
      for (size_t j = t + 1; j < n; ++j) {
        if (S(t, j).is_zero()) continue;
        add_col(j, t, -(S(t, j) / S(t, t)));
        if (!S(t, j).is_zero()) clean = false;
      }
      if (!clean) {
        // move the smallest leftover of row/column t onto the diagonal
        size_t bi = t, bj = t;
        for (size_t i = t + 1; i < m; ++i)
          if (!S(i, t).is_zero() && abs(S(i, t)) < abs(S(bi, bj))) bi = i, bj = t;
        for (size_t j = t + 1; j < n; ++j)
          if (!S(t, j).is_zero() && abs(S(t, j)) < abs(S(bi, bj))) bi = t, bj = j;
        swap_rows(t, bi);
        swap_cols(t, bj);
        continue;
      }
      size_t bad = m;
      for (size_t i = t + 1; i < m && bad == m; ++i)
        for (size_t j = t + 1; j < n; ++j)
          if (!divides(S(t, t), S(i, j))) {
            bad = i;
            break;
          }
      if (bad == m) break;
      add_row(t, bad, Integer(1));
    }
    if (S(t, t).sign() < 0) {
      S.negate_row(t);
      if (with_transforms) U.negate_row(t);
    }
  }
  SmithForm out;
  out.rank = t;
  for (size_t i = 0; i < t; ++i) out.diagonal.push_back(S(i, i));
  if (with_transforms) {
    out.U = std::move(U);
    out.V = std::move(V);
  }
  return out;
}

size_t rank(const SparseIntMatrix& m, const CoefficientRing& ring) {
  if (ring.kind == RingKind::PrimeField) {
    Eliminator<ModPolicy> e(m, ModPolicy{ring.p});
    return e.run().size();
  }
  Eliminator<IntPolicy> e(m, IntPolicy{});
  return e.run().size();
}

SparseIntMatrix kernel_basis(const SparseIntMatrix& m, const CoefficientRing& ring) {
  if (ring.kind != RingKind::PrimeField) {
    return SparseIntMatrix::from_dense(integer_kernel(m.to_dense()));
  }
  const int64_t p = ring.p;
  const size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<int64_t>> a(rows, std::vector<int64_t>(cols, 0));
  for (size_t c = 0; c < cols; ++c)
    for (const auto& [r, v] : m.column(c))
      a[r][c] = floor_mod(v, Integer(static_cast<long long>(p))).small_value();
  // reduced row echelon form mod p
  std::vector<int> pivot_col_of_row;
  std::vector<char> is_pivot(cols, 0);
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t i = r;
    while (i < rows && a[i][c] == 0) ++i;
    if (i == rows) continue;
    std::swap(a[i], a[r]);
    int64_t inv = mod_inverse(a[r][c], p);
    for (auto& x : a[r]) x = static_cast<int64_t>(static_cast<__int128>(x) * inv % p);
    for (size_t k = 0; k < rows; ++k) {
      if (k == r || a[k][c] == 0) continue;
      int64_t f = a[k][c];
      for (size_t j = 0; j < cols; ++j) {
        a[k][j] = static_cast<int64_t>((a[k][j] - static_cast<__int128>(f) * a[r][j]) % p);
        if (a[k][j] < 0) a[k][j] += p;
      }
    }
    pivot_col_of_row.push_back(static_cast<int>(c));
    is_pivot[c] = 1;
    ++r;
  }
  SparseIntMatrix k(cols, 0);
  for (size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    SparseIntMatrix::Column col;
    col.emplace_back(static_cast<int>(f), Integer(1));
    for (size_t i = 0; i < pivot_col_of_row.size(); ++i) {
      if (a[i][f] != 0) {
        col.emplace_back(pivot_col_of_row[i], Integer(static_cast<long long>((p - a[i][f]) % p)));
      }
    }
    k.append_column(std::move(col));
  }
  return k;
}

CokernelInvariants cokernel_invariants(const SparseIntMatrix& m) {
  SmithForm s = snf(m);
  CokernelInvariants out;
  out.betti = m.rows() - s.rank;
  for (const auto& d : s.diagonal)
    if (!d.is_one()) out.torsion.push_back(d);
  return out;
}

}  // namespace titshom
