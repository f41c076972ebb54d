#include "titshom/finite_field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "titshom/errors.hpp"

namespace titshom {

bool prime_power(int q, int* p_out, int* k_out) {
  if (q < 2) return false;
  int p = 2;
  while (q % p != 0) ++p;
  int k = 0, r = q;
  while (r % p == 0) {
    r /= p;
    ++k;
  }
  if (r != 1) return false;
  if (p_out) *p_out = p;
  if (k_out) *k_out = k;
  return true;
}

namespace {

using Poly = std::vector<int>;  // coefficients, low degree first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic m over F_p.
Poly poly_mod(Poly a, const Poly& m, int p) {
  trim(a);
  const size_t dm = m.size() - 1;
  while (a.size() > dm) {
    int lead = a.back();
    size_t shift = a.size() - 1 - dm;
    for (size_t i = 0; i <= dm; ++i) a[shift + i] = ((a[shift + i] - lead * m[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

Poly decode(int v, int p, int k) {
  Poly a(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) {
    a[static_cast<size_t>(i)] = v % p;
    v /= p;
  }
  return a;
}

int encode(const Poly& a, int p) {
  int v = 0;
  for (size_t i = a.size(); i-- > 0;) v = v * p + a[i];
  return v;
}

bool irreducible(const Poly& f, int p) {
  const int k = static_cast<int>(f.size()) - 1;
  for (int d = 1; 2 * d <= k; ++d) {
    int count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (int v = 0; v < count; ++v) {
      Poly g = decode(v, p, d);
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

FieldTable::FieldTable(int q) : q_(q) {
  if (q > 256 || !prime_power(q, &p_, &k_)) {
    throw InvalidArgument("field order must be a prime power <= 256, got " + std::to_string(q));
  }
  // smallest monic irreducible of degree k, ordered by coefficient encoding
  int count = q;  // p^k candidates for the lower coefficients
  for (int v = 0; v < count; ++v) {
    Poly f = decode(v, p_, k_);
    f.push_back(1);
    if (k_ == 1 || irreducible(f, p_)) {
      modulus_ = f;
      break;
    }
  }
  const size_t qq = static_cast<size_t>(q);
  add_.resize(qq * qq);
  mul_.resize(qq * qq);
  neg_.resize(qq);
  inv_.assign(qq, 0);
  for (int a = 0; a < q; ++a) {
    Poly pa = decode(a, p_, k_);
    Poly na(pa.size());
    for (size_t i = 0; i < pa.size(); ++i) na[i] = (p_ - pa[i]) % p_;
    neg_[static_cast<size_t>(a)] = static_cast<FqElem>(encode(na, p_));
    for (int b = 0; b < q; ++b) {
      Poly pb = decode(b, p_, k_);
      Poly s(pa.size());
      for (size_t i = 0; i < pa.size(); ++i) s[i] = (pa[i] + pb[i]) % p_;
      add_[static_cast<size_t>(a) * qq + static_cast<size_t>(b)] = static_cast<FqElem>(encode(s, p_));
      Poly prod(2 * pa.size(), 0);
      for (size_t i = 0; i < pa.size(); ++i)
        for (size_t j = 0; j < pb.size(); ++j) prod[i + j] = (prod[i + j] + pa[i] * pb[j]) % p_;
      Poly r = poly_mod(prod, modulus_, p_);
      r.resize(static_cast<size_t>(k_), 0);
      mul_[static_cast<size_t>(a) * qq + static_cast<size_t>(b)] = static_cast<FqElem>(encode(r, p_));
    }
  }
  for (int a = 1; a < q; ++a)
    for (int b = 1; b < q; ++b)
      if (mul(static_cast<FqElem>(a), static_cast<FqElem>(b)) == 1) inv_[static_cast<size_t>(a)] = static_cast<FqElem>(b);
  for (int g = 1; g < q; ++g) {
    int order = 1;
    FqElem x = static_cast<FqElem>(g);
    while (x != 1) {
      x = mul(x, static_cast<FqElem>(g));
      ++order;
    }
    if (order == q - 1) {
      primitive_ = static_cast<FqElem>(g);
      break;
    }
  }
  if (!verify_axioms()) throw Error("field table for q=" + std::to_string(q) + " fails the axioms");
}

const FieldTable& FieldTable::get(int q) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<FieldTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[q];
  if (!slot) slot = std::make_unique<FieldTable>(q);
  return *slot;
}

bool FieldTable::verify_axioms() const {
  for (int a = 0; a < q_; ++a) {
    const FqElem x = static_cast<FqElem>(a);
    if (add(x, 0) != x || mul(x, 1) != x || add(x, neg(x)) != 0) return false;
    if (a != 0 && mul(x, inv(x)) != 1) return false;
    for (int b = 0; b < q_; ++b) {
      const FqElem y = static_cast<FqElem>(b);
      if (add(x, y) != add(y, x) || mul(x, y) != mul(y, x)) return false;
      if (a != 0 && b != 0 && mul(x, y) == 0) return false;
      for (int c = 0; c < q_; ++c) {
        const FqElem z = static_cast<FqElem>(c);
        if (add(add(x, y), z) != add(x, add(y, z))) return false;
        if (mul(mul(x, y), z) != mul(x, mul(y, z))) return false;
        if (mul(x, add(y, z)) != add(mul(x, y), mul(x, z))) return false;
      }
    }
  }
  return true;
}

FqMatrix FqMatrix::identity(int n) {
  FqMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

FqVector FqMatrix::column(int c) const {
  FqVector v(static_cast<size_t>(n));
  for (int r = 0; r < n; ++r) v[static_cast<size_t>(r)] = (*this)(r, c);
  return v;
}

bool FqMatrix::is_upper_triangular() const {
  for (int r = 1; r < n; ++r)
    for (int c = 0; c < r; ++c)
      if ((*this)(r, c) != 0) return false;
  return true;
}

bool FqMatrix::is_unitriangular() const {
  if (!is_upper_triangular()) return false;
  for (int i = 0; i < n; ++i)
    if ((*this)(i, i) != 1) return false;
  return true;
}

std::string FqMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (int r = 0; r < n; ++r) {
    os << (r ? ";" : "");
    for (int c = 0; c < n; ++c) os << (c ? "," : "") << int((*this)(r, c));
  }
  os << ']';
  return os.str();
}

FqMatrix mul(const FieldTable& f, const FqMatrix& x, const FqMatrix& y) {
  FqMatrix m(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      FqElem a = x(i, k);
      if (a == 0) continue;
      for (int j = 0; j < x.n; ++j) m(i, j) = f.add(m(i, j), f.mul(a, y(k, j)));
    }
  return m;
}

FqVector apply(const FieldTable& f, const FqMatrix& m, const FqVector& v) {
  FqVector out(static_cast<size_t>(m.n), 0);
  for (int i = 0; i < m.n; ++i) {
    FqElem s = 0;
    for (int j = 0; j < m.n; ++j) s = f.add(s, f.mul(m(i, j), v[static_cast<size_t>(j)]));
    out[static_cast<size_t>(i)] = s;
  }
  return out;
}

std::vector<FqVector> rref(const FieldTable& f, std::vector<FqVector> rows) {
  if (rows.empty()) return rows;
  const size_t n = rows[0].size();
  size_t r = 0;
  for (size_t c = 0; c < n && r < rows.size(); ++c) {
    size_t i = r;
    while (i < rows.size() && rows[i][c] == 0) ++i;
    if (i == rows.size()) continue;
    std::swap(rows[i], rows[r]);
    const FqElem s = f.inv(rows[r][c]);
    for (auto& x : rows[r]) x = f.mul(x, s);
    for (size_t k = 0; k < rows.size(); ++k) {
      if (k == r || rows[k][c] == 0) continue;
      const FqElem t = rows[k][c];
      for (size_t j = c; j < n; ++j) rows[k][j] = f.sub(rows[k][j], f.mul(t, rows[r][j]));
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

int rank_of(const FieldTable& f, std::vector<FqVector> rows) {
  return static_cast<int>(rref(f, std::move(rows)).size());
}

bool invertible(const FieldTable& f, const FqMatrix& m) {
  std::vector<FqVector> rows;
  for (int r = 0; r < m.n; ++r)
    rows.emplace_back(m.a.begin() + r * m.n, m.a.begin() + (r + 1) * m.n);
  return rank_of(f, std::move(rows)) == m.n;
}

FqMatrix permutation_matrix(const std::vector<int>& sigma) {
  const int n = static_cast<int>(sigma.size());
  FqMatrix m(n);
  for (int j = 0; j < n; ++j) m(sigma[static_cast<size_t>(j)], j) = 1;
  return m;
}

std::vector<FqMatrix> unitriangular_group(const FieldTable& f, int n) {
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  std::vector<FqMatrix> out;
  std::vector<int> digits(slots.size(), 0);
  for (;;) {
    FqMatrix u = FqMatrix::identity(n);
    for (size_t s = 0; s < slots.size(); ++s)
      u(slots[s].first, slots[s].second) = static_cast<FqElem>(digits[s]);
    out.push_back(std::move(u));
    size_t s = slots.size();
    while (s > 0 && ++digits[s - 1] == f.q()) digits[--s] = 0;
    if (s == 0) break;
  }
  return out;
}

}  // namespace titshom
