#include "titshom/dense_matrix.hpp"

#include <algorithm>
#include <sstream>

#include "titshom/errors.hpp"

namespace titshom {

DenseIntMatrix DenseIntMatrix::identity(size_t n) {
  DenseIntMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

DenseIntMatrix DenseIntMatrix::from_rows(const std::vector<std::vector<Integer>>& rows) {
  size_t cols = rows.empty() ? 0 : rows[0].size();
  DenseIntMatrix m(rows.size(), cols);
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InvalidArgument("from_rows: ragged rows");
    for (size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

std::vector<Integer> DenseIntMatrix::row(size_t r) const {
  return {data_.begin() + static_cast<ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<ptrdiff_t>((r + 1) * cols_)};
}

std::vector<Integer> DenseIntMatrix::col(size_t c) const {
  std::vector<Integer> v(rows_);
  for (size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

DenseIntMatrix DenseIntMatrix::transpose() const {
  DenseIntMatrix t(cols_, rows_);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

DenseIntMatrix DenseIntMatrix::block(size_t r0, size_t r1, size_t c0, size_t c1) const {
  DenseIntMatrix b(r1 - r0, c1 - c0);
  for (size_t r = r0; r < r1; ++r)
    for (size_t c = c0; c < c1; ++c) b(r - r0, c - c0) = (*this)(r, c);
  return b;
}

bool DenseIntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v.is_zero(); });
}

std::string DenseIntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (size_t r = 0; r < rows_; ++r) {
    os << (r ? ",[" : "[");
    for (size_t c = 0; c < cols_; ++c) os << (c ? "," : "") << (*this)(r, c);
    os << ']';
  }
  os << ']';
  return os.str();
}

DenseIntMatrix operator*(const DenseIntMatrix& a, const DenseIntMatrix& b) {
  if (a.cols_ != b.rows_) throw InvalidArgument("matrix product: dimension mismatch");
  DenseIntMatrix m(a.rows_, b.cols_);
  for (size_t i = 0; i < a.rows_; ++i)
    for (size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (size_t j = 0; j < b.cols_; ++j) m(i, j).add_mul(aik, b(k, j));
    }
  return m;
}

std::vector<Integer> operator*(const DenseIntMatrix& a, const std::vector<Integer>& x) {
  if (a.cols() != x.size()) throw InvalidArgument("matrix-vector: dimension mismatch");
  std::vector<Integer> y(a.rows());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t k = 0; k < a.cols(); ++k) y[i].add_mul(a(i, k), x[k]);
  return y;
}

void DenseIntMatrix::swap_rows(size_t a, size_t b) {
  if (a == b) return;
  for (size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void DenseIntMatrix::swap_cols(size_t a, size_t b) {
  if (a == b) return;
  for (size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void DenseIntMatrix::add_row_multiple(size_t a, size_t b, const Integer& f) {
  if (f.is_zero()) return;
  for (size_t c = 0; c < cols_; ++c) (*this)(a, c).add_mul(f, (*this)(b, c));
}

void DenseIntMatrix::add_col_multiple(size_t a, size_t b, const Integer& f) {
  if (f.is_zero()) return;
  for (size_t r = 0; r < rows_; ++r) (*this)(r, a).add_mul(f, (*this)(r, b));
}

void DenseIntMatrix::negate_row(size_t r) {
  for (size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

void DenseIntMatrix::negate_col(size_t c) {
  for (size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
}

namespace {

// Column operations mirrored on H and V, inverse row operations on Vinv.
struct EchelonState {
  DenseIntMatrix& H;
  DenseIntMatrix& V;
  DenseIntMatrix& Vinv;

  void swap(size_t i, size_t j) {
    H.swap_cols(i, j);
    V.swap_cols(i, j);
    Vinv.swap_rows(i, j);
  }
  void negate(size_t i) {
    H.negate_col(i);
    V.negate_col(i);
    Vinv.negate_row(i);
  }
  // col j += f * col i
  void add(size_t j, size_t i, const Integer& f) {
    H.add_col_multiple(j, i, f);
    V.add_col_multiple(j, i, f);
    Vinv.add_row_multiple(i, j, -f);
  }
  // [col i, col j] <- [col i, col j] * [[s, x], [t, y]] with s*y - x*t = 1.
  void mix(size_t i, size_t j, const Integer& s, const Integer& t, const Integer& x,
           const Integer& y) {
    auto cols = [&](DenseIntMatrix& M) {
      for (size_t r = 0; r < M.rows(); ++r) {
        Integer a = M(r, i), b = M(r, j);
        M(r, i) = s * a + t * b;
        M(r, j) = x * a + y * b;
      }
    };
    cols(H);
    cols(V);
    // inverse of [[s, x], [t, y]] is [[y, -x], [-t, s]] acting on rows i, j
    for (size_t c = 0; c < Vinv.cols(); ++c) {
      Integer a = Vinv(i, c), b = Vinv(j, c);
      Vinv(i, c) = y * a - x * b;
      Vinv(j, c) = s * b - t * a;
    }
  }
};

}  // namespace

ColumnEchelon column_echelon(const DenseIntMatrix& a) {
  ColumnEchelon out;
  out.H = a;
  out.V = DenseIntMatrix::identity(a.cols());
  out.Vinv = DenseIntMatrix::identity(a.cols());
  EchelonState st{out.H, out.V, out.Vinv};
  const size_t n = a.cols();
  size_t rank = 0;
  for (size_t r = 0; r < a.rows() && rank < n; ++r) {
    for (size_t c = rank + 1; c < n; ++c) {
      const Integer b = out.H(r, c);
      if (b.is_zero()) continue;
      const Integer p = out.H(r, rank);
      if (p.is_zero()) {
        st.swap(rank, c);
      } else if (divides(p, b)) {
        st.add(c, rank, -(b / p));
      } else {
        ExtendedGcd eg = extended_gcd(p, b);
        st.mix(rank, c, eg.s, eg.t, -divexact(b, eg.g), divexact(p, eg.g));
      }
    }
    if (out.H(r, rank).is_zero()) continue;
    if (out.H(r, rank).sign() < 0) st.negate(rank);
    const Integer p = out.H(r, rank);
    for (size_t j = 0; j < rank; ++j) {
      Integer f = floor_div(out.H(r, j), p);
      if (!f.is_zero()) st.add(j, rank, -f);
    }
    out.pivot_rows.push_back(r);
    ++rank;
  }
  out.rank = rank;
  return out;
}

DenseIntMatrix integer_kernel(const DenseIntMatrix& a) {
  ColumnEchelon ce = column_echelon(a);
  return ce.V.block(0, a.cols(), ce.rank, a.cols());
}

DenseIntMatrix hermite_rows(const DenseIntMatrix& a) {
  ColumnEchelon ce = column_echelon(a.transpose());
  return ce.H.block(0, ce.H.rows(), 0, ce.rank).transpose();
}

DenseIntMatrix saturated_row_basis(const DenseIntMatrix& a) {
  ColumnEchelon ce = column_echelon(a);
  return hermite_rows(ce.Vinv.block(0, ce.rank, 0, a.cols()));
}

std::optional<std::vector<Integer>> solve_integer(const DenseIntMatrix& a,
                                                  const std::vector<Integer>& b) {
  if (b.size() != a.rows()) throw InvalidArgument("solve_integer: dimension mismatch");
  ColumnEchelon ce = column_echelon(a);
  std::vector<Integer> y(a.cols());
  for (size_t j = 0; j < ce.rank; ++j) {
    size_t pr = ce.pivot_rows[j];
    Integer rhs = b[pr];
    for (size_t k = 0; k < j; ++k) rhs.sub_mul(ce.H(pr, k), y[k]);
    if (!divides(ce.H(pr, j), rhs)) return std::nullopt;
    y[j] = divexact(rhs, ce.H(pr, j));
  }
  if (ce.H * y != b) return std::nullopt;
  return ce.V * y;
}

Integer determinant(const DenseIntMatrix& a) {
  if (a.rows() != a.cols()) throw InvalidArgument("determinant of non-square matrix");
  const size_t n = a.rows();
  if (n == 0) return Integer(1);
  DenseIntMatrix m = a;
  Integer prev(1);
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      size_t r = k + 1;
      while (r < n && m(r, k).is_zero()) ++r;
      if (r == n) return Integer(0);
      m.swap_rows(k, r);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        Integer v = m(i, j) * m(k, k);
        v.sub_mul(m(i, k), m(k, j));
        m(i, j) = divexact(v, prev);
      }
    prev = m(k, k);
  }
  return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

size_t rank_q(const DenseIntMatrix& a) {
  DenseIntMatrix m = a;
  size_t rank = 0;
  Integer prev(1);
  for (size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    size_t r = rank;
    while (r < m.rows() && m(r, c).is_zero()) ++r;
    if (r == m.rows()) continue;
    m.swap_rows(rank, r);
    for (size_t i = rank + 1; i < m.rows(); ++i) {
      for (size_t j = c + 1; j < m.cols(); ++j) {
        Integer v = m(i, j) * m(rank, c);
        v.sub_mul(m(i, c), m(rank, j));
        m(i, j) = divexact(v, prev);
      }
      m(i, c) = 0;
    }
    prev = m(rank, c);
    ++rank;
  }
  return rank;
}

}  // namespace titshom
