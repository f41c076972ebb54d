#include "titshom/sparse_matrix.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

#include "titshom/dense_matrix.hpp"
#include "titshom/errors.hpp"

namespace titshom {

size_t SparseIntMatrix::nnz() const noexcept {
  size_t n = 0;
  for (const auto& c : data_) n += c.size();
  return n;
}

Integer SparseIntMatrix::get(size_t r, size_t c) const {
  const Column& col = data_.at(c);
  auto it = std::lower_bound(col.begin(), col.end(), static_cast<int>(r),
                             [](const Entry& e, int row) { return e.first < row; });
  if (it != col.end() && it->first == static_cast<int>(r)) return it->second;
  return Integer(0);
}

void SparseIntMatrix::add(size_t r, size_t c, const Integer& v) {
  if (r >= rows_ || c >= cols_) throw InvalidArgument("matrix index out of range");
  if (v.is_zero()) return;
  Column& col = data_[c];
  auto it = std::lower_bound(col.begin(), col.end(), static_cast<int>(r),
                             [](const Entry& e, int row) { return e.first < row; });
  if (it != col.end() && it->first == static_cast<int>(r)) {
    it->second += v;
    if (it->second.is_zero()) col.erase(it);
  } else {
    col.insert(it, Entry(static_cast<int>(r), v));
  }
}

void SparseIntMatrix::set(size_t r, size_t c, const Integer& v) {
  if (r >= rows_ || c >= cols_) throw InvalidArgument("matrix index out of range");
  Column& col = data_[c];
  auto it = std::lower_bound(col.begin(), col.end(), static_cast<int>(r),
                             [](const Entry& e, int row) { return e.first < row; });
  bool present = it != col.end() && it->first == static_cast<int>(r);
  if (v.is_zero()) {
    if (present) col.erase(it);
  } else if (present) {
    it->second = v;
  } else {
    col.insert(it, Entry(static_cast<int>(r), v));
  }
}

void SparseIntMatrix::canonicalize(Column& col) {
  std::sort(col.begin(), col.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  size_t out = 0;
  for (size_t i = 0; i < col.size();) {
    size_t j = i;
    Integer sum(0);
    while (j < col.size() && col[j].first == col[i].first) sum += col[j++].second;
    if (!sum.is_zero()) col[out++] = Entry(col[i].first, std::move(sum));
    i = j;
  }
  col.resize(out);
}

void SparseIntMatrix::set_column(size_t c, Column col) {
  for (const auto& e : col) {
    if (e.first < 0 || static_cast<size_t>(e.first) >= rows_) {
      throw InvalidArgument("row index out of range");
    }
  }
  canonicalize(col);
  data_.at(c) = std::move(col);
}

void SparseIntMatrix::append_column(Column col) {
  data_.emplace_back();
  ++cols_;
  set_column(cols_ - 1, std::move(col));
}

SparseIntMatrix SparseIntMatrix::transpose() const {
  SparseIntMatrix t(cols_, rows_);
  for (size_t c = 0; c < cols_; ++c) {
    for (const auto& [r, v] : data_[c]) t.data_[r].emplace_back(static_cast<int>(c), v);
  }
  return t;  // columns were filled in increasing c, so already sorted
}

DenseIntMatrix SparseIntMatrix::to_dense() const {
  DenseIntMatrix d(rows_, cols_);
  for (size_t c = 0; c < cols_; ++c) {
    for (const auto& [r, v] : data_[c]) d(r, c) = v;
  }
  return d;
}

SparseIntMatrix SparseIntMatrix::from_dense(const DenseIntMatrix& d) {
  SparseIntMatrix m(d.rows(), d.cols());
  for (size_t c = 0; c < d.cols(); ++c) {
    for (size_t r = 0; r < d.rows(); ++r) {
      if (!d(r, c).is_zero()) m.data_[c].emplace_back(static_cast<int>(r), d(r, c));
    }
  }
  return m;
}

SparseIntMatrix SparseIntMatrix::identity(size_t n) {
  SparseIntMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.data_[i].emplace_back(static_cast<int>(i), Integer(1));
  return m;
}

SparseIntMatrix SparseIntMatrix::hconcat(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  if (a.rows_ != b.rows_) throw InvalidArgument("hconcat: row counts differ");
  SparseIntMatrix m(a.rows_, a.cols_ + b.cols_);
  std::copy(a.data_.begin(), a.data_.end(), m.data_.begin());
  std::copy(b.data_.begin(), b.data_.end(), m.data_.begin() + static_cast<ptrdiff_t>(a.cols_));
  return m;
}

std::vector<Integer> SparseIntMatrix::apply(const std::vector<Integer>& x) const {
  if (x.size() != cols_) throw InvalidArgument("apply: dimension mismatch");
  std::vector<Integer> y(rows_);
  for (size_t c = 0; c < cols_; ++c) {
    if (x[c].is_zero()) continue;
    for (const auto& [r, v] : data_[c]) y[r].add_mul(v, x[c]);
  }
  return y;
}

SparseIntMatrix operator*(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  if (a.cols_ != b.rows_) throw InvalidArgument("matrix product: dimension mismatch");
  SparseIntMatrix m(a.rows_, b.cols_);
  std::vector<Integer> acc(a.rows_);
  std::vector<int> touched;
  std::vector<char> mark(a.rows_, 0);
  for (size_t c = 0; c < b.cols_; ++c) {
    touched.clear();
    for (const auto& [k, bv] : b.data_[c]) {
      for (const auto& [r, av] : a.data_[k]) {
        if (!mark[r]) {
          mark[r] = 1;
          touched.push_back(r);
        }
        acc[r].add_mul(av, bv);
      }
    }
    std::sort(touched.begin(), touched.end());
    auto& col = m.data_[c];
    for (int r : touched) {
      if (!acc[r].is_zero()) col.emplace_back(r, std::move(acc[r]));
      acc[r] = Integer(0);
      mark[r] = 0;
    }
  }
  return m;
}

bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

void write_triplets(std::ostream& os, const SparseIntMatrix& m) {
  os << m.rows() << ' ' << m.cols() << '\n';
  // Row-major order reads more naturally than column-major.
  SparseIntMatrix t = m.transpose();
  for (size_t r = 0; r < t.cols(); ++r) {
    for (const auto& [c, v] : t.column(r)) os << r << ' ' << c << ' ' << v << '\n';
  }
}

SparseIntMatrix read_triplets(std::istream& is) {
  long long rows = -1, cols = -1;
  if (!(is >> rows >> cols) || rows < 0 || cols < 0) {
    throw ParseError("triplets: expected 'rows cols' header");
  }
  SparseIntMatrix m(static_cast<size_t>(rows), static_cast<size_t>(cols));
  long long r, c;
  std::string v;
  while (is >> r >> c >> v) {
    if (r < 0 || c < 0 || r >= rows || c >= cols) {
      throw ParseError("triplets: index out of range at (" + std::to_string(r) + "," +
                       std::to_string(c) + ")");
    }
    Integer value;
    try {
      value = Integer::parse(v);
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("triplets: ") + e.what());
    }
    m.add(static_cast<size_t>(r), static_cast<size_t>(c), value);
  }
  if (!is.eof()) throw ParseError("triplets: malformed entry line");
  return m;
}

}  // namespace titshom
