#pragma once

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include "titshom/integer.hpp"

namespace titshom {

class DenseIntMatrix;

// Column-major sparse matrix over Z.  Each column is a row-sorted list of
// nonzero entries; zeros are never stored.
class SparseIntMatrix {
 public:
  using Entry = std::pair<int, Integer>;
  using Column = std::vector<Entry>;

  SparseIntMatrix() = default;
  SparseIntMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(cols) {}

  size_t rows() const noexcept { return rows_; }
  size_t cols() const noexcept { return cols_; }
  size_t nnz() const noexcept;

  const Column& column(size_t c) const { return data_[c]; }
  const std::vector<Column>& columns() const noexcept { return data_; }

  Integer get(size_t r, size_t c) const;
  // Adds v to entry (r, c), dropping it if it cancels.
  void add(size_t r, size_t c, const Integer& v);
  void set(size_t r, size_t c, const Integer& v);
  // Replaces column c; entries need not be sorted and may contain duplicates.
  void set_column(size_t c, Column col);
  void append_column(Column col);

  SparseIntMatrix transpose() const;
  DenseIntMatrix to_dense() const;
  static SparseIntMatrix from_dense(const DenseIntMatrix& d);
  static SparseIntMatrix identity(size_t n);

  // Horizontal concatenation [A | B]; row counts must agree.
  static SparseIntMatrix hconcat(const SparseIntMatrix& a, const SparseIntMatrix& b);

  std::vector<Integer> apply(const std::vector<Integer>& x) const;
  bool is_zero() const noexcept { return nnz() == 0; }

  friend SparseIntMatrix operator*(const SparseIntMatrix& a, const SparseIntMatrix& b);
  friend bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b);

 private:
  static void canonicalize(Column& col);

  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<Column> data_;
};

// Triplet text format: "rows cols" then one "r c v" line per nonzero.
void write_triplets(std::ostream& os, const SparseIntMatrix& m);
SparseIntMatrix read_triplets(std::istream& is);

}  // namespace titshom
