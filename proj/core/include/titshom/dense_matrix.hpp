#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "titshom/integer.hpp"

namespace titshom {

// Row-major dense integer matrix; used for small exact computations where
// unimodular transforms are needed.
class DenseIntMatrix {
 public:
  DenseIntMatrix() = default;
  DenseIntMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static DenseIntMatrix identity(size_t n);
  static DenseIntMatrix from_rows(const std::vector<std::vector<Integer>>& rows);

  size_t rows() const noexcept { return rows_; }
  size_t cols() const noexcept { return cols_; }

  Integer& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Integer> row(size_t r) const;
  std::vector<Integer> col(size_t c) const;

  DenseIntMatrix transpose() const;
  // Rows [r0, r1) and columns [c0, c1).
  DenseIntMatrix block(size_t r0, size_t r1, size_t c0, size_t c1) const;
  bool is_zero() const;
  std::string to_string() const;

  friend DenseIntMatrix operator*(const DenseIntMatrix& a, const DenseIntMatrix& b);
  friend bool operator==(const DenseIntMatrix& a, const DenseIntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  void swap_rows(size_t a, size_t b);
  void swap_cols(size_t a, size_t b);
  // row a += f * row b
  void add_row_multiple(size_t a, size_t b, const Integer& f);
  void add_col_multiple(size_t a, size_t b, const Integer& f);
  void negate_row(size_t r);
  void negate_col(size_t c);

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<Integer> data_;
};

std::vector<Integer> operator*(const DenseIntMatrix& a, const std::vector<Integer>& x);

// Column echelon form by unimodular column operations: H = A * V with
// V * Vinv = 1.  The first `rank` columns of H are nonzero with strictly
// increasing pivot rows; the remaining columns are zero.
struct ColumnEchelon {
  DenseIntMatrix H, V, Vinv;
  size_t rank = 0;
  std::vector<size_t> pivot_rows;
};
ColumnEchelon column_echelon(const DenseIntMatrix& a);

// Saturated Z-basis of ker A (columns).
DenseIntMatrix integer_kernel(const DenseIntMatrix& a);

// Rows form a basis of the saturation (Q-span ∩ Z^n) of the row span of A,
// in Hermite normal form (positive pivots, reduced above).
DenseIntMatrix saturated_row_basis(const DenseIntMatrix& a);

// Row-style Hermite normal form of the row lattice, zero rows removed.
DenseIntMatrix hermite_rows(const DenseIntMatrix& a);

// Integer solution x of A x = b, if one exists.
std::optional<std::vector<Integer>> solve_integer(const DenseIntMatrix& a,
                                                  const std::vector<Integer>& b);

// Determinant by fraction-free elimination.
Integer determinant(const DenseIntMatrix& a);
size_t rank_q(const DenseIntMatrix& a);

}  // namespace titshom
