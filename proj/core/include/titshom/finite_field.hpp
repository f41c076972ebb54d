#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace titshom {

using FqElem = uint8_t;
using FqVector = std::vector<FqElem>;

// F_q for q = p^k <= 256 by lookup tables.  Elements are encoded as the
// base-p digits of their coefficient vector over F_p (digit i = coefficient
// of x^i), so 0 and 1 are the additive and multiplicative identities.
class FieldTable {
 public:
  explicit FieldTable(int q);

  // Shared, lazily built table (thread-safe).
  static const FieldTable& get(int q);

  int q() const noexcept { return q_; }
  int p() const noexcept { return p_; }
  int degree() const noexcept { return k_; }
  // Monic modulus coefficients c_0 .. c_k (c_k = 1); {0,1} when k = 1.
  const std::vector<int>& modulus() const noexcept { return modulus_; }

  FqElem add(FqElem a, FqElem b) const { return add_[a * q_ + b]; }
  FqElem sub(FqElem a, FqElem b) const { return add_[a * q_ + neg_[b]]; }
  FqElem mul(FqElem a, FqElem b) const { return mul_[a * q_ + b]; }
  FqElem neg(FqElem a) const { return neg_[a]; }
  // Requires a != 0.
  FqElem inv(FqElem a) const { return inv_[a]; }
  // A generator of the multiplicative group.
  FqElem primitive() const noexcept { return primitive_; }

  // Exhaustive check of the field axioms on the tables.
  bool verify_axioms() const;

 private:
  int q_, p_, k_;
  std::vector<int> modulus_;
  std::vector<FqElem> add_, mul_, neg_, inv_;
  FqElem primitive_ = 1;
};

// True iff q = p^k for a prime p, k >= 1; reports p and k.
bool prime_power(int q, int* p = nullptr, int* k = nullptr);

// Dense n×n matrix over F_q, row-major.
struct FqMatrix {
  int n = 0;
  std::vector<FqElem> a;

  FqMatrix() = default;
  explicit FqMatrix(int n) : n(n), a(static_cast<size_t>(n * n), 0) {}
  static FqMatrix identity(int n);

  FqElem& operator()(int r, int c) { return a[static_cast<size_t>(r * n + c)]; }
  FqElem operator()(int r, int c) const { return a[static_cast<size_t>(r * n + c)]; }
  FqVector column(int c) const;
  bool is_upper_triangular() const;
  bool is_unitriangular() const;
  std::string to_string() const;

  friend auto operator<=>(const FqMatrix&, const FqMatrix&) = default;
};

FqMatrix mul(const FieldTable& f, const FqMatrix& x, const FqMatrix& y);
FqVector apply(const FieldTable& f, const FqMatrix& m, const FqVector& v);
// Rank of a list of vectors of equal length.
int rank_of(const FieldTable& f, std::vector<FqVector> rows);
bool invertible(const FieldTable& f, const FqMatrix& m);
// Permutation matrix with columns e_{sigma(j)}.
FqMatrix permutation_matrix(const std::vector<int>& sigma);

// All unitriangular n×n matrices in a fixed order (q^{n(n-1)/2} of them).
std::vector<FqMatrix> unitriangular_group(const FieldTable& f, int n);

// Canonical row-reduced form of the span of the given vectors; zero rows
// are dropped.  Pivots are 1 and pivot columns are otherwise zero.
std::vector<FqVector> rref(const FieldTable& f, std::vector<FqVector> rows);

}  // namespace titshom
