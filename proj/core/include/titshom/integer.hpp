#pragma once

// Arbitrary-precision signed integer with an inline int64 fast path.
//
// Values that fit in an int64_t are stored inline; anything larger spills to
// a heap-allocated mpz_class.  The representation is kept normalized (a value
// is big iff it does not fit in int64_t), so equality and hashing can compare
// representations directly.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

namespace titshom {

class Integer {
 public:
  Integer() noexcept = default;
  Integer(int v) noexcept : small_(v) {}
  Integer(long v) noexcept : small_(v) {}
  Integer(long long v) noexcept : small_(v) {}
  explicit Integer(const mpz_class& v);

  Integer(const Integer& o) : small_(o.small_) {
    if (o.big_) big_ = std::make_unique<mpz_class>(*o.big_);
  }
  Integer(Integer&&) noexcept = default;
  Integer& operator=(const Integer& o) {
    if (this != &o) {
      small_ = o.small_;
      big_ = o.big_ ? std::make_unique<mpz_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Integer& operator=(Integer&&) noexcept = default;

  static Integer parse(std::string_view text);

  bool is_small() const noexcept { return !big_; }
  bool is_zero() const noexcept { return !big_ && small_ == 0; }
  bool is_one() const noexcept { return !big_ && small_ == 1; }
  bool is_unit() const noexcept { return !big_ && (small_ == 1 || small_ == -1); }
  int sign() const noexcept;
  /// Requires is_small().
  int64_t small_value() const noexcept { return small_; }
  mpz_class to_mpz() const;
  std::string to_string() const;
  /// Number of bits in |value|; 0 for zero.
  size_t bit_length() const;

  Integer operator-() const;
  Integer& operator+=(const Integer& o);
  Integer& operator-=(const Integer& o);
  Integer& operator*=(const Integer& o);
  /// Truncating division (rounds toward zero), like C++ built-in integers.
  Integer& operator/=(const Integer& o);
  Integer& operator%=(const Integer& o);

  /// *this -= a * b, without materializing the product when possible.
  void sub_mul(const Integer& a, const Integer& b);
  void add_mul(const Integer& a, const Integer& b);

  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }
  friend Integer operator/(Integer a, const Integer& b) { return a /= b; }
  friend Integer operator%(Integer a, const Integer& b) { return a %= b; }

  friend bool operator==(const Integer& a, const Integer& b) noexcept;
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b) noexcept;

  size_t hash() const noexcept;

 private:
  void assign_mpz(const mpz_class& v);
  void normalize();
  mpz_class& promote();

  int64_t small_ = 0;
  std::unique_ptr<mpz_class> big_;
};

Integer abs(const Integer& a);
Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
/// Floor division and the matching non-negative-for-positive-divisor remainder.
Integer floor_div(const Integer& a, const Integer& b);
Integer floor_mod(const Integer& a, const Integer& b);
/// Requires b | a.
Integer divexact(const Integer& a, const Integer& b);
bool divides(const Integer& d, const Integer& a);

/// Extended gcd: g = s*a + t*b, g >= 0.
struct ExtendedGcd {
  Integer g, s, t;
};
ExtendedGcd extended_gcd(const Integer& a, const Integer& b);

std::ostream& operator<<(std::ostream& os, const Integer& v);

}  // namespace titshom

template <>
struct std::hash<titshom::Integer> {
  size_t operator()(const titshom::Integer& v) const noexcept { return v.hash(); }
};
