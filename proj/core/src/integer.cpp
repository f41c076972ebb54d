#include "titshom/integer.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace titshom {

namespace {

constexpr int64_t kMin = std::numeric_limits<int64_t>::min();

mpz_class mpz_of(int64_t v) { return mpz_class(static_cast<long>(v)); }

}  // namespace

Integer::Integer(const mpz_class& v) { assign_mpz(v); }

Integer Integer::parse(std::string_view text) {
  std::string s(text);
  mpz_class v;
  if (s.empty() || v.set_str(s, 10) != 0) {
    throw std::invalid_argument("not a decimal integer: '" + s + "'");
  }
  return Integer(v);
}

void Integer::assign_mpz(const mpz_class& v) {
  if (v.fits_slong_p()) {
    small_ = v.get_si();
    big_.reset();
  } else {
    small_ = 0;
    if (big_) {
      *big_ = v;
    } else {
      big_ = std::make_unique<mpz_class>(v);
    }
  }
}

void Integer::normalize() {
  if (big_ && big_->fits_slong_p()) {
    small_ = big_->get_si();
    big_.reset();
  }
}

mpz_class& Integer::promote() {
  if (!big_) {
    big_ = std::make_unique<mpz_class>(mpz_of(small_));
    small_ = 0;
  }
  return *big_;
}

int Integer::sign() const noexcept {
  if (big_) return sgn(*big_);
  return (small_ > 0) - (small_ < 0);
}

mpz_class Integer::to_mpz() const { return big_ ? *big_ : mpz_of(small_); }

std::string Integer::to_string() const {
  return big_ ? big_->get_str(10) : std::to_string(small_);
}

size_t Integer::bit_length() const {
  if (is_zero()) return 0;
  if (big_) return mpz_sizeinbase(big_->get_mpz_t(), 2);
  uint64_t m = small_ < 0 ? uint64_t(0) - uint64_t(small_) : uint64_t(small_);
  return 64 - static_cast<size_t>(__builtin_clzll(m));
}

Integer Integer::operator-() const {
  if (!big_ && small_ != kMin) return Integer(-small_);
  return Integer(mpz_class(-to_mpz()));
}

Integer& Integer::operator+=(const Integer& o) {
  if (!big_ && !o.big_) {
    int64_t r;
    if (!__builtin_add_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  mpz_class& me = promote();
  me += o.to_mpz();
  normalize();
  return *this;
}

Integer& Integer::operator-=(const Integer& o) {
  if (!big_ && !o.big_) {
    int64_t r;
    if (!__builtin_sub_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  mpz_class& me = promote();
  me -= o.to_mpz();
  normalize();
  return *this;
}

Integer& Integer::operator*=(const Integer& o) {
  if (!big_ && !o.big_) {
    int64_t r;
    if (!__builtin_mul_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  mpz_class& me = promote();
  me *= o.to_mpz();
  normalize();
  return *this;
}

Integer& Integer::operator/=(const Integer& o) {
  if (o.is_zero()) throw std::domain_error("Integer division by zero");
  if (!big_ && !o.big_ && !(small_ == kMin && o.small_ == -1)) {
    small_ /= o.small_;
    return *this;
  }
  mpz_class q;
  mpz_tdiv_q(q.get_mpz_t(), to_mpz().get_mpz_t(), o.to_mpz().get_mpz_t());
  assign_mpz(q);
  return *this;
}

Integer& Integer::operator%=(const Integer& o) {
  if (o.is_zero()) throw std::domain_error("Integer division by zero");
  if (!big_ && !o.big_) {
    if (o.small_ == -1) {
      small_ = 0;
    } else {
      small_ %= o.small_;
    }
    return *this;
  }
  mpz_class r;
  mpz_tdiv_r(r.get_mpz_t(), to_mpz().get_mpz_t(), o.to_mpz().get_mpz_t());
  assign_mpz(r);
  return *this;
}

void Integer::sub_mul(const Integer& a, const Integer& b) {
  if (!big_ && !a.big_ && !b.big_) {
    int64_t p, r;
    if (!__builtin_mul_overflow(a.small_, b.small_, &p) &&
        !__builtin_sub_overflow(small_, p, &r)) {
      small_ = r;
      return;
    }
  }
  mpz_class& me = promote();
  mpz_submul(me.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  normalize();
}

void Integer::add_mul(const Integer& a, const Integer& b) {
  if (!big_ && !a.big_ && !b.big_) {
    int64_t p, r;
    if (!__builtin_mul_overflow(a.small_, b.small_, &p) &&
        !__builtin_add_overflow(small_, p, &r)) {
      small_ = r;
      return;
    }
  }
  mpz_class& me = promote();
  mpz_addmul(me.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  normalize();
}

bool operator==(const Integer& a, const Integer& b) noexcept {
  if (!a.big_ && !b.big_) return a.small_ == b.small_;
  if (a.big_ && b.big_) return cmp(*a.big_, *b.big_) == 0;
  return false;
}

std::strong_ordering operator<=>(const Integer& a, const Integer& b) noexcept {
  if (!a.big_ && !b.big_) return a.small_ <=> b.small_;
  int c = cmp(a.to_mpz(), b.to_mpz());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

size_t Integer::hash() const noexcept {
  if (!big_) return std::hash<int64_t>{}(small_);
  size_t h = static_cast<size_t>(sgn(*big_));
  size_t n = mpz_size(big_->get_mpz_t());
  for (size_t i = 0; i < n; ++i) {
    h = h * 1000003u ^ static_cast<size_t>(mpz_getlimbn(big_->get_mpz_t(), i));
  }
  return h;
}

Integer abs(const Integer& a) { return a.sign() < 0 ? -a : a; }

Integer gcd(const Integer& a, const Integer& b) {
  if (a.is_small() && b.is_small() && a.small_value() != kMin && b.small_value() != kMin) {
    uint64_t x = static_cast<uint64_t>(a.small_value() < 0 ? -a.small_value() : a.small_value());
    uint64_t y = static_cast<uint64_t>(b.small_value() < 0 ? -b.small_value() : b.small_value());
    while (y != 0) {
      uint64_t t = x % y;
      x = y;
      y = t;
    }
    return Integer(static_cast<long long>(x));
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Integer(g);
}

Integer lcm(const Integer& a, const Integer& b) {
  if (a.is_zero() || b.is_zero()) return Integer(0);
  return abs(divexact(a, gcd(a, b)) * b);
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if (!(q * b == a) && ((a.sign() < 0) != (b.sign() < 0))) q -= Integer(1);
  return q;
}

Integer floor_mod(const Integer& a, const Integer& b) { return a - floor_div(a, b) * b; }

Integer divexact(const Integer& a, const Integer& b) {
  if (a.is_small() && b.is_small() && !(a.small_value() == kMin && b.small_value() == -1)) {
    return Integer(a.small_value() / b.small_value());
  }
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Integer(q);
}

bool divides(const Integer& d, const Integer& a) {
  if (d.is_zero()) return a.is_zero();
  return (a % d).is_zero();
}

ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
  if (a.is_small() && b.is_small() && a.small_value() != kMin && b.small_value() != kMin) {
    // Iterative Euclid; coefficients stay bounded by |a|,|b|.
    int64_t old_r = a.small_value(), r = b.small_value();
    int64_t old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
      int64_t q = old_r / r;
      int64_t tmp = old_r - q * r;
      old_r = r;
      r = tmp;
      tmp = old_s - q * s;
      old_s = s;
      s = tmp;
      tmp = old_t - q * t;
      old_t = t;
      t = tmp;
    }
    if (old_r < 0) {
      old_r = -old_r;
      old_s = -old_s;
      old_t = -old_t;
    }
    return {Integer(old_r), Integer(old_s), Integer(old_t)};
  }
  mpz_class g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.to_mpz().get_mpz_t(),
             b.to_mpz().get_mpz_t());
  return {Integer(g), Integer(s), Integer(t)};
}

std::ostream& operator<<(std::ostream& os, const Integer& v) { return os << v.to_string(); }

}  // namespace titshom
