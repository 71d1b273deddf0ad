#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace cylinder {

using Integer = mpz_class;

Integer make_integer(std::string_view decimal);
std::optional<std::int64_t> to_int64(const Integer& v);
Integer binomial(unsigned long n, unsigned long k);
Integer pow2(unsigned long e);
Integer lcm(const Integer& a, const Integer& b);
Integer gcd(const Integer& a, const Integer& b);

// Rational number kept in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  template <class Op>
  Rational(const __gmp_expr<mpz_t, Op>& e) : v_(Integer(e)) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& num, const Integer& den);
  explicit Rational(const mpq_class& v);

  static Rational parse(std::string_view text);  // "a", "a/b" or a finite decimal "0.125"

  Integer num() const { return v_.get_num(); }
  Integer den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  double to_double() const { return v_.get_d(); }
  std::string str() const;
  int sign() const { return sgn(v_); }
  bool is_integer() const { return v_.get_den() == 1; }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class v_;
};

Integer floor(const Rational& x);
Integer ceil(const Rational& x);
Rational frac(const Rational& x);  // {x} in [0,1)
Rational abs(const Rational& x);
Rational pow(const Rational& x, unsigned e);
const Rational& min(const Rational& a, const Rational& b);
const Rational& max(const Rational& a, const Rational& b);

// ||x||: distance to the nearest integer.
Rational nearest_int_distance(const Rational& x);

Integer mod_inverse(const Integer& a, const Integer& m);
Integer mod(const Integer& a, const Integer& m);  // least non-negative residue

// A point of the circle R/Z, stored as its representative in [0,1).
class CirclePoint {
 public:
  CirclePoint() = default;
  CirclePoint(const Rational& x) : value_(frac(x)) {}  // NOLINT(google-explicit-constructor)
  const Rational& value() const { return value_; }

  friend CirclePoint operator+(const CirclePoint& a, const Rational& t) { return {a.value_ + t}; }
  friend CirclePoint operator-(const CirclePoint& a, const Rational& t) { return {a.value_ - t}; }
  friend bool operator==(const CirclePoint&, const CirclePoint&) = default;
  friend auto operator<=>(const CirclePoint& a, const CirclePoint& b) { return a.value_ <=> b.value_; }

 private:
  Rational value_;
};

Rational circle_distance(const CirclePoint& x, const CirclePoint& y);

// Closed interval [lo, hi] with exact rational endpoints.
class RationalInterval {
 public:
  RationalInterval() = default;
  RationalInterval(Rational lo, Rational hi);
  static RationalInterval point(const Rational& x) { return {x, x}; }

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const RationalInterval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool is_point() const { return lo_ == hi_; }
  bool certainly_less(const Rational& x) const { return hi_ < x; }
  bool certainly_greater(const Rational& x) const { return lo_ > x; }
  std::string str() const;

  friend RationalInterval operator+(const RationalInterval& a, const RationalInterval& b);
  friend RationalInterval operator-(const RationalInterval& a, const RationalInterval& b);
  friend RationalInterval operator*(const RationalInterval& a, const RationalInterval& b);
  friend RationalInterval operator-(const RationalInterval& a) { return {-a.hi_, -a.lo_}; }
  friend bool operator==(const RationalInterval&, const RationalInterval&) = default;

 private:
  Rational lo_;
  Rational hi_;
};

RationalInterval hull(const RationalInterval& a, const RationalInterval& b);
RationalInterval reciprocal(const RationalInterval& a);  // requires 0 not in a

// Exact range of ||t|| for t in the interval.
RationalInterval nearest_int_distance(const RationalInterval& x);

}  // namespace cylinder
