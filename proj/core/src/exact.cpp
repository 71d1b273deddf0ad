#include "cylinder/exact.hpp"

#include <limits>
#include <stdexcept>

#include "cylinder/errors.hpp"

namespace cylinder {

Integer make_integer(std::string_view decimal) {
  Integer v;
  if (decimal.empty() || v.set_str(std::string(decimal), 10) != 0) {
    throw Error("invalid integer literal '" + std::string(decimal) + "'");
  }
  return v;
}

std::optional<std::int64_t> to_int64(const Integer& v) {
  if (!v.fits_slong_p()) return std::nullopt;
  return static_cast<std::int64_t>(v.get_si());
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  if (k > n) return r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Integer pow2(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error("empty rational literal");
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    return {make_integer(s.substr(0, slash)), make_integer(s.substr(slash + 1))};
  }
  if (const auto dot = s.find('.'); dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    if (digits == "-" || digits.empty()) digits += "0";
    Integer den = 1;
    for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    return {make_integer(digits), den};
  }
  return {make_integer(s)};
}

std::string Rational::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational& Rational::operator+=(const Rational& o) {
  v_ += o.v_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  v_ -= o.v_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  v_ *= o.v_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.sign() == 0) throw Error("division by zero");
  v_ /= o.v_;
  return *this;
}

Integer floor(const Rational& x) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), x.raw().get_num_mpz_t(), x.raw().get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& x) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), x.raw().get_num_mpz_t(), x.raw().get_den_mpz_t());
  return r;
}

Rational frac(const Rational& x) {
  if (x.sign() >= 0 && x.num() < x.den()) return x;
  return x - Rational(floor(x));
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

Rational pow(const Rational& x, unsigned e) {
  Rational r(1);
  for (unsigned i = 0; i < e; ++i) r *= x;
  return r;
}

const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational nearest_int_distance(const Rational& x) {
  const Rational f = frac(x);
  const Rational g = Rational(1) - f;
  return min(f, g);
}

Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer mod_inverse(const Integer& a, const Integer& m) {
  if (m <= 0) throw Error("mod_inverse: modulus must be positive");
  if (m == 1) return 0;
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw NotCoprime("gcd(" + a.get_str() + ", " + m.get_str() + ") != 1");
  }
  return r;
}

Rational circle_distance(const CirclePoint& x, const CirclePoint& y) {
  return nearest_int_distance(x.value() - y.value());
}

RationalInterval::RationalInterval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (hi_ < lo_) throw Error("interval with lo > hi: [" + lo_.str() + ", " + hi_.str() + "]");
}

std::string RationalInterval::str() const { return "[" + lo_.str() + ", " + hi_.str() + "]"; }

RationalInterval operator+(const RationalInterval& a, const RationalInterval& b) {
  return {a.lo_ + b.lo_, a.hi_ + b.hi_};
}

RationalInterval operator-(const RationalInterval& a, const RationalInterval& b) {
  return {a.lo_ - b.hi_, a.hi_ - b.lo_};
}

RationalInterval operator*(const RationalInterval& a, const RationalInterval& b) {
  const Rational p[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
  Rational lo = p[0];
  Rational hi = p[0];
  for (const auto& v : p) {
    lo = min(lo, v);
    hi = max(hi, v);
  }
  return {lo, hi};
}

RationalInterval hull(const RationalInterval& a, const RationalInterval& b) {
  return {min(a.lo(), b.lo()), max(a.hi(), b.hi())};
}

RationalInterval reciprocal(const RationalInterval& a) {
  if (a.lo().sign() <= 0 && a.hi().sign() >= 0) throw Error("reciprocal of interval containing 0");
  return {Rational(1) / a.hi(), Rational(1) / a.lo()};
}

RationalInterval nearest_int_distance(const RationalInterval& x) {
  if (x.is_point()) return RationalInterval::point(nearest_int_distance(x.lo()));
  const Rational half(Integer(1), Integer(2));
  const Integer n_lo = ceil(x.lo());
  const bool has_int = Rational(n_lo) <= x.hi();
  const Integer h_lo = ceil(x.lo() - half);
  const bool has_half = Rational(h_lo) + half <= x.hi();
  const Rational a = nearest_int_distance(x.lo());
  const Rational b = nearest_int_distance(x.hi());
  const Rational lo = has_int ? Rational(0) : min(a, b);
  const Rational hi = has_half ? half : max(a, b);
  return {lo, hi};
}

}  // namespace cylinder
