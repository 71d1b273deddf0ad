#include "cylinder/enclosures.hpp"

#include "cylinder/errors.hpp"

namespace cylinder {

RationalInterval pi_enclosure() {
  // 3.14159265358979323846264338327950288419716939937510...
  const Integer digits = make_integer("314159265358979323846264338327950288419716939937510");
  Integer scale = 1;
  for (int i = 0; i < 50; ++i) scale *= 10;
  return {Rational(digits, scale), Rational(digits + 1, scale)};
}

namespace {

Integer isqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

// floor(sqrt(x) * 2^bits) and a matching ceiling.
Integer sqrt_floor_scaled(const Rational& x, unsigned bits) {
  // sqrt(x)*2^b = sqrt(num * den * 4^b) / den
  const Integer s = isqrt(x.num() * x.den() * pow2(2UL * bits));
  return s;  // sqrt(num*den*4^b) >= s, so sqrt(x)*2^b >= s/den
}

}  // namespace

RationalInterval sqrt_enclosure(const RationalInterval& x, unsigned bits) {
  if (x.lo().sign() < 0) throw Error("sqrt of negative interval");
  const Integer scale = pow2(bits);
  const Integer lo_s = sqrt_floor_scaled(x.lo(), bits);
  const Rational lo(lo_s, x.lo().den() * scale);
  const Integer hi_s = sqrt_floor_scaled(x.hi(), bits) + 1;
  const Rational hi(hi_s, x.hi().den() * scale);
  return {lo, hi};
}

RationalInterval exp_neg_enclosure(const Rational& t, unsigned terms) {
  if (t.sign() < 0) throw Error("exp_neg_enclosure expects t >= 0");
  // Split t = k * s with s <= 1/2 so that the series converges quickly, then raise to k.
  unsigned long k = 1;
  while (t / Rational(static_cast<long>(k)) > Rational(Integer(1), Integer(2))) k *= 2;
  const Rational s = t / Rational(static_cast<long>(k));
  Rational sum(0);
  Rational term(1);
  for (unsigned i = 0; i < terms; ++i) {
    sum += term;
    term *= s / Rational(static_cast<long>(i + 1));
  }
  // Remainder of exp(s) after `terms` terms is at most 2 * next term for s <= 1/2.
  const Rational lo_e = sum;
  const Rational hi_e = sum + Rational(2) * term;
  Rational lo = lo_e;
  Rational hi = hi_e;
  for (unsigned long i = 1; i < k; ++i) {
    lo *= lo_e;
    hi *= hi_e;
  }
  return {Rational(1) / hi, Rational(1) / lo};
}

}  // namespace cylinder
