#include <random>

#include "cylinder/enclosures.hpp"
#include "cylinder/errors.hpp"
#include "cylinder/exact.hpp"
#include "doctest.h"

using namespace cylinder;

namespace {

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-1000, 1000);
  std::uniform_int_distribution<long> den(1, 97);
  return {Integer(num(rng)), Integer(den(rng))};
}

bool lowest_terms(const Rational& r) { return gcd(r.num(), r.den()) == 1 && r.den() > 0; }

}  // namespace

TEST_CASE("nearest_int_distance examples") {
  CHECK(nearest_int_distance(Rational(7, 4)) == Rational(1, 4));
  CHECK(nearest_int_distance(Rational(1, 2)) == Rational(1, 2));
  CHECK(nearest_int_distance(Rational(3, 10)) == Rational(3, 10));
  CHECK(nearest_int_distance(Rational(-7, 4)) == Rational(1, 4));
  CHECK(nearest_int_distance(Rational(5)) == Rational(0));
}

TEST_CASE("nearest_int_distance is even and 1-periodic") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const Rational x = random_rational(rng);
    const long k = static_cast<long>(rng() % 21) - 10;
    const Rational d = nearest_int_distance(x);
    CHECK(d == nearest_int_distance(-x));
    CHECK(d == nearest_int_distance(x + Rational(k)));
    CHECK(d >= Rational(0));
    CHECK(d <= Rational(1, 2));
  }
}

TEST_CASE("circle_distance examples and axioms") {
  CHECK(circle_distance(Rational(1, 10), Rational(9, 10)) == Rational(1, 5));
  CHECK(circle_distance(Rational(2, 7), Rational(2, 7)) == Rational(0));
  CHECK(circle_distance(Rational(1, 3), Rational(5, 6)) == Rational(1, 2));
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const CirclePoint a(random_rational(rng));
    const CirclePoint b(random_rational(rng));
    const CirclePoint c(random_rational(rng));
    CHECK(circle_distance(a, b) == circle_distance(b, a));
    CHECK(circle_distance(a, c) <= circle_distance(a, b) + circle_distance(b, c));
  }
}

TEST_CASE("mod_inverse examples") {
  CHECK(mod_inverse(Integer(3), Integer(7)) == 5);
  CHECK(mod_inverse(Integer(1), Integer(9)) == 1);
  CHECK(mod_inverse(Integer(3), Integer(4)) == 3);
  CHECK_THROWS_AS(mod_inverse(Integer(6), Integer(9)), NotCoprime);
  for (long m = 2; m < 60; ++m) {
    for (long a = 1; a < m; ++a) {
      if (gcd(Integer(a), Integer(m)) != 1) continue;
      const Integer u = mod_inverse(Integer(a), Integer(m));
      // exhaustive oracle: the unique residue with a u = 1
      long expect = 0;
      for (long v = 1; v < m; ++v) {
        if ((a * v) % m == 1) expect = v;
      }
      CHECK(u == expect);
    }
  }
}

TEST_CASE("rationals stay in lowest terms") {
  std::mt19937_64 rng(3);
  Rational acc(1);
  for (int i = 0; i < 10000; ++i) {
    const Rational r = random_rational(rng);
    switch (i % 4) {
      case 0:
        acc += r;
        break;
      case 1:
        acc -= r;
        break;
      case 2:
        acc *= r;
        break;
      default:
        if (r.sign() != 0) acc /= r;
    }
    if (acc.den() > Integer(1) << 4000) acc = Rational(1, 3);
    REQUIRE(lowest_terms(acc));
  }
  CHECK(Rational(Integer(6), Integer(-4)) == Rational(-3, 2));
  CHECK(Rational(Integer(6), Integer(-4)).den() == 2);
  CHECK_THROWS(Rational(Integer(1), Integer(0)));
  CHECK_THROWS(Rational(1) / Rational(0));
}

TEST_CASE("parse and format") {
  CHECK(Rational::parse("3/6") == Rational(1, 2));
  CHECK(Rational::parse("-0.125") == Rational(-1, 8));
  CHECK(Rational::parse("42") == Rational(42));
  CHECK(Rational(3, 9).str() == "1/3");
  CHECK(Rational(4).str() == "4");
  CHECK(floor(Rational(-1, 2)) == -1);
  CHECK(ceil(Rational(-1, 2)) == 0);
  CHECK(frac(Rational(-1, 4)) == Rational(3, 4));
}

TEST_CASE("circle points live in [0,1)") {
  CHECK(CirclePoint(Rational(5, 4)).value() == Rational(1, 4));
  CHECK(CirclePoint(Rational(-1, 3)).value() == Rational(2, 3));
  CHECK(CirclePoint(Rational(1)).value() == Rational(0));
}

TEST_CASE("interval arithmetic is outward") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    Rational a = random_rational(rng);
    Rational b = random_rational(rng);
    Rational c = random_rational(rng);
    Rational d = random_rational(rng);
    const RationalInterval I(min(a, b), max(a, b));
    const RationalInterval J(min(c, d), max(c, d));
    for (int t = 0; t < 5; ++t) {
      const Rational s = I.lo() + I.width() * Rational(t, 4);
      const Rational u = J.lo() + J.width() * Rational(4 - t, 4);
      CHECK((I + J).contains(s + u));
      CHECK((I - J).contains(s - u));
      CHECK((I * J).contains(s * u));
    }
  }
  CHECK_THROWS(RationalInterval(Rational(1), Rational(0)));
}

TEST_CASE("nearest_int_distance of intervals") {
  CHECK(nearest_int_distance(RationalInterval(Rational(9, 10), Rational(11, 10))).lo() == Rational(0));
  const auto d = nearest_int_distance(RationalInterval(Rational(1, 10), Rational(1, 5)));
  CHECK(d.lo() == Rational(1, 10));
  CHECK(d.hi() == Rational(1, 5));
  CHECK(nearest_int_distance(RationalInterval(Rational(2, 5), Rational(3, 5))).hi() == Rational(1, 2));
}

TEST_CASE("transcendental enclosures") {
  const auto pi = pi_enclosure();
  CHECK(pi.lo() < Rational(355, 113));
  CHECK(pi.lo() < Rational::parse("3.14159265358979323847"));
  CHECK(pi.hi() > Rational::parse("3.14159265358979323846"));
  const auto s = sqrt_enclosure(RationalInterval::point(Rational(2)));
  CHECK(s.lo() * s.lo() <= Rational(2));
  CHECK(s.hi() * s.hi() >= Rational(2));
  CHECK(s.width() < Rational(1, 1000000));
  const auto e = exp_neg_enclosure(Rational(1, 2));
  CHECK(e.lo() < Rational::parse("0.60653065971263343"));
  CHECK(e.hi() > Rational::parse("0.60653065971263342"));
  const auto e5 = exp_neg_enclosure(Rational(5));
  CHECK(e5.lo() < Rational::parse("0.006737946999085468"));
  CHECK(e5.hi() > Rational::parse("0.006737946999085467"));
}
