#include <cmath>
#include <random>

#include "cylinder/cocycle.hpp"
#include "cylinder/divisibility.hpp"
#include "cylinder/errors.hpp"
#include "cylinder/residue_counting.hpp"
#include "doctest.h"

using namespace cylinder;

namespace {

std::vector<Integer> ints(std::initializer_list<long> v) {
  std::vector<Integer> out;
  for (const auto x : v) out.emplace_back(x);
  return out;
}

const PartialQuotients& fib() {
  static const auto pq = PartialQuotients::from_longs({0, 1, 1, 1, 1, 1});
  return pq;
}

SubsequenceCertificate unit_bound_chain(std::size_t targets) {
  const auto d = build_divisible_alpha(std::vector<Integer>(targets, Integer(1)), ints({1}));
  return relabel(d.alpha, d.marked);
}

Rational random_point(std::mt19937_64& rng, long den) {
  return {Integer(static_cast<long>(rng() % static_cast<unsigned long>(den))), Integer(den)};
}

// Point whose walk follows the given sign pattern, chosen inside nested plateaux.
Rational point_with_pattern(const std::vector<Integer>& q, const std::vector<int>& signs) {
  Rational lo(0);
  Rational hi(1);
  for (std::size_t j = 0; j < signs.size(); ++j) {
    const Integer two_q = 2 * q[j];
    Integer i = ceil(lo * Rational(two_q));
    while ((i % 2 == 0 ? 1 : -1) != signs[j] || Rational(i + 1, two_q) > hi) i += 1;
    lo = Rational(i, two_q);
    hi = Rational(i + 1, two_q);
  }
  return (lo + hi) / Rational(2);
}

}  // namespace

TEST_CASE("Birkhoff sums satisfy the cocycle identity") {
  const auto golden = PartialQuotients::preset("golden");
  const auto cert = relabel(golden, {2, 3, 4, 5, 6, 7, 8});
  for (const auto variant : {RoofVariant::Rational, RoofVariant::ExactAlpha}) {
    const TruncatedRoof roof(cert, 5, variant);
    std::mt19937_64 rng(21);
    for (int i = 0; i < 1000; ++i) {
      const CirclePoint x(random_point(rng, 100003));
      const auto m = static_cast<std::int64_t>(rng() % 81) - 40;
      const auto n = static_cast<std::int64_t>(rng() % 81) - 40;
      CHECK(birkhoff_sum(roof, x, 0) == 0);
      CHECK(birkhoff_sum(roof, x, m + n) ==
            birkhoff_sum(roof, x, m) + birkhoff_sum(roof, x, n, Integer(static_cast<long>(m))));
      const auto k = std::llabs(n);
      CHECK(birkhoff_sum(roof, x, -k) == -birkhoff_sum(roof, x, k, Integer(static_cast<long>(-k))));
    }
  }
}

TEST_CASE("iteration of the skew product") {
  const auto cert = relabel(fib(), {2, 5});
  const TruncatedRoof roof(cert, 1, RoofVariant::Rational);
  const CylinderPoint p{Rational(1, 16), 0, 3};
  const auto same = iterate(roof, p, 0);
  CHECK(same.y == 3);
  CHECK(same.k == 0);
  for (std::int64_t a = -5; a <= 5; ++a) {
    for (std::int64_t b = -5; b <= 5; ++b) {
      const auto two = iterate(roof, iterate(roof, p, a), b);
      const auto one = iterate(roof, p, a + b);
      CHECK(two.y == one.y);
      CHECK(two.k == one.k);
    }
  }
  // alpha_{n+1} has period q_{n+1}, so the fibre height comes back after q_{n+1} steps
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const CirclePoint x(random_point(rng, 1009));
    CHECK(birkhoff_sum(roof, x, 8) == 0);
  }
}

TEST_CASE("return counts for the (2,8) chain") {
  const auto cert = relabel(fib(), {2, 5});
  for (long i = 0; i < 4; ++i) {
    const CirclePoint x(Rational(Integer(2 * i + 1), Integer(8)));
    const auto r = return_count_bruteforce(cert, RoofVariant::Rational, 1, x);
    CHECK(r.count == 4);
  }
}

TEST_CASE("return counts for the (1,2,8) chain") {
  const auto cert = relabel(fib(), {1, 2, 5});
  REQUIRE(cert.q_list() == ints({1, 2, 8}));
  std::map<Integer, Rational> freq;
  for (long i = 0; i < 4; ++i) {
    const CirclePoint x(Rational(Integer(2 * i + 1), Integer(8)));
    freq[return_count_bruteforce(cert, RoofVariant::Rational, 2, x).count] += Rational(1, 4);
  }
  CHECK(freq.size() == 2);
  CHECK(freq[Integer(4)] == Rational(1, 2));
  CHECK(freq[Integer(2)] == Rational(1, 2));
  const auto dist = return_distribution_exact(cert, 2);
  CHECK(dist.at(0).value == Rational(4));
  CHECK(dist.at(0).measure == Rational(1, 2));
  CHECK(dist.at(2).value == Rational(2));
  CHECK(dist.at(-2).measure == Rational(1, 4));
  Rational l1(0);
  for (const auto& [m, ls] : dist) l1 += ls.value * ls.measure;
  CHECK(l1 == Rational(3));
  CHECK(renyi_statistics(2, Integer(8)).l1_exact == Rational(3));
}

TEST_CASE("distribution for the (2,8) chain") {
  const auto dist = return_distribution_exact(relabel(fib(), {2, 5}), 1);
  CHECK(dist.size() == 2);
  CHECK(dist.at(1).value == Rational(4));
  CHECK(dist.at(-1).measure == Rational(1, 2));
  CHECK(renyi_statistics(1, Integer(8)).l1_exact == Rational(4));
  CHECK_THROWS_AS(return_distribution_exact(ints({2, 6}), 1), HypothesisViolated);
}

TEST_CASE("residue counting reproduces brute-force returns") {
  const auto cert = unit_bound_chain(4);
  const std::size_t n = 3;
  const Integer Q = cert.q(n + 1);
  const auto q = cert.q_list();
  const auto u1 = Integer(Q / q[0]).get_si();
  std::vector<std::int64_t> R;
  for (std::int64_t k = 1; k <= u1; ++k) R.push_back(k * mod(cert.p(n + 1), Q).get_si());
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const CirclePoint x(Rational(Integer(static_cast<long>(rng() % 100000)), Integer(100003)));
    std::vector<PeriodicStep> psis;
    for (std::size_t j = 0; j < n; ++j) {
      const Integer u = Q / q[j];
      // T_j(x + t / u_j) = +1 iff t lies in [z, z + u_j/2) mod u_j with z = -u_j q_j x
      psis.emplace_back(u.get_si(), -Rational(u) * Rational(q[j]) * x.value());
    }
    const auto m = walk_value(q, n, x);
    std::int64_t total = 0;
    for (const auto& [pattern, c] : binary_tree_counts(psis, R)) {
      if (pattern.size() != n) continue;
      std::int64_t sum = 0;
      for (const int s : pattern) sum += s;
      if (sum == m) total += c;
    }
    const auto brute = return_count_bruteforce(cert, RoofVariant::Rational, n, x);
    CHECK(Integer(static_cast<long>(total)) * q[0] == brute.count);
  }
}

TEST_CASE("Renyi statistics") {
  CHECK(franel(1) == 2);
  CHECK(franel(2) == 10);
  CHECK(franel(3) == 56);
  CHECK(renyi_statistics(1, Integer(2)).renyi_ratio_sq == Rational(1));
  CHECK(renyi_statistics(2, Integer(2)).renyi_ratio_sq == Rational(10, 9));
  for (unsigned n = 1; n <= 60; ++n) {
    const auto st = renyi_statistics(n, Integer(7));
    CHECK(st.renyi_ratio_sq <= Rational(116, 100));
    const Integer c = binomial(2UL * n, n);
    CHECK(st.renyi_ratio_sq <= Rational(pow2(n) * binomial(n, n / 2), c));
    CHECK(st.l2sq_exact == Rational(Integer(49) * franel(n), pow2(3UL * n)));
    if (n >= 5) {
      CHECK(st.stirling_ratio.hi() <= Rational(1));
      CHECK(st.stirling_ratio.lo() >= Rational(1) - Rational(Integer(1), Integer(4L * n)));
    }
  }
}

TEST_CASE("normalized profile") {
  for (unsigned n : {2U, 10U, 100U}) {
    const auto rows = normalized_average_profile(n);
    CHECK(rows.size() == n + 1);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(rows[i].exact_ratio == rows[rows.size() - 1 - i].exact_ratio);
      if (rows[i].m == 0) CHECK(rows[i].exact_ratio == Rational(1));
    }
  }
  for (const auto& r : normalized_average_profile(100)) {
    if (r.m != 10) continue;
    const double g = std::exp(-0.5);
    CHECK(std::fabs(r.exact_ratio.to_double() - g) < 0.03 * g);
  }
}

TEST_CASE("law of large numbers functional") {
  const auto cert = unit_bound_chain(9);
  const std::vector<std::size_t> levels{1, 2, 3, 4, 5, 6, 7, 8};
  CHECK(lln_partition_average(cert, levels) == Rational(1));

  // a point with m_n = 0 at every even level: summands near sqrt 2
  const auto q = cert.q_list();
  const Rational x = point_with_pattern(q, {1, -1, 1, -1, 1, -1});
  for (std::size_t n : {2U, 4U, 6U}) {
    CHECK(walk_value(q, n, x) == 0);
    const Rational v = lln_estimate(cert, {n}, x);
    CHECK(v > Rational(13, 10));
    CHECK(v < Rational(3, 2));
  }

  const auto mc = lln_monte_carlo(cert, levels, 1000, 2718, 2);
  CHECK(std::fabs(mc.mean.to_double() - 1.0) < 0.1);
  const auto again = lln_monte_carlo(cert, levels, 1000, 2718, 1);
  CHECK(again.mean == mc.mean);
}
