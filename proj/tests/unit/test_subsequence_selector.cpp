#include <random>

#include "cylinder/divisibility.hpp"
#include "cylinder/errors.hpp"
#include "cylinder/selector.hpp"
#include "doctest.h"

using namespace cylinder;

namespace {

std::vector<Integer> ints(std::initializer_list<long> v) {
  std::vector<Integer> out;
  for (const auto x : v) out.emplace_back(x);
  return out;
}

DivisibleAlpha certified_alpha(std::size_t targets) {
  BuildOptions o;
  o.policy = BoundPolicy::Certified;
  return build_divisible_alpha(std::vector<Integer>(targets, Integer(1)), ints({1}), o);
}

}  // namespace

TEST_CASE("relabeled Fibonacci pair is divisible") {
  const auto pq = PartialQuotients::from_longs({0, 1, 1, 1, 1, 1});
  const auto cert = certify(pq, {2, 5}, 5, 1);
  CHECK(cert.q(1) == 2);
  CHECK(cert.q(2) == 8);
  CHECK(cert.status("DIV") == CheckStatus::Pass);
  CHECK(cert.divisible());
}

TEST_CASE("CF4 at the first level is the empty sum") {
  const auto d = certified_alpha(3);
  const auto cert = certify(d.alpha, d.marked, d.marked.back() + 4, 1);
  const auto& cf4 = cert.check("CF4");
  REQUIRE(!cf4.witnesses.empty());
  CHECK(cf4.witnesses.front().level == 1);
  CHECK(cf4.witnesses.front().lhs.hi() == Rational(0));
  CHECK(cf4.witnesses.front().status == CheckStatus::Pass);
}

TEST_CASE("certified construction passes every check") {
  const auto d = certified_alpha(5);
  const auto cert = certify(d.alpha, d.marked, d.marked.back() + 4, 3);
  for (const auto& [name, c] : cert.checks()) {
    INFO(name);
    CHECK(c.status == CheckStatus::Pass);
  }
  CHECK(cert.all_pass());
  CHECK_NOTHROW(cert.require("TAIL"));

  SUBCASE("doubling the precision keeps every pass") {
    const auto fine = certify(d.alpha, d.marked, d.marked.back() + 4, 3, CertifyOptions{true, 16});
    CHECK(fine.all_pass());
  }
  SUBCASE("removing an index keeps DIV") {
    for (std::size_t drop = 0; drop < d.marked.size(); ++drop) {
      auto idx = d.marked;
      idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(drop));
      const auto c = certify(d.alpha, idx, d.marked.back() + 4, 1);
      CHECK(c.status("DIV") == CheckStatus::Pass);
    }
  }
}

TEST_CASE("CF2 passes for geometric growth") {
  const auto s = PartialQuotients::preset("silver");
  const auto cert = certify(s, {1, 3, 5, 7, 9, 11}, 20, 1, CertifyOptions{false, 8});
  CHECK(cert.status("CF2(p=1)") == CheckStatus::Pass);
  CHECK(!cert.has_check("DIV"));
}

TEST_CASE("golden mean admits no divisible subsequence") {
  const auto g = PartialQuotients::preset("golden");
  CHECK_THROWS_AS(greedy_select(g, 30, true), NoSubsequenceFound);
}

TEST_CASE("rapidly growing quotients keep every index") {
  // a_{n+1} = 2^{n+8} q_n^2 makes every continuant beat the CF3/CF4 sums.
  std::vector<Integer> head{Integer(0), Integer(2)};
  Integer q_prev = 1;
  Integer q = 2;
  for (int n = 1; n < 7; ++n) {
    const Integer a = pow2(static_cast<unsigned long>(n + 8)) * q * q;
    head.push_back(a);
    const Integer next = a * q + q_prev;
    q_prev = q;
    q = next;
  }
  const PartialQuotients pq(head, std::vector<Integer>{Integer(1)});
  GreedyOptions go;
  go.p_max = 2;
  const auto cert = greedy_select(pq, 6, false, go);
  CHECK(!cert.any_failure());
  // q_0 = 1 is taken first; q_1 = 2 then fails CF5 since {alpha, 2 alpha} leaves a gap just over 1/2
  const std::vector<std::size_t> expect{0, 2, 3, 4, 5, 6};
  CHECK(cert.indices() == expect);
  CHECK(certify(pq, {0, 1}, 6, 2, CertifyOptions{false, 8}).status("CF5") == CheckStatus::Fail);
}

TEST_CASE("tail majorant for doubling subsequences") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<long> head{0};
    for (int i = 0; i < 6; ++i) head.push_back(1 + static_cast<long>(rng() % 5));
    std::vector<long> tail{1 + static_cast<long>(rng() % 4), 1 + static_cast<long>(rng() % 4)};
    const auto pq = PartialQuotients::from_longs(head, tail);
    // every second index: q_{k+2} >= 2 q_k
    std::vector<std::size_t> idx;
    for (std::size_t i = 1 + trial % 2; i <= 24; i += 2) idx.push_back(i);
    const auto cert = relabel(pq, idx, 8);
    const std::size_t N = idx.size() / 2;
    for (std::size_t m = 1; m < N; ++m) {
      Rational partial(0);
      for (std::size_t j = m + 1; j <= 2 * N && j <= cert.levels(); ++j) partial += cert.norm(j).value.hi();
      CHECK(partial <= Rational(2) / Rational(cert.q(m + 1)));
    }
  }
}

TEST_CASE("shifted power series closed values") {
  // sum_{i>=1} 1/2^i = 1, sum i/2^i = 2, sum i^2/2^i = 6
  CHECK(shifted_power_series(Integer(0), 0) == Rational(1));
  CHECK(shifted_power_series(Integer(0), 1) == Rational(2));
  CHECK(shifted_power_series(Integer(0), 2) == Rational(6));
  CHECK(shifted_power_series(Integer(3), 1) == Rational(5));
}
