#include "cylinder/divisibility.hpp"

#include <algorithm>
#include <string>

#include "cylinder/errors.hpp"

namespace cylinder {

namespace {

// Trial division is used only while the cofactor is small; beyond that the prime support
// is represented by the cofactor itself, which has the same prime divisors.
Integer radical_or_self(const Integer& g) {
  if (g <= 1) return 1;
  if (g > Integer("1000000000000")) return g;
  Integer rest = g;
  Integer rad = 1;
  for (Integer p = 2; p * p <= rest; ++p) {
    if (rest % p == 0) {
      rad *= p;
      while (rest % p == 0) rest /= p;
    }
  }
  if (rest > 1) rad *= rest;
  return rad;
}

}  // namespace

DivisibilityExtension extend_for_divisibility(std::span<const Integer> prefix, const Integer& q) {
  if (prefix.size() < 2) throw Error("extend_for_divisibility: prefix must have length >= 2");
  if (q < 2) throw Error("extend_for_divisibility: modulus must be >= 2");
  const Integer k1 = continuant(prefix.first(prefix.size() - 1));
  const Integer k2 = continuant(prefix);
  // Strip from q every prime that divides k1 or k2; what remains has exactly the primes of q
  // dividing neither.
  Integer g = q;
  const Integer both = k1 * k2;
  for (Integer d = gcd(g, both); d > 1; d = gcd(g, both)) g /= d;
  Integer a = radical_or_self(g);
  // K(prefix, a) = a k2 + k1 must be a unit mod q.
  while (gcd(a * k2 + k1, q) != 1) a += q;
  const Integer ka = a * k2 + k1;
  Integer b = mod(-k2 * mod_inverse(ka, q), q);
  if (b == 0) b = q;
  return {a, b, b * ka + k2};
}

Integer certified_bound(std::size_t level, std::span<const Integer> chain_q) {
  Integer sum = 1;
  for (std::size_t j = 0; j + 1 < level && j < chain_q.size(); ++j) sum += chain_q[j];
  const Integer q_l = level >= 1 && level <= chain_q.size() ? chain_q[level - 1] : Integer(1);
  return pow2(level + 3) * sum + 4 * q_l + 8;
}

DivisibleAlpha build_divisible_alpha(std::span<const Integer> q_targets,
                                     std::span<const Integer> min_quotient,
                                     const BuildOptions& options) {
  if (q_targets.empty()) throw Error("build_divisible_alpha: q_targets must be nonempty");
  if (options.seed.size() < 2) throw Error("build_divisible_alpha: seed must have length >= 2");
  for (const auto& m : min_quotient) {
    if (m < 1) throw Error("build_divisible_alpha: lower bounds must be >= 1");
  }
  std::vector<Integer> quotients = options.seed;  // a_1, a_2, ...
  std::vector<std::size_t> marked;
  std::vector<Integer> chain_q;

  auto append_extension = [&](const Integer& modulus) {
    const auto ext = extend_for_divisibility(quotients, modulus);
    quotients.push_back(ext.a);
    quotients.push_back(ext.b);
  };

  if (q_targets[0] >= 2) append_extension(q_targets[0]);
  marked.push_back(quotients.size());
  chain_q.push_back(continuant(quotients));

  for (std::size_t j = 0; j < q_targets.size(); ++j) {
    Integer bound = 1;
    if (!min_quotient.empty()) bound = min_quotient[std::min(j, min_quotient.size() - 1)];
    if (options.policy == BoundPolicy::Certified) {
      bound = std::max(bound, certified_bound(j + 1, chain_q));
    }
    quotients.push_back(bound);
    if (j + 1 < q_targets.size()) {
      const Integer target = q_targets[j + 1] >= 1 ? q_targets[j + 1] : Integer(1);
      append_extension(lcm(2 * chain_q.back(), target));
      marked.push_back(quotients.size());
      chain_q.push_back(continuant(quotients));
    }
  }
  std::vector<Integer> head;
  head.reserve(quotients.size() + 1);
  head.emplace_back(0);
  head.insert(head.end(), quotients.begin(), quotients.end());
  std::optional<std::vector<Integer>> tail;
  if (!options.tail.empty()) tail = options.tail;
  return {PartialQuotients(std::move(head), std::move(tail)), std::move(marked)};
}

Rational quotient_conditional_probability(const Integer& q_prev, const Integer& q_n, const Integer& k) {
  if (q_n <= 0 || q_prev < 0) throw Error("quotient_conditional_probability: invalid continuants");
  if (k < 1) throw Error("quotient_conditional_probability: k must be >= 1");
  const Rational r(q_prev, q_n);
  const Rational kk(k);
  return (Rational(1) + r) / ((kk + r) * (kk + Rational(1) + r));
}

std::vector<DivisiblePair> find_divisible_pairs(const std::vector<Convergent>& table) {
  std::vector<DivisiblePair> out;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const Integer twice = 2 * table[i].q;
    for (std::size_t j = i + 1; j < table.size(); ++j) {
      if (table[j].q % twice == 0) out.push_back({i, j});
    }
  }
  return out;
}

bool is_divisible_chain(const std::vector<Integer>& q) {
  for (std::size_t i = 0; i + 1 < q.size(); ++i) {
    if (q[i + 1] % (2 * q[i]) != 0) return false;
  }
  return true;
}

}  // namespace cylinder
