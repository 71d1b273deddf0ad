#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cylinder/continued_fraction.hpp"
#include "cylinder/exact.hpp"

namespace cylinder {

struct DivisibilityExtension {
  Integer a;
  Integer b;
  Integer resulting_continuant;  // K(prefix, a, b)
};

// Two extra quotients (a, b) such that q | K(prefix, a, b).  Requires prefix.size() >= 2.
DivisibilityExtension extend_for_divisibility(std::span<const Integer> prefix, const Integer& q);

struct DivisibleAlpha {
  PartialQuotients alpha;
  std::vector<std::size_t> marked;  // continuant indices n_1 < n_2 < ...
};

enum class BoundPolicy {
  AsGiven,    // the quotient after n_j is exactly max(min_quotient[j], 1)
  Certified,  // raised so that the chain passes CF1, CF4, CF5, TAIL and the agreement-set bound
};

struct BuildOptions {
  std::vector<Integer> seed{Integer(1), Integer(1)};  // a_1, a_2, ...
  std::vector<Integer> tail{Integer(1)};             // periodic continuation after the last bound
  BoundPolicy policy = BoundPolicy::AsGiven;
};

// One marked continuant per entry of q_targets.  The first marked continuant is K(seed)
// (extended so that q_targets[0] divides it when q_targets[0] >= 2); marked continuant j+1
// is divisible by lcm(2 q_{n_j}, q_targets[j+1]).  min_quotient[j] (last entry reused) is the
// lower bound for a_{n_j + 1}.
DivisibleAlpha build_divisible_alpha(std::span<const Integer> q_targets,
                                     std::span<const Integer> min_quotient,
                                     const BuildOptions& options = {});

// Bound used by BoundPolicy::Certified for level L (1-based) given q_1..q_L.
Integer certified_bound(std::size_t level, std::span<const Integer> chain_q);

// P(a_{n+1} = k | a_1..a_n) = (1 + r)/((k + r)(k + 1 + r)) with r = q_{n-1}/q_n.
Rational quotient_conditional_probability(const Integer& q_prev, const Integer& q_n, const Integer& k);

struct DivisiblePair {
  std::size_t i;
  std::size_t j;
};

// All index pairs i < j with 2 q_i | q_j.
std::vector<DivisiblePair> find_divisible_pairs(const std::vector<Convergent>& table);

// True when 2 q_{n_j} | q_{n_{j+1}} for every consecutive marked pair.
bool is_divisible_chain(const std::vector<Integer>& q);

}  // namespace cylinder
