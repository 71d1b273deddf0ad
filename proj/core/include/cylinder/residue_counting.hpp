#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "cylinder/exact.hpp"

namespace cylinder {

// psi(t) = +1 on [z, z + u/2), -1 on [z + u/2, z + u), extended u-periodically.
class PeriodicStep {
 public:
  PeriodicStep(std::int64_t period, Rational offset);
  std::int64_t period() const { return u_; }
  const Rational& offset() const { return z_; }
  int operator()(std::int64_t t) const;
  // True when some discontinuity z + k u/2 is an integer.
  bool has_integer_discontinuity() const;

 private:
  std::int64_t u_;
  Rational z_;
};

using SignPattern = std::vector<int>;

struct SplitCounts {
  std::int64_t plus = 0;
  std::int64_t minus = 0;
};

void require_complete_residue_system(const std::vector<std::int64_t>& R, std::int64_t u);

SplitCounts residue_split(const PeriodicStep& psi, const std::vector<std::int64_t>& R);

// Validates the nested-period hypotheses; throws HypothesisViolated / IntegerDiscontinuity.
void require_counting_hypotheses(const std::vector<PeriodicStep>& psis);

// Count of k in R with psi_j(k) = s_j for all j, by residue-class lifting.
std::int64_t count_pattern(const std::vector<PeriodicStep>& psis, const std::vector<std::int64_t>& R,
                           const SignPattern& s);
// Same count by direct evaluation over R.
std::int64_t count_pattern_bruteforce(const std::vector<PeriodicStep>& psis,
                                      const std::vector<std::int64_t>& R, const SignPattern& s);

// Every prefix pattern (including the empty root) mapped to its count.
std::map<SignPattern, std::int64_t> binary_tree_counts(const std::vector<PeriodicStep>& psis,
                                                       const std::vector<std::int64_t>& R);

// q_{n+1} / 2^n * C(n, (n+m)/2).
Rational return_count_formula(unsigned n, const Integer& q_next, std::int64_t m);

}  // namespace cylinder
