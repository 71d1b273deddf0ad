#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "cylinder/exact.hpp"
#include "cylinder/roof.hpp"
#include "cylinder/selector.hpp"

namespace cylinder {

// A point of T x Z.  The base coordinate is kept as x0 + k alpha' so that orbits of an
// irrational rotation stay exact.
struct CylinderPoint {
  CirclePoint x0;
  Integer k = 0;
  std::int64_t y = 0;
};

// S_n(x + offset alpha') by the three-branch definition (S_0 = 0, S_{-n} = -sum phi(x - k alpha')).
std::int64_t birkhoff_sum(const TruncatedRoof& roof, const CirclePoint& x, std::int64_t n,
                          const Integer& offset = Integer(0));

// F^k(x, y) = (x + k alpha', y + S_k(x)).
CylinderPoint iterate(const TruncatedRoof& roof, const CylinderPoint& p, std::int64_t steps);

struct ReturnCount {
  Integer count;                 // #{1 <= k <= q_{n+1} : S_k(x) = 0}
  std::optional<bool> in_lambda;  // variant F only: whether x is in the agreement set
  std::size_t roof_levels = 0;   // number of roof terms used
  std::size_t slow_evaluations = 0;  // evaluations that fell back to big-number arithmetic
};

struct BruteForceOptions {
  // Variant F: roof truncated at this level (0 = deepest level with q_j <= 2^40).
  std::size_t roof_levels = 0;
  bool check_lambda = true;
};

// Brute-force return count to A = T x {0} along k = 1..q_{n+1}, accumulating the roof along
// the orbit step by step.  Variant Rational is the skew product F~_n; variant ExactAlpha is F
// with roof phi truncated at options.roof_levels.
ReturnCount return_count_bruteforce(const SubsequenceCertificate& cert, RoofVariant variant, std::size_t n,
                                    const CirclePoint& x, const BruteForceOptions& options = {});

struct LevelSet {
  Rational value;    // return count on this set
  Rational measure;  // Lebesgue measure of {m_n = m}
};

// m -> (count value, exact measure), by intersecting plateau partitions.
std::map<std::int64_t, LevelSet> return_distribution_exact(const SubsequenceCertificate& cert, std::size_t n);
std::map<std::int64_t, LevelSet> return_distribution_exact(const std::vector<Integer>& q, std::size_t n);

struct ReturnStatistics {
  unsigned n = 0;
  Integer q_next;
  Rational l1_exact;
  Rational l2sq_exact;
  Rational renyi_ratio_sq;
  Rational return_sequence_value;
  RationalInterval stirling_ratio;  // l1 * sqrt(pi n) / q_next
};

Integer franel(unsigned n);  // sum_i C(n,i)^3
ReturnStatistics renyi_statistics(unsigned n, const Integer& q_next);

struct ProfileRow {
  std::int64_t m = 0;
  Rational exact_ratio;       // C(n,(n+m)/2) / C(n, floor(n/2))
  Rational normalized_value;  // 2^n C(n,(n+m)/2) / C(2n,n) = count / a
  RationalInterval gaussian;  // exp(-m^2/(2n))
};

std::vector<ProfileRow> normalized_average_profile(unsigned n);

// (1/N) sum_k count_{n_k}(x) / a_{n_k}.
Rational lln_estimate(const SubsequenceCertificate& cert, const std::vector<std::size_t>& levels,
                      const CirclePoint& x);
// Same average integrated over x with the exact level-set measures.
Rational lln_partition_average(const SubsequenceCertificate& cert, const std::vector<std::size_t>& levels);

struct MonteCarloResult {
  Rational mean;
  std::vector<Rational> samples;
};
MonteCarloResult lln_monte_carlo(const SubsequenceCertificate& cert, const std::vector<std::size_t>& levels,
                                 std::size_t samples, std::uint64_t seed, unsigned threads = 1);

}  // namespace cylinder
