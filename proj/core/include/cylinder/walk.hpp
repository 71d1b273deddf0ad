#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "cylinder/exact.hpp"
#include "cylinder/roof.hpp"

namespace cylinder {

enum class OnDegenerate {
  Throw,      // DegenerateFamily when a parent holds fewer than two child plateaux
  KeepEmpty,  // such parents keep nothing, so the global trim empties the level
};

// Kept plateaux [i/(2q), (i+1)/(2q)) of one level of the descending chain.
struct PrunedFamily {
  std::size_t level = 0;
  std::int64_t q = 0;
  std::vector<std::int64_t> kept;       // plateau indices, increasing
  std::vector<std::uint64_t> pattern;   // bit j-1 set iff T_j = -1 on the plateau, j <= level
  std::size_t per_parent = 0;           // kept children per kept parent (0 at level 1)
  std::size_t removed_crossing = 0;     // children straddling a parent boundary
  std::size_t removed_equalize = 0;     // surplus sign removals
  std::size_t removed_trim = 0;         // removals to reach the global minimum count

  Rational omega_measure() const;
  PlateauRef plateau(std::size_t i) const;
};

// Omega_1 = T; each later level keeps children inside kept parents, equalizes signs per parent
// by dropping the rightmost surplus, then trims every parent to the global minimum count.
std::vector<PrunedFamily> build_pruned_chain(const std::vector<std::int64_t>& q_list, std::size_t depth,
                                             OnDegenerate on_degenerate = OnDegenerate::Throw);

// 1 - 4 sum_{j<n} q_j / q_{j+1}
Rational omega_lower_bound(const std::vector<std::int64_t>& q_list, std::size_t n);

struct IidCheck {
  bool uniform = false;
  Rational omega;
  std::map<std::uint64_t, Rational> pattern_measures;  // all 2^n patterns
  std::map<std::int64_t, Rational> walk_measures;      // lambda({x in Omega_n : m_n(x) = m})
};

IidCheck verify_iid_on_omega(const std::vector<PrunedFamily>& chain, std::size_t n);

struct CrossingOptions {
  std::size_t pairs = 1000;
  std::size_t horizon = 10000;
  std::size_t early_horizon = 200;  // report the fraction of pairs crossed by this n
  std::uint64_t seed = 12345;
  unsigned threads = 1;
};

struct PairCrossing {
  std::size_t crossings = 0;           // #{1 <= n <= N : m_n(x) = m_n(y)}
  std::optional<std::size_t> first;    // least such n
};

struct CrossingStats {
  std::vector<PairCrossing> pairs;
  double mean_crossings = 0;
  double fraction_crossed = 0;        // at least one crossing by the horizon
  double fraction_crossed_early = 0;  // at least one crossing by early_horizon
};

// m_n on points x = X / 2^B, B = bits(q_N) + 64, drawn per pair from derived seeds.
CrossingStats level_crossing_mc(const std::vector<Integer>& q_list, const CrossingOptions& options);
// Crossings of the walks started at two given points.
PairCrossing count_crossings(const std::vector<Integer>& q_list, const CirclePoint& x, const CirclePoint& y,
                             std::size_t horizon);
// q_j = 2^{j-1}: the divisible chain on which m_n is exactly a simple random walk of binary digits.
std::vector<Integer> dyadic_chain(std::size_t length);

// Same statistics for two independent abstract +-1 walks.
CrossingStats abstract_walk_crossings(const CrossingOptions& options);
// E #{n <= N : D_n = 0} = sum_{n=1}^N C(2n,n)/4^n = (2N+1) C(2N,N) / 4^N - 1
Rational expected_crossings(std::size_t horizon);
// P(D_n != 0 for 1 <= n <= N) = C(2N,N) / 4^N
Rational no_crossing_probability(std::size_t horizon);

}  // namespace cylinder
