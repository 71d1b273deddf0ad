#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cylinder/exact.hpp"

namespace cylinder {

// alpha = [a0; a1, a2, ...] given by a finite head and an optional periodic tail.
class PartialQuotients {
 public:
  PartialQuotients() : head_{Integer(0)} {}
  explicit PartialQuotients(std::vector<Integer> head,
                            std::optional<std::vector<Integer>> periodic_tail = std::nullopt);

  static PartialQuotients from_longs(const std::vector<long>& head,
                                     const std::optional<std::vector<long>>& tail = std::nullopt);
  // "golden" = [0; 1, 1, ...], "schmidt" = (sqrt5 - 1)/4 = [0; 3, 4, 4, ...], "silver" = [0; 2, 2, ...]
  static PartialQuotients preset(std::string_view name);

  const Integer& operator[](std::size_t i) const;  // throws DepthExceedsExpansion
  bool is_finite() const { return !tail_.has_value(); }
  // Largest valid index for finite expansions.
  std::optional<std::size_t> last_index() const;
  bool has_index(std::size_t i) const { return !is_finite() || i < head_.size(); }

  const std::vector<Integer>& head() const { return head_; }
  const std::optional<std::vector<Integer>>& periodic_tail() const { return tail_; }

  PartialQuotients truncated(std::size_t depth) const;  // [a0; a1..a_depth]
  Rational value() const;  // exact value, finite expansions only

  friend bool operator==(const PartialQuotients&, const PartialQuotients&) = default;

 private:
  std::vector<Integer> head_;
  std::optional<std::vector<Integer>> tail_;
};

struct Convergent {
  std::size_t index = 0;
  Integer p;
  Integer q;
  Rational value() const { return {p, q}; }
};

std::vector<Convergent> convergents(const PartialQuotients& pq, std::size_t depth);

// K(a1..an) by the three-term recurrence; K() = 1.
Integer continuant(std::span<const Integer> a);

// alpha lies between the convergents of index depth-1 and depth.
// For a finite expansion whose last index is <= depth the interval is the exact value.
RationalInterval alpha_enclosure(const PartialQuotients& pq, std::size_t depth);

struct NormEnclosure {
  std::size_t index = 0;
  RationalInterval value;  // encloses ||q_n alpha||
};

NormEnclosure norm_enclosure(const PartialQuotients& pq, std::size_t n, std::size_t slack);

// Same computation against a precomputed convergent table (indices 0..table.size()-1).
NormEnclosure norm_enclosure(const PartialQuotients& pq, const std::vector<Convergent>& table,
                             std::size_t n, std::size_t slack);

// Largest circular gap of {alpha, 2 alpha, ..., K alpha} (rational alpha, exact).
Rational orbit_density_gap(const Rational& alpha, std::size_t count);
// Irrational alpha: the gap for a convergent deep enough that the sort order is certified
// and the gaps are within 2^-40 (relative) of those of alpha.
Rational orbit_density_gap(const PartialQuotients& pq, std::size_t count,
                           std::size_t max_depth = 512);
// All circular gaps (sorted ascending) for rational alpha.
std::vector<Rational> orbit_gaps(const Rational& alpha, std::size_t count);

// Largest gap of the first `count` multiples via the three-distance theorem, as a rigorous
// enclosure.  Works for huge counts; the orbit is {alpha, ..., count*alpha}.
RationalInterval max_gap_enclosure(const PartialQuotients& pq, const Integer& count,
                                   std::size_t slack = 8);

}  // namespace cylinder
