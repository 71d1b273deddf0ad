#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cylinder/continued_fraction.hpp"
#include "cylinder/exact.hpp"

namespace cylinder {

// The rotation number alpha' used by a skew product: either an exact rational or an
// irrational given by partial quotients, in which case every query is answered from a
// ladder of nested convergent enclosures and fails with EnclosureTooWide if undecided.
class Rotation {
 public:
  explicit Rotation(const Rational& alpha);
  explicit Rotation(const PartialQuotients& pq, std::size_t max_depth = 2048);

  bool is_exact() const { return exact_.has_value(); }
  const Rational& exact() const;
  std::size_t max_depth() const { return max_depth_; }

  // Enclosures of alpha, nested, ordered by increasing depth.
  const std::vector<RationalInterval>& ladder() const { return ladder_; }

  // Enclosure of y = scale * (x + k * alpha) (not reduced mod 1) at ladder rung r.
  RationalInterval position(const Integer& scale, const Rational& x, const Integer& k,
                            std::size_t rung) const;

  // floor(2 * scale * (x + k alpha)), which determines T(scale * (x + k alpha)).
  Integer half_index(const Integer& scale, const Rational& x, const Integer& k) const;

  // T_j evaluated at x + k alpha with T_j(y) = T(q y).
  int haar(const Integer& q, const Rational& x, const Integer& k) const;

  // Smallest ladder enclosure whose width is below `width`, or nullopt.
  std::optional<RationalInterval> enclosure_below(const Rational& width) const;
  const RationalInterval& finest() const { return ladder_.back(); }

 private:
  std::optional<Rational> exact_;
  std::vector<RationalInterval> ladder_;
  std::size_t max_depth_ = 0;
};

}  // namespace cylinder
