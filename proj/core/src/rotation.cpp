#include "cylinder/rotation.hpp"

#include <string>

#include "cylinder/errors.hpp"

namespace cylinder {

Rotation::Rotation(const Rational& alpha) : exact_(alpha), ladder_{RationalInterval::point(alpha)} {}

Rotation::Rotation(const PartialQuotients& pq, std::size_t max_depth) : max_depth_(max_depth) {
  if (pq.is_finite()) {
    exact_ = pq.value();
    ladder_.push_back(RationalInterval::point(*exact_));
    return;
  }
  // Walk the recurrence once and snapshot enclosures at depths 8, 16, 32, ...
  Integer p_prev = 1, q_prev = 0;
  Integer p = pq[0], q = 1;
  std::size_t next_rung = 8;
  for (std::size_t n = 1; n <= max_depth; ++n) {
    const Integer& a = pq[n];
    Integer p_next = a * p + p_prev;
    Integer q_next = a * q + q_prev;
    p_prev = std::move(p);
    q_prev = std::move(q);
    p = std::move(p_next);
    q = std::move(q_next);
    if (n == next_rung || n == max_depth) {
      ladder_.push_back(hull(RationalInterval::point(Rational(p_prev, q_prev)),
                             RationalInterval::point(Rational(p, q))));
      next_rung *= 2;
    }
  }
}

const Rational& Rotation::exact() const {
  if (!exact_) throw Error("rotation is not an exact rational");
  return *exact_;
}

RationalInterval Rotation::position(const Integer& scale, const Rational& x, const Integer& k,
                                    std::size_t rung) const {
  const Rational s(scale);
  if (exact_) return RationalInterval::point(s * (x + Rational(k) * *exact_));
  const RationalInterval& a = ladder_.at(rung);
  const Rational sk = s * Rational(k);
  const Rational base = s * x;
  Rational lo = base + sk * a.lo();
  Rational hi = base + sk * a.hi();
  if (hi < lo) std::swap(lo, hi);
  return {lo, hi};
}

Integer Rotation::half_index(const Integer& scale, const Rational& x, const Integer& k) const {
  for (std::size_t r = 0; r < ladder_.size(); ++r) {
    const RationalInterval y = position(scale, x, k, r);
    const Integer a = floor(Rational(2) * y.lo());
    if (y.is_point()) return a;
    const Integer b = floor(Rational(2) * y.hi());
    if (a == b) return a;
  }
  throw EnclosureTooWide("plateau membership undecided at depth " + std::to_string(max_depth_));
}

int Rotation::haar(const Integer& q, const Rational& x, const Integer& k) const {
  const Integer h = half_index(q, x, k);
  return mpz_even_p(h.get_mpz_t()) ? 1 : -1;
}

std::optional<RationalInterval> Rotation::enclosure_below(const Rational& width) const {
  for (const auto& e : ladder_) {
    if (e.width() < width) return e;
  }
  return std::nullopt;
}

}  // namespace cylinder
