#include "cylinder/continued_fraction.hpp"

#include <algorithm>
#include <string>

#include "cylinder/errors.hpp"

namespace cylinder {

PartialQuotients::PartialQuotients(std::vector<Integer> head,
                                   std::optional<std::vector<Integer>> periodic_tail)
    : head_(std::move(head)), tail_(std::move(periodic_tail)) {
  if (head_.empty()) throw Error("partial quotients: head must contain a0");
  for (std::size_t i = 1; i < head_.size(); ++i) {
    if (head_[i] < 1) throw Error("partial quotients: a" + std::to_string(i) + " must be >= 1");
  }
  if (tail_) {
    if (tail_->empty()) throw Error("partial quotients: periodic tail must be nonempty");
    for (const auto& a : *tail_) {
      if (a < 1) throw Error("partial quotients: tail entries must be >= 1");
    }
  }
}

PartialQuotients PartialQuotients::from_longs(const std::vector<long>& head,
                                              const std::optional<std::vector<long>>& tail) {
  std::vector<Integer> h(head.begin(), head.end());
  std::optional<std::vector<Integer>> t;
  if (tail) t.emplace(tail->begin(), tail->end());
  return PartialQuotients(std::move(h), std::move(t));
}

PartialQuotients PartialQuotients::preset(std::string_view name) {
  if (name == "golden") return from_longs({0}, std::vector<long>{1});
  if (name == "schmidt") return from_longs({0, 3}, std::vector<long>{4});
  if (name == "silver") return from_longs({0}, std::vector<long>{2});
  throw Error("unknown preset '" + std::string(name) + "'");
}

const Integer& PartialQuotients::operator[](std::size_t i) const {
  if (i < head_.size()) return head_[i];
  if (!tail_) {
    throw DepthExceedsExpansion("index " + std::to_string(i) + " beyond finite expansion of length " +
                                std::to_string(head_.size()));
  }
  return (*tail_)[(i - head_.size()) % tail_->size()];
}

std::optional<std::size_t> PartialQuotients::last_index() const {
  if (tail_) return std::nullopt;
  return head_.size() - 1;
}

PartialQuotients PartialQuotients::truncated(std::size_t depth) const {
  std::vector<Integer> h;
  h.reserve(depth + 1);
  for (std::size_t i = 0; i <= depth; ++i) h.push_back((*this)[i]);
  return PartialQuotients(std::move(h));
}

Rational PartialQuotients::value() const {
  if (tail_) throw Error("value() requires a finite expansion");
  const auto c = convergents(*this, head_.size() - 1);
  return c.back().value();
}

std::vector<Convergent> convergents(const PartialQuotients& pq, std::size_t depth) {
  if (!pq.has_index(depth)) {
    throw DepthExceedsExpansion("depth " + std::to_string(depth) + " exceeds finite expansion");
  }
  std::vector<Convergent> out;
  out.reserve(depth + 1);
  Integer p_prev = 1, q_prev = 0;
  Integer p = pq[0], q = 1;
  out.push_back({0, p, q});
  for (std::size_t n = 1; n <= depth; ++n) {
    const Integer& a = pq[n];
    Integer p_next = a * p + p_prev;
    Integer q_next = a * q + q_prev;
    p_prev = std::move(p);
    q_prev = std::move(q);
    p = std::move(p_next);
    q = std::move(q_next);
    out.push_back({n, p, q});
  }
  return out;
}

Integer continuant(std::span<const Integer> a) {
  if (a.empty()) return 1;
  Integer k_prev = 1;
  Integer k = a[0];
  for (std::size_t i = 1; i < a.size(); ++i) {
    Integer next = a[i] * k + k_prev;
    k_prev = std::move(k);
    k = std::move(next);
  }
  return k;
}

namespace {

RationalInterval enclosure_from_table(const PartialQuotients& pq, const std::vector<Convergent>& table,
                                      std::size_t depth) {
  if (pq.is_finite() && depth >= *pq.last_index()) {
    return RationalInterval::point(table.at(*pq.last_index()).value());
  }
  if (depth == 0) {
    const Rational a0(table[0].p);
    return {a0, a0 + Rational(1)};
  }
  return hull(RationalInterval::point(table.at(depth - 1).value()),
              RationalInterval::point(table.at(depth).value()));
}

}  // namespace

RationalInterval alpha_enclosure(const PartialQuotients& pq, std::size_t depth) {
  if (pq.is_finite()) depth = std::min(depth, *pq.last_index());
  const auto table = convergents(pq, depth);
  return enclosure_from_table(pq, table, depth);
}

NormEnclosure norm_enclosure(const PartialQuotients& pq, const std::vector<Convergent>& table,
                             std::size_t n, std::size_t slack) {
  if (!pq.has_index(n)) {
    throw DepthExceedsExpansion("norm_enclosure: index " + std::to_string(n) + " beyond expansion");
  }
  std::size_t depth = n + 1 + slack;
  if (pq.is_finite()) depth = std::min(depth, *pq.last_index());
  if (table.size() <= depth) {
    throw DepthExceedsExpansion("norm_enclosure: convergent table too short");
  }
  const RationalInterval a = enclosure_from_table(pq, table, depth);
  const Rational q(table[n].q);
  const RationalInterval scaled = RationalInterval::point(q) * a;
  return {n, nearest_int_distance(scaled)};
}

NormEnclosure norm_enclosure(const PartialQuotients& pq, std::size_t n, std::size_t slack) {
  std::size_t depth = n + 1 + slack;
  if (pq.is_finite()) {
    if (n > *pq.last_index()) {
      throw DepthExceedsExpansion("norm_enclosure: index " + std::to_string(n) + " beyond expansion");
    }
    depth = std::min(depth, *pq.last_index());
  }
  return norm_enclosure(pq, convergents(pq, depth), n, slack);
}

namespace {

template <class T>
Rational max_gap_sorted(std::vector<T>& pts, const T& modulus, const Integer& den) {
  std::sort(pts.begin(), pts.end());
  T best = pts.front() + modulus - pts.back();
  for (std::size_t i = 1; i < pts.size(); ++i) best = std::max(best, T(pts[i] - pts[i - 1]));
  if constexpr (std::is_same_v<T, Integer>) {
    return {best, den};
  } else {
    return {Integer(static_cast<long>(best)), den};
  }
}

std::vector<Integer> orbit_numerators(const Rational& alpha, std::size_t count) {
  const Integer b = alpha.den();
  const Integer a = mod(alpha.num(), b);
  std::vector<Integer> pts;
  pts.reserve(count);
  Integer r = 0;
  for (std::size_t k = 1; k <= count; ++k) {
    r += a;
    if (r >= b) r -= b;
    pts.push_back(r);
  }
  return pts;
}

}  // namespace

Rational orbit_density_gap(const Rational& alpha, std::size_t count) {
  if (count == 0) throw Error("orbit_density_gap: count must be >= 1");
  const Integer b = alpha.den();
  if (const auto bb = to_int64(b); bb && *bb < (std::int64_t{1} << 61)) {
    const std::int64_t a = *to_int64(mod(alpha.num(), b));
    std::vector<std::int64_t> pts;
    pts.reserve(count);
    std::int64_t r = 0;
    for (std::size_t k = 1; k <= count; ++k) {
      r += a;
      if (r >= *bb) r -= *bb;
      pts.push_back(r);
    }
    return max_gap_sorted<std::int64_t>(pts, *bb, b);
  }
  auto pts = orbit_numerators(alpha, count);
  return max_gap_sorted<Integer>(pts, b, b);
}

std::vector<Rational> orbit_gaps(const Rational& alpha, std::size_t count) {
  if (count == 0) throw Error("orbit_gaps: count must be >= 1");
  auto pts = orbit_numerators(alpha, count);
  std::sort(pts.begin(), pts.end());
  const Integer b = alpha.den();
  std::vector<Rational> gaps;
  gaps.reserve(pts.size());
  gaps.emplace_back(pts.front() + b - pts.back(), b);
  for (std::size_t i = 1; i < pts.size(); ++i) gaps.emplace_back(pts[i] - pts[i - 1], b);
  std::sort(gaps.begin(), gaps.end());
  return gaps;
}

Rational orbit_density_gap(const PartialQuotients& pq, std::size_t count, std::size_t max_depth) {
  if (count == 0) throw Error("orbit_density_gap: count must be >= 1");
  if (pq.is_finite()) return orbit_density_gap(pq.value(), count);
  const auto table = convergents(pq, max_depth + 1);
  const Integer k_big(static_cast<unsigned long>(count));
  std::size_t d = 1;
  while (d < max_depth && table[d].q <= 2 * k_big) ++d;
  for (; d <= max_depth; d = std::max(d + 1, d + d / 2)) {
    const Rational c = table[d].value();
    // |alpha - c| < 1/(q_d q_{d+1})
    const Rational w(Integer(1), table[d].q * table[d + 1].q);
    auto pts = orbit_numerators(c, count);
    std::sort(pts.begin(), pts.end());
    const Integer& b = table[d].q;
    Integer min_gap = pts.front() + b - pts.back();
    for (std::size_t i = 1; i < pts.size(); ++i) min_gap = std::min(min_gap, Integer(pts[i] - pts[i - 1]));
    // certified sort order, and the gaps move by at most 2 K w: require that to be tiny
    const Rational drift = Rational(2) * Rational(k_big) * w;
    if (Rational(min_gap, b) > drift && drift * Rational(pow2(40)) < Rational(min_gap, b)) {
      return orbit_density_gap(c, count);
    }
  }
  throw EnclosureTooWide("orbit_density_gap: sort order not certified at depth " +
                         std::to_string(max_depth));
}

RationalInterval max_gap_enclosure(const PartialQuotients& pq_in, const Integer& count,
                                   std::size_t slack) {
  if (count < 1) throw Error("max_gap_enclosure: count must be >= 1");
  std::vector<Integer> head = pq_in.head();
  head[0] = 0;
  const PartialQuotients pq(std::move(head), pq_in.periodic_tail());
  // Find k with q_k + q_{k-1} <= N < q_{k+1} + q_k, using q_{-1} = 0.
  Integer q_prev = 0, q = 1;
  std::size_t k = 0;
  while (true) {
    if (pq.is_finite() && k + 1 > *pq.last_index()) {
      // N >= q_last + q_{last-1} > q_last: the orbit covers every multiple of 1/q_last.
      return RationalInterval::point(Rational(Integer(1), q));
    }
    const Integer q_next = pq[k + 1] * q + q_prev;
    if (count < q_next + q) break;
    q_prev = q;
    q = q_next;
    ++k;
  }
  const Integer r = (count - q_prev) / q;
  std::size_t depth = k + 2 + slack;
  if (pq.is_finite()) depth = std::min(depth, *pq.last_index());
  const auto table = convergents(pq, std::max(depth, k + 1));
  const RationalInterval a = enclosure_from_table(pq, table, depth);
  auto eta = [&](std::ptrdiff_t i) -> RationalInterval {
    if (i < 0) return RationalInterval::point(Rational(1));
    const auto& c = table[static_cast<std::size_t>(i)];
    const RationalInterval v = RationalInterval::point(Rational(c.q)) * a - RationalInterval::point(Rational(c.p));
    if (v.lo().sign() >= 0) return v;
    if (v.hi().sign() <= 0) return -v;
    return {Rational(0), max(-v.lo(), v.hi())};
  };
  const auto ki = static_cast<std::ptrdiff_t>(k);
  return eta(ki - 1) - RationalInterval::point(Rational(r - 1)) * eta(ki);
}

}  // namespace cylinder
