#include "cylinder/piecewise.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "cylinder/errors.hpp"

namespace cylinder {

PiecewiseConstantFn::PiecewiseConstantFn(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw Error("piecewise function needs at least one piece");
  if (pieces_.front().start != Rational(0)) throw Error("first breakpoint must be 0");
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    if (!(pieces_[i - 1].start < pieces_[i].start)) throw Error("breakpoints must be strictly increasing");
  }
  if (pieces_.back().start >= Rational(1)) throw Error("breakpoints must lie in [0,1)");
}

PiecewiseConstantFn PiecewiseConstantFn::constant(std::int64_t v) {
  return PiecewiseConstantFn({{Rational(0), v}});
}

PiecewiseConstantFn PiecewiseConstantFn::dilated_haar(const Integer& q, const Rational& shift) {
  if (q < 1) throw Error("dilated_haar: q must be positive");
  // q x + s crosses k/2 at x = (k/2 - s)/q; on [t_k, t_{k+1}) the value is +1 for even k.
  const Rational s = frac(shift);
  const Rational qq(q);
  const auto count = to_int64(2 * q);
  if (!count || *count > (std::int64_t{1} << 26)) throw Error("dilated_haar: q too large to tabulate");
  std::vector<Piece> raw;
  raw.reserve(static_cast<std::size_t>(*count) + 1);
  const Rational half(Integer(1), Integer(2));
  for (std::int64_t k = 0; k < *count; ++k) {
    Rational t = (Rational(k) * half - s) / qq;
    if (t.sign() < 0) t += Rational(1);
    raw.push_back({t, (k % 2 == 0) ? 1 : -1});
  }
  std::sort(raw.begin(), raw.end(), [](const Piece& a, const Piece& b) { return a.start < b.start; });
  if (raw.front().start != Rational(0)) {
    // The piece covering 0 is the one that starts last (wrapping around).
    raw.insert(raw.begin(), Piece{Rational(0), raw.back().value});
  }
  return PiecewiseConstantFn(std::move(raw));
}

Rational PiecewiseConstantFn::length(std::size_t i) const {
  const Rational end = i + 1 < pieces_.size() ? pieces_[i + 1].start : Rational(1);
  return end - pieces_[i].start;
}

std::int64_t PiecewiseConstantFn::operator()(const CirclePoint& x) const {
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x.value(),
                             [](const Rational& v, const Piece& p) { return v < p.start; });
  return std::prev(it)->value;
}

PiecewiseConstantFn PiecewiseConstantFn::map(const std::function<std::int64_t(std::int64_t)>& f) const {
  std::vector<Piece> out = pieces_;
  for (auto& p : out) p.value = f(p.value);
  return PiecewiseConstantFn(std::move(out));
}

PiecewiseConstantFn PiecewiseConstantFn::combine(
    const PiecewiseConstantFn& a, const PiecewiseConstantFn& b,
    const std::function<std::int64_t(std::int64_t, std::int64_t)>& op) {
  std::vector<Piece> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    const Rational* start;
    if (j >= b.size() || (i < a.size() && a.pieces_[i].start < b.pieces_[j].start)) {
      start = &a.pieces_[i].start;
      ++i;
    } else if (i >= a.size() || b.pieces_[j].start < a.pieces_[i].start) {
      start = &b.pieces_[j].start;
      ++j;
    } else {
      start = &a.pieces_[i].start;
      ++i;
      ++j;
    }
    out.push_back({*start, op(a.pieces_[i - 1].value, b.pieces_[j - 1].value)});
  }
  return PiecewiseConstantFn(std::move(out));
}

PiecewiseConstantFn PiecewiseConstantFn::simplified() const {
  std::vector<Piece> out;
  for (const auto& p : pieces_) {
    if (out.empty() || out.back().value != p.value) out.push_back(p);
  }
  return PiecewiseConstantFn(std::move(out));
}

Rational PiecewiseConstantFn::measure_where(const std::function<bool(std::int64_t)>& pred) const {
  Rational m(0);
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (pred(pieces_[i].value)) m += length(i);
  }
  return m;
}

Rational PiecewiseConstantFn::integral() const {
  Rational s(0);
  for (std::size_t i = 0; i < pieces_.size(); ++i) s += Rational(pieces_[i].value) * length(i);
  return s;
}

Rational PiecewiseConstantFn::lp_pow(unsigned p) const {
  Rational s(0);
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    s += pow(Rational(std::abs(pieces_[i].value)), p) * length(i);
  }
  return s;
}

std::string PiecewiseConstantFn::to_csv() const {
  std::ostringstream os;
  os << "breakpoint,breakpoint_double,value\n";
  for (const auto& p : pieces_) os << p.start.str() << ',' << p.start.to_double() << ',' << p.value << '\n';
  return os.str();
}

PiecewiseConstantFn operator+(const PiecewiseConstantFn& a, const PiecewiseConstantFn& b) {
  return PiecewiseConstantFn::combine(a, b, [](std::int64_t x, std::int64_t y) { return x + y; });
}

PiecewiseConstantFn operator-(const PiecewiseConstantFn& a, const PiecewiseConstantFn& b) {
  return PiecewiseConstantFn::combine(a, b, [](std::int64_t x, std::int64_t y) { return x - y; });
}

}  // namespace cylinder
