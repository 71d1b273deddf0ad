#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cylinder/exact.hpp"

namespace cylinder {

// Integer-valued step function on the circle: value v_i on [b_i, b_{i+1}), the last piece
// wrapping around to b_0 + 1.  b_0 = 0 always.
class PiecewiseConstantFn {
 public:
  struct Piece {
    Rational start;
    std::int64_t value;
  };

  PiecewiseConstantFn() : pieces_{{Rational(0), 0}} {}
  explicit PiecewiseConstantFn(std::vector<Piece> pieces);

  static PiecewiseConstantFn constant(std::int64_t v);
  // x -> T(q x + shift).
  static PiecewiseConstantFn dilated_haar(const Integer& q, const Rational& shift = Rational(0));

  const std::vector<Piece>& pieces() const { return pieces_; }
  std::size_t size() const { return pieces_.size(); }
  Rational length(std::size_t i) const;

  std::int64_t operator()(const CirclePoint& x) const;

  PiecewiseConstantFn map(const std::function<std::int64_t(std::int64_t)>& f) const;
  static PiecewiseConstantFn combine(const PiecewiseConstantFn& a, const PiecewiseConstantFn& b,
                                     const std::function<std::int64_t(std::int64_t, std::int64_t)>& op);
  PiecewiseConstantFn simplified() const;  // merge equal neighbours

  Rational measure_where(const std::function<bool(std::int64_t)>& pred) const;
  Rational integral() const;
  Rational lp_pow(unsigned p) const;  // integral of |f|^p

  std::string to_csv() const;  // breakpoint,breakpoint_double,value

  friend PiecewiseConstantFn operator+(const PiecewiseConstantFn& a, const PiecewiseConstantFn& b);
  friend PiecewiseConstantFn operator-(const PiecewiseConstantFn& a, const PiecewiseConstantFn& b);

 private:
  std::vector<Piece> pieces_;
};

}  // namespace cylinder
