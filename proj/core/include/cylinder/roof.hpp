#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "cylinder/exact.hpp"
#include "cylinder/piecewise.hpp"
#include "cylinder/rotation.hpp"
#include "cylinder/selector.hpp"

namespace cylinder {

int haar(const CirclePoint& x);                          // T
int haar_dilated(const Integer& q, const CirclePoint& x);  // T(q x)

struct PlateauRef {
  std::size_t level = 0;
  Integer q;
  Integer index;  // in [0, 2q)
  int sign = 1;
  Rational lo() const { return {index, 2 * q}; }
  Rational hi() const { return {index + 1, 2 * q}; }
  bool contains(const CirclePoint& x) const { return lo() <= x.value() && x.value() < hi(); }
};

PlateauRef plateau_of(std::size_t level, const Integer& q, const CirclePoint& x);
bool plateau_contains(const PlateauRef& outer, const PlateauRef& inner);

struct WalkState {
  CirclePoint x;
  std::size_t n = 0;
  std::int64_t m = 0;
};

std::int64_t walk_value(const std::vector<Integer>& q, std::size_t n, const CirclePoint& x);
WalkState walk_m(const SubsequenceCertificate& cert, std::size_t n, const CirclePoint& x);

enum class RoofVariant {
  ExactAlpha,  // phi_n: rotation by alpha itself
  Rational,    // phi~_n: rotation by alpha_{n+1} = p_{n+1}/q_{n+1}
};

// phi_n or phi~_n together with the rotation it is paired with.
class TruncatedRoof {
 public:
  TruncatedRoof(const SubsequenceCertificate& cert, std::size_t n, RoofVariant variant,
                std::size_t max_depth = 2048);

  std::size_t n() const { return q_.size(); }
  RoofVariant variant() const { return variant_; }
  const std::vector<Integer>& q() const { return q_; }
  const Rotation& rotation() const { return rotation_; }

  // m_n(x + k alpha'), with T_j decided rigorously.
  std::int64_t walk(const Rational& x, const Integer& k) const;
  // phi(x + k alpha') = (m_n(x + (k+1) alpha') - m_n(x + k alpha')) / 2
  std::int64_t at(const Rational& x, const Integer& k = Integer(0)) const;

  // Exact step-function form; requires an exact rotation.
  PiecewiseConstantFn piecewise() const;

 private:
  std::vector<Integer> q_;
  RoofVariant variant_;
  Rotation rotation_;
};

std::int64_t phi_truncated(const SubsequenceCertificate& cert, std::size_t n, RoofVariant variant,
                           const CirclePoint& x);

struct CertifiedPhi {
  std::int64_t value = 0;
  std::size_t tail_index = 0;  // J
};

// Sum over j <= J of the roof terms, where every term J < j <= j_max is provably zero.
CertifiedPhi phi_certified(const SubsequenceCertificate& cert, const CirclePoint& x, std::size_t j_max);

// Exact Lebesgue measure of {x : T(q x + beta) != T(q x + gamma)}.
Rational measure_disagreement(const Integer& q, const CirclePoint& beta, const CirclePoint& gamma);

struct LpBound {
  Rational lhs;  // ||psi_N||_p^p
  Rational rhs;  // 2 sum_j j^{p+1} ||beta_j - gamma_j||
};

// psi_N = (1/2) sum_{j<=N} [T(q_j x + beta_j) - T(q_j x + gamma_j)].
PiecewiseConstantFn psi_function(const std::vector<Integer>& q, const std::vector<Rational>& beta,
                                 const std::vector<Rational>& gamma);
LpBound lp_norm_bound_check(const std::vector<Integer>& q, const std::vector<Rational>& beta,
                            const std::vector<Rational>& gamma, unsigned p);

// Enclosure of ||phi~_n - phi_n||_p^p: alpha is replaced by a convergent of index
// `alpha_depth` and the replacement error is bounded by n^p * 2 |alpha - p_D/q_D| sum q_j.
RationalInterval phi_difference_lp(const SubsequenceCertificate& cert, std::size_t n, unsigned p,
                                   std::size_t alpha_depth);

// d(t, {0, 1/2}) for t on the circle.
Rational distance_to_half_lattice(const Rational& t);

// Agreement set of the counting section: (i) T_j(x+k alpha) = T_j(x+k alpha_{n+1}) for j <= n,
// 1 <= k <= q_{n+1}; (ii) d(q_j x, D) > q_j ||q_j alpha|| for n < j <= j_max.
bool lambda_n_membership(const SubsequenceCertificate& cert, std::size_t n, const CirclePoint& x,
                         std::size_t j_max);
// Condition (i) alone, by residue-class analysis (fast) or by direct orbit evaluation.
bool lambda_n_condition_i(const SubsequenceCertificate& cert, std::size_t n, const CirclePoint& x);
bool lambda_n_condition_i_bruteforce(const SubsequenceCertificate& cert, std::size_t n, const CirclePoint& x);
// Condition (ii) alone; this is the variant used by the ergodicity section.
bool lambda_n_basic_membership(const SubsequenceCertificate& cert, std::size_t n, const CirclePoint& x,
                               std::size_t j_max);

// The same tests with the per-level data prepared once, for sampling many points.
class LambdaSet {
 public:
  LambdaSet(const SubsequenceCertificate& cert, std::size_t n, std::size_t j_max);
  bool contains(const CirclePoint& x) const;
  bool condition_i(const CirclePoint& x) const;
  bool condition_ii(const CirclePoint& x) const;

 private:
  const SubsequenceCertificate& cert_;
  std::size_t n_;
  std::size_t j_max_;
  Rotation rotation_;
  std::vector<RationalInterval> delta_;  // q_j ||q_j alpha|| for n < j <= j_max
};

struct LambdaMeasureBreakdown {
  RationalInterval total;
  Rational orbit_part_hi;  // condition (i)
  Rational layer_part_hi;  // condition (ii)
};
LambdaMeasureBreakdown lambda_n_complement_breakdown(const SubsequenceCertificate& cert, std::size_t n,
                                                     std::size_t j_max);
RationalInterval lambda_n_complement_measure(const SubsequenceCertificate& cert, std::size_t n,
                                             std::size_t j_max);

// d(x, boundary of I_j(x)) > (1/(2 q_j))^2 for n < j <= j_max.
bool sigma_n_membership(const SubsequenceCertificate& cert, std::size_t n, const CirclePoint& x,
                        std::size_t j_max);
Rational sigma_n_complement_measure(const SubsequenceCertificate& cert, std::size_t n, std::size_t j_max);

// Smallest n1 <= horizon with I_n(x) inside I_1(x), ..., I_{n-1}(x) for every n1 <= n <= horizon.
std::optional<std::size_t> stabilization_index(const std::vector<Integer>& q, const CirclePoint& x,
                                               std::size_t horizon);

// First k in 1..q_{n+1} with d(x1 + k alpha, x2) < (1/(2 q_n))^2, decided rigorously.
std::optional<Integer> density_return_time(const SubsequenceCertificate& cert, std::size_t n,
                                           const CirclePoint& x1, const CirclePoint& x2);

}  // namespace cylinder
