#include "cylinder/roof.hpp"

#include <algorithm>
#include <string>

#include "cylinder/errors.hpp"

namespace cylinder {

namespace {

const Rational kHalf(Integer(1), Integer(2));

bool even(const Integer& v) { return mpz_even_p(v.get_mpz_t()) != 0; }

void require_level(const SubsequenceCertificate& cert, std::size_t level, const char* what) {
  if (level > cert.levels()) {
    throw Error(std::string(what) + ": level " + std::to_string(level) + " beyond chain of length " +
                std::to_string(cert.levels()));
  }
}

}  // namespace

int haar(const CirclePoint& x) { return x.value() < kHalf ? 1 : -1; }

int haar_dilated(const Integer& q, const CirclePoint& x) { return haar(CirclePoint(Rational(q) * x.value())); }

PlateauRef plateau_of(std::size_t level, const Integer& q, const CirclePoint& x) {
  const Integer i = floor(Rational(2 * q) * x.value());
  return {level, q, i, even(i) ? 1 : -1};
}

bool plateau_contains(const PlateauRef& outer, const PlateauRef& inner) {
  return outer.lo() <= inner.lo() && inner.hi() <= outer.hi();
}

std::int64_t walk_value(const std::vector<Integer>& q, std::size_t n, const CirclePoint& x) {
  if (n > q.size()) throw Error("walk: level beyond chain");
  std::int64_t m = 0;
  for (std::size_t j = 0; j < n; ++j) m += haar_dilated(q[j], x);
  return m;
}

WalkState walk_m(const SubsequenceCertificate& cert, std::size_t n, const CirclePoint& x) {
  require_level(cert, n, "walk_m");
  return {x, n, walk_value(cert.q_list(), n, x)};
}

TruncatedRoof::TruncatedRoof(const SubsequenceCertificate& cert, std::size_t n, RoofVariant variant,
                             std::size_t max_depth)
    : variant_(variant),
      rotation_([&] {
        if (variant == RoofVariant::Rational) {
          require_level(cert, n + 1, "rational roof");
          return Rotation(cert.convergent_value(n + 1));
        }
        require_level(cert, n, "roof");
        return Rotation(cert.alpha(), max_depth);
      }()) {
  for (std::size_t j = 1; j <= n; ++j) q_.push_back(cert.q(j));
}

std::int64_t TruncatedRoof::walk(const Rational& x, const Integer& k) const {
  std::int64_t m = 0;
  for (const auto& q : q_) m += rotation_.haar(q, x, k);
  return m;
}

std::int64_t TruncatedRoof::at(const Rational& x, const Integer& k) const {
  const std::int64_t d = walk(x, k + 1) - walk(x, k);
  return d / 2;
}

PiecewiseConstantFn TruncatedRoof::piecewise() const {
  if (!rotation_.is_exact()) throw Error("piecewise form needs an exact rotation");
  PiecewiseConstantFn doubled = PiecewiseConstantFn::constant(0);
  for (const auto& q : q_) {
    doubled = doubled + PiecewiseConstantFn::dilated_haar(q, Rational(q) * rotation_.exact());
    doubled = doubled - PiecewiseConstantFn::dilated_haar(q);
  }
  return doubled.map([](std::int64_t v) {
                  if (v % 2 != 0) throw Error("roof: odd doubled value");
                  return v / 2;
                })
      .simplified();
}

std::int64_t phi_truncated(const SubsequenceCertificate& cert, std::size_t n, RoofVariant variant,
                           const CirclePoint& x) {
  if (n == 0) return 0;
  return TruncatedRoof(cert, n, variant).at(x.value());
}

Rational distance_to_half_lattice(const Rational& t) { return nearest_int_distance(Rational(2) * t) * kHalf; }

CertifiedPhi phi_certified(const SubsequenceCertificate& cert, const CirclePoint& x, std::size_t j_max) {
  require_level(cert, j_max, "phi_certified");
  std::size_t J = 0;
  for (std::size_t j = 1; j <= j_max; ++j) {
    const Rational d = distance_to_half_lattice(Rational(cert.q(j)) * x.value());
    if (!(d > cert.norm(j).value.hi())) J = j;
  }
  if (J >= j_max) throw TailNotCertified(j_max);
  const Rotation rot(cert.alpha());
  std::int64_t doubled = 0;
  for (std::size_t j = 1; j <= J; ++j) {
    doubled += rot.haar(cert.q(j), x.value(), Integer(1)) - haar_dilated(cert.q(j), x);
  }
  return {doubled / 2, J};
}

Rational measure_disagreement(const Integer& q, const CirclePoint& beta, const CirclePoint& gamma) {
  const auto a = PiecewiseConstantFn::dilated_haar(q, beta.value());
  const auto b = PiecewiseConstantFn::dilated_haar(q, gamma.value());
  return (a - b).measure_where([](std::int64_t v) { return v != 0; });
}

PiecewiseConstantFn psi_function(const std::vector<Integer>& q, const std::vector<Rational>& beta,
                                 const std::vector<Rational>& gamma) {
  if (q.size() != beta.size() || q.size() != gamma.size()) throw Error("psi: list sizes differ");
  PiecewiseConstantFn doubled = PiecewiseConstantFn::constant(0);
  for (std::size_t j = 0; j < q.size(); ++j) {
    doubled = doubled + PiecewiseConstantFn::dilated_haar(q[j], beta[j]);
    doubled = doubled - PiecewiseConstantFn::dilated_haar(q[j], gamma[j]);
  }
  return doubled.map([](std::int64_t v) { return v / 2; }).simplified();
}

LpBound lp_norm_bound_check(const std::vector<Integer>& q, const std::vector<Rational>& beta,
                            const std::vector<Rational>& gamma, unsigned p) {
  const auto psi = psi_function(q, beta, gamma);
  Rational rhs(0);
  for (std::size_t j = 0; j < q.size(); ++j) {
    rhs += pow(Rational(static_cast<long>(j + 1)), p + 1) * nearest_int_distance(beta[j] - gamma[j]);
  }
  return {psi.lp_pow(p), Rational(2) * rhs};
}

RationalInterval phi_difference_lp(const SubsequenceCertificate& cert, std::size_t n, unsigned p,
                                   std::size_t alpha_depth) {
  require_level(cert, n + 1, "phi_difference_lp");
  const auto& alpha = cert.alpha();
  std::size_t depth = alpha_depth;
  bool exact = false;
  if (alpha.is_finite() && depth >= *alpha.last_index()) {
    depth = *alpha.last_index();
    exact = true;
  }
  const auto table = convergents(alpha, exact ? depth : depth + 1);
  const Rational a_d = table[depth].value();
  const Rational a_n1 = cert.convergent_value(n + 1);
  std::vector<Integer> q;
  std::vector<Rational> beta, gamma;
  Integer q_sum = 0;
  for (std::size_t j = 1; j <= n; ++j) {
    q.push_back(cert.q(j));
    beta.push_back(Rational(cert.q(j)) * a_d);
    gamma.push_back(Rational(cert.q(j)) * a_n1);
    q_sum += cert.q(j);
  }
  const Rational value = psi_function(q, beta, gamma).lp_pow(p);
  if (exact) return RationalInterval::point(value);
  const Rational gap(Integer(1), table[depth].q * table[depth + 1].q);
  const Rational err = pow(Rational(static_cast<long>(n)), p) * Rational(2) * gap * Rational(q_sum);
  return {max(Rational(0), value - err), value + err};
}

namespace {

RationalInterval layer_norm(const SubsequenceCertificate& cert, std::size_t j, std::size_t attempt) {
  if (attempt == 0) return cert.norm(j).value;
  const std::size_t slack = 8U << (2 * attempt);
  return norm_enclosure(cert.alpha(), cert.indices()[j - 1], slack).value;
}

// nullopt when the enclosure at this rung is too coarse.
std::optional<bool> condition_i_at(const SubsequenceCertificate& cert, std::size_t n, const Rational& x,
                                   const RationalInterval& alpha) {
  const Integer& Q = cert.q(n + 1);
  const Rational a_n1 = cert.convergent_value(n + 1);
  const RationalInterval eps = alpha - RationalInterval::point(a_n1);
  int s = 0;
  if (eps.lo().sign() > 0) {
    s = 1;
  } else if (eps.hi().sign() < 0) {
    s = -1;
  } else if (eps.is_point()) {
    return true;  // alpha = alpha_{n+1}
  } else {
    return std::nullopt;
  }
  const RationalInterval abs_eps = s > 0 ? eps : -eps;
  const bool exact = eps.is_point();
  const Integer P = mod(cert.p(n + 1), Q);
  for (std::size_t j = 1; j <= n; ++j) {
    const Integer& qj = cert.q(j);
    if (Q % qj != 0) throw HypothesisViolated("DIV", "q_j must divide q_{n+1}");
    const Integer u = Q / qj;
    const Integer g = even(u) ? Integer(2) : Integer(1);
    const Integer M = u / g;
    const Rational f = frac(Rational(2 * qj) * x);
    const Integer mult = mod(2 * P / g, M);
    const Integer inv = M == 1 ? Integer(0) : mod_inverse(mult, M);
    const Rational step(Integer(1), M);
    const Rational scale(2 * qj);
    const Rational reach_hi = scale * Rational(Q) * abs_eps.hi();
    Integer m0;
    Rational gap0;
    if (s > 0) {
      m0 = ceil(Rational(M) * (Rational(1) - f)) - 1;
      gap0 = Rational(1) - (f + Rational(m0) * step);
    } else {
      const Integer sm = floor(Rational(M) * f);
      m0 = mod(M - sm, M);
      gap0 = f - Rational(sm) * step;
    }
    for (Integer i = 0; i < M; ++i) {
      const Rational gap = gap0 + Rational(i) * step;
      if (gap > reach_hi) break;
      const Integer m = s > 0 ? mod(m0 - i, M) : mod(m0 + i, M);
      const Integer c0 = mod(m * inv, M);
      for (Integer t = 0; t < g; ++t) {
        Integer c = c0 + t * M;
        if (c == 0) c = u;
        const Integer k = Q - u + c;
        const Rational factor = scale * Rational(k);
        const Rational lo = factor * abs_eps.lo();
        const Rational hi = factor * abs_eps.hi();
        if (exact) {
          const bool crosses = s > 0 ? lo >= gap : lo > gap;
          if (crosses) return false;
          continue;
        }
        if (lo > gap) return false;
        if (!(hi < gap)) return std::nullopt;
      }
    }
  }
  return true;
}

}  // namespace

namespace {

// Enough convergents to separate alpha from alpha_{n+1}; a full ladder is the fallback.
Rotation shallow_rotation(const SubsequenceCertificate& cert, std::size_t n) {
  const std::size_t level = std::min(n + 2, cert.levels());
  return Rotation(cert.alpha(), cert.indices()[level - 1] + 8);
}

}  // namespace

LambdaSet::LambdaSet(const SubsequenceCertificate& cert, std::size_t n, std::size_t j_max)
    : cert_(cert), n_(n), j_max_(j_max), rotation_(shallow_rotation(cert, n)) {
  require_level(cert, n + 1, "lambda_n");
  require_level(cert, j_max, "lambda_n");
  for (std::size_t j = n + 1; j <= j_max; ++j) {
    delta_.push_back(RationalInterval::point(Rational(cert.q(j))) * cert.norm(j).value);
  }
}

bool LambdaSet::condition_ii(const CirclePoint& x) const {
  for (std::size_t j = n_ + 1; j <= j_max_; ++j) {
    const Rational d = distance_to_half_lattice(Rational(cert_.q(j)) * x.value());
    const RationalInterval& delta = delta_[j - n_ - 1];
    if (d > delta.hi()) continue;
    if (d <= delta.lo()) return false;
    bool decided = false;
    for (std::size_t attempt = 1; attempt < 4 && !decided; ++attempt) {
      const RationalInterval finer = RationalInterval::point(Rational(cert_.q(j))) * layer_norm(cert_, j, attempt);
      if (d > finer.hi()) {
        decided = true;
      } else if (d <= finer.lo()) {
        return false;
      }
    }
    if (!decided) throw EnclosureTooWide("lambda_n condition (ii) undecided at level " + std::to_string(j));
  }
  return true;
}

bool LambdaSet::condition_i(const CirclePoint& x) const {
  for (const auto& rung : rotation_.ladder()) {
    if (const auto r = condition_i_at(cert_, n_, x.value(), rung)) return *r;
  }
  const Rotation full(cert_.alpha());
  for (const auto& rung : full.ladder()) {
    if (const auto r = condition_i_at(cert_, n_, x.value(), rung)) return *r;
  }
  throw EnclosureTooWide("lambda_n condition (i) undecided");
}

bool LambdaSet::contains(const CirclePoint& x) const { return condition_ii(x) && condition_i(x); }

bool lambda_n_condition_i(const SubsequenceCertificate& cert, std::size_t n, const CirclePoint& x) {
  require_level(cert, n + 1, "lambda_n");
  return LambdaSet(cert, n, n + 1).condition_i(x);
}

bool lambda_n_condition_i_bruteforce(const SubsequenceCertificate& cert, std::size_t n, const CirclePoint& x) {
  require_level(cert, n + 1, "lambda_n");
  const Rotation rot(cert.alpha());
  const Rotation rat(cert.convergent_value(n + 1));
  for (Integer k = 1; k <= cert.q(n + 1); ++k) {
    for (std::size_t j = 1; j <= n; ++j) {
      if (rot.haar(cert.q(j), x.value(), k) != rat.haar(cert.q(j), x.value(), k)) return false;
    }
  }
  return true;
}

bool lambda_n_basic_membership(const SubsequenceCertificate& cert, std::size_t n, const CirclePoint& x,
                               std::size_t j_max) {
  return LambdaSet(cert, n, j_max).condition_ii(x);
}

bool lambda_n_membership(const SubsequenceCertificate& cert, std::size_t n, const CirclePoint& x,
                         std::size_t j_max) {
  return LambdaSet(cert, n, j_max).contains(x);
}

LambdaMeasureBreakdown lambda_n_complement_breakdown(const SubsequenceCertificate& cert, std::size_t n,
                                                     std::size_t j_max) {
  require_level(cert, n + 1, "lambda_n");
  require_level(cert, j_max, "lambda_n");
  const Rational Q(cert.q(n + 1));
  const RationalInterval norm_next = cert.norm(n + 1).value;
  Rational q_sum(0);
  for (std::size_t j = 1; j <= n; ++j) q_sum += Rational(cert.q(j));
  // sum_{j<=n} sum_{k<=Q} 2 ||k q_j eps|| <= (Q + 1) ||Q alpha|| sum_j q_j,  |eps| = ||Q alpha|| / Q.
  const Rational orbit_hi = (Q + Rational(1)) / Q * norm_next.hi() * q_sum;
  Rational orbit_lo(0);
  if (n >= 1) {
    const RationalInterval widest = RationalInterval::point(Rational(cert.q(n))) * norm_next;
    orbit_lo = Rational(2) * nearest_int_distance(widest).lo();
  }
  Rational layer_hi(0);
  Rational layer_lo(0);
  for (std::size_t j = n + 1; j <= j_max; ++j) {
    const RationalInterval delta = RationalInterval::point(Rational(cert.q(j))) * cert.norm(j).value;
    layer_hi += min(Rational(1), Rational(4) * delta.hi());
    layer_lo = max(layer_lo, min(Rational(1), Rational(4) * delta.lo()));
  }
  const Rational hi = min(Rational(1), orbit_hi + layer_hi);
  const Rational lo = min(hi, max(orbit_lo, layer_lo));
  return {RationalInterval(lo, hi), orbit_hi, layer_hi};
}

RationalInterval lambda_n_complement_measure(const SubsequenceCertificate& cert, std::size_t n,
                                             std::size_t j_max) {
  return lambda_n_complement_breakdown(cert, n, j_max).total;
}

bool sigma_n_membership(const SubsequenceCertificate& cert, std::size_t n, const CirclePoint& x,
                        std::size_t j_max) {
  require_level(cert, j_max, "sigma_n");
  for (std::size_t j = n + 1; j <= j_max; ++j) {
    const auto pl = plateau_of(j, cert.q(j), x);
    const Rational d = min(x.value() - pl.lo(), pl.hi() - x.value());
    const Rational r(Integer(1), 2 * cert.q(j));
    if (!(d > r * r)) return false;
  }
  return true;
}

Rational sigma_n_complement_measure(const SubsequenceCertificate& cert, std::size_t n, std::size_t j_max) {
  require_level(cert, j_max, "sigma_n");
  Rational s(0);
  for (std::size_t j = n + 1; j <= j_max; ++j) s += Rational(Integer(1), cert.q(j));
  return min(Rational(1), s);
}

std::optional<std::size_t> stabilization_index(const std::vector<Integer>& q, const CirclePoint& x,
                                               std::size_t horizon) {
  if (horizon > q.size()) throw Error("stabilization_index: horizon beyond chain");
  std::vector<PlateauRef> pl;
  for (std::size_t j = 0; j < horizon; ++j) pl.push_back(plateau_of(j + 1, q[j], x));
  std::optional<std::size_t> n1;
  for (std::size_t n = horizon; n >= 1; --n) {
    bool nested = true;
    for (std::size_t j = 1; j < n && nested; ++j) nested = plateau_contains(pl[j - 1], pl[n - 1]);
    if (!nested) break;
    n1 = n;
  }
  return n1;
}

std::optional<Integer> density_return_time(const SubsequenceCertificate& cert, std::size_t n,
                                           const CirclePoint& x1, const CirclePoint& x2) {
  require_level(cert, n + 1, "density_return_time");
  const Rotation rot(cert.alpha());
  const Rational r(Integer(1), 2 * cert.q(n));
  const Rational threshold = r * r;
  for (Integer k = 1; k <= cert.q(n + 1); ++k) {
    for (std::size_t rung = 0;; ++rung) {
      if (rung >= rot.ladder().size()) throw EnclosureTooWide("density_return_time undecided");
      const RationalInterval y = rot.position(Integer(1), x1.value(), k, rung) -
                                 RationalInterval::point(x2.value());
      const RationalInterval d = nearest_int_distance(y);
      if (d.hi() < threshold) return k;
      if (d.lo() >= threshold) break;
    }
  }
  return std::nullopt;
}

}  // namespace cylinder
