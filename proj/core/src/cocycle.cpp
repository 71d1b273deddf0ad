#include "cylinder/cocycle.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <thread>

#include "cylinder/enclosures.hpp"
#include "cylinder/errors.hpp"
#include "cylinder/random.hpp"

namespace cylinder {

std::int64_t birkhoff_sum(const TruncatedRoof& roof, const CirclePoint& x, std::int64_t n,
                          const Integer& offset) {
  std::int64_t s = 0;
  if (n > 0) {
    for (std::int64_t k = 0; k < n; ++k) s += roof.at(x.value(), offset + Integer(static_cast<long>(k)));
  } else if (n < 0) {
    for (std::int64_t k = 1; k <= -n; ++k) s -= roof.at(x.value(), offset - Integer(static_cast<long>(k)));
  }
  return s;
}

CylinderPoint iterate(const TruncatedRoof& roof, const CylinderPoint& p, std::int64_t steps) {
  return {p.x0, p.k + Integer(static_cast<long>(steps)), p.y + birkhoff_sum(roof, p.x0, steps, p.k)};
}

namespace {

__extension__ typedef __int128 i128;

constexpr std::int64_t kMaxFastQ = std::int64_t{1} << 40;
constexpr std::int64_t kMaxFastL = std::int64_t{1} << 62;
constexpr std::int64_t kNextCap = std::int64_t{1} << 60;

// Orbit x + k a/Qa on the grid (1/L)Z, with an optional a-priori bound on |alpha - a/Qa|.
struct FastOrbit {
  i128 L = 0;
  i128 y0 = 0;
  i128 step = 0;
  i128 scale = 0;     // L / Qa
  i128 next_cap = 0;  // 0 when the rotation is exactly a/Qa
  int eps_sign = 0;   // sign of alpha - a/Qa
};

std::optional<FastOrbit> make_fast_orbit(const Rational& x, const Integer& a, const Integer& Qa,
                                         const Integer& next, int eps_sign = 0) {
  const Integer L = lcm(x.den(), Qa);
  const auto l = to_int64(L);
  if (!l || *l > kMaxFastL || Qa > Integer(static_cast<long>(kMaxFastQ))) return std::nullopt;
  FastOrbit o;
  o.L = *l;
  o.y0 = *to_int64(x.num() * (L / x.den()));
  o.scale = *to_int64(L / Qa);
  o.step = static_cast<i128>(*to_int64(mod(a, Qa))) * o.scale % o.L;
  if (next != 0) o.next_cap = next > Integer(static_cast<long>(kNextCap)) ? kNextCap : *to_int64(next);
  o.eps_sign = eps_sign;
  return o;
}

class OrbitEvaluator {
 public:
  // The exact rotation is expensive to build for deep chains, so it is made on first use.
  OrbitEvaluator(std::function<Rotation()> make_slow, const Rational& x, std::optional<FastOrbit> fast,
                 std::vector<Integer> q)
      : make_slow_(std::move(make_slow)), x_(x), fast_(fast), q_(std::move(q)) {
    for (const auto& v : q_) {
      const auto s = to_int64(v);
      q_small_.push_back(s && *s <= kMaxFastQ ? *s : -1);
    }
  }

  // Sum_j T_j(x + k alpha') where y_k is the fast-grid numerator of x + k alpha'.
  std::int64_t walk(std::int64_t k, i128 y_k) {
    std::int64_t m = 0;
    for (std::size_t j = 0; j < q_.size(); ++j) m += term(j, k, y_k);
    return m;
  }

  std::size_t slow_calls() const { return slow_calls_; }

 private:
  int term(std::size_t j, std::int64_t k, i128 y_k) {
    if (fast_ && q_small_[j] > 0) {
      const i128 two_q = 2 * static_cast<i128>(q_small_[j]);
      const i128 r = (two_q * y_k) % (2 * fast_->L);
      if (fast_->next_cap == 0) return r < fast_->L ? 1 : -1;
      const i128 s = r % fast_->L;
      const i128 dist = std::min(s, fast_->L - s);
      // |2 q_j k (alpha - a/Qa)| < 2 q_j k / (Qa * next); compare in units of 1/L.
      const i128 drift = two_q * k * fast_->scale;
      if (dist != 0 && dist * fast_->next_cap > drift) return r < fast_->L ? 1 : -1;
      // On a grid discontinuity the drift k q_j (alpha - a/Qa) decides the side.
      if (dist == 0 && k > 0 && fast_->L * fast_->next_cap > drift) {
        if (fast_->eps_sign > 0) return r == 0 ? 1 : -1;
        if (fast_->eps_sign < 0) return r == 0 ? -1 : 1;
      }
    }
    ++slow_calls_;
    if (!slow_) slow_.emplace(make_slow_());
    return slow_->haar(q_[j], x_, Integer(static_cast<long>(k)));
  }

  std::function<Rotation()> make_slow_;
  std::optional<Rotation> slow_;
  Rational x_;
  std::optional<FastOrbit> fast_;
  std::vector<Integer> q_;
  std::vector<std::int64_t> q_small_;
  std::size_t slow_calls_ = 0;
};

std::size_t default_roof_levels(const SubsequenceCertificate& cert, std::size_t n) {
  std::size_t J = n;
  while (J < cert.levels() && cert.q(J + 1) <= Integer(static_cast<long>(kMaxFastQ))) ++J;
  return J;
}

}  // namespace

ReturnCount return_count_bruteforce(const SubsequenceCertificate& cert, RoofVariant variant, std::size_t n,
                                    const CirclePoint& x, const BruteForceOptions& options) {
  if (n + 1 > cert.levels()) throw Error("return_count_bruteforce: level n+1 beyond chain");
  const Integer& Q = cert.q(n + 1);
  const auto q_total = to_int64(Q);
  if (!q_total || *q_total > kMaxFastQ) throw Error("return_count_bruteforce: q_{n+1} too large to enumerate");

  ReturnCount out;
  std::vector<Integer> q;
  std::optional<FastOrbit> fast;
  std::function<Rotation()> make_slow;
  if (variant == RoofVariant::Rational) {
    for (std::size_t j = 1; j <= n; ++j) q.push_back(cert.q(j));
    make_slow = [&cert, n] { return Rotation(cert.convergent_value(n + 1)); };
    fast = make_fast_orbit(x.value(), cert.p(n + 1), Q, Integer(0));
  } else {
    const std::size_t J = options.roof_levels ? options.roof_levels : default_roof_levels(cert, n);
    if (J > cert.levels() || J < n) throw Error("return_count_bruteforce: invalid roof truncation");
    for (std::size_t j = 1; j <= J; ++j) q.push_back(cert.q(j));
    make_slow = [&cert] { return Rotation(cert.alpha()); };
    // Deepest convergent with denominator small enough for the integer grid.
    const auto& alpha = cert.alpha();
    std::vector<Convergent> table;
    std::size_t d = 0;
    for (;; ++d) {
      if (!alpha.has_index(d + 1)) break;
      table = convergents(alpha, d + 1);
      if (table[d + 1].q * x.value().den() > Integer(static_cast<long>(kMaxFastL)) ||
          table[d + 1].q > Integer(static_cast<long>(kMaxFastQ)))
        break;
    }
    if (table.empty()) table = convergents(alpha, d);
    const bool exact_end = alpha.is_finite() && d == *alpha.last_index();
    const Integer next = exact_end ? Integer(0) : table[d + 1].q;
    // Even convergents lie below alpha.
    fast = make_fast_orbit(x.value(), table[d].p, table[d].q, next, d % 2 == 0 ? 1 : -1);
    out.roof_levels = J;
    if (options.check_lambda) out.in_lambda = lambda_n_membership(cert, n, x, J);
  }
  if (variant == RoofVariant::Rational) out.roof_levels = n;

  OrbitEvaluator eval(make_slow, x.value(), fast, q);
  i128 y = fast ? fast->y0 : 0;
  auto advance = [&](i128 v) {
    if (!fast) return v;
    v += fast->step;
    return v >= fast->L ? v - fast->L : v;
  };
  std::int64_t m_here = eval.walk(0, y);
  std::int64_t doubled_sum = 0;
  std::int64_t count = 0;
  for (std::int64_t k = 0; k < *q_total; ++k) {
    const i128 y_next = advance(y);
    const std::int64_t m_next = eval.walk(k + 1, y_next);
    doubled_sum += m_next - m_here;  // 2 phi(x + k alpha')
    if (doubled_sum == 0) ++count;
    m_here = m_next;
    y = y_next;
  }
  out.count = Integer(static_cast<long>(count));
  out.slow_evaluations = eval.slow_calls();
  return out;
}

std::map<std::int64_t, LevelSet> return_distribution_exact(const std::vector<Integer>& q, std::size_t n) {
  if (n < 1 || n + 1 > q.size()) throw Error("return_distribution_exact: need q_1..q_{n+1}");
  for (std::size_t j = 0; j < n; ++j) {
    if (q[j + 1] % (2 * q[j]) != 0) {
      throw HypothesisViolated("DIV", "2 q_" + std::to_string(j + 1) + " must divide q_" + std::to_string(j + 2));
    }
  }
  // counts[(m, parity of plateau index)] over the plateaux of T_j
  std::map<std::pair<std::int64_t, int>, Integer> counts;
  counts[{1, 0}] = q[0];
  counts[{-1, 1}] = q[0];
  for (std::size_t j = 1; j < n; ++j) {
    const Integer u = q[j] / q[j - 1];  // children per parent plateau
    const int u_odd = mpz_odd_p(u.get_mpz_t()) ? 1 : 0;
    const Integer half_down = u / 2;
    const Integer half_up = u - half_down;
    std::map<std::pair<std::int64_t, int>, Integer> next;
    for (const auto& [key, c] : counts) {
      const auto [m, parity] = key;
      // Children of parent i are i u, ..., i u + u - 1; the first one has parity (i u) mod 2.
      const int first = parity * u_odd;
      const Integer evens = first == 0 ? half_up : half_down;
      const Integer odds = u - evens;
      next[{m + 1, 0}] += c * evens;
      next[{m - 1, 1}] += c * odds;
    }
    counts = std::move(next);
  }
  const Integer plateaux = 2 * q[n - 1];
  std::map<std::int64_t, LevelSet> out;
  for (const auto& [key, c] : counts) {
    auto& ls = out[key.first];
    ls.measure += Rational(c, plateaux);
  }
  for (auto& [m, ls] : out) ls.value = Rational(q[n]) * ls.measure;
  return out;
}

std::map<std::int64_t, LevelSet> return_distribution_exact(const SubsequenceCertificate& cert, std::size_t n) {
  if (n + 1 > cert.levels()) throw Error("return_distribution_exact: level n+1 beyond chain");
  auto q = cert.q_list();
  q.resize(n + 1);
  return return_distribution_exact(q, n);
}

Integer franel(unsigned n) {
  Integer s = 0;
  for (unsigned i = 0; i <= n; ++i) {
    const Integer c = binomial(n, i);
    s += c * c * c;
  }
  return s;
}

ReturnStatistics renyi_statistics(unsigned n, const Integer& q_next) {
  if (n < 1) throw Error("renyi_statistics: n must be >= 1");
  ReturnStatistics st;
  st.n = n;
  st.q_next = q_next;
  const Integer c = binomial(2UL * n, n);
  const Integer f = franel(n);
  st.l1_exact = Rational(q_next * c, pow2(2UL * n));
  st.l2sq_exact = Rational(q_next * q_next * f, pow2(3UL * n));
  st.renyi_ratio_sq = Rational(pow2(n) * f, c * c);
  st.return_sequence_value = st.l1_exact;
  const RationalInterval pi_n = pi_enclosure() * RationalInterval::point(Rational(static_cast<long>(n)));
  st.stirling_ratio = RationalInterval::point(Rational(c, pow2(2UL * n))) * sqrt_enclosure(pi_n);
  return st;
}

std::vector<ProfileRow> normalized_average_profile(unsigned n) {
  if (n < 1) throw Error("normalized_average_profile: n must be >= 1");
  std::vector<ProfileRow> rows;
  const Integer center = binomial(n, n / 2);
  const Integer c2n = binomial(2UL * n, n);
  for (std::int64_t m = -static_cast<std::int64_t>(n); m <= static_cast<std::int64_t>(n); m += 2) {
    const auto k = static_cast<unsigned long>((static_cast<std::int64_t>(n) + m) / 2);
    const Integer c = binomial(n, k);
    const Rational t(Integer(static_cast<long>(m * m)), Integer(static_cast<long>(2 * n)));
    rows.push_back({m, Rational(c, center), Rational(pow2(n) * c, c2n), exp_neg_enclosure(t)});
  }
  return rows;
}

namespace {

Rational summand(const std::vector<Integer>& q, std::size_t n, const CirclePoint& x,
                 const std::map<std::int64_t, LevelSet>& dist) {
  const std::int64_t m = walk_value(q, n, x);
  const auto a = renyi_statistics(static_cast<unsigned>(n), q[n]).l1_exact;
  return dist.at(m).value / a;
}

}  // namespace

Rational lln_estimate(const SubsequenceCertificate& cert, const std::vector<std::size_t>& levels,
                      const CirclePoint& x) {
  if (levels.empty()) throw Error("lln_estimate: no levels");
  const auto q = cert.q_list();
  Rational s(0);
  for (const auto n : levels) s += summand(q, n, x, return_distribution_exact(cert, n));
  return s / Rational(static_cast<long>(levels.size()));
}

Rational lln_partition_average(const SubsequenceCertificate& cert, const std::vector<std::size_t>& levels) {
  if (levels.empty()) throw Error("lln_partition_average: no levels");
  Rational s(0);
  for (const auto n : levels) {
    const auto dist = return_distribution_exact(cert, n);
    const auto a = renyi_statistics(static_cast<unsigned>(n), cert.q(n + 1)).l1_exact;
    for (const auto& [m, ls] : dist) s += ls.measure * ls.value / a;
  }
  return s / Rational(static_cast<long>(levels.size()));
}

MonteCarloResult lln_monte_carlo(const SubsequenceCertificate& cert, const std::vector<std::size_t>& levels,
                                 std::size_t samples, std::uint64_t seed, unsigned threads) {
  if (levels.empty()) throw Error("lln_monte_carlo: no levels");
  const auto q = cert.q_list();
  std::map<std::size_t, std::map<std::int64_t, LevelSet>> dists;
  std::size_t top = 0;
  for (const auto n : levels) {
    dists[n] = return_distribution_exact(cert, n);
    top = std::max(top, n);
  }
  const unsigned bits = static_cast<unsigned>(mpz_sizeinbase(q[top - 1].get_mpz_t(), 2)) + 64;
  std::vector<Rational> out(samples);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      std::mt19937_64 rng(derive_seed(seed, i));
      const CirclePoint x(random_dyadic(rng, bits));
      Rational s(0);
      for (const auto n : levels) s += summand(q, n, x, dists.at(n));
      out[i] = s / Rational(static_cast<long>(levels.size()));
    }
  };
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(samples, 1))));
  if (threads == 1) {
    work(0, samples);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (samples + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t b = t * chunk;
      const std::size_t e = std::min(samples, b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
  }
  Rational mean(0);
  for (const auto& v : out) mean += v;
  if (samples > 0) mean /= Rational(static_cast<long>(samples));
  return {mean, std::move(out)};
}

}  // namespace cylinder
