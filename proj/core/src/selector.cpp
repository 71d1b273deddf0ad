#include "cylinder/selector.hpp"

#include <algorithm>
#include <string>

#include "cylinder/divisibility.hpp"
#include "cylinder/errors.hpp"

namespace cylinder {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::Undecided:
      return "undecided";
  }
  return "?";
}

SubsequenceCertificate::SubsequenceCertificate(PartialQuotients alpha, std::vector<std::size_t> indices,
                                               std::vector<Convergent> terms,
                                               std::vector<NormEnclosure> norms,
                                               Integer next_full_continuant, std::size_t horizon)
    : alpha_(std::move(alpha)),
      indices_(std::move(indices)),
      terms_(std::move(terms)),
      norms_(std::move(norms)),
      next_full_(std::move(next_full_continuant)),
      horizon_(horizon) {}

const Convergent& SubsequenceCertificate::term(std::size_t level) const {
  if (level < 1 || level > terms_.size()) {
    throw Error("level " + std::to_string(level) + " outside chain of length " +
                std::to_string(terms_.size()));
  }
  return terms_[level - 1];
}

const NormEnclosure& SubsequenceCertificate::norm(std::size_t level) const {
  term(level);
  return norms_[level - 1];
}

std::vector<Integer> SubsequenceCertificate::q_list() const {
  std::vector<Integer> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(t.q);
  return out;
}

const ConditionCheck& SubsequenceCertificate::check(const std::string& name) const {
  const auto it = checks_.find(name);
  if (it == checks_.end()) throw Error("certificate has no check named " + name);
  return it->second;
}

bool SubsequenceCertificate::any_failure() const { return first_failure().has_value(); }

std::optional<std::string> SubsequenceCertificate::first_failure() const {
  for (const auto& [name, c] : checks_) {
    if (c.status == CheckStatus::Fail) return name;
  }
  return std::nullopt;
}

bool SubsequenceCertificate::all_pass() const {
  return std::all_of(checks_.begin(), checks_.end(),
                     [](const auto& kv) { return kv.second.status == CheckStatus::Pass; });
}

void SubsequenceCertificate::require(const std::string& name) const {
  const auto& c = check(name);
  if (c.status == CheckStatus::Undecided) throw Undecidable(name, horizon_);
  if (c.status == CheckStatus::Fail) throw Error("condition " + name + " fails");
}

bool SubsequenceCertificate::divisible() const { return is_divisible_chain(q_list()); }

namespace {

Rational half_pow(std::size_t n) { return Rational(Integer(1), pow2(n)); }

CheckStatus combine(CheckStatus acc, CheckStatus s) {
  if (acc == CheckStatus::Fail || s == CheckStatus::Fail) return CheckStatus::Fail;
  if (acc == CheckStatus::Undecided || s == CheckStatus::Undecided) return CheckStatus::Undecided;
  return CheckStatus::Pass;
}

// lhs < rhs decided on enclosures.
CheckStatus strictly_less(const RationalInterval& lhs, const RationalInterval& rhs) {
  if (lhs.hi() < rhs.lo()) return CheckStatus::Pass;
  if (lhs.lo() >= rhs.hi()) return CheckStatus::Fail;
  return CheckStatus::Undecided;
}

CheckStatus less_equal(const RationalInterval& lhs, const RationalInterval& rhs) {
  if (lhs.hi() <= rhs.lo()) return CheckStatus::Pass;
  if (lhs.lo() > rhs.hi()) return CheckStatus::Fail;
  return CheckStatus::Undecided;
}

void add(ConditionCheck& c, Witness w) {
  c.status = combine(c.status, w.status);
  c.witnesses.push_back(std::move(w));
}

RationalInterval pt(const Rational& x) { return RationalInterval::point(x); }

// Majorant for sum_{j>L} ||q_j alpha|| over any doubling continuation of the chain.
Rational beyond_horizon(const SubsequenceCertificate& cert) {
  const Integer& next = cert.next_full_continuant();
  if (next == 0) return Rational(0);
  const Integer floor_q = std::max(next, Integer(2 * cert.q(cert.levels())));
  return Rational(Integer(2), floor_q);
}

void check_cf1(SubsequenceCertificate& cert) {
  ConditionCheck c{"CF1", CheckStatus::Pass, {}, "2 sum_{j>n} ||q_j a|| < ||q_n a||; levels n < L, beyond L by the doubling majorant", {}};
  const std::size_t L = cert.levels();
  const Rational beyond = beyond_horizon(cert);
  for (std::size_t n = 1; n < L; ++n) {
    RationalInterval finite = pt(Rational(0));
    for (std::size_t j = n + 1; j <= L; ++j) finite = finite + cert.norm(j).value;
    const RationalInterval two = pt(Rational(2));
    const RationalInterval lhs = two * RationalInterval(finite.lo(), finite.hi() + beyond);
    Witness w{n, lhs, cert.norm(n).value, "<", strictly_less(lhs, cert.norm(n).value), ""};
    if (w.status == CheckStatus::Undecided && strictly_less(two * finite, cert.norm(n).value) == CheckStatus::Pass) {
      w.note = "finite part passes; beyond-horizon majorant too weak";
    }
    add(c, std::move(w));
  }
  cert.set_check(std::move(c));
}

void check_cf2(SubsequenceCertificate& cert, unsigned p_max) {
  const std::size_t L = cert.levels();
  const Rational beyond = beyond_horizon(cert);
  for (unsigned p = 1; p <= p_max; ++p) {
    ConditionCheck c{"CF2(p=" + std::to_string(p) + ")", CheckStatus::Pass, {},
                     "sum_j j^{p+1} ||q_j a|| bounded: finite part plus exact doubling majorant", {}};
    RationalInterval finite = pt(Rational(0));
    for (std::size_t j = 1; j <= L; ++j) {
      const Rational w = pow(Rational(static_cast<long>(j)), p + 1);
      finite = finite + pt(w) * cert.norm(j).value;
    }
    // Terms j = L+i satisfy ||q_j a|| < 2^{-(i-1)} / Q, so the rest is at most (2/Q) sum (L+i)^t/2^i.
    const Rational rest = beyond * shifted_power_series(Integer(static_cast<unsigned long>(L)), p + 1);
    const RationalInterval total(finite.lo(), finite.hi() + rest);
    add(c, Witness{L, total, total, "finite", CheckStatus::Pass, "upper bound of the full series"});
    cert.set_check(std::move(c));
  }
}

void check_cf3(SubsequenceCertificate& cert, unsigned p_max) {
  const std::size_t L = cert.levels();
  for (unsigned p = 1; p <= p_max; ++p) {
    ConditionCheck c{"CF3(p=" + std::to_string(p) + ")", CheckStatus::Pass, {},
                     "sum_{j<=n} j^{p+1} q_j < q_{n+1} for n > n(p); n(p) is the smallest value consistent with this horizon", {}};
    Integer partial = 0;
    std::optional<std::size_t> last_bad;
    for (std::size_t n = 1; n < L; ++n) {
      partial += cert.q(n) * Integer(static_cast<unsigned long>(n)) *
                 [&] { Integer r = 1; for (unsigned e = 0; e < p; ++e) r *= static_cast<unsigned long>(n); return r; }();
      const bool ok = partial < cert.q(n + 1);
      c.witnesses.push_back(Witness{n, pt(Rational(partial)), pt(Rational(cert.q(n + 1))), "<",
                                    ok ? CheckStatus::Pass : CheckStatus::Fail, ""});
      if (!ok) last_bad = n;
    }
    c.n_p = last_bad ? *last_bad : 0;
    // An eventual statement: only undecided if it fails at the last observed level.
    c.status = (L >= 2 && last_bad && *last_bad == L - 1) ? CheckStatus::Undecided : CheckStatus::Pass;
    if (L < 2) c.status = CheckStatus::Undecided;
    cert.set_check(std::move(c));
  }
}

void check_cf4(SubsequenceCertificate& cert) {
  ConditionCheck c{"CF4", CheckStatus::Pass, {}, "(2^n sum_{j<n} q_j) q_n ||q_n a|| < 1", {}};
  Integer sum = 0;
  for (std::size_t n = 1; n <= cert.levels(); ++n) {
    const Rational factor = Rational(pow2(n) * sum) * Rational(cert.q(n));
    const RationalInterval lhs = pt(factor) * cert.norm(n).value;
    add(c, Witness{n, lhs, pt(Rational(1)), "<", strictly_less(lhs, pt(Rational(1))), ""});
    sum += cert.q(n);
  }
  cert.set_check(std::move(c));
}

void check_cf5(SubsequenceCertificate& cert, std::size_t slack) {
  ConditionCheck c{"CF5", CheckStatus::Pass, {},
                   "max gap of {a, .., q_{n+1} a} <= 2 (1/(2 q_n))^2, three-distance enclosure", {}};
  for (std::size_t n = 1; n < cert.levels(); ++n) {
    const RationalInterval gap = max_gap_enclosure(cert.alpha(), cert.q(n + 1), slack);
    const Rational qn(cert.q(n));
    const Rational threshold = Rational(Integer(1), Integer(2)) / (qn * qn);
    add(c, Witness{n, gap, pt(threshold), "<=", less_equal(gap, pt(threshold)), ""});
  }
  cert.set_check(std::move(c));
}

void check_div(SubsequenceCertificate& cert) {
  ConditionCheck c{"DIV", CheckStatus::Pass, {}, "2 q_n divides q_{n+1}", {}};
  for (std::size_t n = 1; n < cert.levels(); ++n) {
    const Integer twice = 2 * cert.q(n);
    const bool ok = cert.q(n + 1) % twice == 0;
    add(c, Witness{n, pt(Rational(twice)), pt(Rational(cert.q(n + 1))), "|",
                   ok ? CheckStatus::Pass : CheckStatus::Fail, ""});
  }
  cert.set_check(std::move(c));
}

void check_tail(SubsequenceCertificate& cert) {
  ConditionCheck c{"TAIL", CheckStatus::Pass, {},
                   "sum_{n<j<=L} q_j ||q_j a|| < 2^-n over the chain horizon; note gives the residual budget", {}};
  const std::size_t L = cert.levels();
  for (std::size_t n = 1; n < L; ++n) {
    RationalInterval sum = pt(Rational(0));
    for (std::size_t j = n + 1; j <= L; ++j) sum = sum + pt(Rational(cert.q(j))) * cert.norm(j).value;
    const Rational bound = half_pow(n);
    Witness w{n, sum, pt(bound), "<", strictly_less(sum, pt(bound)), ""};
    if (w.status == CheckStatus::Pass) w.note = "residual " + (bound - sum.hi()).str();
    add(c, std::move(w));
  }
  cert.set_check(std::move(c));
}

}  // namespace

Rational shifted_power_series(const Integer& m, unsigned t) {
  // S_u = sum_{i>=1} i^u / 2^i satisfies S_0 = 1, S_u = 1 + sum_{v<u} C(u,v) S_v.
  std::vector<Integer> s(t + 1);
  for (unsigned u = 0; u <= t; ++u) {
    Integer acc = 1;
    for (unsigned v = 0; v < u; ++v) acc += binomial(u, v) * s[v];
    s[u] = u == 0 ? Integer(1) : acc;
  }
  Integer total = 0;
  Integer m_pow = 1;  // m^{t-u}, built from u = t downward
  for (unsigned k = 0; k <= t; ++k) {
    const unsigned u = t - k;
    total += binomial(t, u) * m_pow * s[u];
    m_pow *= m;
  }
  return Rational(total);
}

SubsequenceCertificate relabel(const PartialQuotients& alpha, const std::vector<std::size_t>& indices,
                               std::size_t slack) {
  if (indices.empty()) throw Error("relabel: empty index list");
  for (std::size_t i = 1; i < indices.size(); ++i) {
    if (indices[i] <= indices[i - 1]) throw Error("relabel: indices must be strictly increasing");
  }
  const std::size_t top = indices.back();
  if (!alpha.has_index(top)) throw DepthExceedsExpansion("relabel: index beyond expansion");
  std::size_t depth = top + 2 + slack;
  if (alpha.is_finite()) depth = std::min(depth, *alpha.last_index());
  const auto table = convergents(alpha, std::max(depth, top));
  std::vector<Convergent> terms;
  std::vector<NormEnclosure> norms;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    const auto& c = table[indices[k]];
    if (k > 0 && c.q <= terms.back().q) {
      throw Error("relabel: continuants must be strictly increasing along the chain");
    }
    terms.push_back(c);
    norms.push_back(norm_enclosure(alpha, table, indices[k], slack));
  }
  Integer next = 0;
  if (top + 1 < table.size()) next = table[top + 1].q;
  return SubsequenceCertificate(alpha, indices, std::move(terms), std::move(norms), std::move(next), top);
}

SubsequenceCertificate certify(const PartialQuotients& alpha, const std::vector<std::size_t>& indices,
                               std::size_t depth_bound, unsigned p_max, const CertifyOptions& options) {
  if (!indices.empty() && indices.back() > depth_bound) {
    throw Error("certify: index " + std::to_string(indices.back()) + " exceeds depth bound " +
                std::to_string(depth_bound));
  }
  if (alpha.is_finite() && depth_bound > *alpha.last_index()) {
    throw DepthExceedsExpansion("certify: depth bound beyond finite expansion");
  }
  auto base = relabel(alpha, indices, options.slack);
  SubsequenceCertificate cert(base.alpha(), base.indices(),
                              [&] {
                                std::vector<Convergent> t;
                                for (std::size_t n = 1; n <= base.levels(); ++n) t.push_back(base.term(n));
                                return t;
                              }(),
                              base.norms(), base.next_full_continuant(), depth_bound);
  check_cf1(cert);
  check_cf2(cert, p_max);
  check_cf3(cert, p_max);
  check_cf4(cert);
  check_cf5(cert, options.slack);
  if (options.want_divisibility) check_div(cert);
  check_tail(cert);
  return cert;
}

SubsequenceCertificate greedy_select(const PartialQuotients& alpha, std::size_t depth_bound,
                                     bool want_divisibility, const GreedyOptions& options) {
  if (alpha.is_finite() && depth_bound > *alpha.last_index()) {
    throw DepthExceedsExpansion("greedy_select: depth bound beyond finite expansion");
  }
  const auto table = convergents(alpha, depth_bound);
  CertifyOptions co{want_divisibility, options.slack};
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i <= depth_bound; ++i) {
    if (!chosen.empty() && table[i].q <= table[chosen.back()].q) continue;
    auto trial = chosen;
    trial.push_back(i);
    const auto cert = certify(alpha, trial, depth_bound, options.p_max, co);
    if (!cert.any_failure()) chosen = std::move(trial);
  }
  if (chosen.size() < options.min_length) {
    throw NoSubsequenceFound("greedy_select: only " + std::to_string(chosen.size()) +
                             " admissible indices up to depth " + std::to_string(depth_bound));
  }
  return certify(alpha, chosen, depth_bound, options.p_max, co);
}

}  // namespace cylinder
