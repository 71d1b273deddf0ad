#include "cylinder/residue_counting.hpp"

#include <cstdlib>
#include <string>

#include "cylinder/errors.hpp"

namespace cylinder {

PeriodicStep::PeriodicStep(std::int64_t period, Rational offset) : u_(period), z_(std::move(offset)) {
  if (u_ <= 0) throw Error("periodic step: period must be positive");
}

int PeriodicStep::operator()(std::int64_t t) const {
  const Rational w = Rational(t) - z_;
  const Rational u(u_);
  const Rational r = w - u * Rational(floor(w / u));
  return r < u / Rational(2) ? 1 : -1;
}

bool PeriodicStep::has_integer_discontinuity() const {
  // z + k u/2 is an integer for some k iff frac(z) is a multiple of frac(u/2).
  const Rational half_u = Rational(u_) / Rational(2);
  const Rational fz = frac(z_);
  if (fz.sign() == 0) return true;
  if (half_u.is_integer()) return false;
  return fz == Rational(Integer(1), Integer(2));
}

void require_complete_residue_system(const std::vector<std::int64_t>& R, std::int64_t u) {
  if (static_cast<std::int64_t>(R.size()) != u) {
    throw NotCompleteResidueSystem("expected " + std::to_string(u) + " residues, got " +
                                   std::to_string(R.size()));
  }
  std::vector<char> seen(static_cast<std::size_t>(u), 0);
  for (const auto r : R) {
    const auto c = static_cast<std::size_t>(((r % u) + u) % u);
    if (seen[c]) throw NotCompleteResidueSystem("residue " + std::to_string(c) + " repeated");
    seen[c] = 1;
  }
}

SplitCounts residue_split(const PeriodicStep& psi, const std::vector<std::int64_t>& R) {
  require_complete_residue_system(R, psi.period());
  if (psi.period() % 2 != 0) throw HypothesisViolated("even period", "u must be even");
  if (psi.has_integer_discontinuity()) {
    throw IntegerDiscontinuity("offset " + psi.offset().str() + " puts a discontinuity on an integer");
  }
  SplitCounts c;
  for (const auto r : R) (psi(r) > 0 ? c.plus : c.minus)++;
  return c;
}

void require_counting_hypotheses(const std::vector<PeriodicStep>& psis) {
  if (psis.empty()) throw HypothesisViolated("(a)", "at least one step function is required");
  for (std::size_t j = 0; j + 1 < psis.size(); ++j) {
    if (psis[j].period() % (2 * psis[j + 1].period()) != 0) {
      throw HypothesisViolated("(a)", "u_" + std::to_string(j + 1) + " must be a multiple of 2 u_" +
                                          std::to_string(j + 2));
    }
  }
  if (psis.back().period() % 2 != 0) throw HypothesisViolated("(a)", "u_n must be even");
  for (const auto& p : psis) {
    if (p.has_integer_discontinuity()) {
      throw IntegerDiscontinuity("offset " + p.offset().str() + " puts a discontinuity on an integer");
    }
  }
}

namespace {

// Residues i mod u_1 whose lifts satisfy psi_j(i) = s_j for j >= level (0-based), built from the
// last level upward: a class mod u_j is admissible iff psi_j agrees and its reduction mod
// u_{j+1} is admissible.
std::vector<char> admissible_classes(const std::vector<PeriodicStep>& psis, const SignPattern& s,
                                     std::size_t first) {
  std::vector<char> next;
  for (std::size_t j = psis.size(); j-- > first;) {
    const std::int64_t u = psis[j].period();
    std::vector<char> cur(static_cast<std::size_t>(u), 0);
    for (std::int64_t i = 0; i < u; ++i) {
      if (psis[j](i) != s[j]) continue;
      if (!next.empty()) {
        const std::int64_t v = psis[j + 1].period();
        if (!next[static_cast<std::size_t>(i % v)]) continue;
      }
      cur[static_cast<std::size_t>(i)] = 1;
    }
    next = std::move(cur);
  }
  return next;
}

}  // namespace

std::int64_t count_pattern(const std::vector<PeriodicStep>& psis, const std::vector<std::int64_t>& R,
                           const SignPattern& s) {
  require_counting_hypotheses(psis);
  if (s.size() != psis.size()) throw Error("count_pattern: pattern length differs from number of steps");
  require_complete_residue_system(R, psis.front().period());
  const auto classes = admissible_classes(psis, s, 0);
  std::int64_t count = 0;
  for (const char c : classes) count += c;  // R meets every class exactly once
  return count;
}

std::int64_t count_pattern_bruteforce(const std::vector<PeriodicStep>& psis,
                                      const std::vector<std::int64_t>& R, const SignPattern& s) {
  std::int64_t count = 0;
  for (const auto k : R) {
    bool ok = true;
    for (std::size_t j = 0; j < psis.size() && ok; ++j) ok = psis[j](k) == s[j];
    count += ok ? 1 : 0;
  }
  return count;
}

std::map<SignPattern, std::int64_t> binary_tree_counts(const std::vector<PeriodicStep>& psis,
                                                       const std::vector<std::int64_t>& R) {
  require_counting_hypotheses(psis);
  require_complete_residue_system(R, psis.front().period());
  std::map<SignPattern, std::int64_t> out;
  out[{}] = static_cast<std::int64_t>(R.size());
  std::vector<SignPattern> frontier{{}};
  for (std::size_t level = 1; level <= psis.size(); ++level) {
    const std::vector<PeriodicStep> prefix(psis.begin(), psis.begin() + static_cast<std::ptrdiff_t>(level));
    std::vector<SignPattern> next;
    for (const auto& pat : frontier) {
      for (const int sign : {1, -1}) {
        SignPattern child = pat;
        child.push_back(sign);
        // The first `level` steps satisfy hypothesis (a) except possibly evenness of the last
        // period, which follows from u_level being a multiple of 2 u_{level+1}.
        const auto classes = admissible_classes(prefix, child, 0);
        std::int64_t c = 0;
        for (const char v : classes) c += v;
        out[child] = c;
        next.push_back(std::move(child));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

Rational return_count_formula(unsigned n, const Integer& q_next, std::int64_t m) {
  if (std::llabs(m) > static_cast<long long>(n) || (static_cast<std::int64_t>(n) + m) % 2 != 0) {
    throw ParityMismatch("m = " + std::to_string(m) + " is not admissible at level " + std::to_string(n));
  }
  const auto k = static_cast<unsigned long>((static_cast<std::int64_t>(n) + m) / 2);
  return Rational(q_next * binomial(n, k), pow2(n));
}

}  // namespace cylinder
