#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cylinder/continued_fraction.hpp"
#include "cylinder/exact.hpp"

namespace cylinder {

enum class CheckStatus { Pass, Fail, Undecided };
std::string to_string(CheckStatus s);

// One exactly evaluated inequality `lhs relation rhs` at a given level.
struct Witness {
  std::size_t level = 0;
  RationalInterval lhs;
  RationalInterval rhs;
  std::string relation;  // "<", "<=", "|", "finite"
  CheckStatus status = CheckStatus::Undecided;
  std::string note;
};

struct ConditionCheck {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::vector<Witness> witnesses;
  std::string note;
  std::optional<std::size_t> n_p;  // CF3: smallest n(p) observed at this horizon
};

struct CertifyOptions {
  bool want_divisibility = true;
  std::size_t slack = 8;
};

// A relabeled subsequence q_1 < q_2 < ... of continuants of alpha plus the evidence for
// CF1..CF5, DIV and TAIL.  Levels are 1-based: level n refers to indices[n-1].
class SubsequenceCertificate {
 public:
  SubsequenceCertificate(PartialQuotients alpha, std::vector<std::size_t> indices,
                         std::vector<Convergent> terms, std::vector<NormEnclosure> norms,
                         Integer next_full_continuant, std::size_t horizon);

  const PartialQuotients& alpha() const { return alpha_; }
  const std::vector<std::size_t>& indices() const { return indices_; }
  std::size_t levels() const { return terms_.size(); }
  std::size_t horizon() const { return horizon_; }
  const Convergent& term(std::size_t level) const;
  const Integer& q(std::size_t level) const { return term(level).q; }
  const Integer& p(std::size_t level) const { return term(level).p; }
  Rational convergent_value(std::size_t level) const { return term(level).value(); }
  const NormEnclosure& norm(std::size_t level) const;
  const std::vector<NormEnclosure>& norms() const { return norms_; }
  std::vector<Integer> q_list() const;
  // First continuant after the last index: lower bound for any later chain term.
  const Integer& next_full_continuant() const { return next_full_; }

  const std::map<std::string, ConditionCheck>& checks() const { return checks_; }
  bool has_check(const std::string& name) const { return checks_.count(name) != 0; }
  const ConditionCheck& check(const std::string& name) const;
  CheckStatus status(const std::string& name) const { return check(name).status; }
  bool any_failure() const;
  std::optional<std::string> first_failure() const;
  bool all_pass() const;
  // Throws Undecidable if the condition is undecided and Error if it failed.
  void require(const std::string& name) const;
  // 2 q_n | q_{n+1} for every consecutive pair (independent of the stored checks).
  bool divisible() const;

  void set_check(ConditionCheck c) { checks_[c.name] = std::move(c); }

 private:
  PartialQuotients alpha_;
  std::vector<std::size_t> indices_;
  std::vector<Convergent> terms_;
  std::vector<NormEnclosure> norms_;
  Integer next_full_;
  std::size_t horizon_;
  std::map<std::string, ConditionCheck> checks_;
};

// Relabel without running any checks.
SubsequenceCertificate relabel(const PartialQuotients& alpha, const std::vector<std::size_t>& indices,
                               std::size_t slack = 8);

SubsequenceCertificate certify(const PartialQuotients& alpha, const std::vector<std::size_t>& indices,
                               std::size_t depth_bound, unsigned p_max = 3,
                               const CertifyOptions& options = {});

struct GreedyOptions {
  std::size_t slack = 8;
  unsigned p_max = 3;
  std::size_t min_length = 3;
};

SubsequenceCertificate greedy_select(const PartialQuotients& alpha, std::size_t depth_bound,
                                     bool want_divisibility, const GreedyOptions& options = {});

// Sum_{i>=1} (m + i)^t / 2^i, exact.
Rational shifted_power_series(const Integer& m, unsigned t);

}  // namespace cylinder
