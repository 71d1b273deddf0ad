#include "cylinder/walk.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <string>
#include <thread>

#include "cylinder/errors.hpp"
#include "cylinder/random.hpp"

namespace cylinder {

Rational PrunedFamily::omega_measure() const {
  return {Integer(static_cast<long>(kept.size())), Integer(static_cast<long>(2 * q))};
}

PlateauRef PrunedFamily::plateau(std::size_t i) const {
  const std::int64_t idx = kept.at(i);
  return {level, Integer(static_cast<long>(q)), Integer(static_cast<long>(idx)), idx % 2 == 0 ? 1 : -1};
}

namespace {

__extension__ typedef __int128 i128;

std::int64_t floor_div(i128 a, i128 b) {
  i128 d = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --d;
  return static_cast<std::int64_t>(d);
}

std::int64_t ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

// Keeps at most `pos` even and `neg` odd entries, dropping from the right.
std::size_t keep_leftmost(std::vector<std::int64_t>& c, std::size_t pos, std::size_t neg) {
  std::vector<std::int64_t> out;
  std::size_t p = 0;
  std::size_t m = 0;
  for (const auto v : c) {
    if (v % 2 == 0) {
      if (p < pos) out.push_back(v), ++p;
    } else if (m < neg) {
      out.push_back(v), ++m;
    }
  }
  const std::size_t removed = c.size() - out.size();
  c = std::move(out);
  return removed;
}

std::size_t count_even(const std::vector<std::int64_t>& c) {
  return static_cast<std::size_t>(std::count_if(c.begin(), c.end(), [](std::int64_t v) { return v % 2 == 0; }));
}

}  // namespace

std::vector<PrunedFamily> build_pruned_chain(const std::vector<std::int64_t>& q_list, std::size_t depth,
                                             OnDegenerate on_degenerate) {
  if (depth < 1 || depth > q_list.size()) throw Error("build_pruned_chain: depth outside chain");
  if (depth > 63) throw Error("build_pruned_chain: depth above 63");
  for (std::size_t j = 0; j < depth; ++j) {
    if (q_list[j] < 1) throw Error("build_pruned_chain: q must be positive");
    if (j > 0 && q_list[j] <= q_list[j - 1]) throw Error("build_pruned_chain: q must be increasing");
  }
  std::vector<PrunedFamily> chain;
  PrunedFamily first;
  first.level = 1;
  first.q = q_list[0];
  for (std::int64_t i = 0; i < 2 * first.q; ++i) {
    first.kept.push_back(i);
    first.pattern.push_back(i % 2 == 0 ? 0 : 1);
  }
  chain.push_back(std::move(first));

  for (std::size_t level = 2; level <= depth; ++level) {
    const PrunedFamily& parent = chain.back();
    PrunedFamily next;
    next.level = level;
    next.q = q_list[level - 1];
    const i128 qp = parent.q;
    const i128 qc = next.q;
    std::vector<std::vector<std::int64_t>> children(parent.kept.size());
    std::size_t global_min = std::numeric_limits<std::size_t>::max();
    for (std::size_t a = 0; a < parent.kept.size(); ++a) {
      const i128 i = parent.kept[a];
      // children c with [c, c+1)/(2 qc) inside [i, i+1)/(2 qp)
      const std::int64_t lo = ceil_div(i * qc, qp);
      const std::int64_t hi = floor_div((i + 1) * qc, qp);
      const std::int64_t touching = ceil_div((i + 1) * qc, qp) - floor_div(i * qc, qp);
      auto& c = children[a];
      for (std::int64_t v = lo; v < hi; ++v) c.push_back(v);
      next.removed_crossing += static_cast<std::size_t>(touching) - c.size();
      if (c.size() < 2) {
        if (on_degenerate == OnDegenerate::Throw) {
          throw DegenerateFamily("build_pruned_chain: parent plateau " + std::to_string(parent.kept[a]) +
                                 " of level " + std::to_string(parent.level) + " holds " +
                                 std::to_string(c.size()) + " child plateaux");
        }
        next.removed_equalize += c.size();
        c.clear();
      }
      const std::size_t pos = count_even(c);
      const std::size_t neg = c.size() - pos;
      const std::size_t keep = std::min(pos, neg);
      next.removed_equalize += keep_leftmost(c, keep, keep);
      global_min = std::min(global_min, c.size());
    }
    if (parent.kept.empty()) global_min = 0;
    next.per_parent = global_min;
    for (std::size_t a = 0; a < parent.kept.size(); ++a) {
      auto& c = children[a];
      next.removed_trim += keep_leftmost(c, global_min / 2, global_min / 2);
      for (const auto v : c) {
        next.kept.push_back(v);
        next.pattern.push_back(parent.pattern[a] | (v % 2 == 0 ? 0 : std::uint64_t{1} << (level - 1)));
      }
    }
    chain.push_back(std::move(next));
  }
  return chain;
}

Rational omega_lower_bound(const std::vector<std::int64_t>& q_list, std::size_t n) {
  if (n < 1 || n > q_list.size()) throw Error("omega_lower_bound: level outside chain");
  Rational s(1);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    s -= Rational(Integer(static_cast<long>(4 * q_list[j])), Integer(static_cast<long>(q_list[j + 1])));
  }
  return s;
}

IidCheck verify_iid_on_omega(const std::vector<PrunedFamily>& chain, std::size_t n) {
  if (n < 1 || n > chain.size()) throw Error("verify_iid_on_omega: level not built");
  if (n > 20) throw Error("verify_iid_on_omega: at most 2^20 patterns");
  const PrunedFamily& f = chain[n - 1];
  IidCheck out;
  out.omega = f.omega_measure();
  std::vector<std::int64_t> counts(std::size_t{1} << n, 0);
  for (const auto p : f.pattern) ++counts[p];
  const Rational cell(Integer(1), Integer(static_cast<long>(2 * f.q)));
  const Rational target = out.omega / Rational(pow2(n));
  out.uniform = true;
  for (std::uint64_t p = 0; p < counts.size(); ++p) {
    const Rational mu = cell * Rational(static_cast<long>(counts[p]));
    out.pattern_measures[p] = mu;
    if (mu != target) out.uniform = false;
    const auto negatives = static_cast<std::int64_t>(__builtin_popcountll(p));
    out.walk_measures[static_cast<std::int64_t>(n) - 2 * negatives] += mu;
  }
  return out;
}

std::vector<Integer> dyadic_chain(std::size_t length) {
  std::vector<Integer> q;
  for (std::size_t j = 0; j < length; ++j) q.push_back(pow2(j));
  return q;
}

namespace {

void summarize(CrossingStats& st, std::size_t early) {
  std::size_t total = 0;
  std::size_t crossed = 0;
  std::size_t crossed_early = 0;
  for (const auto& p : st.pairs) {
    total += p.crossings;
    if (p.first) {
      ++crossed;
      if (*p.first <= early) ++crossed_early;
    }
  }
  const double n = st.pairs.empty() ? 1.0 : static_cast<double>(st.pairs.size());
  st.mean_crossings = static_cast<double>(total) / n;
  st.fraction_crossed = static_cast<double>(crossed) / n;
  st.fraction_crossed_early = static_cast<double>(crossed_early) / n;
}

template <class PairFn>
CrossingStats run_pairs(const CrossingOptions& options, PairFn fn) {
  CrossingStats st;
  st.pairs.resize(options.pairs);
  auto work = [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) st.pairs[i] = fn(i);
  };
  const unsigned threads =
      std::max(1U, std::min<unsigned>(options.threads, static_cast<unsigned>(std::max<std::size_t>(options.pairs, 1))));
  if (threads == 1) {
    work(0, options.pairs);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (options.pairs + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t b = t * chunk;
      const std::size_t e = std::min(options.pairs, b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
  }
  summarize(st, options.early_horizon);
  return st;
}

// T_j(X / 2^B) = +1 iff floor(2 q_j X / 2^B) is even.
class DyadicWalker {
 public:
  DyadicWalker(const std::vector<Integer>& q, unsigned bits) : q_(q), bits_(bits) {
    for (const auto& v : q_) {
      const bool power = mpz_popcount(v.get_mpz_t()) == 1;
      shift_.push_back(power ? static_cast<long>(mpz_scan1(v.get_mpz_t(), 0)) : -1);
    }
  }

  int term(std::size_t j, const Integer& X) {
    if (shift_[j] >= 0) {
      const long bit = static_cast<long>(bits_) - 1 - shift_[j];
      if (bit < 0) return 1;
      return mpz_tstbit(X.get_mpz_t(), static_cast<mp_bitcnt_t>(bit)) ? -1 : 1;
    }
    tmp_ = q_[j] * X;
    return mpz_tstbit(tmp_.get_mpz_t(), bits_ - 1) ? -1 : 1;
  }

 private:
  const std::vector<Integer>& q_;
  unsigned bits_;
  std::vector<long> shift_;
  Integer tmp_;
};

}  // namespace

CrossingStats level_crossing_mc(const std::vector<Integer>& q_list, const CrossingOptions& options) {
  if (options.horizon > q_list.size()) throw Error("level_crossing_mc: horizon beyond chain");
  if (options.horizon == 0) throw Error("level_crossing_mc: horizon must be positive");
  const unsigned bits = static_cast<unsigned>(mpz_sizeinbase(q_list[options.horizon - 1].get_mpz_t(), 2)) + 64;
  return run_pairs(options, [&](std::size_t i) {
    std::mt19937_64 rng(derive_seed(options.seed, i));
    const Integer X = random_bits(rng, bits);
    const Integer Y = random_bits(rng, bits);
    DyadicWalker walker(q_list, bits);
    PairCrossing pc;
    std::int64_t d = 0;
    for (std::size_t n = 1; n <= options.horizon; ++n) {
      d += walker.term(n - 1, X) - walker.term(n - 1, Y);
      if (d == 0) {
        ++pc.crossings;
        if (!pc.first) pc.first = n;
      }
    }
    return pc;
  });
}

PairCrossing count_crossings(const std::vector<Integer>& q_list, const CirclePoint& x, const CirclePoint& y,
                             std::size_t horizon) {
  if (horizon > q_list.size()) throw Error("count_crossings: horizon beyond chain");
  PairCrossing pc;
  std::int64_t d = 0;
  for (std::size_t n = 1; n <= horizon; ++n) {
    d += haar_dilated(q_list[n - 1], x) - haar_dilated(q_list[n - 1], y);
    if (d == 0) {
      ++pc.crossings;
      if (!pc.first) pc.first = n;
    }
  }
  return pc;
}

CrossingStats abstract_walk_crossings(const CrossingOptions& options) {
  return run_pairs(options, [&](std::size_t i) {
    std::mt19937_64 rng(derive_seed(options.seed ^ 0xabcdefULL, i));
    PairCrossing pc;
    std::int64_t d = 0;
    std::uint64_t word = 0;
    unsigned left = 0;
    for (std::size_t n = 1; n <= options.horizon; ++n) {
      if (left == 0) word = rng(), left = 32;
      const int sx = (word & 1U) ? -1 : 1;
      const int sy = (word & 2U) ? -1 : 1;
      word >>= 2;
      --left;
      d += sx - sy;
      if (d == 0) {
        ++pc.crossings;
        if (!pc.first) pc.first = n;
      }
    }
    return pc;
  });
}

Rational expected_crossings(std::size_t horizon) {
  const auto N = static_cast<unsigned long>(horizon);
  return Rational(Integer(static_cast<long>(2 * N + 1)) * binomial(2 * N, N), pow2(2 * N)) - Rational(1);
}

Rational no_crossing_probability(std::size_t horizon) {
  const auto N = static_cast<unsigned long>(horizon);
  return {binomial(2 * N, N), pow2(2 * N)};
}

}  // namespace cylinder
