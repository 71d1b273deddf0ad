#include "cylinder/experiments.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "cylinder/cocycle.hpp"
#include "cylinder/errors.hpp"
#include "cylinder/residue_counting.hpp"
#include "cylinder/roof.hpp"
#include "cylinder/selector.hpp"
#include "cylinder/walk.hpp"

namespace cylinder {

namespace {

constexpr long kBruteCap = 1L << 17;  // q_{n+1} bound for orbit enumeration in the pipeline
constexpr long kPiecewiseCap = 1L << 22;
constexpr long kPruneCap = 1L << 22;

std::size_t get_size(const json& j, const char* key, std::size_t fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer() && !v.is_number_unsigned()) throw ConfigError(std::string(key) + " must be an integer");
  if (v.is_number_integer() && v.get<long long>() < 0) throw ConfigError(std::string(key) + " must be >= 0");
  return v.get<std::size_t>();
}

std::vector<Integer> integer_list(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw ConfigError(std::string(what) + " must be a nonempty array");
  std::vector<Integer> out;
  for (const auto& v : j) out.push_back(integer_from_json(v));
  return out;
}

DivisibleRecipe recipe_from_json(const json& j) {
  DivisibleRecipe r = default_recipe();
  if (!j.is_object()) throw ConfigError("divisible recipe must be an object");
  if (j.contains("q_targets")) r.q_targets = integer_list(j.at("q_targets"), "q_targets");
  if (j.contains("min_quotient")) r.min_quotient = integer_list(j.at("min_quotient"), "min_quotient");
  if (j.contains("seed")) r.build.seed = integer_list(j.at("seed"), "seed");
  if (j.contains("tail")) r.build.tail = integer_list(j.at("tail"), "tail");
  if (j.contains("policy")) {
    const auto p = j.at("policy").get<std::string>();
    if (p == "certified") {
      r.build.policy = BoundPolicy::Certified;
    } else if (p == "as_given") {
      r.build.policy = BoundPolicy::AsGiven;
    } else {
      throw ConfigError("policy must be certified or as_given");
    }
  }
  return r;
}

std::string rat(const Rational& v) { return v.str(); }

}  // namespace

DivisibleRecipe default_recipe() {
  DivisibleRecipe r;
  r.q_targets = {Integer(1), Integer(1), Integer(1), Integer(1)};
  r.build.policy = BoundPolicy::Certified;
  return r;
}

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig c;
  try {
    if (j.contains("alpha")) {
      const auto& a = j.at("alpha");
      if (a.is_string() && a.get<std::string>() == "divisible") {
        c.recipe = default_recipe();
      } else if (a.is_object() && a.contains("divisible")) {
        c.recipe = recipe_from_json(a.at("divisible"));
      } else {
        c.alpha = partial_quotients_from_json(a);
        c.alpha_label = a.is_string() ? a.get<std::string>() : "custom";
      }
    } else {
      c.recipe = default_recipe();
    }
    c.depth = get_size(j, "depth", 0);
    if (j.contains("subsequence")) {
      const auto& s = j.at("subsequence");
      if (s.is_string()) {
        if (s.get<std::string>() != "auto") throw ConfigError("subsequence must be \"auto\" or an index array");
      } else if (s.is_array()) {
        c.subsequence.emplace();
        for (const auto& v : s) c.subsequence->push_back(v.get<std::size_t>());
      } else {
        throw ConfigError("subsequence must be \"auto\" or an index array");
      }
    }
    if (j.contains("levels")) {
      c.levels.clear();
      for (const auto& v : j.at("levels")) c.levels.push_back(v.get<std::size_t>());
    }
    c.samples = get_size(j, "samples", c.samples);
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("output")) c.output = j.at("output").get<std::string>();
    if (j.contains("format")) {
      const auto f = j.at("format").get<std::string>();
      if (f == "csv") {
        c.format = OutputFormat::Csv;
      } else if (f == "json") {
        c.format = OutputFormat::Json;
      } else {
        throw ConfigError("format must be csv or json");
      }
    }
    c.p_max = static_cast<unsigned>(get_size(j, "p_max", c.p_max));
    if (j.contains("want_divisibility")) c.want_divisibility = j.at("want_divisibility").get<bool>();
    if (j.contains("walk")) {
      c.walk_pairs = get_size(j.at("walk"), "pairs", c.walk_pairs);
      c.walk_horizon = get_size(j.at("walk"), "horizon", c.walk_horizon);
    }
    c.profile_level = static_cast<unsigned>(get_size(j, "profile_level", 0));
  } catch (const json::exception& e) {
    throw ConfigError(e.what());
  }
  if (c.levels.empty()) throw ConfigError("levels must be nonempty");
  if (std::find(c.levels.begin(), c.levels.end(), 0U) != c.levels.end()) throw ConfigError("levels start at 1");
  if (c.p_max < 1) throw ConfigError("p_max must be >= 1");
  const std::size_t top = *std::max_element(c.levels.begin(), c.levels.end());
  if (c.subsequence && c.subsequence->size() < top + 1) {
    throw ConfigError("subsequence needs at least max(levels) + 1 indices");
  }
  if (c.recipe && c.recipe->q_targets.size() < top + 1) {
    throw ConfigError("construction needs at least max(levels) + 1 q_targets");
  }
  if (!c.recipe && c.depth != 0 && c.depth < top + 1) throw ConfigError("depth must be >= max(levels) + 1");
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return parse_config(j);
}

std::optional<std::string> PipelineResult::first_failure() const {
  for (const auto& g : gates) {
    if (!g.passed) return g.name;
  }
  return std::nullopt;
}

std::filesystem::path write_table(const std::filesystem::path& dir, const std::string& stem, const CsvTable& t,
                                  OutputFormat format) {
  if (format == OutputFormat::Json) {
    const auto path = dir / (stem + ".json");
    write_file_atomic(path, t.records().dump(2) + "\n");
    return path;
  }
  const auto path = dir / (stem + ".csv");
  write_file_atomic(path, t.str());
  return path;
}

CsvTable gaussian_profile_table(unsigned n) {
  CsvTable t({"m", "exact_ratio", "exact_ratio_double", "gaussian_lo", "gaussian_hi"});
  for (const auto& row : normalized_average_profile(n)) {
    t.add_row({std::to_string(row.m), rat(row.exact_ratio), double_cell(row.exact_ratio), rat(row.gaussian.lo()),
               rat(row.gaussian.hi())});
  }
  return t;
}

std::filesystem::path emit_gaussian_profile(const ExperimentConfig& config) {
  const unsigned n = config.profile_level
                         ? config.profile_level
                         : static_cast<unsigned>(*std::max_element(config.levels.begin(), config.levels.end()));
  return write_table(config.output, "profile", gaussian_profile_table(n), config.format);
}

ResolvedAlpha resolve_alpha(const ExperimentConfig& config) {
  ResolvedAlpha r{config.alpha, std::nullopt};
  if (config.recipe) {
    r.built = build_divisible_alpha(config.recipe->q_targets, config.recipe->min_quotient, config.recipe->build);
    r.alpha = r.built->alpha;
  }
  return r;
}

json to_json(const ResolvedAlpha& a, const std::string& label) {
  if (a.built) return to_json(*a.built);
  return {{"alpha", to_json(a.alpha)}, {"label", label}};
}

SubsequenceCertificate certify_config(const ExperimentConfig& config, const ResolvedAlpha& a) {
  const std::size_t top = *std::max_element(config.levels.begin(), config.levels.end());
  std::size_t depth = config.depth;
  if (depth == 0) depth = a.built ? a.built->marked.back() + 4 : 40;
  const CertifyOptions co{config.want_divisibility, 8};
  if (config.subsequence) return certify(a.alpha, *config.subsequence, depth, config.p_max, co);
  if (a.built) return certify(a.alpha, a.built->marked, depth, config.p_max, co);
  GreedyOptions go;
  go.p_max = config.p_max;
  go.min_length = top + 1;
  return greedy_select(a.alpha, depth, config.want_divisibility, go);
}

TableGate roof_table(const SubsequenceCertificate& cert, const std::vector<std::size_t>& levels) {
  TableGate g{CsvTable({"n", "q_next", "pieces", "integral"})};
  for (const auto n : levels) {
    if (cert.q(n + 1) > Integer(kPiecewiseCap)) {
      g.table.add_row({std::to_string(n), cert.q(n + 1).get_str(), "", "skipped"});
      continue;
    }
    const auto f = TruncatedRoof(cert, n, RoofVariant::Rational).piecewise();
    const Rational integral = f.integral();
    g.ok = g.ok && integral == Rational(0);
    g.table.add_row({std::to_string(n), cert.q(n + 1).get_str(), std::to_string(f.size()), rat(integral)});
  }
  return g;
}

TableGate distribution_table(const SubsequenceCertificate& cert, const std::vector<std::size_t>& levels) {
  TableGate g{CsvTable({"n", "m", "measure", "measure_double", "count"})};
  for (const auto n : levels) {
    const auto dist = return_distribution_exact(cert, n);
    Rational total(0);
    for (const auto& [m, ls] : dist) {
      const Rational expect(binomial(n, static_cast<unsigned long>((static_cast<std::int64_t>(n) + m) / 2)), pow2(n));
      g.ok = g.ok && ls.measure == expect &&
             ls.value == return_count_formula(static_cast<unsigned>(n), cert.q(n + 1), m);
      total += ls.measure;
      g.table.add_row({std::to_string(n), std::to_string(m), rat(ls.measure), double_cell(ls.measure), rat(ls.value)});
    }
    g.ok = g.ok && total == Rational(1) && dist.size() == n + 1;
  }
  return g;
}

TableGate returns_table(const SubsequenceCertificate& cert, const std::vector<std::size_t>& levels,
                        std::size_t samples) {
  TableGate g{CsvTable({"n", "x", "m_n", "brute_count", "formula_count", "in_lambda_n", "exact_alpha_count"})};
  std::size_t skipped = 0;
  const auto q = cert.q_list();
  for (const auto n : levels) {
    if (cert.q(n + 1) > Integer(kBruteCap)) {
      ++skipped;
      continue;
    }
    const Integer plateaux = 2 * cert.q(n);
    const std::size_t count = std::min<std::size_t>(samples, plateaux.get_ui());
    for (std::size_t s = 0; s < count; ++s) {
      // midpoints of evenly spaced plateaux of level n
      const Integer i = plateaux * Integer(static_cast<long>(s)) / Integer(static_cast<long>(count));
      const CirclePoint x(Rational(2 * i + 1, 2 * plateaux));
      const auto m = walk_value(q, n, x);
      const Rational formula = return_count_formula(static_cast<unsigned>(n), cert.q(n + 1), m);
      const auto brute = return_count_bruteforce(cert, RoofVariant::Rational, n, x);
      g.ok = g.ok && Rational(brute.count) == formula;
      std::string in_lambda = "undecided";
      std::string exact_count;
      try {
        const auto f = return_count_bruteforce(cert, RoofVariant::ExactAlpha, n, x);
        in_lambda = f.in_lambda && *f.in_lambda ? "1" : "0";
        exact_count = f.count.get_str();
        if (f.in_lambda && *f.in_lambda) g.ok = g.ok && f.count == brute.count;
      } catch (const EnclosureTooWide&) {
      } catch (const Undecidable&) {
      }
      g.table.add_row({std::to_string(n), rat(x.value()), std::to_string(m), brute.count.get_str(), rat(formula),
                       in_lambda, exact_count});
    }
  }
  if (skipped) g.detail = std::to_string(skipped) + " levels above the enumeration cap";
  return g;
}

TableGate stats_table(const SubsequenceCertificate& cert, const std::vector<std::size_t>& levels) {
  TableGate g{CsvTable(
      {"n", "q_next", "l1", "l1_double", "l2sq", "renyi_ratio_sq", "stirling_ratio_lo", "stirling_ratio_hi"})};
  for (const auto n : levels) {
    const auto st = renyi_statistics(static_cast<unsigned>(n), cert.q(n + 1));
    Rational l1(0);
    Rational l2(0);
    for (const auto& [m, ls] : return_distribution_exact(cert, n)) {
      l1 += ls.measure * ls.value;
      l2 += ls.measure * ls.value * ls.value;
    }
    g.ok = g.ok && l1 == st.l1_exact && l2 == st.l2sq_exact;
    g.table.add_row({std::to_string(n), st.q_next.get_str(), rat(st.l1_exact), double_cell(st.l1_exact),
                     rat(st.l2sq_exact), rat(st.renyi_ratio_sq), rat(st.stirling_ratio.lo()),
                     rat(st.stirling_ratio.hi())});
  }
  return g;
}

TableGate lln_table(const SubsequenceCertificate& cert, const std::vector<std::size_t>& levels,
                    std::size_t samples, std::optional<std::uint64_t> seed, unsigned threads) {
  const Rational avg = lln_partition_average(cert, levels);
  TableGate g{CsvTable({"sample", "estimate", "estimate_double"})};
  g.detail = "partition average " + avg.str();
  if (samples > 0) {
    if (!seed) throw ConfigError("seed required when samples > 0");
    const auto mc = lln_monte_carlo(cert, levels, samples, *seed, threads);
    for (std::size_t i = 0; i < mc.samples.size(); ++i) {
      g.table.add_row({std::to_string(i), rat(mc.samples[i]), double_cell(mc.samples[i])});
    }
    g.detail += ", sample mean " + double_cell(mc.mean);
  }
  g.ok = avg == Rational(1);
  return g;
}

std::vector<std::int64_t> small_prefix(const std::vector<Integer>& q) {
  std::vector<std::int64_t> out;
  for (const auto& v : q) {
    const auto s = to_int64(v);
    if (!s || *s > kPruneCap) break;
    out.push_back(*s);
  }
  return out;
}

TableGate prune_table(const std::vector<std::int64_t>& q, OnDegenerate on_degenerate) {
  TableGate g{CsvTable({"level", "q", "kept", "omega", "omega_double", "lower_bound", "uniform"})};
  if (q.empty()) return g;
  const auto chain = build_pruned_chain(q, q.size(), on_degenerate);
  for (std::size_t n = 1; n <= chain.size(); ++n) {
    const auto iid = verify_iid_on_omega(chain, n);
    const Rational lb = omega_lower_bound(q, n);
    g.ok = g.ok && iid.uniform && iid.omega >= lb;
    g.table.add_row({std::to_string(n), std::to_string(q[n - 1]), std::to_string(chain[n - 1].kept.size()),
                     rat(iid.omega), double_cell(iid.omega), rat(lb), iid.uniform ? "1" : "0"});
  }
  return g;
}

CsvTable kept_intervals_table(const std::vector<PrunedFamily>& chain) {
  CsvTable t({"level", "index", "lo", "hi", "pattern"});
  for (const auto& fam : chain) {
    for (std::size_t i = 0; i < fam.kept.size(); ++i) {
      const Integer two_q(static_cast<long>(2 * fam.q));
      std::string pat;
      for (std::size_t j = 0; j < fam.level; ++j) pat += (fam.pattern[i] >> j) & 1 ? '-' : '+';
      t.add_row({std::to_string(fam.level), std::to_string(fam.kept[i]), rat(Rational(Integer(fam.kept[i]), two_q)),
                 rat(Rational(Integer(fam.kept[i] + 1), two_q)), pat});
    }
  }
  return t;
}

CsvTable crossings_table(const CrossingStats& st) {
  CsvTable t({"pair", "crossings", "first_crossing"});
  for (std::size_t i = 0; i < st.pairs.size(); ++i) {
    t.add_row({std::to_string(i), std::to_string(st.pairs[i].crossings),
               st.pairs[i].first ? std::to_string(*st.pairs[i].first) : ""});
  }
  return t;
}

json crossings_summary(const CrossingStats& st, std::size_t horizon, std::size_t early_horizon) {
  return {{"stats", to_json(st)},
          {"expected_crossings", double_cell(expected_crossings(horizon))},
          {"expected_fraction_crossed_early", double_cell(Rational(1) - no_crossing_probability(early_horizon))}};
}

namespace {

class Pipeline {
 public:
  explicit Pipeline(const ExperimentConfig& c) : c_(c) {}

  PipelineResult run() {
    try {
      stage_alpha();
      stage_certify();
      if (!failed()) stage(roof_table(*cert_, c_.levels), "roof", "roof_zero_mean");
      if (!failed()) stage(distribution_table(*cert_, c_.levels), "distribution", "distribution");
      if (!failed()) stage(returns_table(*cert_, c_.levels, c_.samples), "returns", "returns");
      if (!failed()) stage(stats_table(*cert_, c_.levels), "stats", "statistics");
      if (!failed()) stage(lln_table(*cert_, c_.levels, c_.samples, c_.seed, c_.threads), "lln", "lln_partition_average");
      if (!failed()) stage_walk();
      if (!failed()) res_.files.push_back(emit_gaussian_profile(c_));
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      gate("exception", false, e.what());
    }
    res_.exit_code = failed() ? 1 : 0;
    json summary = {{"exit_code", res_.exit_code}, {"gates", json::array()}, {"files", json::array()}};
    for (const auto& g : res_.gates) summary["gates"].push_back({{"name", g.name}, {"passed", g.passed}, {"detail", g.detail}});
    if (const auto f = res_.first_failure()) summary["first_failure"] = *f;
    for (const auto& f : res_.files) summary["files"].push_back(f.filename().string());
    const auto path = c_.output / "summary.json";
    write_file_atomic(path, summary.dump(2) + "\n");
    res_.files.push_back(path);
    return res_;
  }

 private:
  bool failed() const { return res_.first_failure().has_value(); }

  void gate(std::string name, bool ok, std::string detail = {}) {
    res_.gates.push_back({std::move(name), ok, std::move(detail)});
  }

  void write_json(const std::string& stem, const json& j) {
    const auto path = c_.output / (stem + ".json");
    write_file_atomic(path, j.dump(2) + "\n");
    res_.files.push_back(path);
  }

  void table(const std::string& stem, const CsvTable& t) { res_.files.push_back(write_table(c_.output, stem, t, c_.format)); }

  void stage(const TableGate& g, const std::string& stem, const std::string& gate_name) {
    table(stem, g.table);
    gate(gate_name, g.ok, g.detail);
  }

  std::size_t top_level() const { return *std::max_element(c_.levels.begin(), c_.levels.end()); }

  void stage_alpha() {
    alpha_ = resolve_alpha(c_);
    write_json("alpha", to_json(*alpha_, c_.alpha_label));
  }

  void stage_certify() {
    std::optional<SubsequenceCertificate> cert;
    try {
      cert = certify_config(c_, *alpha_);
    } catch (const NoSubsequenceFound& e) {
      gate("certify", false, e.what());
      return;
    }
    write_json("certificate", to_json(*cert));
    if (const auto f = cert->first_failure()) {
      gate("certify", false, "condition " + *f + " fails");
      return;
    }
    if (cert->levels() < top_level() + 1) {
      gate("certify", false, "chain shorter than max(levels) + 1");
      return;
    }
    std::string undecided;
    for (const auto& [name, check] : cert->checks()) {
      if (check.status == CheckStatus::Undecided) undecided += (undecided.empty() ? "" : ",") + name;
    }
    gate("certify", true, undecided.empty() ? "all pass" : "undecided at horizon: " + undecided);
    cert_ = std::move(cert);
  }

  void stage_walk() {
    stage(prune_table(small_prefix(cert_->q_list()), OnDegenerate::KeepEmpty), "walk_prune", "walk_independence");
    if (c_.walk_pairs == 0) return;
    if (!c_.seed) throw ConfigError("seed required for walk crossings");
    CrossingOptions o;
    o.pairs = c_.walk_pairs;
    o.horizon = c_.walk_horizon;
    o.early_horizon = std::min<std::size_t>(200, o.horizon);
    o.seed = *c_.seed;
    o.threads = c_.threads;
    const auto st = level_crossing_mc(dyadic_chain(o.horizon), o);
    table("walk_crossings", crossings_table(st));
    write_json("walk_crossings_summary", crossings_summary(st, o.horizon, o.early_horizon));
  }

  const ExperimentConfig& c_;
  PipelineResult res_;
  std::optional<ResolvedAlpha> alpha_;
  std::optional<SubsequenceCertificate> cert_;
};

}  // namespace

PipelineResult run_pipeline(const ExperimentConfig& config) {
  std::filesystem::create_directories(config.output);
  return Pipeline(config).run();
}

}  // namespace cylinder
