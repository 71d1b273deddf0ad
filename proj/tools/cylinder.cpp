// cylinder: command-line front end for the exact cylinder-flow toolkit.
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cylinder/cocycle.hpp"
#include "cylinder/continued_fraction.hpp"
#include "cylinder/divisibility.hpp"
#include "cylinder/errors.hpp"
#include "cylinder/experiments.hpp"
#include "cylinder/residue_counting.hpp"
#include "cylinder/roof.hpp"
#include "cylinder/selector.hpp"
#include "cylinder/serialize.hpp"
#include "cylinder/walk.hpp"

using namespace cylinder;
namespace fs = std::filesystem;

namespace {

constexpr int kExitInvariant = 1;
constexpr int kExitConfig = 2;

struct Globals {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string format;
  std::optional<std::size_t> depth;
  std::optional<unsigned> p_max;
  std::vector<std::size_t> levels;
};

class Invariant : public Error {
 public:
  using Error::Error;
};

std::vector<Integer> to_integers(const std::vector<std::string>& v) {
  std::vector<Integer> out;
  for (const auto& s : v) {
    try {
      out.push_back(make_integer(s));
    } catch (const std::exception&) {
      throw ConfigError("not an integer: " + s);
    }
  }
  return out;
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
}

json load_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::stringstream s;
  s << in.rdbuf();
  return parse_json_text(s.str());
}

// Preset name, inline JSON or a path to a JSON file.
PartialQuotients alpha_from_spec(const std::string& spec) {
  if (!spec.empty() && (spec.front() == '{' || spec.front() == '"')) {
    return partial_quotients_from_json(parse_json_text(spec));
  }
  if (fs::exists(spec)) return partial_quotients_from_json(load_json_file(spec));
  return partial_quotients_from_json(json(spec));
}

unsigned lln_threads() {
  const char* env = std::getenv("CYLINDER_LLN_THREADS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 1024) throw ConfigError("CYLINDER_LLN_THREADS must be an integer in 1..1024");
  return static_cast<unsigned>(v);
}

ExperimentConfig make_config(const Globals& g) {
  ExperimentConfig c = g.config.empty() ? parse_config(json::object()) : load_config(g.config);
  if (g.seed) c.seed = g.seed;
  if (g.depth) c.depth = *g.depth;
  if (g.p_max) c.p_max = *g.p_max;
  if (!g.out.empty()) c.output = g.out;
  if (!g.format.empty()) c.format = g.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
  if (!g.levels.empty()) c.levels = g.levels;
  c.threads = lln_threads();
  return c;
}

void emit_json(const Globals& g, const std::string& stem, const json& j) {
  if (g.out.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  fs::create_directories(g.out);
  const auto path = fs::path(g.out) / (stem + ".json");
  write_file_atomic(path, j.dump(2) + "\n");
  std::cout << path.string() << "\n";
}

void emit_table(const Globals& g, const std::string& stem, const CsvTable& t) {
  const bool as_json = g.format == "json";
  if (g.out.empty()) {
    std::cout << (as_json ? t.records().dump(2) + "\n" : t.str());
    return;
  }
  fs::create_directories(g.out);
  std::cout << write_table(g.out, stem, t, as_json ? OutputFormat::Json : OutputFormat::Csv).string() << "\n";
}

void emit_gate(const Globals& g, const std::string& stem, const TableGate& t, const std::string& what) {
  emit_table(g, stem, t.table);
  if (!t.detail.empty()) std::cerr << what << ": " << t.detail << "\n";
  if (!t.ok) throw Invariant(what + " invariant violated");
}

SubsequenceCertificate certificate_for(const ExperimentConfig& c) {
  const auto cert = certify_config(c, resolve_alpha(c));
  if (const auto f = cert.first_failure()) throw Invariant("certification: condition " + *f + " fails");
  const std::size_t top = *std::max_element(c.levels.begin(), c.levels.end());
  if (cert.levels() < top + 1) throw Invariant("certification: chain shorter than max(levels) + 1");
  return cert;
}

RoofVariant variant_from(const std::string& v) {
  return v == "exact" ? RoofVariant::ExactAlpha : RoofVariant::Rational;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact arithmetic for cylinder flows over irrational rotations"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config, "experiment config (JSON)")->check(CLI::ExistingFile);
  app.add_option("--out", g.out, "output directory (default: stdout)");
  app.add_option("--seed", g.seed, "64-bit RNG seed");
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--depth", g.depth, "continued-fraction depth bound");
  app.add_option("--p-max", g.p_max, "largest exponent p for CF2/CF3")->check(CLI::Range(1U, 16U));
  app.add_option("--levels", g.levels, "walk levels n")->delimiter(',');

  // cf
  auto* cf = app.add_subcommand("cf", "convergents and exact norms");
  std::string cf_alpha = "golden";
  std::size_t cf_depth = 20;
  cf->add_option("--alpha", cf_alpha, "preset name, JSON expansion or JSON file");
  cf->add_option("depth", cf_depth, "largest index");

  // select
  auto* sel = app.add_subcommand("select", "certify a continuant subsequence");
  std::vector<std::size_t> sel_indices;
  bool sel_no_div = false;
  sel->add_option("--indices", sel_indices, "explicit indices (default: config or greedy)")->delimiter(',');
  sel->add_flag("--no-div", sel_no_div, "do not require divisibility");

  // divisible
  auto* div = app.add_subcommand("divisible", "construct a divisible expansion");
  std::vector<std::string> div_targets{"1", "1", "1", "1"};
  std::vector<std::string> div_min{"1"};
  std::vector<std::string> div_prefix{"1", "1"};
  std::string div_policy = "certified";
  div->add_option("--targets", div_targets, "q_targets")->delimiter(',');
  div->add_option("--min-quotient", div_min, "lower bounds for the quotient after each marked index")->delimiter(',');
  div->add_option("--prefix", div_prefix, "leading partial quotients a_1, a_2, ...")->delimiter(',');
  div->add_option("--policy", div_policy)->check(CLI::IsMember({"certified", "as_given"}));

  // roof
  auto* roof = app.add_subcommand("roof", "truncated roof functions");
  roof->require_subcommand(1);
  auto* roof_eval = roof->add_subcommand("eval", "phi_n(x) and m_n(x)");
  std::size_t roof_n = 1;
  std::string roof_x = "0";
  std::string roof_variant = "rational";
  roof_eval->add_option("--n", roof_n)->required();
  roof_eval->add_option("--x", roof_x, "point as a/b or a decimal")->required();
  roof_eval->add_option("--variant", roof_variant)->check(CLI::IsMember({"rational", "exact"}));
  auto* roof_measure = roof->add_subcommand("measure", "exact step-function form of phi~_n");
  roof_measure->add_option("--n", roof_n)->required();

  // count-pattern
  auto* cp = app.add_subcommand("count-pattern", "count sign patterns over a residue system");
  std::string cp_input;
  cp->add_option("input", cp_input, "JSON text or file: {steps, residues?, pattern?}")->required();

  // returns / stats / lln
  auto* ret = app.add_subcommand("returns", "brute-force return counts vs the closed form");
  std::size_t ret_samples = 64;
  ret->add_option("--samples", ret_samples, "points per level");
  auto* st = app.add_subcommand("stats", "exact L1/L2 norms and the Renyi ratio");
  auto* lln = app.add_subcommand("lln", "law of large numbers functional");
  std::size_t lln_samples = 0;
  lln->add_option("--samples", lln_samples, "Monte Carlo samples (needs --seed)");

  // walk
  auto* walk = app.add_subcommand("walk", "pruned families and level crossings");
  walk->require_subcommand(1);
  auto* prune = walk->add_subcommand("prune", "pruned plateau families");
  std::vector<std::int64_t> prune_q;
  prune->add_option("--q", prune_q, "chain q_1 < q_2 < ... (default: from config)")->delimiter(',');
  auto* cross = walk->add_subcommand("crossings", "level-crossing Monte Carlo on the dyadic chain");
  std::size_t cross_pairs = 1000;
  std::size_t cross_horizon = 10000;
  cross->add_option("--pairs", cross_pairs);
  cross->add_option("--horizon", cross_horizon);

  // pipeline
  auto* pipe = app.add_subcommand("pipeline", "end-to-end experiment");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (cf->parsed()) {
      const auto pq = alpha_from_spec(cf_alpha);
      constexpr std::size_t kSlack = 8;
      const std::size_t avail = pq.is_finite() ? std::min(cf_depth + kSlack + 2, *pq.last_index()) : cf_depth + kSlack + 2;
      const auto table = convergents(pq, avail);
      CsvTable t({"index", "a", "p", "q", "value", "norm_lo", "norm_hi", "norm_double"});
      for (std::size_t i = 0; i <= std::min(cf_depth, avail); ++i) {
        std::vector<std::string> row{std::to_string(i), pq[i].get_str(), table[i].p.get_str(), table[i].q.get_str(),
                                     table[i].value().str()};
        try {
          const auto norm = norm_enclosure(pq, table, i, kSlack);
          row.insert(row.end(), {norm.value.lo().str(), norm.value.hi().str(), double_cell(norm.value.hi())});
        } catch (const Error&) {
          row.insert(row.end(), {"", "", ""});  // beyond the available table depth
        }
        t.add_row(std::move(row));
      }
      emit_table(g, "cf", t);
    } else if (sel->parsed()) {
      auto c = make_config(g);
      if (!sel_indices.empty()) c.subsequence = sel_indices;
      if (sel_no_div) c.want_divisibility = false;
      const auto cert = certify_config(c, resolve_alpha(c));
      emit_json(g, "certificate", to_json(cert));
      if (const auto f = cert.first_failure()) throw Invariant("condition " + *f + " fails");
    } else if (div->parsed()) {
      BuildOptions o;
      o.seed = to_integers(div_prefix);
      o.policy = div_policy == "certified" ? BoundPolicy::Certified : BoundPolicy::AsGiven;
      const auto d = build_divisible_alpha(to_integers(div_targets), to_integers(div_min), o);
      emit_json(g, "divisible", to_json(d));
    } else if (roof_eval->parsed()) {
      auto c = make_config(g);
      c.levels = {roof_n};
      const auto cert = certificate_for(c);
      const CirclePoint x(Rational::parse(roof_x));
      const auto variant = variant_from(roof_variant);
      const std::int64_t phi = phi_truncated(cert, roof_n, variant, x);
      emit_json(g, "roof_eval", {{"n", roof_n}, {"x", to_json(x.value())}, {"variant", roof_variant},
                                 {"phi", phi}, {"m_n", walk_value(cert.q_list(), roof_n, x)}});
    } else if (roof_measure->parsed()) {
      auto c = make_config(g);
      c.levels = {roof_n};
      const auto cert = certificate_for(c);
      const auto f = TruncatedRoof(cert, roof_n, RoofVariant::Rational).piecewise();
      CsvTable t({"breakpoint", "breakpoint_double", "value"});
      for (const auto& p : f.pieces()) t.add_row({p.start.str(), double_cell(p.start), std::to_string(p.value)});
      emit_table(g, "roof_pieces", t);
      const Rational integral = f.integral();
      std::cerr << "pieces " << f.size() << ", integral " << integral.str() << ", L1 " << f.lp_pow(1).str() << "\n";
      if (integral != Rational(0)) throw Invariant("roof integral is not zero");
    } else if (cp->parsed()) {
      const json j = fs::exists(cp_input) ? load_json_file(cp_input) : parse_json_text(cp_input);
      if (!j.is_object() || !j.contains("steps")) throw ConfigError("count-pattern input needs \"steps\"");
      const auto psis = periodic_steps_from_json(j.at("steps"));
      if (psis.empty()) throw ConfigError("steps must be nonempty");
      std::vector<std::int64_t> R;
      if (j.contains("residues")) {
        R = j.at("residues").get<std::vector<std::int64_t>>();
      } else {
        for (std::int64_t i = 0; i < psis.front().period(); ++i) R.push_back(i);
      }
      json out = {{"u1", psis.front().period()}, {"counts", json::array()}};
      if (j.contains("pattern")) {
        const auto s = j.at("pattern").get<SignPattern>();
        out["counts"].push_back({{"pattern", s}, {"count", count_pattern(psis, R, s)}});
      } else {
        for (const auto& [s, n] : binary_tree_counts(psis, R)) {
          if (s.size() == psis.size()) out["counts"].push_back({{"pattern", s}, {"count", n}});
        }
      }
      emit_json(g, "count_pattern", out);
    } else if (ret->parsed()) {
      const auto c = make_config(g);
      emit_gate(g, "returns", returns_table(certificate_for(c), c.levels, ret_samples), "returns");
    } else if (st->parsed()) {
      const auto c = make_config(g);
      emit_gate(g, "stats", stats_table(certificate_for(c), c.levels), "stats");
    } else if (lln->parsed()) {
      const auto c = make_config(g);
      emit_gate(g, "lln", lln_table(certificate_for(c), c.levels, lln_samples, c.seed, c.threads), "lln");
    } else if (prune->parsed()) {
      std::vector<std::int64_t> q = prune_q;
      if (q.empty()) q = small_prefix(certificate_for(make_config(g)).q_list());
      const auto chain = build_pruned_chain(q, q.size(), OnDegenerate::KeepEmpty);
      emit_table(g, "walk_kept", kept_intervals_table(chain));
      emit_gate(g, "walk_prune", prune_table(q, OnDegenerate::KeepEmpty), "walk prune");
    } else if (cross->parsed()) {
      if (!g.seed) throw ConfigError("walk crossings needs --seed");
      CrossingOptions o;
      o.pairs = cross_pairs;
      o.horizon = cross_horizon;
      o.early_horizon = std::min<std::size_t>(200, cross_horizon);
      o.seed = *g.seed;
      o.threads = lln_threads();
      const auto s = level_crossing_mc(dyadic_chain(o.horizon), o);
      emit_table(g, "walk_crossings", crossings_table(s));
      emit_json(g, "walk_crossings_summary", crossings_summary(s, o.horizon, o.early_horizon));
    } else if (pipe->parsed()) {
      const auto c = make_config(g);
      const auto r = run_pipeline(c);
      for (const auto& gate : r.gates) {
        std::cout << (gate.passed ? "pass " : "FAIL ") << gate.name << (gate.detail.empty() ? "" : ": " + gate.detail)
                  << "\n";
      }
      if (const auto f = r.first_failure()) std::cerr << "first failure: " << *f << "\n";
      return r.exit_code;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Invariant& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariant;
  }
  return 0;
}
