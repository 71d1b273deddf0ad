#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cylinder/continued_fraction.hpp"
#include "cylinder/divisibility.hpp"
#include "cylinder/selector.hpp"
#include "cylinder/serialize.hpp"
#include "cylinder/walk.hpp"

namespace cylinder {

enum class OutputFormat { Csv, Json };

struct DivisibleRecipe {
  std::vector<Integer> q_targets;
  std::vector<Integer> min_quotient{Integer(1)};
  BuildOptions build;
};

struct ExperimentConfig {
  std::string alpha_label = "divisible";
  PartialQuotients alpha;
  std::optional<DivisibleRecipe> recipe;          // set when alpha is constructed
  std::size_t depth = 0;                          // 0: derived from the construction
  std::optional<std::vector<std::size_t>> subsequence;  // nullopt: "auto" (or the marked set)
  std::vector<std::size_t> levels{1, 2, 3};
  std::size_t samples = 64;
  std::optional<std::uint64_t> seed;
  std::filesystem::path output = "out";
  OutputFormat format = OutputFormat::Csv;
  unsigned p_max = 3;
  bool want_divisibility = true;
  std::size_t walk_pairs = 200;
  std::size_t walk_horizon = 2000;
  unsigned profile_level = 0;  // 0: the largest requested level
  unsigned threads = 1;
};

// Parses and validates; throws ConfigError.
ExperimentConfig parse_config(const json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
// Default construction: seed (1,1), certified bounds, four marked continuants.
DivisibleRecipe default_recipe();

struct GateResult {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct PipelineResult {
  int exit_code = 0;
  std::vector<GateResult> gates;
  std::vector<std::filesystem::path> files;
  std::optional<std::string> first_failure() const;
};

PipelineResult run_pipeline(const ExperimentConfig& config);

// The expansion named by the config, built when it is a construction recipe.
struct ResolvedAlpha {
  PartialQuotients alpha;
  std::optional<DivisibleAlpha> built;
};
ResolvedAlpha resolve_alpha(const ExperimentConfig& config);
json to_json(const ResolvedAlpha& a, const std::string& label);

// Explicit indices, else the marked continuants, else greedy selection.  Depth 0 means
// marked.back() + 4 for constructions and 40 otherwise.  Throws NoSubsequenceFound.
SubsequenceCertificate certify_config(const ExperimentConfig& config, const ResolvedAlpha& a);

// One pipeline stage: its table and whether its invariant held.
struct TableGate {
  explicit TableGate(CsvTable t) : table(std::move(t)) {}
  CsvTable table;
  bool ok = true;
  std::string detail;
};

TableGate roof_table(const SubsequenceCertificate& cert, const std::vector<std::size_t>& levels);
TableGate distribution_table(const SubsequenceCertificate& cert, const std::vector<std::size_t>& levels);
// Brute force vs formula at `samples` plateau midpoints per level (levels with q_{n+1} > 2^17 skipped).
TableGate returns_table(const SubsequenceCertificate& cert, const std::vector<std::size_t>& levels,
                        std::size_t samples);
TableGate stats_table(const SubsequenceCertificate& cert, const std::vector<std::size_t>& levels);
TableGate lln_table(const SubsequenceCertificate& cert, const std::vector<std::size_t>& levels,
                    std::size_t samples, std::optional<std::uint64_t> seed, unsigned threads);

// Leading chain terms that fit the pruning enumeration (q <= 2^22).
std::vector<std::int64_t> small_prefix(const std::vector<Integer>& q);
TableGate prune_table(const std::vector<std::int64_t>& q, OnDegenerate on_degenerate);
CsvTable kept_intervals_table(const std::vector<PrunedFamily>& chain);
CsvTable crossings_table(const CrossingStats& st);
json crossings_summary(const CrossingStats& st, std::size_t horizon, std::size_t early_horizon);

// m, exact_ratio (num/den and double), gaussian_lo, gaussian_hi.
CsvTable gaussian_profile_table(unsigned n);
std::filesystem::path emit_gaussian_profile(const ExperimentConfig& config);

// Writes a table in the configured format: <stem>.csv or <stem>.json.
std::filesystem::path write_table(const std::filesystem::path& dir, const std::string& stem, const CsvTable& t,
                                  OutputFormat format);

}  // namespace cylinder
