#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cylinder/cocycle.hpp"
#include "cylinder/continued_fraction.hpp"
#include "cylinder/divisibility.hpp"
#include "cylinder/exact.hpp"
#include "cylinder/residue_counting.hpp"
#include "cylinder/selector.hpp"
#include "cylinder/walk.hpp"

namespace cylinder {

using json = nlohmann::json;

json to_json(const Integer& v);  // decimal string
json to_json(const Rational& v);  // {"num": "...", "den": "..."}
json to_json(const RationalInterval& v);
json to_json(const PartialQuotients& pq);  // {"head": [...], "periodic_tail": [...] | null}
json to_json(const Convergent& c);
json to_json(const Witness& w);
json to_json(const ConditionCheck& c);
json to_json(const SubsequenceCertificate& cert);
json to_json(const DivisibleAlpha& d);
json to_json(const ReturnStatistics& s);
json to_json(const IidCheck& c);
json to_json(const CrossingStats& s);

// Accepts a decimal string or a JSON integer.
Integer integer_from_json(const json& j);
// Accepts {"num","den"}, "a/b", a decimal string or a JSON integer.
Rational rational_from_json(const json& j);
// Accepts {"head", "periodic_tail"} or a preset name string.
PartialQuotients partial_quotients_from_json(const json& j);
std::vector<PeriodicStep> periodic_steps_from_json(const json& j);  // [{"period":u,"offset":z}, ...]

// Comma-separated table with a fixed header; cells are written verbatim.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add_row(std::vector<std::string> cells);
  std::string str() const;
  json records() const;  // array of {header: cell}
  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// Convenience double column for a rational.
std::string double_cell(const Rational& v);

// Writes to a sibling temporary file and renames it over the target.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace cylinder
