#include "cylinder/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cylinder/errors.hpp"

namespace cylinder {

json to_json(const Integer& v) { return v.get_str(); }

json to_json(const Rational& v) { return {{"num", v.num().get_str()}, {"den", v.den().get_str()}}; }

json to_json(const RationalInterval& v) { return {{"lo", to_json(v.lo())}, {"hi", to_json(v.hi())}}; }

namespace {

json integer_array(const std::vector<Integer>& v) {
  json a = json::array();
  for (const auto& x : v) {
    const auto small = to_int64(x);
    if (small) {
      a.push_back(*small);
    } else {
      a.push_back(x.get_str());
    }
  }
  return a;
}

}  // namespace

json to_json(const PartialQuotients& pq) {
  return {{"head", integer_array(pq.head())},
          {"periodic_tail", pq.periodic_tail() ? integer_array(*pq.periodic_tail()) : json(nullptr)}};
}

json to_json(const Convergent& c) { return {{"index", c.index}, {"p", to_json(c.p)}, {"q", to_json(c.q)}}; }

json to_json(const Witness& w) {
  json j = {{"level", w.level},
            {"lhs", to_json(w.lhs)},
            {"relation", w.relation},
            {"rhs", to_json(w.rhs)},
            {"status", to_string(w.status)}};
  if (!w.note.empty()) j["note"] = w.note;
  return j;
}

json to_json(const ConditionCheck& c) {
  json j = {{"name", c.name}, {"status", to_string(c.status)}, {"witnesses", json::array()}};
  for (const auto& w : c.witnesses) j["witnesses"].push_back(to_json(w));
  if (!c.note.empty()) j["note"] = c.note;
  if (c.n_p) j["n_p"] = *c.n_p;
  return j;
}

json to_json(const SubsequenceCertificate& cert) {
  json j;
  j["alpha"] = to_json(cert.alpha());
  j["indices"] = cert.indices();
  j["horizon"] = cert.horizon();
  j["terms"] = json::array();
  for (std::size_t n = 1; n <= cert.levels(); ++n) {
    json t = to_json(cert.term(n));
    t["level"] = n;
    t["norm"] = to_json(cert.norm(n).value);
    j["terms"].push_back(t);
  }
  j["next_full_continuant"] = to_json(cert.next_full_continuant());
  j["checks"] = json::array();
  for (const auto& [name, c] : cert.checks()) j["checks"].push_back(to_json(c));
  j["all_pass"] = cert.all_pass();
  return j;
}

json to_json(const DivisibleAlpha& d) {
  const auto table = convergents(d.alpha, d.marked.empty() ? 0 : d.marked.back());
  json marked = json::array();
  for (const auto i : d.marked) marked.push_back({{"index", i}, {"q", to_json(table[i].q)}});
  return {{"alpha", to_json(d.alpha)}, {"marked", marked}};
}

json to_json(const ReturnStatistics& s) {
  return {{"n", s.n},
          {"q_next", to_json(s.q_next)},
          {"l1", to_json(s.l1_exact)},
          {"l2sq", to_json(s.l2sq_exact)},
          {"renyi_ratio_sq", to_json(s.renyi_ratio_sq)},
          {"return_sequence", to_json(s.return_sequence_value)},
          {"stirling_ratio", to_json(s.stirling_ratio)}};
}

json to_json(const IidCheck& c) {
  json patterns = json::object();
  for (const auto& [p, mu] : c.pattern_measures) patterns[std::to_string(p)] = to_json(mu);
  json walk = json::object();
  for (const auto& [m, mu] : c.walk_measures) walk[std::to_string(m)] = to_json(mu);
  return {{"uniform", c.uniform}, {"omega", to_json(c.omega)}, {"patterns", patterns}, {"walk", walk}};
}

json to_json(const CrossingStats& s) {
  return {{"pairs", s.pairs.size()},
          {"mean_crossings", s.mean_crossings},
          {"fraction_crossed", s.fraction_crossed},
          {"fraction_crossed_early", s.fraction_crossed_early}};
}

Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_number_unsigned()) return Integer(std::to_string(j.get<unsigned long long>()));
  if (j.is_string()) {
    Integer v;
    if (v.set_str(j.get<std::string>(), 10) != 0) throw ConfigError("not an integer: " + j.get<std::string>());
    return v;
  }
  throw ConfigError("expected an integer, got " + j.dump());
}

Rational rational_from_json(const json& j) {
  if (j.is_object()) {
    if (!j.contains("num") || !j.contains("den")) throw ConfigError("rational object needs num and den");
    const Integer den = integer_from_json(j.at("den"));
    if (den == 0) throw ConfigError("zero denominator");
    return {integer_from_json(j.at("num")), den};
  }
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }
  return Rational(integer_from_json(j));
}

PartialQuotients partial_quotients_from_json(const json& j) {
  try {
    if (j.is_string()) return PartialQuotients::preset(j.get<std::string>());
    if (!j.is_object() || !j.contains("head")) throw ConfigError("partial quotients need a head array");
    std::vector<Integer> head;
    for (const auto& v : j.at("head")) head.push_back(integer_from_json(v));
    std::optional<std::vector<Integer>> tail;
    if (j.contains("periodic_tail") && !j.at("periodic_tail").is_null()) {
      tail.emplace();
      for (const auto& v : j.at("periodic_tail")) tail->push_back(integer_from_json(v));
    }
    return PartialQuotients(std::move(head), std::move(tail));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  } catch (const json::exception& e) {
    throw ConfigError(e.what());
  }
}

std::vector<PeriodicStep> periodic_steps_from_json(const json& j) {
  if (!j.is_array()) throw ConfigError("periodic steps must be an array");
  std::vector<PeriodicStep> out;
  for (const auto& e : j) {
    const auto u = to_int64(integer_from_json(e.at("period")));
    if (!u) throw ConfigError("period out of range");
    out.emplace_back(*u, rational_from_json(e.at("offset")));
  }
  return out;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw Error("CsvTable: row width does not match header");
  rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
  std::ostringstream os;
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return os.str();
}

json CsvTable::records() const {
  json out = json::array();
  for (const auto& r : rows_) {
    json o = json::object();
    for (std::size_t i = 0; i < r.size(); ++i) o[header_[i]] = r[i];
    out.push_back(o);
  }
  return out;
}

std::string double_cell(const Rational& v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v.to_double());
  return buf;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw Error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace cylinder
