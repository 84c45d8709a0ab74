#ifndef TWOFACTOR_IO_HPP_
#define TWOFACTOR_IO_HPP_

// Text and JSON forms of digraphs, series, recurrences and check reports.

#include <json.hpp>

#include <cstddef>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "twofactor/enumerate.hpp"
#include "twofactor/recurrence.hpp"
#include "twofactor/transfer.hpp"

namespace twofactor {

using Json = nlohmann::ordered_json;

template <typename Vertex>
Json to_json(const Digraph<Vertex>& d) {
  Json vertices = Json::array();
  for (const Vertex& v : d.vertices()) vertices.push_back(v.to_string());
  Json adj = Json::array();
  for (std::size_t i = 0; i < d.order(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < d.order(); ++j) row.push_back(d.entry(i, j));
    adj.push_back(std::move(row));
  }
  return Json{{"kind", to_string(d.kind())}, {"m", d.width()}, {"vertices", std::move(vertices)},
              {"adj", std::move(adj)}};
}

inline Json to_json(const Series& s) {
  Json values = Json::array();
  for (const BigInt& v : s.values) values.push_back(v.get_str());
  return Json{{"family", to_string(s.family)}, {"m", s.m}, {"p", s.p}, {"values", std::move(values)}};
}

inline Series series_from_json(const Json& j) {
  Series s;
  s.family = parse_family(j.at("family").get<std::string>());
  s.m = j.at("m").get<int>();
  s.p = j.at("p").get<int>();
  for (const auto& v : j.at("values")) s.values.emplace_back(v.get<std::string>());
  return s;
}

inline std::string to_bfile(const Series& s) {
  std::string out;
  for (std::size_t k = 0; k < s.values.size(); ++k) out += std::to_string(k + 1) + " " + s.values[k].get_str() + "\n";
  return out;
}

inline std::string to_csv(const Series& s) {
  if (s.values.empty()) return "";
  std::string out = "n,value\n";
  for (std::size_t k = 0; k < s.values.size(); ++k) out += std::to_string(k + 1) + "," + s.values[k].get_str() + "\n";
  return out;
}

struct BFile {
  std::vector<std::string> comments;  // text after '#', trimmed
  std::vector<std::pair<long long, BigInt>> terms;
};

/// "n value" lines; '#' comments and blank lines allowed. Malformed lines throw.
inline BFile parse_bfile(std::istream& in, const std::string& source = "b-file") {
  BFile out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      std::string text = line.substr(first + 1);
      const auto a = text.find_first_not_of(" \t");
      const auto b = text.find_last_not_of(" \t\r");
      out.comments.push_back(a == std::string::npos ? "" : text.substr(a, b - a + 1));
      continue;
    }
    std::istringstream fields(line);
    long long n = 0;
    std::string value, extra;
    if (!(fields >> n >> value) || (fields >> extra)) {
      throw std::runtime_error(source + ":" + std::to_string(lineno) + ": expected 'n value'");
    }
    BigInt v;
    if (v.set_str(value, 10) != 0) {
      throw std::runtime_error(source + ":" + std::to_string(lineno) + ": bad integer '" + value + "'");
    }
    out.terms.emplace_back(n, std::move(v));
  }
  return out;
}

inline Json to_json(const Recurrence& r) {
  Json coeffs = Json::array();
  for (const Rational& c : r.coeffs) coeffs.push_back(c.get_str());
  return Json{{"order", r.order}, {"offset", r.offset}, {"terms", r.terms},
              {"confirmed", r.confirmed}, {"coeffs", std::move(coeffs)}};
}

inline Json to_json(const RationalGF& g) {
  Json num = Json::array(), den = Json::array();
  for (const BigInt& c : g.numerator) num.push_back(c.get_str());
  for (const BigInt& c : g.denominator) den.push_back(c.get_str());
  return Json{{"numerator", std::move(num)}, {"denominator", std::move(den)}};
}

/// Recurrence and generating function together.
inline Json to_json(const Recurrence& r, const RationalGF& g) {
  Json out = to_json(r);
  const Json gf = to_json(g);
  out["numerator"] = gf["numerator"];
  out["denominator"] = gf["denominator"];
  return out;
}

// ---------------------------------------------------------------------------
// Check reports

enum class CheckStatus { kPass, kFail };

struct Check {
  std::string name;
  std::string expected;
  std::string actual;
  CheckStatus status = CheckStatus::kFail;
  std::string provenance;
};

struct RunReport {
  std::vector<Check> checks;

  void add(std::string name, std::string expected, std::string actual, std::string provenance) {
    const CheckStatus status = expected == actual ? CheckStatus::kPass : CheckStatus::kFail;
    checks.push_back({std::move(name), std::move(expected), std::move(actual), status, std::move(provenance)});
  }

  void add(std::string name, std::string expected, std::string actual, bool pass, std::string provenance) {
    checks.push_back({std::move(name), std::move(expected), std::move(actual),
                      pass ? CheckStatus::kPass : CheckStatus::kFail, std::move(provenance)});
  }

  void append(const RunReport& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }

  std::size_t passed() const {
    std::size_t k = 0;
    for (const Check& c : checks) k += c.status == CheckStatus::kPass;
    return k;
  }
  std::size_t failed() const { return checks.size() - passed(); }
  bool ok() const { return failed() == 0; }

  std::vector<Check> failures() const {
    std::vector<Check> out;
    for (const Check& c : checks)
      if (c.status == CheckStatus::kFail) out.push_back(c);
    return out;
  }
};

inline Json to_json(const Check& c) {
  return Json{{"name", c.name}, {"expected", c.expected}, {"actual", c.actual},
              {"status", c.status == CheckStatus::kPass ? "pass" : "fail"}, {"provenance", c.provenance}};
}

inline Json to_json(const RunReport& r) {
  Json checks = Json::array();
  for (const Check& c : r.checks) checks.push_back(to_json(c));
  return Json{{"summary", {{"total", r.checks.size()}, {"passed", r.passed()}, {"failed", r.failed()}}},
              {"checks", std::move(checks)}};
}

}  // namespace twofactor

#endif  // TWOFACTOR_IO_HPP_
