#ifndef TWOFACTOR_REFERENCE_HPP_
#define TWOFACTOR_REFERENCE_HPP_

// Published reference values shipped under data/reference: one b-file per
// series plus tables.json. Loading is strict; anything missing or malformed
// throws.

#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "twofactor/io.hpp"

#ifndef TWOFACTOR_DATA_DIR
#define TWOFACTOR_DATA_DIR "data/reference"
#endif

namespace twofactor {

class ReferenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ReferenceSeries {
  Series series;
  std::string provenance;
};

template <typename T>
struct Tabled {
  std::map<int, T> values;
  std::string provenance;
};

struct ComponentSizes {
  std::size_t a = 0;
  std::vector<std::size_t> b;
};

struct SpectralEntry {
  std::string theta;  // decimal text as published
  std::string a_tnc;
  int a_tg = 0;
  int a_kb = 0;
};

struct PublishedGF {
  std::vector<BigInt> numerator;
  std::vector<BigInt> denominator;
};

inline constexpr int kReferenceTerms = 25;

/// Which series files must exist.
inline std::vector<std::tuple<Family, int, int>> expected_reference_series() {
  std::vector<std::tuple<Family, int, int>> out;
  for (int m = 2; m <= 7; ++m) out.emplace_back(Family::kTnC, m, 0);
  for (Family f : {Family::kTG, Family::kKB})
    for (int m = 2; m <= 5; ++m)
      for (int p = 0; p < m; ++p) out.emplace_back(f, m, p);
  return out;
}

inline std::string reference_file_name(Family f, int m, int p) {
  std::string name = std::string(to_string(f)) + "_m" + std::to_string(m);
  if (f != Family::kTnC) name += "_p" + std::to_string(p);
  return name + ".b";
}

class ReferenceDataset {
 public:
  static ReferenceDataset load(const std::filesystem::path& dir = TWOFACTOR_DATA_DIR) {
    ReferenceDataset ds;
    ds.dir_ = dir;
    for (const auto& [f, m, p] : expected_reference_series()) ds.load_series(f, m, p);
    ds.load_tables();
    return ds;
  }

  const std::filesystem::path& directory() const { return dir_; }

  const ReferenceSeries& series(Family f, int m, int p = 0) const {
    auto it = series_.find({f, m, f == Family::kTnC ? 0 : p});
    if (it == series_.end()) {
      throw ReferenceError("no reference series for " + std::string(to_string(f)) + " m=" + std::to_string(m) +
                           " p=" + std::to_string(p));
    }
    return it->second;
  }

  const std::map<std::tuple<Family, int, int>, ReferenceSeries>& all_series() const { return series_; }

  Tabled<long long> lucas, full_vertices, full_component_n, reduced_vertices, reduced_component_n, glued_vertices,
      tnc_order;
  Tabled<ComponentSizes> reduced_components;
  Tabled<std::vector<int>> tg_order;  // indexed by p
  Tabled<std::vector<int>> kb_order;  // {even p, odd p}
  Tabled<SpectralEntry> spectral;
  Tabled<PublishedGF> tnc_generating_functions;

 private:
  void load_series(Family f, int m, int p) {
    const auto path = dir_ / reference_file_name(f, m, p);
    std::ifstream in(path);
    if (!in) throw ReferenceError("missing reference file " + path.string());
    BFile b;
    try {
      b = parse_bfile(in, path.string());
    } catch (const std::runtime_error& e) {
      throw ReferenceError(e.what());
    }
    ReferenceSeries rs;
    rs.series = {f, m, p, {}};
    std::optional<std::string> header;
    for (const std::string& c : b.comments) {
      if (c.rfind("provenance:", 0) == 0) {
        rs.provenance = c.substr(c.find(':') + 1);
        rs.provenance.erase(0, rs.provenance.find_first_not_of(' '));
      } else if (c.rfind("family=", 0) == 0) {
        header = c;
      }
    }
    std::string want = "family=" + upper(to_string(f)) + " m=" + std::to_string(m) + " p=" + std::to_string(p);
    if (!header || *header != want) {
      throw ReferenceError(path.string() + ": header should read '" + want + "'");
    }
    if (rs.provenance.empty()) throw ReferenceError(path.string() + ": missing provenance line");
    if (b.terms.size() != static_cast<std::size_t>(kReferenceTerms)) {
      throw ReferenceError(path.string() + ": expected " + std::to_string(kReferenceTerms) + " terms, found " +
                           std::to_string(b.terms.size()));
    }
    for (std::size_t k = 0; k < b.terms.size(); ++k) {
      if (b.terms[k].first != static_cast<long long>(k + 1)) {
        throw ReferenceError(path.string() + ": terms must be n = 1, 2, ... in order");
      }
      rs.series.values.push_back(b.terms[k].second);
    }
    series_.emplace(std::make_tuple(f, m, p), std::move(rs));
  }

  static std::string upper(std::string s) {
    if (s == "tnc") return "TnC";
    for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
  }

  static const Json& section(const Json& root, const char* key) {
    if (!root.contains(key)) throw ReferenceError(std::string("tables.json: missing section '") + key + "'");
    const Json& s = root.at(key);
    if (!s.contains("provenance") || !s.contains("values")) {
      throw ReferenceError(std::string("tables.json: section '") + key + "' needs provenance and values");
    }
    return s;
  }

  template <typename T, typename Fn>
  static Tabled<T> read(const Json& root, const char* key, Fn convert) {
    const Json& s = section(root, key);
    Tabled<T> out;
    out.provenance = s.at("provenance").get<std::string>();
    for (const auto& [k, v] : s.at("values").items()) out.values.emplace(std::stoi(k), convert(v));
    if (out.values.empty()) throw ReferenceError(std::string("tables.json: section '") + key + "' is empty");
    return out;
  }

  void load_tables() {
    const auto path = dir_ / "tables.json";
    std::ifstream in(path);
    if (!in) throw ReferenceError("missing reference file " + path.string());
    Json root;
    try {
      root = Json::parse(in);
      auto integer = [](const Json& v) { return v.get<long long>(); };
      lucas = read<long long>(root, "lucas", integer);
      full_vertices = read<long long>(root, "full_vertices", integer);
      full_component_n = read<long long>(root, "full_component_n", integer);
      reduced_vertices = read<long long>(root, "reduced_vertices", integer);
      reduced_component_n = read<long long>(root, "reduced_component_n", integer);
      glued_vertices = read<long long>(root, "glued_vertices", integer);
      tnc_order = read<long long>(root, "tnc_order", integer);
      reduced_components = read<ComponentSizes>(root, "reduced_components", [](const Json& v) {
        return ComponentSizes{v.at("A").get<std::size_t>(), v.at("B").get<std::vector<std::size_t>>()};
      });
      auto ints = [](const Json& v) { return v.get<std::vector<int>>(); };
      tg_order = read<std::vector<int>>(root, "tg_order", ints);
      kb_order = read<std::vector<int>>(root, "kb_order", ints);
      spectral = read<SpectralEntry>(root, "spectral", [](const Json& v) {
        return SpectralEntry{v.at("theta").get<std::string>(), v.at("a_tnc").get<std::string>(),
                             v.at("a_tg").get<int>(), v.at("a_kb").get<int>()};
      });
      tnc_generating_functions = read<PublishedGF>(root, "tnc_generating_functions", [](const Json& v) {
        PublishedGF g;
        for (const auto& c : v.at("numerator")) g.numerator.emplace_back(c.get<long>());
        for (const auto& c : v.at("denominator")) g.denominator.emplace_back(c.get<long>());
        return g;
      });
    } catch (const Json::exception& e) {
      throw ReferenceError(path.string() + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      throw ReferenceError(path.string() + ": bad key: " + e.what());
    }
  }

  std::filesystem::path dir_;
  std::map<std::tuple<Family, int, int>, ReferenceSeries> series_;
};

}  // namespace twofactor

#endif  // TWOFACTOR_REFERENCE_HPP_
