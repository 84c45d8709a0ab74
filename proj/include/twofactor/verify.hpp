#ifndef TWOFACTOR_VERIFY_HPP_
#define TWOFACTOR_VERIFY_HPP_

// Acceptance checks against the reference dataset, grouped into suites.
//
//   series     reference series reproduction; full/reduced/glued route agreement
//   digraph    vertex, arc and component counts; structural invariants
//   oracle     brute-force counts against transfer counts
//   symmetry   torus reflection symmetry; Klein-bottle twist invariance
//   orders     minimal recurrence orders; thin-cylinder generating functions
//   spectral   dominant eigenvalues and thin-cylinder amplitudes

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "twofactor/enumerate.hpp"
#include "twofactor/io.hpp"
#include "twofactor/oracle.hpp"
#include "twofactor/recurrence.hpp"
#include "twofactor/reference.hpp"
#include "twofactor/transfer.hpp"

namespace twofactor {

namespace verify {

inline const char* kInternal = "internal consistency";
inline const char* kOracle = "brute-force oracle";

inline std::string label(Family f, int m, int p) {
  std::string s = std::string(to_string(f)) + " m=" + std::to_string(m);
  if (f != Family::kTnC) s += " p=" + std::to_string(p);
  return s;
}

/// Equal sequences pass; otherwise the first differing term is reported.
inline void compare_values(RunReport& report, const std::string& name, const std::vector<BigInt>& expected,
                           const std::vector<BigInt>& actual, const std::string& provenance) {
  const std::size_t n = std::max(expected.size(), actual.size());
  for (std::size_t k = 0; k < n; ++k) {
    const std::string e = k < expected.size() ? expected[k].get_str() : "(none)";
    const std::string a = k < actual.size() ? actual[k].get_str() : "(none)";
    if (e != a) {
      report.add(name, "f(" + std::to_string(k + 1) + ")=" + e, "f(" + std::to_string(k + 1) + ")=" + a, false,
                 provenance);
      return;
    }
  }
  const std::string summary = "n=1.." + std::to_string(n) + " equal";
  report.add(name, summary, summary, true, provenance);
}

/// Runs `fn`, turning an exception into a failed check.
inline void guarded(RunReport& report, const std::string& name, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    report.add(name, "no error", std::string("error: ") + e.what(), false, kInternal);
  }
}

inline std::string fmt(double x, int digits = 15) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

template <typename T>
std::string list(const std::vector<T>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

inline long long power_count(int m) {  // 3^m + (-1)^m
  long long p = 1;
  for (int i = 0; i < m; ++i) p *= 3;
  return p + (m % 2 ? -1 : 1);
}

inline long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace verify

// 1. Reference series reproduction, n = 1..25.
inline RunReport check_series_reproduction(const ReferenceDataset& ref) {
  using namespace verify;
  RunReport report;
  std::map<std::pair<Family, int>, std::vector<Series>> twisted;
  for (const auto& [key, rs] : ref.all_series()) {
    const auto [f, m, p] = key;
    const std::string name = "series " + label(f, m, p);
    guarded(report, name, [&] {
      std::vector<BigInt> got;
      const long long n = static_cast<long long>(rs.series.values.size());
      if (f == Family::kTnC) {
        got = series(f, m, 0, n).values;
      } else {
        auto& all = twisted[{f, m}];
        if (all.empty()) all = series_all_twists(f, m, n);
        got = all.at(static_cast<std::size_t>(p)).values;
      }
      compare_values(report, name, rs.series.values, got, rs.provenance);
    });
  }
  return report;
}

// 4. Full, reduced and glued routes agree for m <= 7, n <= 30.
inline RunReport check_method_equivalence(int max_m = 7, long long n_max = 30) {
  using namespace verify;
  RunReport report;
  for (int m = 2; m <= max_m; ++m) {
    guarded(report, "routes tnc m=" + std::to_string(m), [&] {
      const auto reduced = series(Family::kTnC, m, 0, n_max, Method::kReduced).values;
      compare_values(report, "routes tnc m=" + std::to_string(m) + " full vs reduced", reduced,
                     series(Family::kTnC, m, 0, n_max, Method::kFull).values, kInternal);
      compare_values(report, "routes tnc m=" + std::to_string(m) + " glued vs reduced", reduced,
                     series(Family::kTnC, m, 0, n_max, Method::kGlued).values, kInternal);
    });
    for (Family f : {Family::kTG, Family::kKB}) {
      guarded(report, "routes " + label(f, m, 0), [&] {
        const auto reduced = series_all_twists(f, m, n_max, Method::kReduced);
        const auto full = series_all_twists(f, m, n_max, Method::kFull);
        for (int p = 0; p < m; ++p) {
          compare_values(report, "routes " + label(f, m, p) + " full vs reduced", reduced[p].values, full[p].values,
                         kInternal);
        }
      });
    }
  }
  return report;
}

// 2. Vertex, arc and component counts for m = 2..10.
inline RunReport check_digraph_census(const ReferenceDataset& ref, int max_m = 10) {
  using namespace verify;
  RunReport report;
  auto table = [&](const Tabled<long long>& t, int m) -> std::optional<long long> {
    auto it = t.values.find(m);
    if (it == t.values.end()) return std::nullopt;
    return it->second;
  };
  for (int m = 2; m <= max_m; ++m) {
    const std::string sm = " m=" + std::to_string(m);
    guarded(report, "full digraph" + sm, [&] {
      const FullDigraph d = build_full(m);
      report.add("|V(D)|" + sm + " = 3^m+(-1)^m", std::to_string(power_count(m)), std::to_string(d.order()),
                 kInternal);
      if (auto v = table(ref.full_vertices, m)) {
        report.add("|V(D)|" + sm, std::to_string(*v), std::to_string(d.order()), ref.full_vertices.provenance);
      }
      const ComponentCensus c = components(d);
      if (auto v = table(ref.full_component_n, m)) {
        report.add("|V(N)|" + sm, std::to_string(*v), std::to_string(c.sizes.at(*c.n_component)),
                   ref.full_component_n.provenance);
      }
      const bool split = *c.n_component != *c.a_component;
      report.add("b^m and e^m in different components of D" + sm, m % 2 ? "yes" : "no", split ? "yes" : "no",
                 kInternal);
    });
    guarded(report, "reduced digraph" + sm, [&] {
      const ReducedDigraph d = build_reduced(m);
      report.add("|V(D*)|" + sm + " = 2^m", std::to_string(1LL << m), std::to_string(d.order()), kInternal);
      if (auto v = table(ref.reduced_vertices, m)) {
        report.add("|V(D*)|" + sm, std::to_string(*v), std::to_string(d.order()), ref.reduced_vertices.provenance);
      }
      report.add("sum of T*" + sm + " = 3^m+(-1)^m", std::to_string(power_count(m)), std::to_string(d.arc_count()),
                 kInternal);
      const ComponentCensus c = components(d);
      if (auto v = table(ref.reduced_component_n, m)) {
        report.add("|V(N*)|" + sm, std::to_string(*v), std::to_string(c.sizes.at(*c.n_component)),
                   ref.reduced_component_n.provenance);
      }
      // Odd m: N* is the only B component. Even m: N* = A*.
      std::vector<std::size_t> b_sizes;
      if (m % 2) {
        b_sizes.push_back(c.sizes.at(*c.n_component));
      } else {
        for (auto id : c.b_components) b_sizes.push_back(c.sizes[id]);
      }
      const std::size_t a_size = c.sizes.at(*c.a_component);
      if (auto it = ref.reduced_components.values.find(m); it != ref.reduced_components.values.end()) {
        report.add("|V(A*)|" + sm, std::to_string(it->second.a), std::to_string(a_size),
                   ref.reduced_components.provenance);
        report.add("|V(B*(s))|" + sm, list(it->second.b), list(b_sizes), ref.reduced_components.provenance);
      }
      report.add("components of D*" + sm, std::to_string(m % 2 ? 2 : m / 2 + 1), std::to_string(c.count()),
                 kInternal);
      if (m % 2 == 0) {
        std::vector<long long> want;
        for (int s = 1; s <= m / 2; ++s) want.push_back(2 * binomial(m, m / 2 - s));
        std::vector<long long> got(b_sizes.begin(), b_sizes.end());
        report.add("|V(A*)|" + sm + " = C(m,m/2)", std::to_string(binomial(m, m / 2)), std::to_string(a_size),
                   kInternal);
        report.add("|V(B*(s))|" + sm + " = 2C(m,m/2-s)", list(want), list(got), kInternal);
      } else {
        const std::string half = std::to_string(1LL << (m - 1));
        report.add("|V(A*)|" + sm + " = 2^(m-1)", half, std::to_string(a_size), kInternal);
        report.add("|V(N*)|" + sm + " = 2^(m-1)", half, std::to_string(c.sizes.at(*c.n_component)), kInternal);
      }
    });
    guarded(report, "glued digraph" + sm, [&] {
      const ReducedDigraph g = build_glued(m);
      if (auto v = table(ref.glued_vertices, m)) {
        report.add("|V(N**)|" + sm, std::to_string(*v), std::to_string(g.order()), ref.glued_vertices.provenance);
      }
    });
  }
  return report;
}

// 3. Symmetry of T*, strong connectivity, closure of N*, Lucas column sets.
inline RunReport check_structure(const ReferenceDataset& ref) {
  using namespace verify;
  RunReport report;
  for (int m = 2; m <= 12; ++m) {
    const std::string sm = " m=" + std::to_string(m);
    guarded(report, "T* symmetric" + sm, [&] {
      report.add("T* symmetric" + sm, "yes", build_reduced(m).is_symmetric() ? "yes" : "no", kInternal);
    });
    guarded(report, "column sets" + sm, [&] {
      const ColumnSets cs = column_sets(m);
      const std::string want = std::to_string(lucas(m));
      report.add("|F|" + sm + " = Lucas(m)", want, std::to_string(cs.first.size()), kInternal);
      report.add("|L|" + sm + " = Lucas(m)", want, std::to_string(cs.last.size()), kInternal);
      if (auto it = ref.lucas.values.find(m); it != ref.lucas.values.end()) {
        report.add("|F|" + sm, std::to_string(it->second), std::to_string(cs.first.size()), ref.lucas.provenance);
      }
    });
  }
  for (int m = 2; m <= 10; ++m) {
    const std::string sm = " m=" + std::to_string(m);
    // components() raises if a weak component is not strongly connected.
    guarded(report, "strong components of D" + sm, [&] {
      const auto c = components(build_full(m));
      report.add("strongly connected components of D" + sm, "all", "all (" + std::to_string(c.count()) + ")", true,
                 kInternal);
    });
    guarded(report, "strong components of D*" + sm, [&] {
      const auto c = components(build_reduced(m));
      report.add("strongly connected components of D*" + sm, "all", "all (" + std::to_string(c.count()) + ")", true,
                 kInternal);
    });
    guarded(report, "closure of N*" + sm, [&] {
      const ReducedDigraph n = build_reduced_component(m);
      std::size_t escapes = 0;
      for (const BinaryWord& v : n.vertices()) {
        if (!n.index_of(v.reverse())) ++escapes;
        for (int k = 1; k < m; ++k)
          if (!n.index_of(v.rotate(k))) ++escapes;
      }
      report.add("N* closed under rotation and reversal" + sm, "0 escapes", std::to_string(escapes) + " escapes",
                 kInternal);
    });
  }
  return report;
}

// 5. Brute force against transfer counts.
inline RunReport check_oracle() {
  using namespace verify;
  RunReport report;
  auto one = [&](const GridSpec& spec) {
    const std::string name = "oracle " + label(spec.family, spec.m, spec.p) + " n=" + std::to_string(spec.n);
    guarded(report, name, [&] {
      report.add(name, count(spec).get_str(), count_two_factors(build_grid(spec)).get_str(), kOracle);
    });
  };
  for (int m = 2; m <= 4; ++m)
    for (long long n = 1; n <= 4; ++n) one({Family::kTnC, m, 0, n});
  for (Family f : {Family::kTG, Family::kKB})
    for (int m = 2; m <= 4; ++m)
      for (int p = 0; p < m; ++p)
        for (long long n = 2; n <= 3; ++n) one({f, m, p, n});
  return report;
}

// 6. F_TG(m,p) = F_TG(m,m-p); Klein-bottle counts independent of p (odd m) or
// of p within a parity class (even m).
inline RunReport check_symmetry(int max_m = 8, long long n_max = 30) {
  using namespace verify;
  RunReport report;
  for (int m = 2; m <= max_m; ++m) {
    guarded(report, "tg reflection m=" + std::to_string(m), [&] {
      const auto tg = series_all_twists(Family::kTG, m, n_max);
      for (int p = 1; p < m; ++p) {
        compare_values(report, "tg m=" + std::to_string(m) + " p=" + std::to_string(p) + " vs p=" +
                                   std::to_string(m - p),
                       tg[static_cast<std::size_t>(p)].values, tg[static_cast<std::size_t>(m - p)].values, kInternal);
      }
    });
    if (m % 2 == 1 && m > 7) continue;
    guarded(report, "kb twist invariance m=" + std::to_string(m), [&] {
      const auto kb = series_all_twists(Family::kKB, m, n_max);
      for (int p = 1; p < m; ++p) {
        const int base = m % 2 ? 0 : p % 2;
        if (p == base) continue;
        compare_values(report, "kb m=" + std::to_string(m) + " p=" + std::to_string(p) + " vs p=" +
                                   std::to_string(base),
                       kb[static_cast<std::size_t>(base)].values, kb[static_cast<std::size_t>(p)].values,
                       "conjecture, checked n=1.." + std::to_string(n_max));
      }
    });
  }
  return report;
}

// 7. Recurrence orders and thin-cylinder generating functions.
inline RunReport check_orders(const ReferenceDataset& ref) {
  using namespace verify;
  RunReport report;
  auto one = [&](Family f, int m, int p, int published, const std::string& provenance) {
    const std::string name = "order " + label(f, m, p);
    guarded(report, name, [&] {
      const OrderReport r = order_report(f, m, p);
      const auto need = static_cast<std::size_t>(r.offset + 2 * r.order + kRecurrenceMargin);
      const Series s = series(f, m, p, static_cast<long long>(std::max(r.terms, need)));
      const bool minimal = is_minimal(r.recurrence, s.values);
      const std::string actual = std::to_string(r.order) + (minimal ? "" : " (not minimal)");
      report.add(name, std::to_string(published), actual, minimal && r.order == published, provenance);
    });
  };
  for (int m = 2; m <= 8; ++m) one(Family::kTnC, m, 0, static_cast<int>(ref.tnc_order.values.at(m)), ref.tnc_order.provenance);
  for (int m = 2; m <= 5; ++m)
    for (int p = 0; p < m; ++p) one(Family::kTG, m, p, ref.tg_order.values.at(m).at(static_cast<std::size_t>(p)), ref.tg_order.provenance);
  for (int m = 2; m <= 6; ++m)
    for (int p = 0; p < m; ++p) one(Family::kKB, m, p, ref.kb_order.values.at(m).at(static_cast<std::size_t>(p % 2)), ref.kb_order.provenance);

  for (const auto& [m, pub] : ref.tnc_generating_functions.values) {
    const std::string name = "generating function tnc m=" + std::to_string(m);
    guarded(report, name, [&] {
      const Series s = series(Family::kTnC, m, 0, 40);
      const RationalGF g = to_generating_function(s.values, minimal_recurrence(s.values));
      const RationalGF want{pub.numerator, pub.denominator};
      report.add(name, to_string(want), to_string(g), ref.tnc_generating_functions.provenance);
    });
  }
  return report;
}

// 8. Dominant eigenvalues (m = 2..8, 1e-9) and amplitudes (m = 2..6, 1e-5).
inline RunReport check_spectral(const ReferenceDataset& ref, double theta_tol = 1e-9, double amp_tol = 1e-5) {
  using namespace verify;
  RunReport report;
  for (int m = 2; m <= 8; ++m) {
    const std::string name = "theta m=" + std::to_string(m);
    guarded(report, name, [&] {
      const double want = std::stod(ref.spectral.values.at(m).theta);
      const double got = tnc_spectrum(m).theta;
      report.add(name, fmt(want) + " +/- " + fmt(theta_tol, 2), fmt(got), std::abs(got - want) <= theta_tol,
                 ref.spectral.provenance);
    });
  }
  for (int m = 2; m <= 6; ++m) {
    const std::string name = "amplitude tnc m=" + std::to_string(m);
    guarded(report, name, [&] {
      const double want = std::stod(ref.spectral.values.at(m).a_tnc);
      const AmplitudeResult a = amplitude_estimate_tnc(m);
      report.add(name, fmt(want) + " +/- " + fmt(amp_tol, 2), fmt(a.value) + " (n=" + std::to_string(a.n) + ")",
                 std::abs(a.value - want) <= amp_tol, ref.spectral.provenance);
    });
  }
  return report;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"series", "digraph", "orders", "spectral", "oracle", "symmetry", "all"};
  return names;
}

inline RunReport run_suite(std::string_view suite, const ReferenceDataset& ref) {
  RunReport report;
  const bool all = suite == "all";
  bool known = all;
  if (all || suite == "series") {
    report.append(check_series_reproduction(ref));
    report.append(check_method_equivalence());
    known = true;
  }
  if (all || suite == "digraph") {
    report.append(check_digraph_census(ref));
    report.append(check_structure(ref));
    known = true;
  }
  if (all || suite == "orders") {
    report.append(check_orders(ref));
    known = true;
  }
  if (all || suite == "spectral") {
    report.append(check_spectral(ref));
    known = true;
  }
  if (all || suite == "oracle") {
    report.append(check_oracle());
    known = true;
  }
  if (all || suite == "symmetry") {
    report.append(check_symmetry());
    known = true;
  }
  if (!known) throw std::invalid_argument("unknown suite '" + std::string(suite) + "'");
  return report;
}

}  // namespace twofactor

#endif  // TWOFACTOR_VERIFY_HPP_
