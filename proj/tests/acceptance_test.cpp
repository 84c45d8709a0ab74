// One test per acceptance criterion; each prints a single PASS/FAIL line.
#include <gtest/gtest.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "twofactor/verify.hpp"

namespace twofactor {
namespace {

const ReferenceDataset& dataset() {
  static const ReferenceDataset ref = ReferenceDataset::load();
  return ref;
}

void run_criterion(int number, const std::string& title, const std::function<RunReport()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  const RunReport report = fn();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("criterion %d %-28s %s  (%zu/%zu checks, %.1fs)\n", number, title.c_str(),
              report.ok() && !report.checks.empty() ? "PASS" : "FAIL", report.passed(), report.checks.size(), secs);
  for (const Check& c : report.failures()) {
    std::printf("    failed: %s: expected %s, got %s [%s]\n", c.name.c_str(), c.expected.c_str(), c.actual.c_str(),
                c.provenance.c_str());
  }
  std::fflush(stdout);
  EXPECT_FALSE(report.checks.empty());
  EXPECT_TRUE(report.ok());
}

TEST(Acceptance, C1SeriesReproduction) {
  run_criterion(1, "series reproduction", [] { return check_series_reproduction(dataset()); });
}

TEST(Acceptance, C2DigraphCensus) {
  run_criterion(2, "digraph census", [] { return check_digraph_census(dataset()); });
}

TEST(Acceptance, C3StructuralInvariants) {
  run_criterion(3, "structural invariants", [] { return check_structure(dataset()); });
}

TEST(Acceptance, C4MethodEquivalence) {
  run_criterion(4, "method equivalence", [] { return check_method_equivalence(); });
}

TEST(Acceptance, C5OracleEquivalence) {
  run_criterion(5, "oracle equivalence", [] { return check_oracle(); });
}

TEST(Acceptance, C6Symmetry) {
  run_criterion(6, "symmetry", [] { return check_symmetry(); });
}

TEST(Acceptance, C7RecurrenceOrders) {
  run_criterion(7, "recurrence orders", [] { return check_orders(dataset()); });
}

TEST(Acceptance, C8Spectral) {
  run_criterion(8, "spectral estimates", [] { return check_spectral(dataset()); });
}

}  // namespace
}  // namespace twofactor
