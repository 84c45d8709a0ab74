#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "twofactor/transfer.hpp"

namespace twofactor {
namespace {

BinaryWord B(const char* s) { return BinaryWord::from_string(s); }

// Entries of d restricted to `labels`, in that order.
std::vector<std::vector<std::uint32_t>> submatrix(const ReducedDigraph& d, const std::vector<const char*>& labels) {
  std::vector<std::vector<std::uint32_t>> out;
  for (const char* r : labels) {
    std::vector<std::uint32_t> row;
    for (const char* c : labels) row.push_back(d.entry(d.require_index(B(r)), d.require_index(B(c))));
    out.push_back(row);
  }
  return out;
}

using Rows = std::vector<std::vector<std::uint32_t>>;

TEST(Full, VertexCounts) {
  EXPECT_EQ(build_full(2).order(), 10u);
  EXPECT_EQ(build_full(5).order(), 242u);
  EXPECT_THROW(build_full(0), std::invalid_argument);
  EXPECT_THROW(build_full(kMaxFullWidth + 1), LimitError);
}

TEST(Full, FirstVertexAndArcRule) {
  for (int m = 1; m <= 5; ++m) {
    const FullDigraph d = build_full(m);
    EXPECT_EQ(d.vertex(0), AlphaWord::repeat(letters::b, m));
    EXPECT_TRUE(std::is_sorted(d.vertices().begin() + 1, d.vertices().end()));
    for (std::size_t i = 0; i < d.order(); ++i) {
      EXPECT_FALSE(d.arcs(i).empty());
      for (std::size_t j = 0; j < d.order(); ++j) {
        ASSERT_EQ(d.entry(i, j), outlet(d.vertex(i)) == inlet(d.vertex(j)) ? 1u : 0u);
      }
    }
  }
}

TEST(Reduced, SmallComponents) {
  const ReducedDigraph d = build_reduced(2);
  EXPECT_EQ(d.vertex(0), B("00"));
  EXPECT_EQ(submatrix(d, {"00", "11"}), (Rows{{1, 2}, {2, 1}}));
  EXPECT_EQ(submatrix(d, {"10", "01"}), (Rows{{0, 2}, {2, 0}}));
}

TEST(Reduced, WidthFourComponent) {
  const ReducedDigraph d = build_reduced(4);
  EXPECT_EQ(submatrix(d, {"0000", "1111", "0011", "0110", "1100", "1001"}),
            (Rows{{1, 2, 1, 1, 1, 1},
                  {2, 1, 1, 1, 1, 1},
                  {1, 1, 0, 1, 2, 1},
                  {1, 1, 1, 0, 1, 2},
                  {1, 1, 2, 1, 0, 1},
                  {1, 1, 1, 2, 1, 0}}));
}

TEST(Reduced, CountsAndSymmetry) {
  long long three = 1;
  for (int m = 1; m <= 12; ++m) {
    three *= 3;
    const ReducedDigraph d = build_reduced(m);
    EXPECT_EQ(d.order(), std::size_t{1} << m);
    EXPECT_TRUE(d.is_symmetric()) << m;
    EXPECT_EQ(static_cast<long long>(d.arc_count()), three + (m % 2 ? -1 : 1)) << m;
  }
  EXPECT_THROW(build_reduced(kMaxReducedWidth + 1), LimitError);
}

TEST(Reduced, ComponentBuildMatchesInducedSubgraph) {
  for (int m = 2; m <= 10; ++m) {
    const ReducedDigraph full = build_reduced(m);
    const ComponentCensus c = components(full);
    const ReducedDigraph comp = build_reduced_component(m);
    auto members = c.members(*c.n_component);
    ASSERT_EQ(comp.order(), members.size());
    ASSERT_EQ(comp.vertex(0), BinaryWord::zeros(m));
    const ReducedDigraph induced = induced_subgraph(full, std::span<const std::uint32_t>(members));
    for (std::size_t i = 0; i < comp.order(); ++i)
      for (std::size_t j = 0; j < comp.order(); ++j)
        ASSERT_EQ(comp.entry(i, j),
                  induced.entry(induced.require_index(comp.vertex(i)), induced.require_index(comp.vertex(j))));
  }
}

TEST(Relations, RotationCycleAndFixedPoints) {
  const ReducedDigraph d = build_reduced(4);
  const VertexRelation r = rotation_matrix(d);
  auto step = [&](const char* w) { return d.vertex(r.image[d.require_index(B(w))]).to_string(); };
  EXPECT_EQ(step("0011"), "0110");
  EXPECT_EQ(step("0110"), "1100");
  EXPECT_EQ(step("1100"), "1001");
  EXPECT_EQ(step("1001"), "0011");
  const VertexRelation h = hconversion_matrix(d);
  for (const char* w : {"0000", "1111"}) {
    EXPECT_EQ(r.image[d.require_index(B(w))], d.require_index(B(w)));
    EXPECT_EQ(h.image[d.require_index(B(w))], d.require_index(B(w)));
  }
}

TEST(Relations, PowersAndInvolution) {
  for (int m = 2; m <= 10; ++m) {
    const ReducedDigraph d = build_reduced(m);
    const VertexRelation r = rotation_matrix(d);
    EXPECT_TRUE(r.power(m).is_identity()) << m;
    const VertexRelation h = hconversion_matrix(d);
    EXPECT_TRUE(h.is_involution());
    // symmetric as a 0/1 matrix
    const auto dense = h.dense();
    for (std::size_t i = 0; i < d.order(); ++i)
      for (std::size_t j = 0; j < d.order(); ++j) ASSERT_EQ(dense[i * d.order() + j], dense[j * d.order() + i]);
  }
  for (int m = 2; m <= 5; ++m) {
    const FullDigraph d = build_full(m);
    EXPECT_TRUE(rotation_matrix(d).power(m).is_identity());
    EXPECT_TRUE(hconversion_matrix(d).is_involution());
  }
  EXPECT_THROW(rotation_matrix(build_glued(4)), std::invalid_argument);
}

TEST(Relations, RotationConjugationKeepsEntries) {
  for (int m = 2; m <= 8; ++m) {
    const ReducedDigraph d = build_reduced(m);
    const VertexRelation r = rotation_matrix(d);
    const VertexRelation h = hconversion_matrix(d);
    for (std::size_t i = 0; i < d.order(); ++i)
      for (std::size_t j = 0; j < d.order(); ++j) {
        ASSERT_EQ(d.entry(i, j), d.entry(r.image[i], r.image[j]));
        ASSERT_EQ(d.entry(i, j), d.entry(h.image[i], h.image[j]));
      }
  }
}

TEST(Census, WidthFour) {
  const ComponentCensus c = components(build_reduced(4));
  ASSERT_EQ(c.count(), 3u);
  EXPECT_EQ(c.n_component, c.a_component);
  EXPECT_EQ(c.sizes[*c.a_component], 6u);
  ASSERT_EQ(c.b_components.size(), 2u);
  EXPECT_EQ(c.sizes[c.b_components[0]], 8u);
  EXPECT_EQ(c.sizes[c.b_components[1]], 2u);
}

TEST(Census, WidthFive) {
  const ComponentCensus c = components(build_reduced(5));
  ASSERT_EQ(c.count(), 2u);
  EXPECT_NE(c.n_component, c.a_component);
  EXPECT_EQ(c.sizes[*c.n_component], 16u);
  EXPECT_EQ(c.sizes[*c.a_component], 16u);
}

long long binomial(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

TEST(Census, EvenWidthSizes) {
  for (int m = 2; m <= 10; m += 2) {
    const ComponentCensus c = components(build_reduced(m));
    ASSERT_EQ(c.count(), static_cast<std::size_t>(m / 2 + 1));
    EXPECT_EQ(static_cast<long long>(c.sizes[*c.a_component]), binomial(m, m / 2));
    for (int s = 1; s <= m / 2; ++s) {
      EXPECT_EQ(static_cast<long long>(c.sizes[c.b_components[static_cast<std::size_t>(s - 1)]]),
                2 * binomial(m, m / 2 - s));
    }
  }
}

TEST(Census, OddWidthComplementSwapsComponents) {
  for (int m : {3, 5, 7}) {
    const ReducedDigraph d = build_reduced(m);
    const ComponentCensus c = components(d);
    ASSERT_EQ(c.count(), 2u);
    for (std::size_t i = 0; i < d.order(); ++i) {
      const std::size_t ci = d.require_index(d.vertex(i).complement());
      ASSERT_NE(c.labels[i], c.labels[ci]);
      for (std::size_t j = 0; j < d.order(); ++j) {
        ASSERT_EQ(d.entry(i, j), d.entry(ci, d.require_index(d.vertex(j).complement())));
      }
    }
  }
}

TEST(Census, FullDigraphSplitsExactlyForOddWidth) {
  for (int m = 2; m <= 8; ++m) {
    const ComponentCensus c = components(build_full(m));
    EXPECT_EQ(c.n_component != c.a_component, m % 2 == 1) << m;
  }
}

TEST(Census, NotStronglyConnectedIsAnError) {
  // 0 -> 1 only: one weak component, not strong.
  const ReducedDigraph d(DigraphKind::kReduced, 1, {B("0"), B("1")}, {{{1, 1}}, {}});
  EXPECT_THROW(components(d), std::logic_error);
}

TEST(Closure, ZeroComponentClosedUnderDihedralAction) {
  for (int m = 2; m <= 10; ++m) {
    const ReducedDigraph n = build_reduced_component(m);
    for (const BinaryWord& v : n.vertices()) {
      ASSERT_TRUE(n.index_of(v.reverse()));
      for (int k = 1; k < m; ++k) ASSERT_TRUE(n.index_of(v.rotate(k)));
    }
  }
}

TEST(Glued, WidthFour) {
  const ReducedDigraph g = build_glued(4);
  ASSERT_EQ(g.order(), 3u);
  EXPECT_EQ(g.vertex(0), B("0000"));
  // compare by label: published order (0000, 1111, 0011)
  const std::vector<const char*> labels = {"0000", "1111", "0011"};
  Rows got;
  for (const char* r : labels) {
    std::vector<std::uint32_t> row;
    for (const char* c : labels) row.push_back(g.entry(g.require_index(B(r)), g.require_index(B(c))));
    got.push_back(row);
  }
  EXPECT_EQ(got, (Rows{{1, 2, 4}, {2, 1, 4}, {1, 1, 4}}));
}

TEST(Glued, VertexCounts) {
  const std::vector<std::size_t> want = {2, 2, 3, 4, 6, 9, 11, 23, 26};
  for (int m = 2; m <= 10; ++m) EXPECT_EQ(build_glued(m).order(), want[static_cast<std::size_t>(m - 2)]) << m;
}

TEST(ColumnSetsTest, SmallAndLucas) {
  const ColumnSets cs = column_sets(2);
  std::vector<std::string> first, last;
  for (const auto& w : cs.first) first.push_back(w.to_string());
  for (const auto& w : cs.last) last.push_back(w.to_string());
  EXPECT_EQ(first, (std::vector<std::string>{"ac", "bb", "ca"}));
  EXPECT_EQ(last, (std::vector<std::string>{"bb", "df", "fd"}));
  EXPECT_EQ(column_sets(4).first.size(), 7u);
  EXPECT_EQ(column_sets(10).first.size(), 123u);
  for (int m = 1; m <= 12; ++m) {
    const ColumnSets s = column_sets(m);
    EXPECT_EQ(s.first.size(), lucas(m));
    EXPECT_EQ(s.last.size(), lucas(m));
  }
  EXPECT_EQ(lucas(1), 1u);
  EXPECT_EQ(lucas(2), 3u);
  EXPECT_EQ(lucas(18), 5778u);
}

TEST(DigraphType, RejectsBadInput) {
  EXPECT_THROW(ReducedDigraph(DigraphKind::kReduced, 1, {B("0")}, {}), std::invalid_argument);
  EXPECT_THROW(ReducedDigraph(DigraphKind::kReduced, 1, {B("0")}, {{{3, 1}}}), std::out_of_range);
  EXPECT_THROW(ReducedDigraph(DigraphKind::kReduced, 1, {B("0"), B("0")}, {{}, {}}), std::invalid_argument);
}

}  // namespace
}  // namespace twofactor
