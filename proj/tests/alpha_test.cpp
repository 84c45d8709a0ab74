#include <gtest/gtest.h>

#include <bit>
#include <set>
#include <string>
#include <vector>

#include "twofactor/alpha.hpp"

namespace twofactor {
namespace {

AlphaWord W(const char* s) { return AlphaWord::from_string(s); }
BinaryWord B(const char* s) { return BinaryWord::from_string(s); }

std::vector<std::string> strings(const std::vector<AlphaWord>& ws) {
  std::vector<std::string> out;
  for (const auto& w : ws) out.push_back(w.to_string());
  return out;
}

long long power_count(int m) {
  long long p = 1;
  for (int i = 0; i < m; ++i) p *= 3;
  return p + (m % 2 ? -1 : 1);
}

TEST(AlphaLetter, TwoDirectionsEach) {
  std::set<int> seen;
  for (int i = 0; i < AlphaLetter::kCount; ++i) {
    const AlphaLetter l = AlphaLetter::from_index(i);
    EXPECT_EQ(std::popcount(static_cast<unsigned>(l.edges())), 2) << l.id();
    seen.insert(l.edges());
  }
  EXPECT_EQ(seen.size(), 6u);
}

TEST(AlphaLetter, OutletAndInletMembership) {
  const std::string with_right = "ace", with_left = "def";
  for (char c : std::string("abcdef")) {
    const AlphaLetter l = AlphaLetter::from_char(c);
    EXPECT_EQ(l.right(), with_right.find(c) != std::string::npos) << c;
    EXPECT_EQ(l.left(), with_left.find(c) != std::string::npos) << c;
  }
  EXPECT_TRUE(letters::b.up() && letters::b.down());
  EXPECT_TRUE(letters::e.left() && letters::e.right());
}

TEST(AlphaLetter, RejectsUnknown) { EXPECT_THROW(AlphaLetter::from_char('g'), std::invalid_argument); }

TEST(Conversion, Horizontal) {
  EXPECT_EQ(horizontal_convert(W("bb")), W("bb"));
  EXPECT_EQ(horizontal_convert(W("ac")), W("ac"));
  EXPECT_EQ(horizontal_convert(W("abdef")), W("defbc"));
}

TEST(Conversion, Vertical) {
  EXPECT_EQ(vertical_convert(W("bb")), W("bb"));
  EXPECT_EQ(vertical_convert(W("ac")), W("df"));
}

TEST(Conversion, Involutions) {
  for (int m = 1; m <= 6; ++m) {
    for (const AlphaWord& w : enumerate_column_words(m)) {
      EXPECT_EQ(horizontal_convert(horizontal_convert(w)), w);
      EXPECT_EQ(vertical_convert(vertical_convert(w)), w);
    }
  }
}

TEST(Rotation, LeftShift) {
  EXPECT_EQ(rotate(B("0011"), 1), B("0110"));
  EXPECT_EQ(rotate(W("abc"), 1), W("bca"));
  EXPECT_EQ(rotate(B("0011"), -1), B("1001"));
  for (int m = 1; m <= 6; ++m) {
    for (const AlphaWord& w : enumerate_column_words(m)) EXPECT_EQ(rotate(w, m), w);
  }
}

TEST(Rotation, CommutesWithConversionUpToInverse) {
  for (int m = 1; m <= 8; ++m) {
    for (const AlphaWord& w : enumerate_column_words(m)) {
      for (int p = 0; p < m; ++p) {
        ASSERT_EQ(rotate(horizontal_convert(w), p), horizontal_convert(rotate(w, m - p)));
      }
    }
  }
}

TEST(BinaryWordOps, Basics) {
  const BinaryWord w = B("01101");
  EXPECT_EQ(w.size(), 5);
  EXPECT_EQ(w.to_string(), "01101");
  EXPECT_EQ(w.reverse(), B("10110"));
  EXPECT_EQ(w.reverse().reverse(), w);
  EXPECT_EQ(w.complement(), B("10010"));
  EXPECT_EQ(w.rotate(5), w);
  EXPECT_EQ(w.popcount(), 3);
  EXPECT_LT(B("0011"), B("0110"));
  EXPECT_THROW(B("012"), std::invalid_argument);
  EXPECT_THROW(BinaryWord(3, 8), std::invalid_argument);
}

TEST(OutletInlet, Examples) {
  EXPECT_EQ(outlet(W("bb")), B("00"));
  EXPECT_EQ(inlet(W("bb")), B("00"));
  EXPECT_EQ(outlet(W("ac")), B("11"));
  EXPECT_EQ(inlet(W("ac")), B("00"));
}

TEST(OutletInlet, HorizontalConversionReversesOutlet) {
  for (int m = 1; m <= 8; ++m) {
    for (const AlphaWord& w : enumerate_column_words(m)) {
      ASSERT_EQ(outlet(horizontal_convert(w)), outlet(w).reverse());
      ASSERT_EQ(inlet(horizontal_convert(w)), inlet(w).reverse());
    }
  }
}

TEST(ColumnWords, SmallWidths) {
  EXPECT_EQ(strings(enumerate_column_words(1)), (std::vector<std::string>{"b", "e"}));
  EXPECT_EQ(strings(enumerate_column_words(2)),
            (std::vector<std::string>{"ac", "af", "bb", "ca", "cd", "dc", "df", "ee", "fa", "fd"}));
  EXPECT_EQ(enumerate_column_words(3).size(), 26u);
  EXPECT_THROW(enumerate_column_words(0), std::invalid_argument);
}

TEST(ColumnWords, CountAndValidity) {
  for (int m = 1; m <= 10; ++m) {
    const auto words = enumerate_column_words(m);
    EXPECT_EQ(static_cast<long long>(words.size()), power_count(m)) << m;
    EXPECT_TRUE(std::is_sorted(words.begin(), words.end()));
    if (m <= 6) {
      for (const auto& w : words) EXPECT_TRUE(w.is_column_valid());
    }
  }
  EXPECT_FALSE(W("ab").is_column_valid());
}

TEST(ColumnWords, VerticalConversionIsASuccessor) {
  for (int m = 1; m <= 7; ++m) {
    for (const AlphaWord& w : enumerate_column_words(m)) {
      const AlphaWord v = vertical_convert(w);
      ASSERT_TRUE(v.is_column_valid());
      ASSERT_EQ(outlet(w), inlet(v));
    }
  }
}

TEST(ColumnWords, ArcsReverseUnderVerticalConversion) {
  for (int m = 1; m <= 5; ++m) {
    const auto words = enumerate_column_words(m);
    for (const auto& v : words)
      for (const auto& u : words)
        if (outlet(v) == inlet(u)) {
          ASSERT_EQ(outlet(vertical_convert(u)), inlet(vertical_convert(v)));
        }
  }
}

TEST(CountIoWords, Examples) {
  EXPECT_EQ(count_io_words(B("00"), B("00")), 1);
  EXPECT_EQ(count_io_words(B("00"), B("11")), 2);
  EXPECT_THROW(count_io_words(B("00"), B("000")), std::invalid_argument);
}

TEST(CountIoWords, MatchesEnumeration) {
  for (int m = 1; m <= 7; ++m) {
    std::vector<int> tally(std::size_t{1} << (2 * m), 0);
    for (const auto& w : enumerate_column_words(m)) ++tally[(inlet(w).code() << m) | outlet(w).code()];
    long long total = 0;
    for (std::uint32_t u = 0; u < (1U << m); ++u) {
      for (std::uint32_t w = 0; w < (1U << m); ++w) {
        const int c = count_io_words(BinaryWord(m, u), BinaryWord(m, w));
        ASSERT_GE(c, 0);
        ASSERT_LE(c, 2);
        ASSERT_EQ(c, tally[(u << m) | w]);
        total += c;
      }
    }
    EXPECT_EQ(total, power_count(m));
  }
}

TEST(CountIoWords, OneHorizontalBitEverywhere) {
  for (int m = 2; m <= 10; ++m) {
    const BinaryWord u(m, 0b1010101010 & ((1U << m) - 1));
    EXPECT_EQ(count_io_words(u, u.complement()), m % 2 ? 0 : 2) << m;
  }
}

TEST(OutletsWithInlet, AgreesWithCount) {
  for (int m = 1; m <= 6; ++m) {
    for (std::uint32_t u = 0; u < (1U << m); ++u) {
      std::vector<int> seen(std::size_t{1} << m, 0);
      for_each_outlet_with_inlet(BinaryWord(m, u), [&](std::uint32_t w) { ++seen[w]; });
      for (std::uint32_t w = 0; w < (1U << m); ++w) {
        ASSERT_EQ(seen[w], count_io_words(BinaryWord(m, u), BinaryWord(m, w)));
      }
    }
  }
}

}  // namespace
}  // namespace twofactor
