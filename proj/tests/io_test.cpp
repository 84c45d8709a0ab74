#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "twofactor/io.hpp"
#include "twofactor/reference.hpp"

namespace twofactor {
namespace {

namespace fs = std::filesystem;

Series sample() { return Series{Family::kTG, 3, 1, {8, 38, 206}}; }

TEST(Json, SeriesRoundTrip) {
  const Json j = to_json(sample());
  EXPECT_EQ(j.dump(), R"({"family":"tg","m":3,"p":1,"values":["8","38","206"]})");
  const Series back = series_from_json(j);
  EXPECT_EQ(back.family, Family::kTG);
  EXPECT_EQ(back.values, sample().values);
}

TEST(Json, DigraphDump) {
  const Json j = to_json(build_reduced(2));
  EXPECT_EQ(j["kind"], "reduced");
  EXPECT_EQ(j["vertices"][0], "00");
  EXPECT_EQ(j["adj"].size(), 4u);
}

TEST(Json, BigValuesAreStrings) {
  const Series s = series(Family::kTnC, 4, 0, 60);
  const Json j = to_json(s);
  EXPECT_TRUE(j["values"][59].is_string());
  EXPECT_EQ(series_from_json(j).values, s.values);
}

TEST(Text, BFileAndCsv) {
  EXPECT_EQ(to_bfile(sample()), "1 8\n2 38\n3 206\n");
  EXPECT_EQ(to_csv(sample()), "n,value\n1,8\n2,38\n3,206\n");
  EXPECT_EQ(to_csv(Series{}), "");
}

TEST(Text, ParseBFile) {
  std::istringstream in("# family=TG m=3 p=1\n\n1 8\n2 38\n  3 206\n");
  const BFile b = parse_bfile(in);
  ASSERT_EQ(b.comments.size(), 1u);
  EXPECT_EQ(b.comments[0], "family=TG m=3 p=1");
  ASSERT_EQ(b.terms.size(), 3u);
  EXPECT_EQ(b.terms[2].first, 3);
  EXPECT_EQ(b.terms[2].second, 206);
}

TEST(Text, ParseBFileErrors) {
  std::istringstream one("1\n");
  EXPECT_THROW(parse_bfile(one), std::runtime_error);
  std::istringstream bad("1 12x\n");
  EXPECT_THROW(parse_bfile(bad), std::runtime_error);
  std::istringstream extra("1 2 3\n");
  EXPECT_THROW(parse_bfile(extra), std::runtime_error);
}

TEST(Report, Counting) {
  RunReport r;
  r.add("a", "1", "1", "table");
  r.add("b", "1", "2", "table");
  r.add("c", "x", "y", true, "property");
  EXPECT_EQ(r.passed(), 2u);
  EXPECT_EQ(r.failed(), 1u);
  EXPECT_FALSE(r.ok());
  ASSERT_EQ(r.failures().size(), 1u);
  EXPECT_EQ(r.failures()[0].name, "b");
  const Json j = to_json(r);
  EXPECT_EQ(j["summary"]["total"], 3);
  EXPECT_EQ(j["checks"][1]["status"], "fail");
}

TEST(Recurrences, Json) {
  const auto s = series(Family::kTnC, 2, 0, 25).values;
  const Recurrence r = minimal_recurrence(s);
  const Json j = to_json(r, to_generating_function(s, r));
  EXPECT_EQ(j["order"], 2);
  EXPECT_EQ(j["coeffs"], Json::array({"2", "3"}));
  EXPECT_EQ(j["denominator"], Json::array({"1", "-2", "-3"}));
}

class ReferenceDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("twofactor_ref_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::copy(TWOFACTOR_DATA_DIR, dir_, fs::copy_options::recursive);
  }
  void TearDown() override { fs::remove_all(dir_); }

  void rewrite(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name) << text;
  }

  fs::path dir_;
};

TEST_F(ReferenceDir, LoadsCleanCopy) {
  const ReferenceDataset ds = ReferenceDataset::load(dir_);
  EXPECT_FALSE(ds.all_series().empty());
}

TEST_F(ReferenceDir, MissingDirectory) { EXPECT_THROW(ReferenceDataset::load(dir_ / "nope"), ReferenceError); }

TEST_F(ReferenceDir, MissingSeriesFile) {
  fs::remove(dir_ / "tg_m3_p1.b");
  EXPECT_THROW(ReferenceDataset::load(dir_), ReferenceError);
}

TEST_F(ReferenceDir, WrongHeader) {
  std::ifstream in(dir_ / "tg_m3_p1.b");
  std::stringstream text;
  text << in.rdbuf();
  std::string s = text.str();
  s.replace(s.find("m=3"), 3, "m=4");
  rewrite("tg_m3_p1.b", s);
  EXPECT_THROW(ReferenceDataset::load(dir_), ReferenceError);
}

TEST_F(ReferenceDir, TruncatedSeries) {
  rewrite("tnc_m2.b", "# family=TnC m=2 p=0\n# provenance: test\n1 1\n2 5\n");
  EXPECT_THROW(ReferenceDataset::load(dir_), ReferenceError);
}

TEST_F(ReferenceDir, MalformedTables) {
  rewrite("tables.json", "{ not json");
  EXPECT_THROW(ReferenceDataset::load(dir_), std::exception);
}

}  // namespace
}  // namespace twofactor
