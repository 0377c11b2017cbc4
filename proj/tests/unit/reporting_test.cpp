#include <gtest/gtest.h>

#include <sstream>

#include "ccost/catalog_io.hpp"
#include "ccost/reporting.hpp"
#include "test_support.hpp"

namespace ccost {
namespace {

using testing::sample_catalog;
using testing::source_path;
using testing::tiny_catalog;

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string golden(const std::string& name) { return read_file(source_path("tests/golden/" + name)); }

TEST(EffortCsv, SampleIaRows) {
  const auto csv = effort_csv(sample_catalog());
  const auto rows = lines(csv);
  EXPECT_EQ(rows.front(), "requirement,group_id,ct,ie");
  EXPECT_NE(csv.find("\nIA,1,19,1.00\nIA,2,17,0.89\nIA,3,5,0.26\n"), std::string::npos);
  EXPECT_EQ(csv.back(), '\n');
}

TEST(EffortCsv, EmptyCatalog) {
  Catalog c;
  c.name = "empty";
  EXPECT_EQ(effort_csv(c), "requirement,group_id,ct,ie\n");
}

TEST(EffortCsv, SizesThreeAndOne) {
  auto c = tiny_catalog(4);
  c.groups[0].controls = {"S-1", "S-2", "S-3"};
  c.groups.push_back({"R", 2, {"S-4"}, ""});
  EXPECT_EQ(effort_csv(c), "requirement,group_id,ct,ie\nR,1,3,1.00\nR,2,1,0.33\n");
}

TEST(Goldens, MatchCheckedInFiles) {
  const auto c = sample_catalog();
  const auto chart = importance_chart(c);
  EXPECT_EQ(effort_csv(c), golden("effort.csv"));
  EXPECT_EQ(chart.csv, golden("importance.csv"));
  EXPECT_EQ(chart.svg, golden("importance.svg"));
  EXPECT_EQ(catalog_extract(c, "IA"), golden("extract_IA.txt"));
}

TEST(ImportanceChart, CsvMatchesReport) {
  const auto c = sample_catalog();
  const auto chart = importance_chart(c);
  const auto rows = lines(chart.csv);
  EXPECT_EQ(rows.front(), "requirement,standard,count");
  int ia_sum = 0;
  for (const auto& row : rows) {
    if (row.rfind("IA,", 0) == 0) ia_sum += std::stoi(row.substr(row.rfind(',') + 1));
  }
  EXPECT_EQ(ia_sum, 41);
  EXPECT_EQ(rows.size(), 1u + 6u * 3u);
}

TEST(ImportanceChart, SvgShape) {
  const auto chart = importance_chart(sample_catalog());
  EXPECT_NE(chart.svg.find("width=\"800\" height=\"400\""), std::string::npos);
  EXPECT_EQ(chart.svg, importance_chart(sample_catalog()).svg);
  std::size_t bars = 0;
  for (auto pos = chart.svg.find("class=\"bar\""); pos != std::string::npos;
       pos = chart.svg.find("class=\"bar\"", pos + 1)) {
    ++bars;
  }
  EXPECT_EQ(bars, 18u);
  EXPECT_NE(chart.svg.find("data-category=\"IA\" data-value=\"20\""), std::string::npos);
}

TEST(ImportanceChart, SingleStandardOneSeries) {
  const auto chart = importance_chart(tiny_catalog(2));
  EXPECT_EQ(chart.csv, "requirement,standard,count\nR,std,2\n");
  EXPECT_NE(chart.svg.find("data-series=\"Standard\""), std::string::npos);
  EXPECT_EQ(chart.svg.find("#f28e2b"), std::string::npos);  // second palette colour unused
}

TEST(AssessmentChart, NormalizedAllFull) {
  const auto c = sample_catalog();
  const auto fp = fingerprint(c);
  const std::vector<Assessment> one{testing::synthetic_assessment("all-full.json")};
  const auto chart = assessment_chart(c, fp, one, true);
  const auto rows = lines(chart.csv);
  ASSERT_EQ(rows.size(), 7u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(rows[i].substr(rows[i].rfind(',') + 1), "1.00");
}

TEST(AssessmentChart, IaHalf) {
  const auto c = sample_catalog();
  const auto fp = fingerprint(c);
  const std::vector<Assessment> one{
      {"mix", c.name, fp, {{{"IA", 1}, Rating::full}, {{"IA", 2}, Rating::partial}, {{"IA", 3}, Rating::none}}}};
  EXPECT_NE(assessment_chart(c, fp, one, true).csv.find("IA,mix,0.50\n"), std::string::npos);
  EXPECT_NE(assessment_chart(c, fp, one, false).csv.find("IA,mix,1.5\n"), std::string::npos);
}

TEST(AssessmentChart, FiveSubjectsInOrder) {
  const auto c = sample_catalog();
  const auto fp = fingerprint(c);
  std::vector<Assessment> all;
  for (int i = 1; i <= 5; ++i) all.push_back(testing::synthetic_assessment("platform-" + std::to_string(i) + ".json"));
  const auto chart = assessment_chart(c, fp, all, true);
  const auto rows = lines(chart.csv);
  ASSERT_EQ(rows.size(), 1u + 6u * 5u);
  for (int i = 0; i < 5; ++i) EXPECT_NE(rows[1 + i].find("synthetic platform " + std::to_string(i + 1)), std::string::npos);
  EXPECT_NE(chart.svg.find("data-series=\"synthetic platform 5\""), std::string::npos);

  auto stranger = all.front();
  stranger.catalog_fingerprint = std::string(64, 'f');
  all.push_back(stranger);
  EXPECT_THROW(assessment_chart(c, fp, all, true), FingerprintMismatchError);
}

TEST(Extract, SampleIa) {
  const auto text = catalog_extract(sample_catalog(), "IA");
  EXPECT_EQ(lines(text).front().rfind("Req. | ID | Control IDs ", 0), 0u);
  EXPECT_NE(lines(text).front().find("| Assessment"), std::string::npos);
  for (const auto& id : testing::published_ia_group1()) {
    EXPECT_NE(text.find("[" + id + "]"), std::string::npos) << id;
  }
  EXPECT_NE(text.find("IA   | 3  |"), std::string::npos);
}

TEST(Extract, NoGroupsAndUnknown) {
  auto c = tiny_catalog(1);
  c.requirements.push_back({"Q", "Q", "", {}});
  EXPECT_EQ(lines(catalog_extract(c, "Q")).size(), 2u);
  EXPECT_THROW(catalog_extract(c, "ZZ"), UnknownRequirementError);
}

TEST(Extract, MultilineGuidancePreserved) {
  auto c = tiny_catalog(1);
  c.groups[0].assessment_guidance = "first line\nsecond line";
  const auto rows = lines(catalog_extract(c, "R"));
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_NE(rows[2].find("first line"), std::string::npos);
  EXPECT_NE(rows[3].find("second line"), std::string::npos);
}

TEST(Summary, JsonAndText) {
  const auto c = sample_catalog();
  const auto fp = fingerprint(c);
  const auto a = testing::synthetic_assessment("ia-none-full-partial.json");
  const auto json = summary_json(c, fp, a);
  EXPECT_NE(json.find("\"residual_exact\": \"43/38\""), std::string::npos);
  EXPECT_EQ(json, summary_json(c, fp, a));
  EXPECT_NE(summary_text(c, fp, a).find("IA   | 1.5    | 3   | 1.13"), std::string::npos);
  const auto full = testing::synthetic_assessment("all-full.json");
  EXPECT_NE(summary_text(c, fp, full).find("Total residual effort: 0.00\n"), std::string::npos);
}

TEST(Verdict, Text) {
  EXPECT_EQ(verdict_text({true, {}}), "pass\n");
  const auto text = verdict_text({false, {ScreeningCriterion::certification, ScreeningCriterion::keywords}});
  EXPECT_EQ(text.rfind("fail", 0), 0u);
  EXPECT_NE(text.find("(i)"), std::string::npos);
  EXPECT_NE(text.find("(iv)"), std::string::npos);
}

TEST(Csv, Quoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
}

}  // namespace
}  // namespace ccost
