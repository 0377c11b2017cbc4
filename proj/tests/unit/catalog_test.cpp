#include <gtest/gtest.h>

#include <algorithm>

#include "ccost/catalog.hpp"
#include "test_support.hpp"

namespace ccost {
namespace {

using testing::sample_catalog;
using testing::tiny_catalog;

std::vector<IssueCode> codes(const std::vector<ValidationIssue>& issues) {
  std::vector<IssueCode> out;
  for (const auto& i : issues) out.push_back(i.code);
  return out;
}

TEST(Validate, SampleCatalogHasNoIssues) { EXPECT_TRUE(validate(sample_catalog()).empty()); }

TEST(Validate, ControlInTwoGroupsOfOneRequirement) {
  auto c = tiny_catalog(2);
  c.groups.push_back({"R", 2, {"S-1"}, ""});
  const auto issues = validate(c);
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_EQ(issues[0].code, IssueCode::duplicate_control_in_requirement);
  EXPECT_EQ(issues[0].severity, Severity::error);
  EXPECT_EQ(issues[0].location, "groups/R/2/controls/S-1");
}

TEST(Validate, SampleWithIec1Repeated) {
  auto c = sample_catalog();
  for (auto& g : c.groups) {
    if (g.requirement == "IA" && g.group_id == 2) g.controls.push_back("IEC-1");
  }
  EXPECT_EQ(codes(validate(c)), std::vector{IssueCode::duplicate_control_in_requirement});
}

TEST(Validate, DanglingControlRef) {
  auto c = tiny_catalog(1);
  c.groups[0].controls.push_back("X-99");
  const auto issues = validate(c);
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_EQ(issues[0].code, IssueCode::dangling_control_ref);
  EXPECT_EQ(issues[0].location, "groups/R/1/controls/X-99");
}

TEST(Validate, ControlSharedAcrossRequirementsIsAllowed) {
  auto c = tiny_catalog(1);
  c.requirements.push_back({"Q", "Other", "", {}});
  c.groups.push_back({"Q", 1, {"S-1"}, ""});
  EXPECT_TRUE(validate(c).empty());
}

TEST(Validate, StructuralErrors) {
  auto c = tiny_catalog(1);
  c.standards.push_back({"std", "dup", ""});
  c.requirements.push_back({"R", "dup", "", {}});
  c.requirements[0].depends_on = {"R", "NOPE"};
  c.controls.push_back({"S-1", "std", "dup"});
  c.controls.push_back({"T-1", "std", "wrong prefix"});
  c.controls.push_back({"U-1", "missing", "dangling standard"});
  c.controls.push_back({"bad id!", "std", "x"});
  c.groups.push_back({"R", 1, {"S-1"}, "duplicate group"});
  c.groups.push_back({"R", 0, {}, "bad id, empty"});
  c.groups.push_back({"ZZ", 1, {"S-1", "S-1"}, "dangling requirement"});
  const auto got = codes(validate(c));
  for (auto code : {IssueCode::duplicate_standard, IssueCode::empty_id_prefix, IssueCode::duplicate_requirement,
                    IssueCode::self_dependency, IssueCode::dangling_dependency, IssueCode::duplicate_control,
                    IssueCode::control_prefix_mismatch, IssueCode::dangling_standard_ref,
                    IssueCode::invalid_identifier, IssueCode::duplicate_group, IssueCode::invalid_group_id,
                    IssueCode::empty_group, IssueCode::dangling_requirement_ref,
                    IssueCode::duplicate_control_in_group}) {
    EXPECT_NE(std::find(got.begin(), got.end(), code), got.end()) << issue_code_name(code);
  }
}

TEST(Validate, WarningsOnly) {
  auto c = tiny_catalog(1);
  c.requirements.push_back({"Q", "No groups", "", {}});
  c.standards.push_back({"idle", "Unused", "I"});
  const auto issues = validate(c);
  EXPECT_EQ(codes(issues), (std::vector{IssueCode::requirement_without_groups, IssueCode::standard_without_controls}));
  EXPECT_FALSE(has_errors(issues));
}

TEST(Validate, OrderedByLocationThenCode) {
  auto c = tiny_catalog(1);
  c.groups[0].controls.push_back("X-2");
  c.groups[0].controls.push_back("X-1");
  const auto issues = validate(c);
  ASSERT_EQ(issues.size(), 2u);
  EXPECT_EQ(issues[0].location, "groups/R/1/controls/X-1");
  EXPECT_EQ(issues[1].location, "groups/R/1/controls/X-2");
  EXPECT_EQ(validate(c), issues);
}

TEST(Identifier, Pattern) {
  EXPECT_TRUE(is_valid_identifier("NIST-53-18"));
  EXPECT_TRUE(is_valid_identifier("a.b_c"));
  EXPECT_FALSE(is_valid_identifier(""));
  EXPECT_FALSE(is_valid_identifier("IEC 1"));
  EXPECT_FALSE(is_valid_identifier("ü"));
}

TEST(GroupsOf, SampleIaInOrder) {
  const auto groups = groups_of(sample_catalog(), "IA");
  ASSERT_EQ(groups.size(), 3u);
  EXPECT_EQ(groups[0].group_id, 1);
  EXPECT_EQ(groups[1].group_id, 2);
  EXPECT_EQ(groups[2].group_id, 3);
}

TEST(GroupsOf, UnknownRequirement) { EXPECT_THROW(groups_of(sample_catalog(), "ZZ"), UnknownRequirementError); }

TEST(GroupsOf, RequirementWithoutGroups) {
  auto c = tiny_catalog(1);
  c.requirements.push_back({"Q", "No groups", "", {}});
  EXPECT_TRUE(groups_of(c, "Q").empty());
}

TEST(GroupsOf, SortsShuffledGroups) {
  auto c = tiny_catalog(3);
  c.groups = {{"R", 7, {"S-1"}, ""}, {"R", 2, {"S-2"}, ""}, {"R", 5, {"S-3"}, ""}};
  const auto groups = groups_of(c, "R");
  EXPECT_EQ(groups[0].group_id, 2);
  EXPECT_EQ(groups[1].group_id, 5);
  EXPECT_EQ(groups[2].group_id, 7);
}

TEST(Sample, IaDependsOnEc) {
  const auto c = sample_catalog();
  EXPECT_EQ(c.find_requirement("IA")->depends_on, std::vector<std::string>{"EC"});
}

TEST(Sample, SixRequirements) {
  const auto c = sample_catalog();
  std::vector<std::string> ids;
  for (const auto& r : c.requirements) ids.push_back(r.id);
  EXPECT_EQ(ids, (std::vector<std::string>{"AV", "CC", "DC", "DI", "EC", "IA"}));
}

}  // namespace
}  // namespace ccost
