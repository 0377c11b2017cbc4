#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccost/assessment.hpp"
#include "ccost/catalog.hpp"
#include "ccost/ratio.hpp"

namespace ccost {

// ---------------------------------------------------------------------------
// Implementation effort
//
// Every control costs the same, so a group's cost is its control count ct.
// Within one requirement the counts are normalized by the largest group:
//
//   ct     = |group.controls|
//   ct_max = max ct over the groups of the same requirement
//   IE     = ct / ct_max          (0 < IE <= 1, kept exact)
//
// IE is relative, not monetary; the largest group of each requirement is 1.
// ---------------------------------------------------------------------------

struct EffortRow {
  std::string requirement;
  std::int64_t group_id = 0;
  std::int64_t ct = 0;
  std::int64_t ct_max = 0;
  Ratio ie;

  friend bool operator==(const EffortRow&, const EffortRow&) = default;
};

class EffortDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

std::int64_t control_count(const ControlGroup& group);

/// Throws std::invalid_argument for an empty list or groups spanning
/// more than one requirement.
std::int64_t count_max(std::span<const ControlGroup> groups);

/// Exact ct / ct_max. Throws EffortDomainError unless 1 <= ct <= ct_max.
Ratio implementation_effort(std::int64_t ct, std::int64_t ct_max);

/// One row per group ordered by (requirement, group_id); ct_max is scoped to
/// each requirement. Requirements without groups contribute no rows.
std::vector<EffortRow> effort_table(const Catalog& catalog);

/// Two-decimal display of an effort. Throws EffortDomainError outside (0, 1].
std::string format_effort(const Ratio& ie);

// ---------------------------------------------------------------------------
// Assessment scoring
// ---------------------------------------------------------------------------

struct RequirementScore {
  std::string requirement;
  Ratio points;             // multiple of 1/2
  std::int64_t max_points;  // number of groups

  friend bool operator==(const RequirementScore&, const RequirementScore&) = default;
};

/// Throws FingerprintMismatchError or UnknownGroupError unless the assessment
/// is bound to `catalog_fingerprint` and rates only groups that exist.
void check_binding(const Catalog& catalog, const std::string& catalog_fingerprint,
                   const Assessment& assessment);

/// Per requirement (catalog order by id), sum of rating weights over its groups.
/// Binding is checked against `catalog_fingerprint`.
std::vector<RequirementScore> score_assessment(const Catalog& catalog,
                                               const std::string& catalog_fingerprint,
                                               const Assessment& assessment);

/// Convenience overload that fingerprints the catalog itself.
std::vector<RequirementScore> score_assessment(const Catalog& catalog, const Assessment& assessment);

/// "1.5", "3.0": half-point values with one decimal.
std::string format_points(const Ratio& points);

struct GroupResidual {
  GroupKey key;
  Rating rating = Rating::none;
  Ratio ie;
  Ratio residual;  // (1 - weight(rating)) * ie

  friend bool operator==(const GroupResidual&, const GroupResidual&) = default;
};

struct ResidualReport {
  std::vector<GroupResidual> groups;             // effort_table order
  std::map<std::string, Ratio> per_requirement;  // every requirement, zero if no groups
  Ratio total;

  friend bool operator==(const ResidualReport&, const ResidualReport&) = default;
};

/// Remaining effort for groups that are not fully covered. Partial coverage is
/// assumed to leave half of the group's effort open.
ResidualReport residual_effort(const Catalog& catalog, const std::string& catalog_fingerprint,
                               const Assessment& assessment);
ResidualReport residual_effort(const Catalog& catalog, const Assessment& assessment);

/// Pointwise maximum of two assessments of the same catalog; the subject
/// becomes "a + b". Throws FingerprintMismatchError on different bindings.
Assessment combine(const Assessment& a, const Assessment& b);

// ---------------------------------------------------------------------------
// Importance (controls per requirement and standard)
// ---------------------------------------------------------------------------

struct RequirementImportance {
  std::string requirement;
  std::int64_t total = 0;
  std::map<std::string, std::int64_t> per_standard;  // every standard id, zero-filled
  int rank = 0;                                      // 1 = most controls
  std::vector<std::string> depends_on;

  friend bool operator==(const RequirementImportance&, const RequirementImportance&) = default;
};

struct ImportanceReport {
  std::vector<RequirementImportance> requirements;  // ordered by rank

  const RequirementImportance* find(const std::string& requirement) const;
};

/// Ranks requirements by distinct control count, descending; ties go to the
/// lexicographically smaller requirement id.
ImportanceReport requirement_importance(const Catalog& catalog);

// ---------------------------------------------------------------------------
// Candidate screening
// ---------------------------------------------------------------------------

enum class Topic { authentication, encryption, user_management };
enum class Keyword { remote_access, iot, industry40 };

struct ScreeningProfile {
  std::int64_t certifications = 0;
  std::int64_t industry40_references = 0;
  std::set<Topic> documented_topics;
  std::set<Keyword> matched_keywords;
};

enum class ScreeningCriterion {
  certification,        // (i)   at least one security certification
  industry40_use,       // (ii)  two or more Industry 4.0 references
  documented_topics,    // (iii) authentication, encryption and user management documented
  keywords,             // (iv)  at least two of the search keywords
};

struct ScreeningVerdict {
  bool pass = false;
  std::vector<ScreeningCriterion> failed;
};

ScreeningVerdict screen_candidate(const ScreeningProfile& profile);

std::string_view criterion_name(ScreeningCriterion criterion);
std::string_view criterion_label(ScreeningCriterion criterion);  // "i" .. "iv"
std::string_view topic_name(Topic topic);
std::string_view keyword_name(Keyword keyword);
std::optional<Topic> parse_topic(std::string_view text);
std::optional<Keyword> parse_keyword(std::string_view text);

}  // namespace ccost
