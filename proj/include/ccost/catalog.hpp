#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ccost {

struct StandardRef {
  std::string id;
  std::string label;
  std::string id_prefix;  // e.g. "IEC", "ISO-02", "NIST-53"

  friend bool operator==(const StandardRef&, const StandardRef&) = default;
};

struct Requirement {
  std::string id;  // e.g. "IA"
  std::string name;
  std::string description;
  std::vector<std::string> depends_on;

  friend bool operator==(const Requirement&, const Requirement&) = default;
};

struct Control {
  std::string id;        // "<id_prefix>-..." of its standard
  std::string standard;  // StandardRef::id
  std::string title;

  friend bool operator==(const Control&, const Control&) = default;
};

/// Similar controls of one requirement, summarized into one unit of rating
/// and effort estimation.
struct ControlGroup {
  std::string requirement;
  std::int64_t group_id = 0;
  std::vector<std::string> controls;
  std::string assessment_guidance;

  friend bool operator==(const ControlGroup&, const ControlGroup&) = default;
};

struct Catalog {
  std::string name;
  std::string catalog_version = "1";
  std::vector<StandardRef> standards;
  std::vector<Requirement> requirements;
  std::vector<Control> controls;
  std::vector<ControlGroup> groups;

  friend bool operator==(const Catalog&, const Catalog&) = default;

  const StandardRef* find_standard(std::string_view id) const;
  const Requirement* find_requirement(std::string_view id) const;
  const Control* find_control(std::string_view id) const;
  const ControlGroup* find_group(std::string_view requirement, std::int64_t group_id) const;
};

enum class Severity { error, warning };

/// Fixed enumeration of validation findings. The string form (issue_code_name)
/// is what appears in reports and the service's 422 bodies.
enum class IssueCode {
  empty_identifier,
  invalid_identifier,
  duplicate_standard,
  empty_id_prefix,
  duplicate_requirement,
  self_dependency,
  dangling_dependency,
  duplicate_control,
  dangling_standard_ref,
  control_prefix_mismatch,
  invalid_group_id,
  duplicate_group,
  dangling_requirement_ref,
  empty_group,
  dangling_control_ref,
  duplicate_control_in_group,
  duplicate_control_in_requirement,
  requirement_without_groups,  // warning
  standard_without_controls,   // warning
};

std::string_view issue_code_name(IssueCode code);
std::string_view severity_name(Severity severity);

struct ValidationIssue {
  Severity severity = Severity::error;
  IssueCode code = IssueCode::empty_identifier;
  std::string location;
  std::string message;

  friend bool operator==(const ValidationIssue&, const ValidationIssue&) = default;
};

/// Checks every structural invariant of the catalog. Issues are sorted by
/// (location, code); an empty result means the catalog is fully consistent.
std::vector<ValidationIssue> validate(const Catalog& catalog);

bool has_errors(const std::vector<ValidationIssue>& issues);

/// True for nonempty strings over [A-Za-z0-9._-].
bool is_valid_identifier(std::string_view id);

class UnknownRequirementError : public std::out_of_range {
 public:
  explicit UnknownRequirementError(const std::string& id)
      : std::out_of_range("unknown requirement: " + id), id_(id) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

/// Groups of one requirement, ascending by group_id.
std::vector<ControlGroup> groups_of(const Catalog& catalog, std::string_view requirement_id);

/// Same catalog with every array in canonical order: standards, requirements
/// and controls by id, groups by (requirement, group_id), and the control list
/// of each group lexicographically.
Catalog canonical_order(Catalog catalog);

}  // namespace ccost
