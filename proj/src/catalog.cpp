#include "ccost/catalog.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace ccost {

const StandardRef* Catalog::find_standard(std::string_view id) const {
  auto it = std::find_if(standards.begin(), standards.end(),
                         [&](const StandardRef& s) { return s.id == id; });
  return it == standards.end() ? nullptr : &*it;
}

const Requirement* Catalog::find_requirement(std::string_view id) const {
  auto it = std::find_if(requirements.begin(), requirements.end(),
                         [&](const Requirement& r) { return r.id == id; });
  return it == requirements.end() ? nullptr : &*it;
}

const Control* Catalog::find_control(std::string_view id) const {
  auto it = std::find_if(controls.begin(), controls.end(),
                         [&](const Control& c) { return c.id == id; });
  return it == controls.end() ? nullptr : &*it;
}

const ControlGroup* Catalog::find_group(std::string_view requirement,
                                        std::int64_t group_id) const {
  auto it = std::find_if(groups.begin(), groups.end(), [&](const ControlGroup& g) {
    return g.requirement == requirement && g.group_id == group_id;
  });
  return it == groups.end() ? nullptr : &*it;
}

std::string_view issue_code_name(IssueCode code) {
  switch (code) {
    case IssueCode::empty_identifier: return "empty_identifier";
    case IssueCode::invalid_identifier: return "invalid_identifier";
    case IssueCode::duplicate_standard: return "duplicate_standard";
    case IssueCode::empty_id_prefix: return "empty_id_prefix";
    case IssueCode::duplicate_requirement: return "duplicate_requirement";
    case IssueCode::self_dependency: return "self_dependency";
    case IssueCode::dangling_dependency: return "dangling_dependency";
    case IssueCode::duplicate_control: return "duplicate_control";
    case IssueCode::dangling_standard_ref: return "dangling_standard_ref";
    case IssueCode::control_prefix_mismatch: return "control_prefix_mismatch";
    case IssueCode::invalid_group_id: return "invalid_group_id";
    case IssueCode::duplicate_group: return "duplicate_group";
    case IssueCode::dangling_requirement_ref: return "dangling_requirement_ref";
    case IssueCode::empty_group: return "empty_group";
    case IssueCode::dangling_control_ref: return "dangling_control_ref";
    case IssueCode::duplicate_control_in_group: return "duplicate_control_in_group";
    case IssueCode::duplicate_control_in_requirement: return "duplicate_control_in_requirement";
    case IssueCode::requirement_without_groups: return "requirement_without_groups";
    case IssueCode::standard_without_controls: return "standard_without_controls";
  }
  return "unknown";
}

std::string_view severity_name(Severity severity) {
  return severity == Severity::error ? "error" : "warning";
}

bool is_valid_identifier(std::string_view id) {
  if (id.empty()) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
           c == '.' || c == '_' || c == '-';
  });
}

bool has_errors(const std::vector<ValidationIssue>& issues) {
  return std::any_of(issues.begin(), issues.end(),
                     [](const ValidationIssue& i) { return i.severity == Severity::error; });
}

namespace {

class IssueSink {
 public:
  void error(IssueCode code, std::string location, std::string message) {
    issues_.push_back({Severity::error, code, std::move(location), std::move(message)});
  }
  void warning(IssueCode code, std::string location, std::string message) {
    issues_.push_back({Severity::warning, code, std::move(location), std::move(message)});
  }

  std::vector<ValidationIssue> take() {
    std::stable_sort(issues_.begin(), issues_.end(),
                     [](const ValidationIssue& a, const ValidationIssue& b) {
                       return std::tie(a.location, a.code, a.message) <
                              std::tie(b.location, b.code, b.message);
                     });
    return std::move(issues_);
  }

 private:
  std::vector<ValidationIssue> issues_;
};

// Reports an empty or malformed identifier; returns false if the id is unusable.
bool check_id(IssueSink& sink, std::string_view id, const std::string& location) {
  if (id.empty()) {
    sink.error(IssueCode::empty_identifier, location, "identifier is empty");
    return false;
  }
  if (!is_valid_identifier(id)) {
    sink.error(IssueCode::invalid_identifier, location,
               "identifier '" + std::string(id) + "' contains characters outside [A-Za-z0-9._-]");
    return false;
  }
  return true;
}

}  // namespace

std::vector<ValidationIssue> validate(const Catalog& catalog) {
  IssueSink sink;

  std::map<std::string, const StandardRef*> standards;
  for (const auto& s : catalog.standards) {
    const std::string loc = "standards/" + s.id;
    check_id(sink, s.id, loc);
    if (!standards.emplace(s.id, &s).second) {
      sink.error(IssueCode::duplicate_standard, loc, "standard id '" + s.id + "' is not unique");
    }
    if (s.id_prefix.empty()) {
      sink.error(IssueCode::empty_id_prefix, loc + "/id_prefix", "id_prefix is empty");
    }
  }

  std::set<std::string> requirement_ids;
  for (const auto& r : catalog.requirements) {
    const std::string loc = "requirements/" + r.id;
    check_id(sink, r.id, loc);
    if (!requirement_ids.insert(r.id).second) {
      sink.error(IssueCode::duplicate_requirement, loc,
                 "requirement id '" + r.id + "' is not unique");
    }
  }
  for (const auto& r : catalog.requirements) {
    for (const auto& dep : r.depends_on) {
      const std::string loc = "requirements/" + r.id + "/depends_on/" + dep;
      if (dep == r.id) {
        sink.error(IssueCode::self_dependency, loc, "requirement depends on itself");
      } else if (!requirement_ids.contains(dep)) {
        sink.error(IssueCode::dangling_dependency, loc,
                   "dependency '" + dep + "' is not a requirement of this catalog");
      }
    }
  }

  std::set<std::string> control_ids;
  std::set<std::string> standards_with_controls;
  for (const auto& c : catalog.controls) {
    const std::string loc = "controls/" + c.id;
    check_id(sink, c.id, loc);
    if (!control_ids.insert(c.id).second) {
      sink.error(IssueCode::duplicate_control, loc, "control id '" + c.id + "' is not unique");
    }
    auto it = standards.find(c.standard);
    if (it == standards.end()) {
      sink.error(IssueCode::dangling_standard_ref, loc + "/standard",
                 "standard '" + c.standard + "' does not exist");
      continue;
    }
    standards_with_controls.insert(c.standard);
    const std::string& prefix = it->second->id_prefix;
    if (!prefix.empty() && !c.id.starts_with(prefix + "-")) {
      sink.error(IssueCode::control_prefix_mismatch, loc,
                 "control id must start with '" + prefix + "-'");
    }
  }

  std::set<std::pair<std::string, std::int64_t>> group_keys;
  std::map<std::string, std::size_t> groups_per_requirement;
  // Control id -> first group (within one requirement) that claimed it.
  std::map<std::pair<std::string, std::string>, std::int64_t> claimed;

  std::vector<const ControlGroup*> ordered;
  ordered.reserve(catalog.groups.size());
  for (const auto& g : catalog.groups) ordered.push_back(&g);
  std::stable_sort(ordered.begin(), ordered.end(), [](const ControlGroup* a, const ControlGroup* b) {
    return std::tie(a->requirement, a->group_id) < std::tie(b->requirement, b->group_id);
  });

  for (const ControlGroup* g : ordered) {
    const std::string loc = "groups/" + g->requirement + "/" + std::to_string(g->group_id);
    if (g->group_id <= 0) {
      sink.error(IssueCode::invalid_group_id, loc, "group_id must be a positive integer");
    }
    if (!group_keys.emplace(g->requirement, g->group_id).second) {
      sink.error(IssueCode::duplicate_group, loc, "group id is not unique within the requirement");
    }
    if (!requirement_ids.contains(g->requirement)) {
      sink.error(IssueCode::dangling_requirement_ref, loc + "/requirement",
                 "requirement '" + g->requirement + "' does not exist");
    } else {
      ++groups_per_requirement[g->requirement];
    }
    if (g->controls.empty()) {
      sink.error(IssueCode::empty_group, loc + "/controls", "group has no controls");
    }
    std::set<std::string> members;
    for (const auto& member : g->controls) {
      const std::string mloc = loc + "/controls/" + member;
      if (!members.insert(member).second) {
        sink.error(IssueCode::duplicate_control_in_group, mloc,
                   "control '" + member + "' is listed twice in the group");
        continue;
      }
      if (!control_ids.contains(member)) {
        sink.error(IssueCode::dangling_control_ref, mloc,
                   "control '" + member + "' does not exist");
      }
      auto [it, inserted] = claimed.emplace(std::pair{g->requirement, member}, g->group_id);
      if (!inserted) {
        sink.error(IssueCode::duplicate_control_in_requirement, mloc,
                   "control '" + member + "' already belongs to group " +
                       std::to_string(it->second) + " of requirement " + g->requirement);
      }
    }
  }

  for (const auto& r : catalog.requirements) {
    if (!groups_per_requirement.contains(r.id)) {
      sink.warning(IssueCode::requirement_without_groups, "requirements/" + r.id,
                   "requirement has no control groups");
    }
  }
  for (const auto& s : catalog.standards) {
    if (!standards_with_controls.contains(s.id)) {
      sink.warning(IssueCode::standard_without_controls, "standards/" + s.id,
                   "standard has no controls");
    }
  }

  return sink.take();
}

std::vector<ControlGroup> groups_of(const Catalog& catalog, std::string_view requirement_id) {
  if (catalog.find_requirement(requirement_id) == nullptr) {
    throw UnknownRequirementError(std::string(requirement_id));
  }
  std::vector<ControlGroup> out;
  for (const auto& g : catalog.groups) {
    if (g.requirement == requirement_id) out.push_back(g);
  }
  std::stable_sort(out.begin(), out.end(), [](const ControlGroup& a, const ControlGroup& b) {
    return a.group_id < b.group_id;
  });
  return out;
}

Catalog canonical_order(Catalog catalog) {
  auto by_id = [](const auto& a, const auto& b) { return a.id < b.id; };
  std::stable_sort(catalog.standards.begin(), catalog.standards.end(), by_id);
  std::stable_sort(catalog.requirements.begin(), catalog.requirements.end(), by_id);
  std::stable_sort(catalog.controls.begin(), catalog.controls.end(), by_id);
  for (auto& r : catalog.requirements) std::sort(r.depends_on.begin(), r.depends_on.end());
  for (auto& g : catalog.groups) std::sort(g.controls.begin(), g.controls.end());
  std::stable_sort(catalog.groups.begin(), catalog.groups.end(),
                   [](const ControlGroup& a, const ControlGroup& b) {
                     return std::tie(a.requirement, a.group_id) < std::tie(b.requirement, b.group_id);
                   });
  return catalog;
}

}  // namespace ccost
