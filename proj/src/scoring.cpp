#include "ccost/scoring.hpp"

#include <algorithm>
#include <charconv>
#include <tuple>

#include "ccost/catalog_io.hpp"

namespace ccost {

// -- assessment basics -------------------------------------------------------

Ratio rating_weight(Rating rating) {
  switch (rating) {
    case Rating::full: return Ratio(1);
    case Rating::partial: return Ratio(1, 2);
    case Rating::none: return Ratio(0);
  }
  return Ratio(0);
}

std::string_view rating_name(Rating rating) {
  switch (rating) {
    case Rating::full: return "full";
    case Rating::partial: return "partial";
    case Rating::none: return "none";
  }
  return "none";
}

std::optional<Rating> parse_rating(std::string_view token) {
  if (token == "full") return Rating::full;
  if (token == "partial") return Rating::partial;
  if (token == "none") return Rating::none;
  return std::nullopt;
}

std::string GroupKey::str() const { return requirement + "/" + std::to_string(group_id); }

std::optional<GroupKey> GroupKey::parse(std::string_view text) {
  const auto slash = text.rfind('/');
  if (slash == std::string_view::npos) return std::nullopt;
  const auto req = text.substr(0, slash);
  const auto num = text.substr(slash + 1);
  if (!is_valid_identifier(req) || num.empty() || num.front() == '0') return std::nullopt;
  std::int64_t id = 0;
  auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), id);
  if (ec != std::errc{} || ptr != num.data() + num.size() || id <= 0) return std::nullopt;
  return GroupKey{std::string(req), id};
}

Rating Assessment::rating_of(const GroupKey& key) const {
  auto it = ratings.find(key);
  return it == ratings.end() ? Rating::none : it->second;
}

// -- effort --------------------------------------------------------------------

std::int64_t control_count(const ControlGroup& group) {
  return static_cast<std::int64_t>(group.controls.size());
}

std::int64_t count_max(std::span<const ControlGroup> groups) {
  if (groups.empty()) throw std::invalid_argument("count_max: no groups");
  const auto& requirement = groups.front().requirement;
  std::int64_t best = 0;
  for (const auto& g : groups) {
    if (g.requirement != requirement) {
      throw std::invalid_argument("count_max: groups of '" + requirement + "' and '" +
                                  g.requirement + "' mixed");
    }
    best = std::max(best, control_count(g));
  }
  return best;
}

Ratio implementation_effort(std::int64_t ct, std::int64_t ct_max) {
  if (ct < 1 || ct > ct_max) {
    throw EffortDomainError("implementation_effort: need 1 <= ct <= ct_max, got ct=" +
                            std::to_string(ct) + " ct_max=" + std::to_string(ct_max));
  }
  return Ratio(ct, ct_max);
}

std::vector<EffortRow> effort_table(const Catalog& catalog) {
  std::vector<std::string> requirement_ids;
  for (const auto& r : catalog.requirements) requirement_ids.push_back(r.id);
  std::sort(requirement_ids.begin(), requirement_ids.end());

  std::vector<EffortRow> rows;
  for (const auto& id : requirement_ids) {
    const auto groups = groups_of(catalog, id);
    if (groups.empty()) continue;
    const std::int64_t ct_max = count_max(groups);
    for (const auto& g : groups) {
      const std::int64_t ct = control_count(g);
      rows.push_back({id, g.group_id, ct, ct_max, implementation_effort(ct, ct_max)});
    }
  }
  return rows;
}

std::string format_effort(const Ratio& ie) {
  if (ie <= 0 || ie > 1) throw EffortDomainError("format_effort: value outside (0, 1]");
  return format_fixed2(ie);
}

// -- scoring ---------------------------------------------------------------------

void check_binding(const Catalog& catalog, const std::string& catalog_fingerprint,
                   const Assessment& assessment) {
  if (assessment.catalog_fingerprint != catalog_fingerprint) {
    throw FingerprintMismatchError(catalog_fingerprint, assessment.catalog_fingerprint);
  }
  for (const auto& [key, rating] : assessment.ratings) {
    if (catalog.find_group(key.requirement, key.group_id) == nullptr) {
      throw UnknownGroupError(key.str());
    }
  }
}

std::vector<RequirementScore> score_assessment(const Catalog& catalog,
                                               const std::string& catalog_fingerprint,
                                               const Assessment& assessment) {
  check_binding(catalog, catalog_fingerprint, assessment);
  std::vector<std::string> ids;
  for (const auto& r : catalog.requirements) ids.push_back(r.id);
  std::sort(ids.begin(), ids.end());

  std::vector<RequirementScore> out;
  for (const auto& id : ids) {
    RequirementScore score{id, Ratio(0), 0};
    for (const auto& g : groups_of(catalog, id)) {
      score.points += rating_weight(assessment.rating_of({id, g.group_id}));
      ++score.max_points;
    }
    out.push_back(std::move(score));
  }
  return out;
}

std::vector<RequirementScore> score_assessment(const Catalog& catalog, const Assessment& assessment) {
  return score_assessment(catalog, fingerprint(catalog), assessment);
}

std::string format_points(const Ratio& points) {
  const Ratio doubled = points * 2;
  if (points < 0 || boost::multiprecision::denominator(doubled) != 1) {
    throw std::domain_error("format_points: not a non-negative multiple of 0.5");
  }
  const boost::multiprecision::cpp_int halves = boost::multiprecision::numerator(doubled);
  std::string out = boost::multiprecision::cpp_int(halves / 2).str();
  out += (halves % 2 == 0) ? ".0" : ".5";
  return out;
}

ResidualReport residual_effort(const Catalog& catalog, const std::string& catalog_fingerprint,
                               const Assessment& assessment) {
  check_binding(catalog, catalog_fingerprint, assessment);
  ResidualReport report;
  for (const auto& r : catalog.requirements) report.per_requirement[r.id] = 0;
  for (auto& row : effort_table(catalog)) {
    GroupKey key{row.requirement, row.group_id};
    const Rating rating = assessment.rating_of(key);
    Ratio residual = (Ratio(1) - rating_weight(rating)) * row.ie;
    report.per_requirement[row.requirement] += residual;
    report.total += residual;
    report.groups.push_back({std::move(key), rating, std::move(row.ie), std::move(residual)});
  }
  return report;
}

ResidualReport residual_effort(const Catalog& catalog, const Assessment& assessment) {
  return residual_effort(catalog, fingerprint(catalog), assessment);
}

Assessment combine(const Assessment& a, const Assessment& b) {
  if (a.catalog_fingerprint != b.catalog_fingerprint) {
    throw FingerprintMismatchError(a.catalog_fingerprint, b.catalog_fingerprint);
  }
  Assessment out;
  out.subject = a.subject + " + " + b.subject;
  out.catalog_name = a.catalog_name;
  out.catalog_fingerprint = a.catalog_fingerprint;
  out.ratings = a.ratings;
  for (const auto& [key, rating] : b.ratings) {
    auto [it, inserted] = out.ratings.emplace(key, rating);
    if (!inserted) it->second = std::max(it->second, rating);
  }
  return out;
}

// -- importance ------------------------------------------------------------------

const RequirementImportance* ImportanceReport::find(const std::string& requirement) const {
  auto it = std::find_if(requirements.begin(), requirements.end(),
                         [&](const RequirementImportance& r) { return r.requirement == requirement; });
  return it == requirements.end() ? nullptr : &*it;
}

ImportanceReport requirement_importance(const Catalog& catalog) {
  ImportanceReport report;
  for (const auto& r : catalog.requirements) {
    RequirementImportance entry;
    entry.requirement = r.id;
    entry.depends_on = r.depends_on;
    std::sort(entry.depends_on.begin(), entry.depends_on.end());
    for (const auto& s : catalog.standards) entry.per_standard[s.id] = 0;

    std::set<std::string> distinct;
    for (const auto& g : catalog.groups) {
      if (g.requirement == r.id) distinct.insert(g.controls.begin(), g.controls.end());
    }
    for (const auto& id : distinct) {
      if (const Control* c = catalog.find_control(id)) {
        ++entry.per_standard[c->standard];
        ++entry.total;
      }
    }
    report.requirements.push_back(std::move(entry));
  }
  std::sort(report.requirements.begin(), report.requirements.end(),
            [](const RequirementImportance& a, const RequirementImportance& b) {
              return std::tuple(-a.total, a.requirement) < std::tuple(-b.total, b.requirement);
            });
  int rank = 0;
  for (auto& r : report.requirements) r.rank = ++rank;
  return report;
}

// -- screening -------------------------------------------------------------------

ScreeningVerdict screen_candidate(const ScreeningProfile& profile) {
  ScreeningVerdict v;
  if (profile.certifications < 1) v.failed.push_back(ScreeningCriterion::certification);
  if (profile.industry40_references < 2) v.failed.push_back(ScreeningCriterion::industry40_use);
  if (profile.documented_topics.size() < 3) v.failed.push_back(ScreeningCriterion::documented_topics);
  if (profile.matched_keywords.size() < 2) v.failed.push_back(ScreeningCriterion::keywords);
  v.pass = v.failed.empty();
  return v;
}

std::string_view criterion_name(ScreeningCriterion criterion) {
  switch (criterion) {
    case ScreeningCriterion::certification: return "certification";
    case ScreeningCriterion::industry40_use: return "industry40_use";
    case ScreeningCriterion::documented_topics: return "documented_topics";
    case ScreeningCriterion::keywords: return "keywords";
  }
  return "";
}

std::string_view criterion_label(ScreeningCriterion criterion) {
  switch (criterion) {
    case ScreeningCriterion::certification: return "i";
    case ScreeningCriterion::industry40_use: return "ii";
    case ScreeningCriterion::documented_topics: return "iii";
    case ScreeningCriterion::keywords: return "iv";
  }
  return "";
}

std::string_view topic_name(Topic topic) {
  switch (topic) {
    case Topic::authentication: return "authentication";
    case Topic::encryption: return "encryption";
    case Topic::user_management: return "user_management";
  }
  return "";
}

std::string_view keyword_name(Keyword keyword) {
  switch (keyword) {
    case Keyword::remote_access: return "remote access";
    case Keyword::iot: return "IoT";
    case Keyword::industry40: return "Industry 4.0";
  }
  return "";
}

std::optional<Topic> parse_topic(std::string_view text) {
  for (auto t : {Topic::authentication, Topic::encryption, Topic::user_management}) {
    if (topic_name(t) == text) return t;
  }
  return std::nullopt;
}

std::optional<Keyword> parse_keyword(std::string_view text) {
  for (auto k : {Keyword::remote_access, Keyword::iot, Keyword::industry40}) {
    if (keyword_name(k) == text) return k;
  }
  return std::nullopt;
}

}  // namespace ccost
