#include "ccost/catalog_io.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>

#include <openssl/evp.h>

#include "json_util.hpp"

namespace ccost {

using nlohmann::json;
using nlohmann::ordered_json;
using namespace detail;

InvalidCatalogError::InvalidCatalogError(std::vector<ValidationIssue> issues)
    : std::runtime_error("catalog has " + std::to_string(std::count_if(
                                               issues.begin(), issues.end(),
                                               [](const ValidationIssue& i) {
                                                 return i.severity == Severity::error;
                                               })) +
                         " validation error(s)"),
      issues_(std::move(issues)) {}

Catalog parse_catalog(std::string_view doc) {
  const json root = parse_json(doc);
  expect_keys(root, "$", {"catalog_version", "name", "standards", "requirements", "controls", "groups"});

  Catalog c;
  c.catalog_version = get_string(root["catalog_version"], "$.catalog_version");
  if (c.catalog_version != "1") {
    throw SchemaError("$.catalog_version", "unsupported version '" + c.catalog_version + "'");
  }
  c.name = get_string(root["name"], "$.name");

  const auto& standards = get_array(root["standards"], "$.standards");
  for (std::size_t i = 0; i < standards.size(); ++i) {
    const std::string p = "$.standards[" + std::to_string(i) + "]";
    const auto& s = standards[i];
    expect_keys(s, p, {"id", "label", "id_prefix"});
    c.standards.push_back({get_string(s["id"], p + ".id"), get_string(s["label"], p + ".label"),
                           get_string(s["id_prefix"], p + ".id_prefix")});
  }

  const auto& requirements = get_array(root["requirements"], "$.requirements");
  for (std::size_t i = 0; i < requirements.size(); ++i) {
    const std::string p = "$.requirements[" + std::to_string(i) + "]";
    const auto& r = requirements[i];
    expect_keys(r, p, {"id", "name", "description", "depends_on"});
    c.requirements.push_back({get_string(r["id"], p + ".id"), get_string(r["name"], p + ".name"),
                              get_string(r["description"], p + ".description"),
                              get_string_list(r["depends_on"], p + ".depends_on")});
  }

  const auto& controls = get_array(root["controls"], "$.controls");
  for (std::size_t i = 0; i < controls.size(); ++i) {
    const std::string p = "$.controls[" + std::to_string(i) + "]";
    const auto& ctl = controls[i];
    expect_keys(ctl, p, {"id", "standard", "title"});
    c.controls.push_back({get_string(ctl["id"], p + ".id"),
                          get_string(ctl["standard"], p + ".standard"),
                          get_string(ctl["title"], p + ".title")});
  }

  const auto& groups = get_array(root["groups"], "$.groups");
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const std::string p = "$.groups[" + std::to_string(i) + "]";
    const auto& g = groups[i];
    expect_keys(g, p, {"requirement", "group_id", "controls", "assessment_guidance"});
    c.groups.push_back({get_string(g["requirement"], p + ".requirement"),
                        get_integer(g["group_id"], p + ".group_id"),
                        get_string_list(g["controls"], p + ".controls"),
                        get_string(g["assessment_guidance"], p + ".assessment_guidance")});
  }
  return c;
}

std::string serialize_catalog(const Catalog& catalog) {
  auto issues = validate(catalog);
  if (has_errors(issues)) throw InvalidCatalogError(std::move(issues));

  const Catalog c = canonical_order(catalog);
  ordered_json root = ordered_json::object();
  root["catalog_version"] = c.catalog_version;
  root["name"] = c.name;
  root["standards"] = ordered_json::array();
  for (const auto& s : c.standards) {
    ordered_json o;
    o["id"] = s.id;
    o["label"] = s.label;
    o["id_prefix"] = s.id_prefix;
    root["standards"].push_back(std::move(o));
  }
  root["requirements"] = ordered_json::array();
  for (const auto& r : c.requirements) {
    ordered_json o;
    o["id"] = r.id;
    o["name"] = r.name;
    o["description"] = r.description;
    o["depends_on"] = r.depends_on;
    root["requirements"].push_back(std::move(o));
  }
  root["controls"] = ordered_json::array();
  for (const auto& ctl : c.controls) {
    ordered_json o;
    o["id"] = ctl.id;
    o["standard"] = ctl.standard;
    o["title"] = ctl.title;
    root["controls"].push_back(std::move(o));
  }
  root["groups"] = ordered_json::array();
  for (const auto& g : c.groups) {
    ordered_json o;
    o["requirement"] = g.requirement;
    o["group_id"] = g.group_id;
    o["controls"] = g.controls;
    o["assessment_guidance"] = g.assessment_guidance;
    root["groups"].push_back(std::move(o));
  }
  return dump_canonical(root);
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

std::string fingerprint(const Catalog& catalog) { return sha256_hex(serialize_catalog(catalog)); }

bool is_fingerprint(std::string_view text) {
  return text.size() == 64 && std::all_of(text.begin(), text.end(), [](char ch) {
           return (ch >= '0' && ch <= '9') || (ch >= 'a' && ch <= 'f');
         });
}

Assessment parse_assessment(std::string_view doc) {
  const json root = parse_json(doc);
  expect_keys(root, "$",
              {"assessment_version", "subject", "catalog_name", "catalog_fingerprint", "ratings"});
  const auto version = get_string(root["assessment_version"], "$.assessment_version");
  if (version != "1") {
    throw SchemaError("$.assessment_version", "unsupported version '" + version + "'");
  }

  Assessment a;
  a.subject = get_string(root["subject"], "$.subject");
  a.catalog_name = get_string(root["catalog_name"], "$.catalog_name");
  a.catalog_fingerprint = get_string(root["catalog_fingerprint"], "$.catalog_fingerprint");
  if (!is_fingerprint(a.catalog_fingerprint)) {
    throw SchemaError("$.catalog_fingerprint", "expected 64 lowercase hex characters");
  }
  const auto& ratings = root["ratings"];
  if (!ratings.is_object()) {
    throw SchemaError("$.ratings", std::string("expected object, got ") + type_label(ratings));
  }
  for (const auto& [key, value] : ratings.items()) {
    const std::string p = "$.ratings." + key;
    auto group = GroupKey::parse(key);
    if (!group) throw SchemaError(p, "key must look like REQ/group_id");
    auto rating = parse_rating(get_string(value, p));
    if (!rating) throw SchemaError(p, "rating must be one of full, partial, none");
    a.ratings.emplace(std::move(*group), *rating);
  }
  return a;
}

std::string serialize_assessment(const Assessment& assessment) {
  std::vector<std::pair<std::string, Rating>> ratings;
  for (const auto& [key, rating] : assessment.ratings) ratings.emplace_back(key.str(), rating);
  std::sort(ratings.begin(), ratings.end());

  ordered_json root = ordered_json::object();
  root["assessment_version"] = "1";
  root["subject"] = assessment.subject;
  root["catalog_name"] = assessment.catalog_name;
  root["catalog_fingerprint"] = assessment.catalog_fingerprint;
  root["ratings"] = ordered_json::object();
  for (const auto& [key, rating] : ratings) root["ratings"][key] = rating_name(rating);
  return dump_canonical(root);
}

ScreeningProfile parse_screening_profile(std::string_view doc) {
  const json root = parse_json(doc);
  expect_keys(root, "$",
              {"certifications", "industry40_references", "documented_topics", "matched_keywords"});
  ScreeningProfile p;
  p.certifications = get_integer(root["certifications"], "$.certifications");
  p.industry40_references = get_integer(root["industry40_references"], "$.industry40_references");
  if (p.certifications < 0) throw SchemaError("$.certifications", "must be >= 0");
  if (p.industry40_references < 0) throw SchemaError("$.industry40_references", "must be >= 0");
  const auto topics = get_string_list(root["documented_topics"], "$.documented_topics");
  for (std::size_t i = 0; i < topics.size(); ++i) {
    auto t = parse_topic(topics[i]);
    if (!t) {
      throw SchemaError("$.documented_topics[" + std::to_string(i) + "]",
                        "expected authentication, encryption or user_management");
    }
    p.documented_topics.insert(*t);
  }
  const auto keywords = get_string_list(root["matched_keywords"], "$.matched_keywords");
  for (std::size_t i = 0; i < keywords.size(); ++i) {
    auto k = parse_keyword(keywords[i]);
    if (!k) {
      throw SchemaError("$.matched_keywords[" + std::to_string(i) + "]",
                        "expected \"remote access\", \"IoT\" or \"Industry 4.0\"");
    }
    p.matched_keywords.insert(*k);
  }
  return p;
}

std::string read_file(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace ccost
