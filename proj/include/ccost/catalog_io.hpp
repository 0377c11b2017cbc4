#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ccost/assessment.hpp"
#include "ccost/catalog.hpp"
#include "ccost/scoring.hpp"

namespace ccost {

/// Malformed JSON (or invalid UTF-8). `offset` is the byte position reported by the parser.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::size_t offset, const std::string& detail)
      : std::runtime_error("syntax error at byte " + std::to_string(offset) + ": " + detail),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Well-formed JSON that does not match the schema. `path` is a JSON path like "$.groups[2].controls".
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string path, const std::string& detail)
      : std::runtime_error("schema error at " + path + ": " + detail), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// serialize_catalog / fingerprint on a catalog that fails validation.
class InvalidCatalogError : public std::runtime_error {
 public:
  explicit InvalidCatalogError(std::vector<ValidationIssue> issues);
  const std::vector<ValidationIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<ValidationIssue> issues_;
};

/// Parses a catalog document. Duplicate object keys, unknown keys and any
/// catalog_version other than "1" are rejected. Semantic checks are left to validate().
Catalog parse_catalog(std::string_view doc);

/// Canonical bytes: 2-space indented UTF-8 JSON, schema key order, arrays in
/// canonical_order(), trailing LF.
std::string serialize_catalog(const Catalog& catalog);

/// Lowercase hex SHA-256 of serialize_catalog(catalog).
std::string fingerprint(const Catalog& catalog);

std::string sha256_hex(std::string_view bytes);

Assessment parse_assessment(std::string_view doc);
std::string serialize_assessment(const Assessment& assessment);

/// {"certifications": n, "industry40_references": n,
///  "documented_topics": ["authentication", ...], "matched_keywords": ["IoT", ...]}
ScreeningProfile parse_screening_profile(std::string_view doc);

/// True for 64 lowercase hex characters.
bool is_fingerprint(std::string_view text);

std::string read_file(const std::string& path);

}  // namespace ccost
