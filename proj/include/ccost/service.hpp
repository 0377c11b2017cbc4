#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "ccost/assessment.hpp"
#include "ccost/catalog.hpp"
#include "ccost/workflow.hpp"

namespace httplib {
class Server;
}

namespace ccost {

struct StoredAssessment {
  std::string id;
  std::int64_t revision = 0;
  Assessment assessment;
};

struct HttpResponse {
  int status = 200;
  std::string body;
  std::map<std::string, std::string> headers;
};

class NotFoundError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// In-memory state of the HTTP service with optional on-disk persistence.
///
/// Layout under the data directory (all files canonical JSON, never rewritten):
///   catalogs/<fingerprint>.json
///   assessments/<id>/<revision>.json   one file per accepted revision
///   projects/<id>/<history length>.json
///
/// Catalogs are immutable once stored. Writes to one assessment or project are
/// serialized by a per-entry mutex; reads copy under the same short lock.
class Service {
 public:
  explicit Service(std::optional<std::filesystem::path> data_dir = std::nullopt);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Typed core. Errors are thrown: NotFoundError, UnknownGroupError,
  // FingerprintMismatchError, SchemaError, WorkflowError.
  struct Conflict {
    std::int64_t current_revision;
  };
  using PutResult = std::variant<std::int64_t, Conflict>;  // new revision or conflict

  /// Stores a validated catalog; returns its fingerprint.
  std::string add_catalog(const Catalog& catalog);
  StoredAssessment create_assessment(const std::string& catalog_fingerprint, std::string subject);
  StoredAssessment assessment(const std::string& id) const;
  PutResult put_rating(const std::string& id, const GroupKey& key, Rating rating,
                       std::int64_t expected_revision);
  std::string summary(const std::string& id) const;
  std::string what_if(const std::string& id, const std::map<GroupKey, Rating>& overlay) const;

  // HTTP-shaped handlers; `body` is the raw request body.
  HttpResponse handle_post_catalog(std::string_view body);
  HttpResponse handle_get_catalog(const std::string& fp) const;
  HttpResponse handle_get_effort(const std::string& fp) const;
  HttpResponse handle_get_importance(const std::string& fp) const;
  HttpResponse handle_post_assessment(std::string_view body);
  HttpResponse handle_get_assessment(const std::string& id) const;
  HttpResponse handle_put_rating(const std::string& id, const std::string& requirement,
                                 const std::string& group, std::string_view body);
  HttpResponse handle_get_summary(const std::string& id) const;
  HttpResponse handle_what_if(const std::string& id, std::string_view body) const;
  HttpResponse handle_combined(std::string_view body) const;
  HttpResponse handle_post_project(std::string_view body);
  HttpResponse handle_get_project(const std::string& id) const;
  HttpResponse handle_advance(const std::string& id, std::string_view body);
  HttpResponse handle_resolve(const std::string& id, std::string_view body);
  HttpResponse handle_screening(std::string_view body) const;

 private:
  struct CatalogEntry;
  struct AssessmentEntry;
  struct ProjectEntry;

  std::shared_ptr<const CatalogEntry> catalog_entry(const std::string& fp) const;
  std::shared_ptr<AssessmentEntry> assessment_entry(const std::string& id) const;
  std::shared_ptr<ProjectEntry> project_entry(const std::string& id) const;
  void load();
  void persist_assessment(const StoredAssessment& stored) const;
  void persist_project(const std::string& id, const Project& project) const;
  HttpResponse project_response(int status, const std::string& id, const Project& project) const;

  std::optional<std::filesystem::path> data_dir_;
  mutable std::shared_mutex registry_mutex_;
  std::map<std::string, std::shared_ptr<const CatalogEntry>> catalogs_;
  std::map<std::string, std::shared_ptr<AssessmentEntry>> assessments_;
  std::map<std::string, std::shared_ptr<ProjectEntry>> projects_;
  std::uint64_t next_assessment_ = 1;
  std::uint64_t next_project_ = 1;
};

/// Registers every endpoint of `service` on `server`.
void mount_routes(httplib::Server& server, Service& service);

}  // namespace ccost
