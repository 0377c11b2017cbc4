#include "ccost/service.hpp"

#include <algorithm>
#include <fstream>

#include "ccost/catalog_io.hpp"
#include "ccost/reporting.hpp"
#include "ccost/scoring.hpp"
#include "httplib.h"
#include "json_util.hpp"

namespace ccost {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;
using namespace detail;

struct Service::CatalogEntry {
  Catalog catalog;
  std::string fingerprint;
  std::string document;  // canonical bytes
};

struct Service::AssessmentEntry {
  mutable std::mutex mutex;
  StoredAssessment stored;
};

struct Service::ProjectEntry {
  mutable std::mutex mutex;
  Project project;
};

namespace {

std::string revision_file_name(std::int64_t n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%08lld.json", static_cast<long long>(n));
  return buf;
}

void write_new_file(const fs::path& path, std::string_view bytes) {
  fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

// Highest-numbered "<n>.json" in `dir`, if any.
std::optional<fs::path> latest_revision(const fs::path& dir) {
  std::optional<fs::path> best;
  std::int64_t best_n = -1;
  for (const auto& f : fs::directory_iterator(dir)) {
    if (f.path().extension() != ".json") continue;
    const auto stem = f.path().stem().string();
    if (stem.empty() || stem.find_first_not_of("0123456789") != std::string::npos) continue;
    const auto n = std::stoll(stem);
    if (n > best_n) {
      best_n = n;
      best = f.path();
    }
  }
  return best;
}

std::int64_t revision_of(const fs::path& file) { return std::stoll(file.stem().string()); }

std::uint64_t id_number(const std::string& id, char prefix) {
  if (id.size() < 2 || id.front() != prefix) return 0;
  const auto digits = id.substr(1);
  if (digits.find_first_not_of("0123456789") != std::string::npos) return 0;
  return std::stoull(digits);
}

HttpResponse json_response(int status, const ordered_json& body) {
  return {status, dump_canonical(body), {}};
}

HttpResponse error_response(int status, std::string_view code, std::string_view message) {
  ordered_json body = ordered_json::object();
  body["error"] = code;
  body["message"] = message;
  return json_response(status, body);
}

template <class F>
HttpResponse guarded(F&& handler) {
  try {
    return handler();
  } catch (const SyntaxError& e) {
    return error_response(400, "syntax_error", e.what());
  } catch (const SchemaError& e) {
    return error_response(400, "schema_error", e.what());
  } catch (const NotFoundError& e) {
    return error_response(404, "not_found", e.what());
  } catch (const UnknownGroupError& e) {
    return error_response(422, "unknown_group", e.what());
  } catch (const UnknownRequirementError& e) {
    return error_response(422, "unknown_requirement", e.what());
  } catch (const FingerprintMismatchError& e) {
    return error_response(422, "fingerprint_mismatch", e.what());
  } catch (const WrongArtifactKindError& e) {
    return error_response(422, "wrong_artifact_kind", e.what());
  } catch (const InvalidCatalogError& e) {
    return error_response(422, "validation_failed", e.what());
  } catch (const WorkflowError& e) {
    return error_response(409, "wrong_phase", e.what());
  } catch (const std::invalid_argument& e) {
    return error_response(400, "bad_request", e.what());
  } catch (const std::exception& e) {
    return error_response(500, "internal_error", e.what());
  }
}

std::map<GroupKey, Rating> parse_overlay(const json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected object");
  std::map<GroupKey, Rating> out;
  for (const auto& [key, value] : j.items()) {
    auto group = GroupKey::parse(key);
    if (!group) throw SchemaError(path + "." + key, "key must look like REQ/group_id");
    auto rating = parse_rating(get_string(value, path + "." + key));
    if (!rating) throw SchemaError(path + "." + key, "rating must be one of full, partial, none");
    out[*group] = *rating;
  }
  return out;
}

}  // namespace

Service::Service(std::optional<fs::path> data_dir) : data_dir_(std::move(data_dir)) {
  if (data_dir_) load();
}

Service::~Service() = default;

void Service::load() {
  const fs::path root = *data_dir_;
  fs::create_directories(root / "catalogs");
  fs::create_directories(root / "assessments");
  fs::create_directories(root / "projects");

  for (const auto& f : fs::directory_iterator(root / "catalogs")) {
    if (f.path().extension() != ".json") continue;
    const auto doc = read_file(f.path().string());
    auto catalog = parse_catalog(doc);
    const auto fp = fingerprint(catalog);
    if (fp != f.path().stem().string()) {
      throw std::runtime_error(f.path().string() + ": content does not match its fingerprint");
    }
    auto canonical = serialize_catalog(catalog);
    catalogs_[fp] = std::make_shared<const CatalogEntry>(
        CatalogEntry{canonical_order(std::move(catalog)), fp, std::move(canonical)});
  }
  for (const auto& d : fs::directory_iterator(root / "assessments")) {
    if (!d.is_directory()) continue;
    const auto latest = latest_revision(d.path());
    if (!latest) continue;
    auto entry = std::make_shared<AssessmentEntry>();
    entry->stored.id = d.path().filename().string();
    entry->stored.revision = revision_of(*latest);
    entry->stored.assessment = parse_assessment(read_file(latest->string()));
    next_assessment_ = std::max(next_assessment_, id_number(entry->stored.id, 'a') + 1);
    assessments_[entry->stored.id] = std::move(entry);
  }
  for (const auto& d : fs::directory_iterator(root / "projects")) {
    if (!d.is_directory()) continue;
    const auto latest = latest_revision(d.path());
    if (!latest) continue;
    auto entry = std::make_shared<ProjectEntry>();
    entry->project = parse_project(read_file(latest->string()));
    const auto id = d.path().filename().string();
    next_project_ = std::max(next_project_, id_number(id, 'p') + 1);
    projects_[id] = std::move(entry);
  }
}

void Service::persist_assessment(const StoredAssessment& stored) const {
  if (!data_dir_) return;
  write_new_file(*data_dir_ / "assessments" / stored.id / revision_file_name(stored.revision),
                 serialize_assessment(stored.assessment));
}

void Service::persist_project(const std::string& id, const Project& project) const {
  if (!data_dir_) return;
  write_new_file(*data_dir_ / "projects" / id /
                     revision_file_name(static_cast<std::int64_t>(project.history.size())),
                 serialize_project(project));
}

std::shared_ptr<const Service::CatalogEntry> Service::catalog_entry(const std::string& fp) const {
  std::shared_lock lock(registry_mutex_);
  auto it = catalogs_.find(fp);
  if (it == catalogs_.end()) throw NotFoundError("no catalog with fingerprint " + fp);
  return it->second;
}

std::shared_ptr<Service::AssessmentEntry> Service::assessment_entry(const std::string& id) const {
  std::shared_lock lock(registry_mutex_);
  auto it = assessments_.find(id);
  if (it == assessments_.end()) throw NotFoundError("no assessment " + id);
  return it->second;
}

std::shared_ptr<Service::ProjectEntry> Service::project_entry(const std::string& id) const {
  std::shared_lock lock(registry_mutex_);
  auto it = projects_.find(id);
  if (it == projects_.end()) throw NotFoundError("no project " + id);
  return it->second;
}

// -- typed core ----------------------------------------------------------------

std::string Service::add_catalog(const Catalog& catalog) {
  auto doc = serialize_catalog(catalog);  // throws InvalidCatalogError
  auto fp = sha256_hex(doc);
  std::unique_lock lock(registry_mutex_);
  if (!catalogs_.contains(fp)) {
    if (data_dir_) write_new_file(*data_dir_ / "catalogs" / (fp + ".json"), doc);
    catalogs_[fp] = std::make_shared<const CatalogEntry>(
        CatalogEntry{canonical_order(catalog), fp, std::move(doc)});
  }
  return fp;
}

StoredAssessment Service::create_assessment(const std::string& catalog_fingerprint,
                                            std::string subject) {
  const auto cat = catalog_entry(catalog_fingerprint);
  auto entry = std::make_shared<AssessmentEntry>();
  entry->stored.revision = 0;
  entry->stored.assessment = {std::move(subject), cat->catalog.name, cat->fingerprint, {}};

  std::unique_lock lock(registry_mutex_);
  entry->stored.id = "a" + std::to_string(next_assessment_++);
  persist_assessment(entry->stored);
  assessments_[entry->stored.id] = entry;
  return entry->stored;
}

StoredAssessment Service::assessment(const std::string& id) const {
  const auto entry = assessment_entry(id);
  std::lock_guard lock(entry->mutex);
  return entry->stored;
}

Service::PutResult Service::put_rating(const std::string& id, const GroupKey& key, Rating rating,
                                       std::int64_t expected_revision) {
  const auto entry = assessment_entry(id);
  std::lock_guard lock(entry->mutex);
  const auto cat = catalog_entry(entry->stored.assessment.catalog_fingerprint);
  if (cat->catalog.find_group(key.requirement, key.group_id) == nullptr) {
    throw UnknownGroupError(key.str());
  }
  if (entry->stored.revision != expected_revision) return Conflict{entry->stored.revision};

  StoredAssessment next = entry->stored;
  next.assessment.ratings[key] = rating;
  ++next.revision;
  persist_assessment(next);
  entry->stored = std::move(next);
  return entry->stored.revision;
}

std::string Service::summary(const std::string& id) const {
  const auto stored = assessment(id);
  const auto cat = catalog_entry(stored.assessment.catalog_fingerprint);
  return summary_json(cat->catalog, cat->fingerprint, stored.assessment);
}

std::string Service::what_if(const std::string& id,
                             const std::map<GroupKey, Rating>& overlay) const {
  auto stored = assessment(id);
  const auto cat = catalog_entry(stored.assessment.catalog_fingerprint);
  for (const auto& [key, rating] : overlay) {
    if (cat->catalog.find_group(key.requirement, key.group_id) == nullptr) {
      throw UnknownGroupError(key.str());
    }
    stored.assessment.ratings[key] = rating;
  }
  return summary_json(cat->catalog, cat->fingerprint, stored.assessment);
}

// -- HTTP-shaped handlers ----------------------------------------------------------

HttpResponse Service::handle_post_catalog(std::string_view body) {
  return guarded([&] {
    const auto catalog = parse_catalog(body);
    const auto issues = validate(catalog);
    if (has_errors(issues)) {
      ordered_json out = ordered_json::object();
      out["error"] = "validation_failed";
      out["issues"] = ordered_json::array();
      for (const auto& i : issues) {
        ordered_json o = ordered_json::object();
        o["severity"] = severity_name(i.severity);
        o["code"] = issue_code_name(i.code);
        o["location"] = i.location;
        o["message"] = i.message;
        out["issues"].push_back(std::move(o));
      }
      return json_response(422, out);
    }
    ordered_json out = ordered_json::object();
    out["name"] = catalog.name;
    out["fingerprint"] = add_catalog(catalog);
    return json_response(201, out);
  });
}

HttpResponse Service::handle_get_catalog(const std::string& fp) const {
  return guarded([&] { return HttpResponse{200, catalog_entry(fp)->document, {}}; });
}

HttpResponse Service::handle_get_effort(const std::string& fp) const {
  return guarded([&] { return HttpResponse{200, effort_json(catalog_entry(fp)->catalog), {}}; });
}

HttpResponse Service::handle_get_importance(const std::string& fp) const {
  return guarded(
      [&] { return HttpResponse{200, importance_json(catalog_entry(fp)->catalog), {}}; });
}

HttpResponse Service::handle_post_assessment(std::string_view body) {
  return guarded([&] {
    const json req = parse_json(body);
    expect_keys(req, "$", {"catalog_fingerprint", "subject"});
    const auto stored = create_assessment(get_string(req["catalog_fingerprint"], "$.catalog_fingerprint"),
                                          get_string(req["subject"], "$.subject"));
    ordered_json out = ordered_json::object();
    out["id"] = stored.id;
    out["revision"] = stored.revision;
    return json_response(201, out);
  });
}

HttpResponse Service::handle_get_assessment(const std::string& id) const {
  return guarded([&] {
    const auto stored = assessment(id);
    ordered_json out = ordered_json::object();
    out["id"] = stored.id;
    out["revision"] = stored.revision;
    out["assessment"] = ordered_json::parse(serialize_assessment(stored.assessment));
    return json_response(200, out);
  });
}

HttpResponse Service::handle_put_rating(const std::string& id, const std::string& requirement,
                                        const std::string& group, std::string_view body) {
  return guarded([&] {
    const auto key = GroupKey::parse(requirement + "/" + group);
    if (!key) throw UnknownGroupError(requirement + "/" + group);
    const json req = parse_json(body);
    expect_keys(req, "$", {"rating", "expected_revision"});
    const auto rating = parse_rating(get_string(req["rating"], "$.rating"));
    if (!rating) throw SchemaError("$.rating", "rating must be one of full, partial, none");
    const auto expected = get_integer(req["expected_revision"], "$.expected_revision");

    const auto result = put_rating(id, *key, *rating, expected);
    ordered_json out = ordered_json::object();
    if (const auto* conflict = std::get_if<Conflict>(&result)) {
      out["error"] = "conflict";
      out["current_revision"] = conflict->current_revision;
      return json_response(409, out);
    }
    out["revision"] = std::get<std::int64_t>(result);
    return json_response(200, out);
  });
}

HttpResponse Service::handle_get_summary(const std::string& id) const {
  return guarded([&] {
    // Revision and body are read from one snapshot.
    const auto stored = assessment(id);
    const auto cat = catalog_entry(stored.assessment.catalog_fingerprint);
    return HttpResponse{200, summary_json(cat->catalog, cat->fingerprint, stored.assessment),
                        {{"X-Revision", std::to_string(stored.revision)}}};
  });
}

HttpResponse Service::handle_what_if(const std::string& id, std::string_view body) const {
  return guarded([&] {
    const json req = parse_json(body);
    expect_keys(req, "$", {"overlay"});
    return HttpResponse{200, what_if(id, parse_overlay(req["overlay"], "$.overlay")), {}};
  });
}

HttpResponse Service::handle_combined(std::string_view body) const {
  return guarded([&] {
    const json req = parse_json(body);
    expect_keys(req, "$", {"ids"});
    const auto ids = get_string_list(req["ids"], "$.ids");
    if (ids.empty()) throw SchemaError("$.ids", "at least one assessment id is required");
    Assessment combined = assessment(ids.front()).assessment;
    for (std::size_t i = 1; i < ids.size(); ++i) {
      combined = combine(combined, assessment(ids[i]).assessment);
    }
    const auto cat = catalog_entry(combined.catalog_fingerprint);
    return HttpResponse{200, summary_json(cat->catalog, cat->fingerprint, combined), {}};
  });
}

HttpResponse Service::project_response(int status, const std::string& id,
                                       const Project& project) const {
  ordered_json out = ordered_json::object();
  out["id"] = id;
  out["project"] = ordered_json::parse(serialize_project(project));
  return json_response(status, out);
}

HttpResponse Service::handle_post_project(std::string_view body) {
  return guarded([&] {
    const json req = parse_json(body);
    expect_keys(req, "$", {"name"});
    auto entry = std::make_shared<ProjectEntry>();
    entry->project = new_project(get_string(req["name"], "$.name"));
    std::string id;
    {
      std::unique_lock lock(registry_mutex_);
      id = "p" + std::to_string(next_project_++);
      persist_project(id, entry->project);
      projects_[id] = entry;
    }
    return project_response(201, id, entry->project);
  });
}

HttpResponse Service::handle_get_project(const std::string& id) const {
  return guarded([&] {
    const auto entry = project_entry(id);
    std::lock_guard lock(entry->mutex);
    return project_response(200, id, entry->project);
  });
}

HttpResponse Service::handle_advance(const std::string& id, std::string_view body) {
  return guarded([&] {
    const json req = parse_json(body);
    expect_keys(req, "$", {"artifact"});
    auto artifact = parse_artifact(req["artifact"].dump());
    const auto entry = project_entry(id);
    std::lock_guard lock(entry->mutex);
    auto next = advance(entry->project, std::move(artifact));
    persist_project(id, next);
    entry->project = std::move(next);
    return project_response(200, id, entry->project);
  });
}

HttpResponse Service::handle_resolve(const std::string& id, std::string_view body) {
  return guarded([&] {
    const json req = parse_json(body);
    if (!req.is_object() || !req.contains("outcome")) {
      throw SchemaError("$.outcome", "missing required field");
    }
    std::vector<std::string> subjects;
    if (req.contains("assessments")) {
      expect_keys(req, "$", {"outcome", "assessments"});
      subjects = get_string_list(req["assessments"], "$.assessments");
    } else {
      expect_keys(req, "$", {"outcome"});
    }
    const auto outcome = get_string(req["outcome"], "$.outcome");
    if (outcome != "accept" && outcome != "iterate") {
      throw SchemaError("$.outcome", "expected accept or iterate");
    }
    const auto entry = project_entry(id);
    std::lock_guard lock(entry->mutex);
    auto next = resolve_control(entry->project,
                                outcome == "accept" ? ControlOutcome::accept : ControlOutcome::iterate,
                                std::move(subjects));
    persist_project(id, next);
    entry->project = std::move(next);
    return project_response(200, id, entry->project);
  });
}

HttpResponse Service::handle_screening(std::string_view body) const {
  return guarded([&] {
    const json req = parse_json(body);
    expect_keys(req, "$", {"profile"});
    const auto profile = parse_screening_profile(req["profile"].dump());
    return HttpResponse{200, verdict_json(screen_candidate(profile)), {}};
  });
}

// -- routing ---------------------------------------------------------------------

void mount_routes(httplib::Server& server, Service& service) {
  auto send = [](httplib::Response& res, const HttpResponse& r) {
    res.status = r.status;
    for (const auto& [k, v] : r.headers) res.set_header(k, v);
    res.set_content(r.body, "application/json");
  };

  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Allow-Methods", "GET, POST, PUT, OPTIONS"},
                              {"Access-Control-Expose-Headers", "X-Revision"}});
  server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  server.Post("/catalogs", [&, send](const httplib::Request& req, httplib::Response& res) {
    send(res, service.handle_post_catalog(req.body));
  });
  server.Get(R"(/catalogs/([0-9a-f]{64}))", [&, send](const httplib::Request& req, httplib::Response& res) {
    send(res, service.handle_get_catalog(req.matches[1]));
  });
  server.Get(R"(/catalogs/([0-9a-f]{64})/effort)",
             [&, send](const httplib::Request& req, httplib::Response& res) {
               send(res, service.handle_get_effort(req.matches[1]));
             });
  server.Get(R"(/catalogs/([0-9a-f]{64})/importance)",
             [&, send](const httplib::Request& req, httplib::Response& res) {
               send(res, service.handle_get_importance(req.matches[1]));
             });
  server.Post("/assessments", [&, send](const httplib::Request& req, httplib::Response& res) {
    send(res, service.handle_post_assessment(req.body));
  });
  server.Post("/assessments/combined", [&, send](const httplib::Request& req, httplib::Response& res) {
    send(res, service.handle_combined(req.body));
  });
  server.Get(R"(/assessments/([A-Za-z0-9_-]+))",
             [&, send](const httplib::Request& req, httplib::Response& res) {
               send(res, service.handle_get_assessment(req.matches[1]));
             });
  server.Put(R"(/assessments/([A-Za-z0-9_-]+)/ratings/([A-Za-z0-9._-]+)/([0-9]+))",
             [&, send](const httplib::Request& req, httplib::Response& res) {
               send(res, service.handle_put_rating(req.matches[1], req.matches[2], req.matches[3],
                                                   req.body));
             });
  server.Get(R"(/assessments/([A-Za-z0-9_-]+)/summary)",
             [&, send](const httplib::Request& req, httplib::Response& res) {
               send(res, service.handle_get_summary(req.matches[1]));
             });
  server.Post(R"(/assessments/([A-Za-z0-9_-]+)/what-if)",
              [&, send](const httplib::Request& req, httplib::Response& res) {
                send(res, service.handle_what_if(req.matches[1], req.body));
              });
  server.Post("/projects", [&, send](const httplib::Request& req, httplib::Response& res) {
    send(res, service.handle_post_project(req.body));
  });
  server.Get(R"(/projects/([A-Za-z0-9_-]+))", [&, send](const httplib::Request& req, httplib::Response& res) {
    send(res, service.handle_get_project(req.matches[1]));
  });
  server.Post(R"(/projects/([A-Za-z0-9_-]+)/advance)",
              [&, send](const httplib::Request& req, httplib::Response& res) {
                send(res, service.handle_advance(req.matches[1], req.body));
              });
  server.Post(R"(/projects/([A-Za-z0-9_-]+)/resolve)",
              [&, send](const httplib::Request& req, httplib::Response& res) {
                send(res, service.handle_resolve(req.matches[1], req.body));
              });
  server.Post("/screening", [&, send](const httplib::Request& req, httplib::Response& res) {
    send(res, service.handle_screening(req.body));
  });
}

}  // namespace ccost
