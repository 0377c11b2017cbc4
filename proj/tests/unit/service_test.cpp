#include <gtest/gtest.h>

#include <filesystem>
#include <thread>

#include "ccost/catalog_io.hpp"
#include "ccost/reporting.hpp"
#include "ccost/service.hpp"
#include "httplib.h"
#include "test_support.hpp"

namespace ccost {
namespace {

namespace fs = std::filesystem;
using testing::sample_catalog;

class ServiceTest : public ::testing::Test {
 protected:
  Service service;
  std::string fp = service.add_catalog(sample_catalog());
  std::string id = service.create_assessment(fp, "subject").id;

  std::string put(const std::string& req, int group, const std::string& rating, std::int64_t rev) {
    const auto r = service.handle_put_rating(id, req, std::to_string(group),
                                             R"({"rating": ")" + rating + R"(", "expected_revision": )" +
                                                 std::to_string(rev) + "}");
    return std::to_string(r.status) + " " + r.body;
  }
};

TEST_F(ServiceTest, PutRatingRevisions) {
  EXPECT_EQ(std::get<std::int64_t>(service.put_rating(id, {"IA", 1}, Rating::full, 0)), 1);
  EXPECT_EQ(std::get<std::int64_t>(service.put_rating(id, {"IA", 2}, Rating::full, 1)), 2);
  EXPECT_EQ(std::get<std::int64_t>(service.put_rating(id, {"IA", 3}, Rating::full, 2)), 3);
  EXPECT_EQ(std::get<std::int64_t>(service.put_rating(id, {"IA", 3}, Rating::none, 3)), 4);
  EXPECT_EQ(std::get<std::int64_t>(service.put_rating(id, {"AV", 1}, Rating::none, 4)), 5);
  const auto conflict = service.put_rating(id, {"IA", 1}, Rating::none, 3);
  EXPECT_EQ(std::get<Service::Conflict>(conflict).current_revision, 5);
  EXPECT_THROW(service.put_rating(id, {"XX", 9}, Rating::full, 5), UnknownGroupError);
  EXPECT_THROW(service.put_rating("a999", {"IA", 1}, Rating::full, 0), NotFoundError);
}

TEST_F(ServiceTest, PutRatingHttpShape) {
  EXPECT_EQ(put("IA", 1, "full", 0), "200 {\n  \"revision\": 1\n}\n");
  EXPECT_EQ(put("IA", 1, "full", 0), "409 {\n  \"error\": \"conflict\",\n  \"current_revision\": 1\n}\n");
  EXPECT_EQ(put("XX", 9, "full", 1).substr(0, 3), "422");
  EXPECT_EQ(put("IA", 1, "maybe", 1).substr(0, 3), "400");
  EXPECT_EQ(service.handle_put_rating("nope", "IA", "1", R"({"rating": "full", "expected_revision": 0})").status,
            404);
}

TEST_F(ServiceTest, SummaryEqualsLibrary) {
  const auto c = sample_catalog();
  auto a = service.assessment(id).assessment;
  EXPECT_EQ(service.summary(id), summary_json(c, fp, a));
  service.put_rating(id, {"IA", 1}, Rating::none, 0);
  service.put_rating(id, {"IA", 2}, Rating::full, 1);
  service.put_rating(id, {"IA", 3}, Rating::partial, 2);
  a = service.assessment(id).assessment;
  const auto r = service.handle_get_summary(id);
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(r.body, summary_json(c, fp, a));
  EXPECT_EQ(r.headers.at("X-Revision"), "3");
  EXPECT_NE(r.body.find("\"residual\": \"1.13\""), std::string::npos);
}

TEST_F(ServiceTest, AllFullResidualZero) {
  std::int64_t rev = 0;
  for (const auto& g : sample_catalog().groups) {
    rev = std::get<std::int64_t>(service.put_rating(id, {g.requirement, g.group_id}, Rating::full, rev));
  }
  EXPECT_NE(service.summary(id).find("\"total\": \"0.00\""), std::string::npos);
}

TEST_F(ServiceTest, UpgradeLowersTotal) {
  const auto before = residual_effort(sample_catalog(), fp, service.assessment(id).assessment).total;
  service.put_rating(id, {"DI", 2}, Rating::full, 0);
  const auto after = residual_effort(sample_catalog(), fp, service.assessment(id).assessment).total;
  EXPECT_LT(after, before);
}

TEST_F(ServiceTest, WhatIf) {
  service.put_rating(id, {"IA", 2}, Rating::partial, 0);
  const auto stored = service.summary(id);
  EXPECT_EQ(service.handle_what_if(id, R"({"overlay": {}})").body, stored);

  const auto r = service.handle_what_if(id, R"({"overlay": {"IA/2": "full"}})");
  EXPECT_EQ(r.status, 200);
  auto a = service.assessment(id).assessment;
  a.ratings[{"IA", 2}] = Rating::full;
  EXPECT_EQ(r.body, summary_json(sample_catalog(), fp, a));
  const auto t0 = residual_effort(sample_catalog(), fp, service.assessment(id).assessment).total;
  const auto t1 = residual_effort(sample_catalog(), fp, a).total;
  EXPECT_EQ(t0 - t1, Ratio(17, 38));

  EXPECT_EQ(service.summary(id), stored);
  EXPECT_EQ(service.assessment(id).revision, 1);
  EXPECT_EQ(service.handle_what_if(id, R"({"overlay": {"XX/9": "full"}})").status, 422);
  EXPECT_EQ(service.handle_what_if("a404", R"({"overlay": {}})").status, 404);
}

TEST_F(ServiceTest, Combined) {
  const auto other = service.create_assessment(fp, "other").id;
  service.put_rating(id, {"IA", 1}, Rating::partial, 0);
  service.put_rating(other, {"IA", 1}, Rating::full, 0);
  service.put_rating(other, {"IA", 2}, Rating::partial, 1);
  const auto r = service.handle_combined(R"({"ids": [")" + id + R"(", ")" + other + R"("]})");
  ASSERT_EQ(r.status, 200);
  const auto combined = combine(service.assessment(id).assessment, service.assessment(other).assessment);
  EXPECT_EQ(r.body, summary_json(sample_catalog(), fp, combined));
  EXPECT_NE(r.body.find("\"subject\": \"subject + other\""), std::string::npos);
}

TEST_F(ServiceTest, CatalogEndpoints) {
  const auto doc = read_file(testing::sample_catalog_path());
  const auto posted = service.handle_post_catalog(doc);
  EXPECT_EQ(posted.status, 201);
  EXPECT_NE(posted.body.find(fp), std::string::npos);
  EXPECT_EQ(service.handle_get_catalog(fp).body, doc);
  EXPECT_EQ(service.handle_get_effort(fp).body, effort_json(sample_catalog()));
  EXPECT_EQ(service.handle_get_importance(fp).body, importance_json(sample_catalog()));
  EXPECT_EQ(service.handle_get_catalog(std::string(64, '0')).status, 404);

  std::string bad_doc = doc;
  const auto pos = bad_doc.find("\"controls\": [\n        \"");
  ASSERT_NE(pos, std::string::npos);
  bad_doc.insert(pos + 14, "\n        \"X-99\",");
  const auto rejected = service.handle_post_catalog(bad_doc);
  EXPECT_EQ(rejected.status, 422);
  EXPECT_NE(rejected.body.find("dangling_control_ref"), std::string::npos);
  EXPECT_EQ(service.handle_post_catalog("{").status, 400);
}

TEST_F(ServiceTest, AssessmentEndpoints) {
  const auto r = service.handle_post_assessment(R"({"catalog_fingerprint": ")" + fp + R"(", "subject": "x"})");
  EXPECT_EQ(r.status, 201);
  EXPECT_NE(r.body.find("\"revision\": 0"), std::string::npos);
  EXPECT_EQ(service.handle_post_assessment(R"({"catalog_fingerprint": "00", "subject": "x"})").status, 404);
  EXPECT_EQ(service.handle_post_assessment(R"({"subject": "x"})").status, 400);
  EXPECT_EQ(service.handle_get_assessment(id).status, 200);
}

TEST_F(ServiceTest, ProjectEndpoints) {
  auto r = service.handle_post_project(R"({"name": "remote-access"})");
  ASSERT_EQ(r.status, 201);
  const std::string pid = "p1";
  EXPECT_NE(r.body.find("\"id\": \"p1\""), std::string::npos);
  EXPECT_EQ(service.handle_advance(pid, R"({"artifact": {"kind": "measure", "standards": []}})").status, 422);
  EXPECT_EQ(service.handle_resolve(pid, R"({"outcome": "accept"})").status, 409);
  EXPECT_EQ(service.handle_advance(pid, R"({"artifact": {"kind": "define", "requirements": ["IA"]}})").status, 200);
  EXPECT_EQ(service.handle_advance(pid, R"({"artifact": {"kind": "measure", "standards": ["IEC"]}})").status, 200);
  EXPECT_EQ(service.handle_advance(pid, R"({"artifact": {"kind": "analyze", "catalog_fingerprint": ")" + fp +
                                            R"("}})")
                .status,
            200);
  EXPECT_EQ(service.handle_advance(pid, R"({"artifact": {"kind": "improve", "effort_digest": "d"}})").status, 200);
  r = service.handle_resolve(pid, R"({"outcome": "accept", "assessments": ["platform A"]})");
  EXPECT_EQ(r.status, 200);
  EXPECT_NE(r.body.find("\"current_phase\": \"completed\""), std::string::npos);
  EXPECT_EQ(service.handle_get_project("p9").status, 404);
  EXPECT_EQ(service.handle_post_project(R"({"name": ""})").status, 400);
}

TEST_F(ServiceTest, Screening) {
  const auto r = service.handle_screening(R"({"profile": {"certifications": 0, "industry40_references": 2,
    "documented_topics": ["authentication", "encryption", "user_management"], "matched_keywords": ["IoT", "Industry 4.0"]}})");
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(r.body, verdict_json({false, {ScreeningCriterion::certification}}));
}

TEST(ServicePersistence, ReloadRestoresState) {
  const auto dir = fs::temp_directory_path() / ("ccost-service-test-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  std::string fp;
  std::string id;
  std::string summary;
  {
    Service s{dir};
    fp = s.add_catalog(sample_catalog());
    id = s.create_assessment(fp, "persisted").id;
    s.put_rating(id, {"IA", 1}, Rating::full, 0);
    s.put_rating(id, {"IA", 3}, Rating::partial, 1);
    s.handle_post_project(R"({"name": "kept"})");
    s.handle_advance("p1", R"({"artifact": {"kind": "define", "requirements": ["IA"]}})");
    summary = s.summary(id);
  }
  EXPECT_TRUE(fs::exists(dir / "catalogs" / (fp + ".json")));
  EXPECT_TRUE(fs::exists(dir / "assessments" / id / "00000000.json"));
  EXPECT_TRUE(fs::exists(dir / "assessments" / id / "00000002.json"));
  {
    Service s{dir};
    EXPECT_EQ(s.assessment(id).revision, 2);
    EXPECT_EQ(s.summary(id), summary);
    EXPECT_NE(s.handle_get_project("p1").body.find("\"current_phase\": \"measure\""), std::string::npos);
    EXPECT_EQ(s.create_assessment(fp, "next").id, "a2");
  }
  fs::remove_all(dir);
}

TEST(ServiceHttp, RoutesOverLoopback) {
  Service service;
  httplib::Server server;
  mount_routes(server, service);
  const int port = server.bind_to_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  std::thread t([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  auto posted = client.Post("/catalogs", read_file(testing::sample_catalog_path()), "application/json");
  ASSERT_TRUE(posted);
  EXPECT_EQ(posted->status, 201);
  const auto fp = fingerprint(sample_catalog());
  auto created = client.Post("/assessments", R"({"catalog_fingerprint": ")" + fp + R"(", "subject": "http"})",
                             "application/json");
  ASSERT_TRUE(created);
  EXPECT_EQ(created->status, 201);
  auto put = client.Put("/assessments/a1/ratings/IA/1", R"({"rating": "full", "expected_revision": 0})",
                        "application/json");
  ASSERT_TRUE(put);
  EXPECT_EQ(put->status, 200);
  auto summary = client.Get("/assessments/a1/summary");
  ASSERT_TRUE(summary);
  EXPECT_EQ(summary->body, service.summary("a1"));
  EXPECT_EQ(summary->get_header_value("X-Revision"), "1");
  EXPECT_EQ(summary->get_header_value("Access-Control-Allow-Origin"), "*");
  auto effort = client.Get("/catalogs/" + fp + "/effort");
  ASSERT_TRUE(effort);
  EXPECT_EQ(effort->body, effort_json(sample_catalog()));
  auto missing = client.Get("/assessments/a9/summary");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);

  server.stop();
  t.join();
}

}  // namespace
}  // namespace ccost
