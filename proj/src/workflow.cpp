#include "ccost/workflow.hpp"

#include "ccost/catalog_io.hpp"
#include "json_util.hpp"

namespace ccost {

using nlohmann::json;
using nlohmann::ordered_json;
using namespace detail;

std::string_view phase_name(Phase phase) {
  switch (phase) {
    case Phase::define: return "define";
    case Phase::measure: return "measure";
    case Phase::analyze: return "analyze";
    case Phase::improve: return "improve";
    case Phase::control: return "control";
    case Phase::completed: return "completed";
  }
  return "";
}

Phase parse_phase(std::string_view text) {
  for (auto p : {Phase::define, Phase::measure, Phase::analyze, Phase::improve, Phase::control,
                 Phase::completed}) {
    if (phase_name(p) == text) return p;
  }
  throw std::invalid_argument("unknown phase: " + std::string(text));
}

Phase artifact_phase(const Artifact& artifact) {
  return static_cast<Phase>(artifact.index());
}

Project new_project(std::string name) {
  if (name.empty()) throw std::invalid_argument("project name must not be empty");
  Project p;
  p.name = std::move(name);
  return p;
}

Project advance(Project project, Artifact artifact) {
  if (project.current_phase == Phase::completed) {
    throw AlreadyCompletedError("project '" + project.name + "' is already completed");
  }
  const Phase kind = artifact_phase(artifact);
  if (kind != project.current_phase) {
    throw WrongArtifactKindError("expected a " + std::string(phase_name(project.current_phase)) +
                                 " artifact, got " + std::string(phase_name(kind)));
  }
  if (auto* control = std::get_if<ControlArtifact>(&artifact)) {
    return resolve_control(std::move(project), control->outcome, std::move(control->assessments));
  }
  project.history.push_back({project.current_phase, project.iteration, std::move(artifact)});
  project.current_phase = static_cast<Phase>(static_cast<int>(project.current_phase) + 1);
  return project;
}

Project resolve_control(Project project, ControlOutcome outcome,
                        std::vector<std::string> assessments) {
  if (project.current_phase != Phase::control) {
    throw WrongPhaseError("project '" + project.name + "' is in phase " +
                          std::string(phase_name(project.current_phase)) + ", not control");
  }
  project.history.push_back(
      {Phase::control, project.iteration, ControlArtifact{outcome, std::move(assessments)}});
  if (outcome == ControlOutcome::accept) {
    project.current_phase = Phase::completed;
  } else {
    project.current_phase = Phase::define;
    ++project.iteration;
  }
  return project;
}

Project replay(std::string name, const std::vector<PhaseRecord>& history) {
  Project p = new_project(std::move(name));
  for (std::size_t i = 0; i < history.size(); ++i) {
    const auto& record = history[i];
    if (record.phase != p.current_phase || record.iteration != p.iteration ||
        artifact_phase(record.artifact) != record.phase) {
      throw WorkflowError("history[" + std::to_string(i) + "] (" +
                          std::string(phase_name(record.phase)) + ", iteration " +
                          std::to_string(record.iteration) + ") does not follow (" +
                          std::string(phase_name(p.current_phase)) + ", iteration " +
                          std::to_string(p.iteration) + ")");
    }
    p = advance(std::move(p), record.artifact);
  }
  return p;
}

namespace {

ordered_json artifact_json(const Artifact& artifact) {
  ordered_json o = ordered_json::object();
  o["kind"] = phase_name(artifact_phase(artifact));
  std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, DefineArtifact>) {
          o["requirements"] = a.requirements;
        } else if constexpr (std::is_same_v<T, MeasureArtifact>) {
          o["standards"] = a.standards;
        } else if constexpr (std::is_same_v<T, AnalyzeArtifact>) {
          o["catalog_fingerprint"] = a.catalog_fingerprint;
        } else if constexpr (std::is_same_v<T, ImproveArtifact>) {
          o["effort_digest"] = a.effort_digest;
        } else {
          o["outcome"] = a.outcome == ControlOutcome::accept ? "accept" : "iterate";
          o["assessments"] = a.assessments;
        }
      },
      artifact);
  return o;
}

Artifact artifact_from_json(const json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("kind")) throw SchemaError(path + ".kind", "missing artifact kind");
  const auto kind = get_string(j["kind"], path + ".kind");
  if (kind == "define") {
    expect_keys(j, path, {"kind", "requirements"});
    return DefineArtifact{get_string_list(j["requirements"], path + ".requirements")};
  }
  if (kind == "measure") {
    expect_keys(j, path, {"kind", "standards"});
    return MeasureArtifact{get_string_list(j["standards"], path + ".standards")};
  }
  if (kind == "analyze") {
    expect_keys(j, path, {"kind", "catalog_fingerprint"});
    return AnalyzeArtifact{get_string(j["catalog_fingerprint"], path + ".catalog_fingerprint")};
  }
  if (kind == "improve") {
    expect_keys(j, path, {"kind", "effort_digest"});
    return ImproveArtifact{get_string(j["effort_digest"], path + ".effort_digest")};
  }
  if (kind == "control") {
    expect_keys(j, path, {"kind", "outcome", "assessments"});
    const auto outcome = get_string(j["outcome"], path + ".outcome");
    if (outcome != "accept" && outcome != "iterate") {
      throw SchemaError(path + ".outcome", "expected accept or iterate");
    }
    return ControlArtifact{outcome == "accept" ? ControlOutcome::accept : ControlOutcome::iterate,
                           get_string_list(j["assessments"], path + ".assessments")};
  }
  throw SchemaError(path + ".kind", "unknown artifact kind '" + kind + "'");
}

}  // namespace

std::string serialize_project(const Project& project) {
  ordered_json root = ordered_json::object();
  root["project_version"] = "1";
  root["name"] = project.name;
  root["current_phase"] = phase_name(project.current_phase);
  root["iteration"] = project.iteration;
  root["history"] = ordered_json::array();
  for (const auto& r : project.history) {
    ordered_json rec = ordered_json::object();
    rec["phase"] = phase_name(r.phase);
    rec["iteration"] = r.iteration;
    rec["artifact"] = artifact_json(r.artifact);
    root["history"].push_back(std::move(rec));
  }
  return dump_canonical(root);
}

std::string serialize_artifact(const Artifact& artifact) { return dump_canonical(artifact_json(artifact)); }

Artifact parse_artifact(std::string_view doc) { return artifact_from_json(parse_json(doc), "$"); }

Project parse_project(std::string_view doc) {
  const json root = parse_json(doc);
  expect_keys(root, "$", {"project_version", "name", "current_phase", "iteration", "history"});
  if (get_string(root["project_version"], "$.project_version") != "1") {
    throw SchemaError("$.project_version", "unsupported version");
  }
  const auto name = get_string(root["name"], "$.name");
  Phase phase{};
  try {
    phase = parse_phase(get_string(root["current_phase"], "$.current_phase"));
  } catch (const std::invalid_argument& e) {
    throw SchemaError("$.current_phase", e.what());
  }
  const auto iteration = get_integer(root["iteration"], "$.iteration");

  std::vector<PhaseRecord> history;
  const auto& arr = get_array(root["history"], "$.history");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = "$.history[" + std::to_string(i) + "]";
    expect_keys(arr[i], p, {"phase", "iteration", "artifact"});
    PhaseRecord rec;
    try {
      rec.phase = parse_phase(get_string(arr[i]["phase"], p + ".phase"));
    } catch (const std::invalid_argument& e) {
      throw SchemaError(p + ".phase", e.what());
    }
    rec.iteration = get_integer(arr[i]["iteration"], p + ".iteration");
    rec.artifact = artifact_from_json(arr[i]["artifact"], p + ".artifact");
    history.push_back(std::move(rec));
  }

  Project project = replay(name, history);
  if (project.current_phase != phase || project.iteration != iteration) {
    throw WorkflowError("stored state (" + std::string(phase_name(phase)) + ", iteration " +
                        std::to_string(iteration) + ") disagrees with replayed history");
  }
  return project;
}

}  // namespace ccost
