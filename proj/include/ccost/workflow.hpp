#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ccost {

/// DMAIC phases in their only legal order.
enum class Phase { define, measure, analyze, improve, control, completed };

std::string_view phase_name(Phase phase);
Phase parse_phase(std::string_view text);  // throws std::invalid_argument

struct DefineArtifact {
  std::vector<std::string> requirements;
  friend bool operator==(const DefineArtifact&, const DefineArtifact&) = default;
};
struct MeasureArtifact {
  std::vector<std::string> standards;
  friend bool operator==(const MeasureArtifact&, const MeasureArtifact&) = default;
};
struct AnalyzeArtifact {
  std::string catalog_fingerprint;
  friend bool operator==(const AnalyzeArtifact&, const AnalyzeArtifact&) = default;
};
struct ImproveArtifact {
  std::string effort_digest;  // SHA-256 of the effort table CSV
  friend bool operator==(const ImproveArtifact&, const ImproveArtifact&) = default;
};

enum class ControlOutcome { accept, iterate };

struct ControlArtifact {
  ControlOutcome outcome = ControlOutcome::accept;
  std::vector<std::string> assessments;  // subjects considered
  friend bool operator==(const ControlArtifact&, const ControlArtifact&) = default;
};

using Artifact =
    std::variant<DefineArtifact, MeasureArtifact, AnalyzeArtifact, ImproveArtifact, ControlArtifact>;

/// Phase an artifact belongs to.
Phase artifact_phase(const Artifact& artifact);

struct PhaseRecord {
  Phase phase = Phase::define;
  std::int64_t iteration = 1;
  Artifact artifact;
  friend bool operator==(const PhaseRecord&, const PhaseRecord&) = default;
};

struct Project {
  std::string name;
  Phase current_phase = Phase::define;
  std::int64_t iteration = 1;
  std::vector<PhaseRecord> history;  // append-only
  friend bool operator==(const Project&, const Project&) = default;
};

class WorkflowError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};
class WrongArtifactKindError : public WorkflowError {
 public:
  using WorkflowError::WorkflowError;
};
class AlreadyCompletedError : public WorkflowError {
 public:
  using WorkflowError::WorkflowError;
};
class WrongPhaseError : public WorkflowError {
 public:
  using WorkflowError::WorkflowError;
};

/// Throws std::invalid_argument on an empty name.
Project new_project(std::string name);

/// Records the artifact of the current phase and moves to the next one.
/// A ControlArtifact is handled exactly like resolve_control.
Project advance(Project project, Artifact artifact);

/// accept -> Completed; iterate -> Define of the next iteration.
Project resolve_control(Project project, ControlOutcome outcome,
                        std::vector<std::string> assessments);

/// Rebuilds a project from its name and recorded history. Throws WorkflowError
/// if the history is not a legal sequence.
Project replay(std::string name, const std::vector<PhaseRecord>& history);

/// Canonical JSON (2-space indent, fixed key order, trailing LF).
std::string serialize_project(const Project& project);

std::string serialize_artifact(const Artifact& artifact);

/// Parses one artifact object, e.g. {"kind": "analyze", "catalog_fingerprint": "..."}.
Artifact parse_artifact(std::string_view doc);

/// Parses and verifies by replay that the stored state matches the history.
/// Throws SchemaError / SyntaxError / WorkflowError.
Project parse_project(std::string_view doc);

}  // namespace ccost
