#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ctfagent/manifest.hpp"
#include "json.hpp"

namespace ctfagent {

// Built-in system prompts; operators usually load versioned prompt files
// instead (CLI config).
extern const std::string kDefaultPlannerSystemPrompt;
extern const std::string kDefaultSummarizerSystemPrompt;

// Hard cap applied to summaries on receipt, matching the bound requested
// in the summarizer prompt.
inline constexpr size_t kSummaryCharCap = 400;

struct AgentConfig {
  std::string model_id;
  std::optional<std::string> summarizer_model_id;  // defaults to model_id
  double temperature = 1.0;
  double top_p = 0.9;
  int observation_window = 250;  // characters
  int max_steps = 20;
  int per_command_timeout = 60;  // seconds
  std::string planner_system_prompt = kDefaultPlannerSystemPrompt;
  std::string summarizer_system_prompt = kDefaultSummarizerSystemPrompt;

  void validate() const;  // throws std::invalid_argument

  static int default_window(PlatformKind platform);
  static AgentConfig for_platform(PlatformKind platform, std::string model_id);
};

struct ChallengeContext {
  ChallengeManifest manifest;
  std::vector<std::string> staged_file_paths;
  std::optional<std::string> target_note;
};

struct TokenCount {
  long long prompt = 0;
  long long completion = 0;

  bool operator==(const TokenCount&) const = default;
};

struct ExecDigest {
  int exit_code = 0;
  long long duration_ms = 0;

  bool operator==(const ExecDigest&) const = default;
};

struct ActionRecord {
  int step_index = 1;
  std::string command;
  std::optional<ExecDigest> exec;  // absent for denied / no-command steps
  std::string observation;         // truncated to the episode's window
  std::string summary;
  TokenCount planner_tokens;
  TokenCount summarizer_tokens;
  long long started_at = 0;
  long long finished_at = 0;
};

using ActionHistory = std::vector<ActionRecord>;

enum class EpisodeStatus { Solved, StepLimit, SafetyAbort, BackendError, SandboxError };

std::string episode_status_to_string(EpisodeStatus s);
EpisodeStatus episode_status_from_string(const std::string& s);

struct RoleTokens {
  long long planner = 0;
  long long summarizer = 0;

  bool operator==(const RoleTokens&) const = default;
};

struct EpisodeResult {
  std::string challenge_id;
  EpisodeStatus status = EpisodeStatus::StepLimit;
  std::optional<std::string> flag;  // present iff status == Solved
  int steps_used = 0;
  long long wall_time_ms = 0;
  ActionHistory history;
  RoleTokens total_tokens;
};

// Field-wise equality ignoring time-derived values (record timestamps and
// episode wall time).
bool equal_modulo_time(const EpisodeResult& a, const EpisodeResult& b);

nlohmann::ordered_json episode_result_to_json(const EpisodeResult& r);
EpisodeResult episode_result_from_json(const nlohmann::json& j);

}  // namespace ctfagent
