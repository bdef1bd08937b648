#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctfagent/agent.hpp"
#include "ctfagent/chat.hpp"

namespace ctfagent {

inline constexpr std::string_view kTruncationMarker = "[...output truncated...]";

// Planner messages: system prompt, one user message describing the
// challenge (description, hints, staged files, target note), one compact
// user block per prior step (command + summary), and a closing
// instruction to emit exactly one next command.
std::vector<ChatMessage> build_planner_prompt(const ChallengeContext& ctx,
                                              const ActionHistory& history,
                                              const AgentConfig& cfg);

// Summarizer messages: the role's system prompt plus one user message
// embedding the command and its (already truncated) observation, asking
// for a summary of at most kSummaryCharCap characters.
std::vector<ChatMessage> build_summarizer_prompt(std::string_view command,
                                                 std::string_view truncated_observation,
                                                 std::string_view system_prompt);

// Pulls the next shell command out of a planner reply. Precedence:
//   1. content of the first fenced code block (info-string line dropped,
//      multi-line content kept intact);
//   2. content of the first inline-backtick span;
//   3. first non-empty line, stripped of a leading "$ " prompt marker.
// Returns nullopt when no rule yields a non-empty command.
std::optional<std::string> extract_command(std::string_view planner_text);

// Keeps raw output unchanged while it fits the window; otherwise returns
// the truncation marker line followed by the final `window` characters.
std::string truncate_observation(std::string_view raw, int window);

// stdout followed by stderr, with a separating newline when both present.
std::string combine_output(std::string_view out, std::string_view err);

// Trimmed and hard-capped at kSummaryCharCap characters.
std::string clamp_summary(std::string_view text);

}  // namespace ctfagent
