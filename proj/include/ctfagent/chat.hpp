#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace ctfagent {

enum class Role { system, user, assistant };

std::string role_to_string(Role role);
Role role_from_string(const std::string& s);

struct ChatMessage {
  Role role = Role::user;
  std::string content;
};

// One chat-completions call. Validates its invariants on construction:
// non-empty messages starting with a system message, temperature in
// [0, 2], top_p in (0, 1], and no empty content outside assistant turns.
struct CompletionRequest {
  std::string model_id;
  std::vector<ChatMessage> messages;
  double temperature = 1.0;
  double top_p = 0.9;
  std::optional<int> max_tokens;

  CompletionRequest(std::string model_id, std::vector<ChatMessage> messages,
                    double temperature = 1.0, double top_p = 0.9,
                    std::optional<int> max_tokens = std::nullopt);
};

struct CompletionResponse {
  std::string text;
  long long prompt_tokens = 0;
  long long completion_tokens = 0;
  long long latency_ms = 0;
  bool usage_missing = false;
};

// Wire body, stable field order: model, messages, temperature, top_p,
// max_tokens (omitted when unset).
nlohmann::ordered_json request_wire_json(const CompletionRequest& req);
std::string serialize_request(const CompletionRequest& req);
CompletionRequest request_from_wire_json(const nlohmann::json& j);

nlohmann::ordered_json response_to_json(const CompletionResponse& resp);
CompletionResponse response_from_json(const nlohmann::json& j);

}  // namespace ctfagent
