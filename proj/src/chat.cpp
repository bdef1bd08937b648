#include "ctfagent/chat.hpp"

#include <stdexcept>

namespace ctfagent {

std::string role_to_string(Role role) {
  switch (role) {
    case Role::system: return "system";
    case Role::user: return "user";
    case Role::assistant: return "assistant";
  }
  throw std::logic_error("bad role");
}

Role role_from_string(const std::string& s) {
  if (s == "system") return Role::system;
  if (s == "user") return Role::user;
  if (s == "assistant") return Role::assistant;
  throw std::invalid_argument("unknown chat role: " + s);
}

CompletionRequest::CompletionRequest(std::string model_id_in, std::vector<ChatMessage> messages_in,
                                     double temperature_in, double top_p_in,
                                     std::optional<int> max_tokens_in)
    : model_id(std::move(model_id_in)),
      messages(std::move(messages_in)),
      temperature(temperature_in),
      top_p(top_p_in),
      max_tokens(max_tokens_in) {
  if (model_id.empty()) throw std::invalid_argument("model_id must be non-empty");
  if (messages.empty()) throw std::invalid_argument("messages must be non-empty");
  if (messages.front().role != Role::system)
    throw std::invalid_argument("first message must have role system");
  if (!(temperature >= 0.0 && temperature <= 2.0))
    throw std::invalid_argument("temperature must be within [0.0, 2.0]");
  if (!(top_p > 0.0 && top_p <= 1.0))
    throw std::invalid_argument("top_p must be within (0.0, 1.0]");
  if (max_tokens && *max_tokens <= 0)
    throw std::invalid_argument("max_tokens must be positive");
  for (const auto& m : messages) {
    if (m.content.empty() && m.role != Role::assistant)
      throw std::invalid_argument("message content may be empty only for assistant role");
  }
}

nlohmann::ordered_json request_wire_json(const CompletionRequest& req) {
  nlohmann::ordered_json body;
  body["model"] = req.model_id;
  auto msgs = nlohmann::ordered_json::array();
  for (const auto& m : req.messages) {
    nlohmann::ordered_json jm;
    jm["role"] = role_to_string(m.role);
    jm["content"] = m.content;
    msgs.push_back(std::move(jm));
  }
  body["messages"] = std::move(msgs);
  body["temperature"] = req.temperature;
  body["top_p"] = req.top_p;
  if (req.max_tokens) body["max_tokens"] = *req.max_tokens;
  return body;
}

std::string serialize_request(const CompletionRequest& req) { return request_wire_json(req).dump(); }

CompletionRequest request_from_wire_json(const nlohmann::json& j) {
  std::vector<ChatMessage> msgs;
  for (const auto& jm : j.at("messages")) {
    msgs.push_back({role_from_string(jm.at("role").get<std::string>()),
                    jm.at("content").get<std::string>()});
  }
  std::optional<int> max_tokens;
  if (j.contains("max_tokens") && !j["max_tokens"].is_null())
    max_tokens = j["max_tokens"].get<int>();
  return CompletionRequest(j.at("model").get<std::string>(), std::move(msgs),
                           j.at("temperature").get<double>(), j.at("top_p").get<double>(),
                           max_tokens);
}

nlohmann::ordered_json response_to_json(const CompletionResponse& resp) {
  nlohmann::ordered_json j;
  j["text"] = resp.text;
  j["prompt_tokens"] = resp.prompt_tokens;
  j["completion_tokens"] = resp.completion_tokens;
  j["latency_ms"] = resp.latency_ms;
  j["usage_missing"] = resp.usage_missing;
  return j;
}

CompletionResponse response_from_json(const nlohmann::json& j) {
  CompletionResponse resp;
  resp.text = j.at("text").get<std::string>();
  resp.prompt_tokens = j.value("prompt_tokens", 0LL);
  resp.completion_tokens = j.value("completion_tokens", 0LL);
  resp.latency_ms = j.value("latency_ms", 0LL);
  resp.usage_missing = j.value("usage_missing", false);
  return resp;
}

}  // namespace ctfagent
