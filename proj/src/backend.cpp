#include "ctfagent/backend.hpp"

#include "ctfagent/util.hpp"
#include "json.hpp"

namespace ctfagent {

std::string backend_kind_to_string(BackendKind kind) {
  switch (kind) {
    case BackendKind::http: return "http";
    case BackendKind::scripted: return "scripted";
    case BackendKind::replay: return "replay";
  }
  throw std::logic_error("bad backend kind");
}

BackendKind backend_kind_from_string(const std::string& s) {
  if (s == "http") return BackendKind::http;
  if (s == "scripted") return BackendKind::scripted;
  if (s == "replay") return BackendKind::replay;
  throw ConfigError("unknown backend kind '" + s + "' (expected http, scripted or replay)");
}

void BackendDescriptor::validate() const {
  if (kind == BackendKind::http) {
    if (!endpoint_url || endpoint_url->empty())
      throw ConfigError("http backend requires endpoint_url");
    if (!credential_ref || credential_ref->empty())
      throw ConfigError("http backend requires credential_ref");
  }
  if (kind == BackendKind::scripted && (!script_path || script_path->empty()))
    throw ConfigError("scripted backend requires script_path");
  if (kind == BackendKind::replay && (!transcript_path || transcript_path->empty()))
    throw ConfigError("replay backend requires transcript_path");
  if (retry.max_attempts < 1) throw ConfigError("retry.max_attempts must be >= 1");
  if (retry.backoff_base_ms < 0) throw ConfigError("retry.backoff_base_ms must be >= 0");
}

ScriptedBackend::ScriptedBackend(std::vector<std::string> texts) {
  replies_.reserve(texts.size());
  for (auto& t : texts) replies_.push_back({std::move(t), 0, 0, true});
}

ScriptedBackend::ScriptedBackend(std::vector<ScriptedReply> replies) : replies_(std::move(replies)) {}

CompletionResponse ScriptedBackend::complete(const CompletionRequest& req) {
  std::lock_guard lock(mu_);
  requests_.push_back(req);
  if (next_ >= replies_.size())
    throw ScriptExhaustedError("scripted backend exhausted after " +
                               std::to_string(replies_.size()) + " replies");
  const ScriptedReply& r = replies_[next_++];
  CompletionResponse resp;
  resp.text = r.text;
  resp.prompt_tokens = r.prompt_tokens;
  resp.completion_tokens = r.completion_tokens;
  resp.usage_missing = r.usage_missing;
  resp.latency_ms = 0;
  return resp;
}

size_t ScriptedBackend::calls() const {
  std::lock_guard lock(mu_);
  return requests_.size();
}

size_t ScriptedBackend::remaining() const {
  std::lock_guard lock(mu_);
  return replies_.size() - std::min(next_, replies_.size());
}

std::vector<CompletionRequest> ScriptedBackend::requests() const {
  std::lock_guard lock(mu_);
  return requests_;
}

std::shared_ptr<ScriptedBackend> ScriptedBackend::from_file(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad backend script " + path.string() + ": " + e.what());
  }
  if (!j.is_array()) throw ConfigError("backend script must be a JSON array: " + path.string());
  std::vector<ScriptedReply> replies;
  for (const auto& item : j) {
    if (item.is_string()) {
      replies.push_back({item.get<std::string>(), 0, 0, true});
    } else if (item.is_object()) {
      ScriptedReply r;
      r.text = item.at("text").get<std::string>();
      r.prompt_tokens = item.value("prompt_tokens", 0LL);
      r.completion_tokens = item.value("completion_tokens", 0LL);
      r.usage_missing = !(item.contains("prompt_tokens") || item.contains("completion_tokens"));
      replies.push_back(std::move(r));
    } else {
      throw ConfigError("backend script entries must be strings or objects: " + path.string());
    }
  }
  return std::make_shared<ScriptedBackend>(std::move(replies));
}

}  // namespace ctfagent
