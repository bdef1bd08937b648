#pragma once

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ctfagent/chat.hpp"
#include "ctfagent/errors.hpp"

namespace ctfagent {

class BackendError : public Error {
 public:
  using Error::Error;
};

class RateLimitedError : public BackendError {
 public:
  using BackendError::BackendError;
};

class ServerError : public BackendError {
 public:
  using BackendError::BackendError;
};

class AuthError : public BackendError {
 public:
  using BackendError::BackendError;
};

class MalformedResponseError : public BackendError {
 public:
  using BackendError::BackendError;
};

class ScriptExhaustedError : public BackendError {
 public:
  using BackendError::BackendError;
};

class ReplayMismatchError : public BackendError {
 public:
  ReplayMismatchError(std::string field, const std::string& detail)
      : BackendError("replay mismatch at field '" + field + "': " + detail),
        field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct RetryPolicy {
  int max_attempts = 3;
  int backoff_base_ms = 250;
};

enum class BackendKind { http, scripted, replay };

std::string backend_kind_to_string(BackendKind kind);
BackendKind backend_kind_from_string(const std::string& s);

// How to reach a completion backend. http requires endpoint_url and
// credential_ref (the NAME of the environment variable holding the key;
// keys never live in config files). scripted/replay are the deterministic
// test kinds and take a script/transcript file instead.
struct BackendDescriptor {
  BackendKind kind = BackendKind::http;
  std::optional<std::string> endpoint_url;
  std::optional<std::string> credential_ref;
  RetryPolicy retry;
  std::optional<std::string> base_url_env;       // overrides endpoint origin when set
  std::optional<std::filesystem::path> script_path;      // scripted kind
  std::optional<std::filesystem::path> transcript_path;  // replay kind
  std::optional<std::filesystem::path> record_to;        // wrap with a recorder when set

  void validate() const;
};

// Thread-safe completion interface; one instance may serve concurrent
// episodes.
class CompletionBackend {
 public:
  virtual ~CompletionBackend() = default;
  virtual CompletionResponse complete(const CompletionRequest& req) = 0;
};

struct ScriptedReply {
  std::string text;
  long long prompt_tokens = 0;
  long long completion_tokens = 0;
  bool usage_missing = false;
};

// Returns canned replies in order; errors with ScriptExhausted once the
// script runs out. Requests are kept for inspection.
class ScriptedBackend : public CompletionBackend {
 public:
  explicit ScriptedBackend(std::vector<std::string> texts);
  explicit ScriptedBackend(std::vector<ScriptedReply> replies);

  CompletionResponse complete(const CompletionRequest& req) override;

  size_t calls() const;
  size_t remaining() const;
  std::vector<CompletionRequest> requests() const;

  // JSON array of strings or of {text, prompt_tokens, completion_tokens}.
  static std::shared_ptr<ScriptedBackend> from_file(const std::filesystem::path& path);

 private:
  mutable std::mutex mu_;
  std::vector<ScriptedReply> replies_;
  std::vector<CompletionRequest> requests_;
  size_t next_ = 0;
};

}  // namespace ctfagent
