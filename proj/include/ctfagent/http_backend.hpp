#pragma once

#include <string>

#include "ctfagent/backend.hpp"

namespace ctfagent {

// Chat-completions HTTP client. Serializes the request body with stable
// field order, sends Authorization: Bearer <key resolved from the
// environment variable named by credential_ref>, and retries transient
// failures (connect errors, timeouts, 429, 5xx) with exponential backoff
// up to retry.max_attempts total calls.
class HttpBackend : public CompletionBackend {
 public:
  explicit HttpBackend(const BackendDescriptor& descriptor);

  CompletionResponse complete(const CompletionRequest& req) override;

  const std::string& origin() const { return origin_; }
  const std::string& path() const { return path_; }

 private:
  std::string origin_;  // scheme://host[:port]
  std::string path_;
  std::string api_key_;
  RetryPolicy retry_;
  int request_timeout_s_ = 120;
};

// Parses a CompletionResponse out of a chat-completions reply body.
// Accepts choices[0].message.content or choices[0].text; missing usage
// counts are recorded as zeros with usage_missing set.
CompletionResponse parse_completion_body(const std::string& body, long long latency_ms);

}  // namespace ctfagent
