#include "ctfagent/http_backend.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include "ctfagent/util.hpp"
#include "httplib.h"
#include "json.hpp"

namespace ctfagent {

namespace {

// Splits scheme://host[:port]/path into origin and path.
std::pair<std::string, std::string> split_url(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("endpoint_url missing scheme: " + url);
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

HttpBackend::HttpBackend(const BackendDescriptor& descriptor) {
  if (descriptor.kind != BackendKind::http)
    throw ConfigError("HttpBackend requires a descriptor of kind http");
  descriptor.validate();

  std::string url = *descriptor.endpoint_url;
  if (descriptor.base_url_env) {
    if (const char* base = std::getenv(descriptor.base_url_env->c_str()); base && *base) {
      auto [_, path] = split_url(url);
      std::string b = base;
      while (!b.empty() && b.back() == '/') b.pop_back();
      url = b + path;
    }
  }
  std::tie(origin_, path_) = split_url(url);

  const char* key = std::getenv(descriptor.credential_ref->c_str());
  if (!key || !*key)
    throw ConfigError("environment variable '" + *descriptor.credential_ref +
                      "' named by credential_ref is not set");
  api_key_ = key;
  retry_ = descriptor.retry;
}

CompletionResponse parse_completion_body(const std::string& body, long long latency_ms) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception&) {
    throw MalformedResponseError("reply is not JSON: " + body.substr(0, 200));
  }
  if (!j.contains("choices") || !j["choices"].is_array() || j["choices"].empty())
    throw MalformedResponseError("reply lacks choices[0]");
  const auto& choice = j["choices"][0];
  CompletionResponse resp;
  if (choice.contains("message") && choice["message"].contains("content") &&
      choice["message"]["content"].is_string()) {
    resp.text = choice["message"]["content"].get<std::string>();
  } else if (choice.contains("text") && choice["text"].is_string()) {
    resp.text = choice["text"].get<std::string>();
  } else {
    throw MalformedResponseError("reply lacks a text field in choices[0]");
  }
  if (j.contains("usage") && j["usage"].is_object()) {
    resp.prompt_tokens = j["usage"].value("prompt_tokens", 0LL);
    resp.completion_tokens = j["usage"].value("completion_tokens", 0LL);
  } else {
    resp.usage_missing = true;
  }
  resp.latency_ms = latency_ms;
  return resp;
}

CompletionResponse HttpBackend::complete(const CompletionRequest& req) {
  const std::string body = serialize_request(req);
  std::string last_failure = "no attempt made";

  for (int attempt = 1; attempt <= retry_.max_attempts; ++attempt) {
    if (attempt > 1) {
      long long backoff = static_cast<long long>(retry_.backoff_base_ms) << (attempt - 2);
      std::this_thread::sleep_for(std::chrono::milliseconds(backoff));
    }

    httplib::Client client(origin_);
    client.set_connection_timeout(std::chrono::seconds(request_timeout_s_));
    client.set_read_timeout(std::chrono::seconds(request_timeout_s_));
    client.set_write_timeout(std::chrono::seconds(request_timeout_s_));
    httplib::Headers headers = {{"Authorization", "Bearer " + api_key_}};

    long long start = steady_ms();
    auto res = client.Post(path_, headers, body, "application/json");
    long long latency = steady_ms() - start;

    if (!res) {
      last_failure = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 200) return parse_completion_body(res->body, latency);
    if (res->status == 401 || res->status == 403)
      throw AuthError("credential rejected (HTTP " + std::to_string(res->status) + ")");
    if (res->status == 429) {
      last_failure = "HTTP 429";
      if (attempt == retry_.max_attempts)
        throw RateLimitedError("rate limited after " + std::to_string(attempt) + " attempts");
      continue;
    }
    if (res->status >= 500) {
      last_failure = "HTTP " + std::to_string(res->status);
      if (attempt == retry_.max_attempts)
        throw ServerError("server error " + last_failure + " after " + std::to_string(attempt) +
                          " attempts");
      continue;
    }
    throw BackendError("HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200));
  }
  throw ServerError("completion failed after " + std::to_string(retry_.max_attempts) +
                    " attempts; last: " + last_failure);
}

}  // namespace ctfagent
