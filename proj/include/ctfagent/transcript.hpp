#pragma once

#include <filesystem>
#include <memory>
#include <mutex>
#include <vector>

#include "ctfagent/backend.hpp"

namespace ctfagent {

struct TranscriptEntry {
  CompletionRequest request;
  CompletionResponse response;
  long long timestamp = 0;
};

// Newline-delimited JSON, one {request, response, timestamp} per line.
std::vector<TranscriptEntry> read_transcript(const std::filesystem::path& path);

// Wraps a live backend and appends every (request, response) pair to the
// sink file as it happens. Appends are serialized; the inner call is not.
class RecordingBackend : public CompletionBackend {
 public:
  RecordingBackend(std::shared_ptr<CompletionBackend> inner, std::filesystem::path sink);
  CompletionResponse complete(const CompletionRequest& req) override;

 private:
  std::shared_ptr<CompletionBackend> inner_;
  std::filesystem::path sink_;
  std::mutex mu_;
};

// Replays a recorded transcript in order. Each incoming request must match
// the recorded one on model, temperature, top_p, max_tokens and messages;
// the first divergent field is named in the ReplayMismatch error.
class ReplayBackend : public CompletionBackend {
 public:
  explicit ReplayBackend(const std::filesystem::path& source);
  explicit ReplayBackend(std::vector<TranscriptEntry> entries);
  CompletionResponse complete(const CompletionRequest& req) override;

 private:
  std::vector<TranscriptEntry> entries_;
  size_t next_ = 0;
  std::mutex mu_;
};

std::shared_ptr<CompletionBackend> record_transcript(std::shared_ptr<CompletionBackend> live,
                                                     const std::filesystem::path& sink);
std::shared_ptr<CompletionBackend> replay_transcript(const std::filesystem::path& source);

}  // namespace ctfagent
