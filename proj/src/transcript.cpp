#include "ctfagent/transcript.hpp"

#include <fstream>

#include "ctfagent/util.hpp"
#include "json.hpp"

namespace ctfagent {

namespace {

// Compares one scalar field of the wire forms; returns true when equal.
bool check_field(const nlohmann::ordered_json& exp, const nlohmann::ordered_json& got,
                 const char* key, std::string* detail) {
  const bool exp_has = exp.contains(key);
  const bool got_has = got.contains(key);
  if (exp_has != got_has) {
    *detail = std::string(exp_has ? "recorded request has it, incoming lacks it"
                                  : "incoming request has it, recording lacks it");
    return false;
  }
  if (!exp_has) return true;
  if (exp[key] != got[key]) {
    *detail = "recorded " + exp[key].dump() + ", got " + got[key].dump();
    return false;
  }
  return true;
}

void check_request_match(const CompletionRequest& recorded, const CompletionRequest& incoming) {
  const auto exp = request_wire_json(recorded);
  const auto got = request_wire_json(incoming);
  std::string detail;
  if (!check_field(exp, got, "model", &detail)) throw ReplayMismatchError("model", detail);
  if (!check_field(exp, got, "temperature", &detail))
    throw ReplayMismatchError("temperature", detail);
  if (!check_field(exp, got, "top_p", &detail)) throw ReplayMismatchError("top_p", detail);
  if (!check_field(exp, got, "max_tokens", &detail))
    throw ReplayMismatchError("max_tokens", detail);

  const auto& em = exp["messages"];
  const auto& gm = got["messages"];
  if (em.size() != gm.size())
    throw ReplayMismatchError("messages", "recorded " + std::to_string(em.size()) +
                                              " messages, got " + std::to_string(gm.size()));
  for (size_t i = 0; i < em.size(); ++i) {
    const std::string at = "messages[" + std::to_string(i) + "]";
    if (em[i]["role"] != gm[i]["role"])
      throw ReplayMismatchError(at + ".role", "recorded " + em[i]["role"].dump() + ", got " +
                                                  gm[i]["role"].dump());
    if (em[i]["content"] != gm[i]["content"])
      throw ReplayMismatchError(at + ".content", "recorded " + em[i]["content"].dump() + ", got " +
                                                     gm[i]["content"].dump());
  }
}

}  // namespace

std::vector<TranscriptEntry> read_transcript(const std::filesystem::path& path) {
  std::vector<TranscriptEntry> entries;
  for (const auto& line : read_lines(path)) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error("bad transcript line in " + path.string() + ": " + e.what());
    }
    TranscriptEntry entry{request_from_wire_json(j.at("request")),
                          response_from_json(j.at("response")), j.value("timestamp", 0LL)};
    entries.push_back(std::move(entry));
  }
  return entries;
}

RecordingBackend::RecordingBackend(std::shared_ptr<CompletionBackend> inner,
                                   std::filesystem::path sink)
    : inner_(std::move(inner)), sink_(std::move(sink)) {}

CompletionResponse RecordingBackend::complete(const CompletionRequest& req) {
  CompletionResponse resp = inner_->complete(req);
  nlohmann::ordered_json line;
  line["request"] = request_wire_json(req);
  line["response"] = response_to_json(resp);
  line["timestamp"] = now_ms();
  std::lock_guard lock(mu_);
  std::ofstream out(sink_, std::ios::binary | std::ios::app);
  if (!out) throw Error("cannot append to transcript: " + sink_.string());
  out << line.dump() << "\n";
  out.flush();
  return resp;
}

ReplayBackend::ReplayBackend(const std::filesystem::path& source)
    : entries_(read_transcript(source)) {}

ReplayBackend::ReplayBackend(std::vector<TranscriptEntry> entries) : entries_(std::move(entries)) {}

CompletionResponse ReplayBackend::complete(const CompletionRequest& req) {
  std::lock_guard lock(mu_);
  if (next_ >= entries_.size())
    throw ReplayMismatchError("exhausted", "transcript has only " +
                                               std::to_string(entries_.size()) + " entries");
  const TranscriptEntry& entry = entries_[next_];
  check_request_match(entry.request, req);
  ++next_;
  return entry.response;
}

std::shared_ptr<CompletionBackend> record_transcript(std::shared_ptr<CompletionBackend> live,
                                                     const std::filesystem::path& sink) {
  return std::make_shared<RecordingBackend>(std::move(live), sink);
}

std::shared_ptr<CompletionBackend> replay_transcript(const std::filesystem::path& source) {
  return std::make_shared<ReplayBackend>(source);
}

}  // namespace ctfagent
