#include "ctfagent/fake_sandbox.hpp"

#include <fnmatch.h>

#include "ctfagent/util.hpp"
#include "json.hpp"

namespace ctfagent {

FakeSandbox::FakeSandbox(std::vector<FakeExecEntry> script, std::string workdir)
    : script_(std::move(script)), workdir_(std::move(workdir)) {}

ExecResult FakeSandbox::exec(const ExecRequest& req) {
  if (!alive_) throw HandleDeadError("exec on destroyed sandbox");
  if (req.command.empty()) throw SandboxError("exec requires a non-empty command");
  commands_.push_back(req.command);
  if (next_ >= script_.size())
    throw FakeScriptExhaustedError("sandbox script exhausted after " +
                                   std::to_string(script_.size()) + " entries; got command: " +
                                   req.command);
  const FakeExecEntry& entry = script_[next_];
  if (fnmatch(entry.match.c_str(), req.command.c_str(), 0) != 0)
    throw FakeScriptMismatchError("sandbox script mismatch at entry " + std::to_string(next_) +
                                  ": expected pattern '" + entry.match + "', got command '" +
                                  req.command + "'");
  ++next_;
  return entry.result;
}

void FakeSandbox::stage_files(const std::vector<StagedFile>& files) {
  if (!alive_) throw HandleDeadError("stage_files on destroyed sandbox");
  verify_staged_sources(files);
  for (const auto& f : files) staged_.push_back(workdir_ + "/" + f.dest_path);
}

void FakeSandbox::allow_endpoint(const AllowRule& rule) {
  if (!alive_) throw HandleDeadError("allow_endpoint on destroyed sandbox");
  if (rule.port < 1 || rule.port > 65535)
    throw SandboxError("allow rule port out of range: " + std::to_string(rule.port));
  allowed_.push_back(rule);
}

void FakeSandbox::destroy() { alive_ = false; }

std::unique_ptr<FakeSandbox> FakeSandbox::from_file(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad sandbox script " + path.string() + ": " + e.what());
  }
  if (!j.is_array()) throw ConfigError("sandbox script must be a JSON array: " + path.string());
  std::vector<FakeExecEntry> script;
  for (const auto& item : j) {
    FakeExecEntry entry;
    entry.match = item.at("match").get<std::string>();
    entry.result.out = item.value("stdout", std::string());
    entry.result.err = item.value("stderr", std::string());
    entry.result.exit_code = item.value("exit_code", 0);
    entry.result.duration_ms = item.value("duration_ms", 0LL);
    entry.result.timed_out = item.value("timed_out", false);
    if (entry.result.timed_out) entry.result.exit_code = -1;
    script.push_back(std::move(entry));
  }
  return std::make_unique<FakeSandbox>(std::move(script));
}

}  // namespace ctfagent
