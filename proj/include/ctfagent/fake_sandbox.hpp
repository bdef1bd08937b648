#pragma once

#include <filesystem>
#include <memory>
#include <vector>

#include "ctfagent/sandbox.hpp"

namespace ctfagent {

class FakeScriptMismatchError : public SandboxError {
 public:
  using SandboxError::SandboxError;
};

class FakeScriptExhaustedError : public SandboxError {
 public:
  using SandboxError::SandboxError;
};

struct FakeExecEntry {
  std::string match;  // fnmatch-style glob against the incoming command
  ExecResult result;
};

// In-memory scripted sandbox. exec() consumes entries in order; the
// command must match the entry's glob or the call errors with a diff.
class FakeSandbox : public Sandbox {
 public:
  explicit FakeSandbox(std::vector<FakeExecEntry> script, std::string workdir = "/work");

  ExecResult exec(const ExecRequest& req) override;
  void stage_files(const std::vector<StagedFile>& files) override;
  void allow_endpoint(const AllowRule& rule) override;
  void destroy() override;
  bool alive() const override { return alive_; }
  std::string workdir() const override { return workdir_; }

  const std::vector<std::string>& staged() const { return staged_; }
  const std::vector<AllowRule>& allowed() const { return allowed_; }
  size_t exec_count() const { return next_; }
  const std::vector<std::string>& commands_seen() const { return commands_; }

  // JSON array of {match, stdout?, stderr?, exit_code?, duration_ms?, timed_out?}.
  static std::unique_ptr<FakeSandbox> from_file(const std::filesystem::path& path);

 private:
  std::vector<FakeExecEntry> script_;
  std::string workdir_;
  size_t next_ = 0;
  bool alive_ = true;
  std::vector<std::string> staged_;
  std::vector<AllowRule> allowed_;
  std::vector<std::string> commands_;
};

}  // namespace ctfagent
