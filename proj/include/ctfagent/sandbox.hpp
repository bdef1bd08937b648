#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctfagent/errors.hpp"

namespace ctfagent {

class SandboxError : public Error {
 public:
  using Error::Error;
};

class HandleDeadError : public SandboxError {
 public:
  using SandboxError::SandboxError;
};

class RuntimeUnavailableError : public SandboxError {
 public:
  using SandboxError::SandboxError;
};

class ImagePullFailureError : public SandboxError {
 public:
  using SandboxError::SandboxError;
};

class PolicyApplyFailureError : public SandboxError {
 public:
  using SandboxError::SandboxError;
};

class ChecksumMismatchError : public SandboxError {
 public:
  ChecksumMismatchError(std::string file, const std::string& detail)
      : SandboxError("checksum mismatch for '" + file + "': " + detail), file_(std::move(file)) {}
  const std::string& file() const { return file_; }

 private:
  std::string file_;
};

enum class NetProtocol { tcp, udp };

std::string net_protocol_to_string(NetProtocol p);
NetProtocol net_protocol_from_string(const std::string& s);

struct AllowRule {
  std::string host;
  int port = 0;
  NetProtocol protocol = NetProtocol::tcp;

  bool operator==(const AllowRule&) const = default;
};

// Egress is always default-deny; only the allow list opens tuples.
struct NetworkPolicy {
  std::vector<AllowRule> allow;

  void validate() const;
};

struct SandboxSpec {
  std::string image_ref = "kalilinux/kali-rolling";
  NetworkPolicy network_policy;
  std::optional<double> cpu_limit;            // cores
  std::optional<long long> memory_limit_mib;
  std::string workdir = "/work";

  void validate() const;
};

struct ExecRequest {
  std::string command;
  int timeout_s = 60;
  std::map<std::string, std::string> env;
};

// Per-stream capture cap applied before the agent-level observation window.
inline constexpr size_t kOutputCapBytes = 1 << 20;

struct ExecResult {
  std::string out;
  std::string err;
  int exit_code = 0;  // -1 when timed_out
  long long duration_ms = 0;
  bool timed_out = false;
  bool out_truncated = false;
  bool err_truncated = false;
};

struct StagedFile {
  std::filesystem::path source_path;
  std::string dest_path;  // relative to the sandbox workdir
  std::string sha256;
};

// One isolated execution environment. Handles are single-owner: callers
// serialize exec() on a handle; distinct handles are independent.
class Sandbox {
 public:
  virtual ~Sandbox() = default;

  // Runs the command through a shell with cwd = workdir. Streams are
  // captured separately, capped at kOutputCapBytes each (capped output is
  // flagged, not an error). Timeout kills the process tree and reports
  // exit_code -1 with timed_out set.
  virtual ExecResult exec(const ExecRequest& req) = 0;

  // All-or-nothing: every checksum is verified before anything is copied.
  virtual void stage_files(const std::vector<StagedFile>& files) = 0;

  // Opens one egress tuple on top of the default-deny policy.
  virtual void allow_endpoint(const AllowRule& rule) = 0;

  // Idempotent, best-effort teardown.
  virtual void destroy() = 0;

  virtual bool alive() const = 0;
  virtual std::string workdir() const = 0;
};

// Verifies sources exist and hash to the expected sha256; throws
// ChecksumMismatchError naming the first offending file. Shared by every
// Sandbox implementation so the all-or-nothing rule holds everywhere.
void verify_staged_sources(const std::vector<StagedFile>& files);

}  // namespace ctfagent
