#include "ctfagent/sandbox.hpp"

#include "ctfagent/digest.hpp"
#include "ctfagent/util.hpp"

namespace ctfagent {

std::string net_protocol_to_string(NetProtocol p) {
  return p == NetProtocol::tcp ? "tcp" : "udp";
}

NetProtocol net_protocol_from_string(const std::string& s) {
  if (s == "tcp") return NetProtocol::tcp;
  if (s == "udp") return NetProtocol::udp;
  throw ConfigError("unknown network protocol '" + s + "' (expected tcp or udp)");
}

void NetworkPolicy::validate() const {
  for (const auto& rule : allow) {
    if (rule.host.empty()) throw ConfigError("network allow rule requires a host");
    if (rule.port < 1 || rule.port > 65535)
      throw ConfigError("network allow rule port out of range [1, 65535]: " +
                        std::to_string(rule.port));
  }
}

void SandboxSpec::validate() const {
  if (image_ref.empty()) throw ConfigError("sandbox image_ref must be non-empty");
  if (workdir.empty() || workdir.front() != '/')
    throw ConfigError("sandbox workdir must be an absolute path");
  network_policy.validate();
}

void verify_staged_sources(const std::vector<StagedFile>& files) {
  for (const auto& f : files) {
    if (!std::filesystem::exists(f.source_path))
      throw ChecksumMismatchError(f.dest_path, "source missing: " + f.source_path.string());
    const std::string actual = sha256_file(f.source_path);
    if (actual != f.sha256)
      throw ChecksumMismatchError(f.dest_path, "expected " + f.sha256 + ", got " + actual);
  }
}

}  // namespace ctfagent
