#include "ctfagent/policy.hpp"

#include "ctfagent/errors.hpp"
#include "ctfagent/util.hpp"
#include "json.hpp"

namespace ctfagent {

CommandPolicy::CommandPolicy(std::vector<std::string> deny_patterns, size_t max_command_length)
    : patterns_(std::move(deny_patterns)), max_command_length_(max_command_length) {
  compiled_.reserve(patterns_.size());
  for (const auto& p : patterns_) {
    try {
      compiled_.emplace_back(p);
    } catch (const std::regex_error& e) {
      throw ConfigError("invalid deny pattern '" + p + "': " + e.what());
    }
  }
}

CommandPolicy CommandPolicy::allow_all() { return CommandPolicy({}, 0); }

CommandPolicy CommandPolicy::conservative_default() {
  // Recursive root deletion, fork bombs, raw disk writes, filesystem
  // formatting, and container-killing power commands.
  return CommandPolicy(
      {
          R"(rm\s+(-\w+\s+)*-\w*r\w*\s+/(\s|$))",
          R"(:\(\)\s*\{\s*:\|\s*:\s*&\s*\}\s*;\s*:)",
          R"(\bdd\b[^\n]*\bof=/dev/(sd|hd|nvme|vd|xvd))",
          R"(>\s*/dev/(sd|hd|nvme|vd|xvd))",
          R"(\bmkfs(\.\w+)?\b)",
          R"(^\s*(shutdown|reboot|poweroff|halt)\b)",
      },
      10000);
}

CommandPolicy CommandPolicy::from_file(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad policy file " + path.string() + ": " + e.what());
  }
  std::vector<std::string> patterns;
  if (j.contains("deny_patterns")) {
    if (!j["deny_patterns"].is_array())
      throw ConfigError("policy deny_patterns must be an array: " + path.string());
    for (const auto& p : j["deny_patterns"]) patterns.push_back(p.get<std::string>());
  }
  size_t max_len = j.value("max_command_length", 10000ULL);
  return CommandPolicy(std::move(patterns), max_len);
}

PolicyDecision check_command_policy(const std::string& command, const CommandPolicy& policy) {
  if (policy.max_command_length_ > 0 && command.size() > policy.max_command_length_)
    return {false, "length"};
  for (size_t i = 0; i < policy.compiled_.size(); ++i) {
    if (std::regex_search(command, policy.compiled_[i])) return {false, policy.patterns_[i]};
  }
  return {true, ""};
}

}  // namespace ctfagent
