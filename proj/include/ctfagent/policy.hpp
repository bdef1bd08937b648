#pragma once

#include <filesystem>
#include <regex>
#include <string>
#include <vector>

namespace ctfagent {

// Deny-list safety net applied to every planner command before execution.
// An empty pattern list disables pattern filtering; the length cap applies
// whenever max_command_length > 0.
class CommandPolicy {
 public:
  CommandPolicy() = default;
  CommandPolicy(std::vector<std::string> deny_patterns, size_t max_command_length);

  const std::vector<std::string>& deny_patterns() const { return patterns_; }
  size_t max_command_length() const { return max_command_length_; }

  static CommandPolicy allow_all();
  static CommandPolicy conservative_default();
  static CommandPolicy from_file(const std::filesystem::path& path);

 private:
  friend struct PolicyDecision;
  friend PolicyDecision check_command_policy(const std::string&, const CommandPolicy&);

  std::vector<std::string> patterns_;
  std::vector<std::regex> compiled_;
  size_t max_command_length_ = 10000;
};

struct PolicyDecision {
  bool allowed = true;
  std::string reason;  // matched pattern, or "length" for the cap
};

PolicyDecision check_command_policy(const std::string& command, const CommandPolicy& policy);

}  // namespace ctfagent
