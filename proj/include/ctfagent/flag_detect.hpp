#pragma once

#include <filesystem>
#include <optional>
#include <regex>
#include <string>

#include "ctfagent/manifest.hpp"

namespace ctfagent {

// Flag recognition over RAW (untruncated) command output. pattern kind
// compiles its regex up front; exact and oracle kinds resolve the expected
// flag once at construction so a broken secret/solver fails loudly before
// any step runs.
class FlagDetector {
 public:
  explicit FlagDetector(const FlagSpec& spec, std::filesystem::path manifest_path = {});
  explicit FlagDetector(const ChallengeManifest& manifest);

  // Leftmost match wins. For oracle specs with a candidate_pattern, only
  // candidate tokens equal to the solver-resolved flag count; without one,
  // the resolved flag is searched for as a substring (as for exact).
  std::optional<std::string> detect(const std::string& raw_output) const;

  const std::optional<std::string>& expected() const { return expected_; }

 private:
  FlagSpec spec_;
  std::optional<std::regex> pattern_;
  std::optional<std::regex> candidate_;
  std::optional<std::string> expected_;
};

// One-shot convenience for pattern and exact specs; oracle specs need the
// manifest path for the solver protocol, so prefer FlagDetector there.
std::optional<std::string> detect_flag(const std::string& raw_output, const FlagSpec& spec);

}  // namespace ctfagent
