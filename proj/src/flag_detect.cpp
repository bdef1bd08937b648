#include "ctfagent/flag_detect.hpp"

#include "ctfagent/solver.hpp"

namespace ctfagent {

FlagDetector::FlagDetector(const FlagSpec& spec, std::filesystem::path manifest_path)
    : spec_(spec) {
  switch (spec_.kind) {
    case FlagKind::pattern:
      if (!spec_.pattern) throw Error("pattern flag spec lacks a pattern");
      pattern_.emplace(*spec_.pattern);
      break;
    case FlagKind::exact:
      expected_ = resolve_flag_spec(spec_, manifest_path);
      break;
    case FlagKind::oracle:
      expected_ = resolve_flag_spec(spec_, manifest_path);
      if (spec_.candidate_pattern) candidate_.emplace(*spec_.candidate_pattern);
      break;
  }
}

FlagDetector::FlagDetector(const ChallengeManifest& manifest)
    : FlagDetector(manifest.flag, manifest.source_path) {}

std::optional<std::string> FlagDetector::detect(const std::string& raw_output) const {
  switch (spec_.kind) {
    case FlagKind::pattern: {
      std::smatch match;
      if (std::regex_search(raw_output, match, *pattern_)) return match[0].str();
      return std::nullopt;
    }
    case FlagKind::exact: {
      if (raw_output.find(*expected_) != std::string::npos) return expected_;
      return std::nullopt;
    }
    case FlagKind::oracle: {
      if (!candidate_) {
        if (raw_output.find(*expected_) != std::string::npos) return expected_;
        return std::nullopt;
      }
      auto begin = std::sregex_iterator(raw_output.begin(), raw_output.end(), *candidate_);
      for (auto it = begin; it != std::sregex_iterator(); ++it) {
        if (it->str() == *expected_) return expected_;
      }
      return std::nullopt;
    }
  }
  throw std::logic_error("bad flag kind");
}

std::optional<std::string> detect_flag(const std::string& raw_output, const FlagSpec& spec) {
  return FlagDetector(spec).detect(raw_output);
}

}  // namespace ctfagent
