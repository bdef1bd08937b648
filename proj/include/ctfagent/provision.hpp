#pragma once

#include <filesystem>
#include <vector>

#include "ctfagent/agent.hpp"
#include "ctfagent/sandbox.hpp"

namespace ctfagent {

class ProvisionError : public Error {
 public:
  using Error::Error;
};

class TargetPolicyConflictError : public Error {
 public:
  using Error::Error;
};

struct ProvisionOptions {
  std::filesystem::path cache_dir = "cache";
  // Operator-denied egress tuples; a manifest target colliding with one
  // aborts provisioning instead of silently widening the allowlist.
  std::vector<AllowRule> operator_denied;
};

// Resolves a manifest file entry to its local source: the fetch cache
// (cache/<challenge-id>/<file-name>) when populated, otherwise the url
// field interpreted as a path relative to the manifest's directory.
std::filesystem::path resolve_file_source(const ChallengeManifest& manifest,
                                          const ChallengeFile& file,
                                          const std::filesystem::path& cache_dir);

// Opens the manifest target's egress tuple (before staging), stages the
// challenge files into the sandbox workdir, and assembles the context the
// planner prompt is built from.
ChallengeContext provision(const ChallengeManifest& manifest, Sandbox& sandbox,
                           const ProvisionOptions& options = {});

}  // namespace ctfagent
