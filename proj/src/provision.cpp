#include "ctfagent/provision.hpp"

#include <sstream>

namespace ctfagent {

namespace {

bool is_remote_url(const std::string& url) { return url.find("://") != std::string::npos; }

AllowRule target_rule(const ChallengeTarget& target) {
  // ssh and http targets ride on TCP.
  return {target.host, target.port, NetProtocol::tcp};
}

std::string render_target_note(const ChallengeTarget& target) {
  std::ostringstream note;
  note << target.host << ":" << target.port << " via "
       << target_protocol_to_string(target.protocol);
  if (target.wargame) {
    note << " (" << wargame_to_string(*target.wargame);
    if (target.level) note << " level " << *target.level;
    note << ")";
  }
  return note.str();
}

}  // namespace

std::filesystem::path resolve_file_source(const ChallengeManifest& manifest,
                                          const ChallengeFile& file,
                                          const std::filesystem::path& cache_dir) {
  const std::filesystem::path cached = cache_dir / manifest.id / file.name;
  if (std::filesystem::exists(cached)) return cached;
  if (is_remote_url(file.url))
    throw ProvisionError("file '" + file.name + "' of challenge '" + manifest.id +
                         "' is not cached; run fetch first (expected " + cached.string() + ")");
  std::filesystem::path local(file.url);
  if (local.is_relative() && !manifest.source_path.empty())
    local = manifest.source_path.parent_path() / local;
  if (!std::filesystem::exists(local))
    throw ProvisionError("file '" + file.name + "' of challenge '" + manifest.id +
                         "' not found at " + local.string());
  return local;
}

ChallengeContext provision(const ChallengeManifest& manifest, Sandbox& sandbox,
                           const ProvisionOptions& options) {
  ChallengeContext ctx;
  ctx.manifest = manifest;

  if (manifest.target) {
    const AllowRule rule = target_rule(*manifest.target);
    for (const auto& denied : options.operator_denied) {
      if (denied == rule)
        throw TargetPolicyConflictError("target " + rule.host + ":" + std::to_string(rule.port) +
                                        "/" + net_protocol_to_string(rule.protocol) +
                                        " is denied by operator override");
    }
    sandbox.allow_endpoint(rule);
    ctx.target_note = render_target_note(*manifest.target);
  }

  std::vector<StagedFile> staged;
  staged.reserve(manifest.files.size());
  for (const auto& file : manifest.files) {
    staged.push_back(
        {resolve_file_source(manifest, file, options.cache_dir), file.name, file.sha256});
  }
  sandbox.stage_files(staged);
  for (const auto& f : staged) ctx.staged_file_paths.push_back(sandbox.workdir() + "/" + f.dest_path);

  return ctx;
}

}  // namespace ctfagent
