#pragma once

#include <filesystem>

#include "ctfagent/backend.hpp"
#include "json.hpp"

namespace ctfagent {

// Relative paths written in config/plan files resolve against the file's
// own directory, keeping committed configs relocatable.
std::filesystem::path resolve_relative(const std::filesystem::path& base,
                                       const std::filesystem::path& p);

// Shared descriptor schema for config and plan files:
//   kind, endpoint_url, credential_ref, base_url_env,
//   retry{max_attempts, backoff_base_ms}, script_path, transcript_path,
//   record_to.
BackendDescriptor descriptor_from_json(const nlohmann::json& j,
                                       const std::filesystem::path& base);

nlohmann::ordered_json descriptor_to_json(const BackendDescriptor& d);

}  // namespace ctfagent
