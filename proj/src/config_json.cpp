#include "ctfagent/config_json.hpp"

namespace ctfagent {

std::filesystem::path resolve_relative(const std::filesystem::path& base,
                                       const std::filesystem::path& p) {
  if (p.empty() || p.is_absolute() || base.empty()) return p;
  return base / p;
}

BackendDescriptor descriptor_from_json(const nlohmann::json& j,
                                       const std::filesystem::path& base) {
  BackendDescriptor d;
  d.kind = backend_kind_from_string(j.value("kind", std::string("http")));
  if (j.contains("endpoint_url")) d.endpoint_url = j["endpoint_url"].get<std::string>();
  if (j.contains("credential_ref")) d.credential_ref = j["credential_ref"].get<std::string>();
  if (j.contains("base_url_env")) d.base_url_env = j["base_url_env"].get<std::string>();
  if (j.contains("retry")) {
    d.retry.max_attempts = j["retry"].value("max_attempts", 3);
    d.retry.backoff_base_ms = j["retry"].value("backoff_base_ms", 250);
  }
  if (j.contains("script_path"))
    d.script_path = resolve_relative(base, j["script_path"].get<std::string>());
  if (j.contains("transcript_path"))
    d.transcript_path = resolve_relative(base, j["transcript_path"].get<std::string>());
  if (j.contains("record_to"))
    d.record_to = resolve_relative(base, j["record_to"].get<std::string>());
  d.validate();
  return d;
}

nlohmann::ordered_json descriptor_to_json(const BackendDescriptor& d) {
  nlohmann::ordered_json j;
  j["kind"] = backend_kind_to_string(d.kind);
  if (d.endpoint_url) j["endpoint_url"] = *d.endpoint_url;
  if (d.credential_ref) j["credential_ref"] = *d.credential_ref;
  if (d.base_url_env) j["base_url_env"] = *d.base_url_env;
  j["retry"] = {{"max_attempts", d.retry.max_attempts},
                {"backoff_base_ms", d.retry.backoff_base_ms}};
  if (d.script_path) j["script_path"] = d.script_path->string();
  if (d.transcript_path) j["transcript_path"] = d.transcript_path->string();
  if (d.record_to) j["record_to"] = d.record_to->string();
  return j;
}

}  // namespace ctfagent
