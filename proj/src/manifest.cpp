#include "ctfagent/manifest.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "ctfagent/util.hpp"

namespace ctfagent {

namespace {

const std::map<std::string, PlatformKind> kPlatforms = {
    {"picoctf", PlatformKind::picoctf},
    {"overthewire", PlatformKind::overthewire},
    {"synthetic", PlatformKind::synthetic},
};

const std::map<std::string, Category> kCategories = {
    {"GeneralSkills", Category::GeneralSkills},
    {"Cryptography", Category::Cryptography},
    {"WebExploitation", Category::WebExploitation},
    {"Forensics", Category::Forensics},
    {"ReverseEngineering", Category::ReverseEngineering},
    {"BinaryExploitation", Category::BinaryExploitation},
};

const std::map<std::string, Difficulty> kDifficulties = {
    {"easy", Difficulty::easy},
    {"medium", Difficulty::medium},
    {"hard", Difficulty::hard},
};

const std::map<std::string, Wargame> kWargames = {
    {"Bandit", Wargame::Bandit},
    {"Natas", Wargame::Natas},
    {"Leviathan", Wargame::Leviathan},
    {"Krypton", Wargame::Krypton},
};

const std::map<std::string, TargetProtocol> kTargetProtocols = {
    {"ssh", TargetProtocol::ssh},
    {"http", TargetProtocol::http},
    {"tcp", TargetProtocol::tcp},
};

const std::map<std::string, FlagKind> kFlagKinds = {
    {"pattern", FlagKind::pattern},
    {"exact", FlagKind::exact},
    {"oracle", FlagKind::oracle},
};

template <typename T>
std::string legal_values(const std::map<std::string, T>& table) {
  std::string out;
  for (const auto& [k, _] : table) {
    if (!out.empty()) out += ", ";
    out += k;
  }
  return out;
}

template <typename T>
std::string to_string_via(const std::map<std::string, T>& table, T value) {
  for (const auto& [k, v] : table)
    if (v == value) return k;
  throw std::logic_error("unmapped enum value");
}

class Parser {
 public:
  Parser(const nlohmann::json& j, std::string file, std::vector<ValidationIssue>& issues)
      : root_(j), file_(std::move(file)), issues_(issues) {}

  void issue(const std::string& field, const std::string& reason) {
    issues_.push_back({file_, field, reason});
  }

  bool check_object(const nlohmann::json& j, const std::string& field) {
    if (j.is_object()) return true;
    issue(field, "must be an object");
    return false;
  }

  void check_unknown_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                          const std::string& where) {
    for (const auto& [key, _] : j.items()) {
      if (!allowed.count(key))
        issue(where.empty() ? key : where + "." + key, "unknown key");
    }
  }

  std::optional<std::string> req_string(const nlohmann::json& j, const std::string& field,
                                        bool allow_empty = false) {
    if (!j.contains(field)) {
      issue(field, "required key missing");
      return std::nullopt;
    }
    if (!j[field].is_string()) {
      issue(field, "must be a string");
      return std::nullopt;
    }
    auto s = j[field].get<std::string>();
    if (s.empty() && !allow_empty) {
      issue(field, "must be non-empty");
      return std::nullopt;
    }
    return s;
  }

  template <typename T>
  std::optional<T> req_enum(const nlohmann::json& j, const std::string& field,
                            const std::map<std::string, T>& table) {
    auto s = req_string(j, field);
    if (!s) return std::nullopt;
    auto it = table.find(*s);
    if (it == table.end()) {
      issue(field, "illegal value '" + *s + "' (legal values: " + legal_values(table) + ")");
      return std::nullopt;
    }
    return it->second;
  }

  std::optional<std::string> opt_pattern(const nlohmann::json& j, const std::string& field) {
    if (!j.contains(field)) return std::nullopt;
    if (!j[field].is_string()) {
      issue(field, "must be a string");
      return std::nullopt;
    }
    auto s = j[field].get<std::string>();
    try {
      std::regex re(s);
    } catch (const std::regex_error& e) {
      issue(field, std::string("invalid regex: ") + e.what());
      return std::nullopt;
    }
    return s;
  }

  const nlohmann::json& root() const { return root_; }
  const std::string& file() const { return file_; }

 private:
  const nlohmann::json& root_;
  std::string file_;
  std::vector<ValidationIssue>& issues_;
};

void parse_files(Parser& p, const nlohmann::json& j, ChallengeManifest& m) {
  if (!j.is_array()) {
    p.issue("files", "must be an array");
    return;
  }
  size_t idx = 0;
  for (const auto& jf : j) {
    const std::string where = "files[" + std::to_string(idx++) + "]";
    if (!p.check_object(jf, where)) continue;
    p.check_unknown_keys(jf, {"name", "url", "sha256"}, where);
    ChallengeFile f;
    if (auto name = p.req_string(jf, "name")) f.name = *name;
    if (auto url = p.req_string(jf, "url")) f.url = *url;
    if (auto sha = p.req_string(jf, "sha256")) {
      if (sha->size() != 64 || !is_hex_lower(*sha))
        p.issue(where + ".sha256", "must be 64 lowercase hex characters");
      else
        f.sha256 = *sha;
    }
    if (f.name.find('/') != std::string::npos || f.name.find("..") != std::string::npos)
      p.issue(where + ".name", "must be a bare file name");
    m.files.push_back(std::move(f));
  }
}

void parse_target(Parser& p, const nlohmann::json& j, ChallengeManifest& m) {
  if (!p.check_object(j, "target")) return;
  p.check_unknown_keys(j, {"wargame", "level", "host", "port", "protocol"}, "target");
  ChallengeTarget t;
  if (j.contains("wargame")) {
    if (auto w = p.req_enum(j, "wargame", kWargames)) t.wargame = *w;
  }
  if (j.contains("level")) {
    if (!j["level"].is_number_integer() || j["level"].get<long long>() < 0)
      p.issue("target.level", "must be a non-negative integer");
    else
      t.level = j["level"].get<int>();
  }
  if (auto host = p.req_string(j, "host")) t.host = *host;
  if (!j.contains("port") || !j["port"].is_number_integer())
    p.issue("target.port", "required integer key missing");
  else {
    auto port = j["port"].get<long long>();
    if (port < 1 || port > 65535)
      p.issue("target.port", "must be within [1, 65535]");
    else
      t.port = static_cast<int>(port);
  }
  if (auto proto = p.req_enum(j, "protocol", kTargetProtocols)) t.protocol = *proto;
  m.target = std::move(t);
}

void parse_flag(Parser& p, const nlohmann::json& j, ChallengeManifest& m) {
  if (!p.check_object(j, "flag")) return;
  p.check_unknown_keys(j, {"kind", "pattern", "secret_ref", "solver_ref", "candidate_pattern"},
                       "flag");
  auto kind = p.req_enum(j, "kind", kFlagKinds);
  if (!kind) return;
  m.flag.kind = *kind;
  m.flag.pattern = p.opt_pattern(j, "pattern");
  m.flag.candidate_pattern = p.opt_pattern(j, "candidate_pattern");
  if (j.contains("secret_ref")) m.flag.secret_ref = p.req_string(j, "secret_ref");
  if (j.contains("solver_ref")) m.flag.solver_ref = p.req_string(j, "solver_ref");

  // Exactly the fields the kind requires may be present.
  auto forbid = [&](const char* key, bool present) {
    if (present) p.issue(std::string("flag.") + key,
                         "not allowed for kind " + flag_kind_to_string(m.flag.kind));
  };
  switch (m.flag.kind) {
    case FlagKind::pattern:
      if (!m.flag.pattern) p.issue("flag.pattern", "required for kind pattern");
      forbid("secret_ref", m.flag.secret_ref.has_value());
      forbid("solver_ref", m.flag.solver_ref.has_value());
      forbid("candidate_pattern", m.flag.candidate_pattern.has_value());
      break;
    case FlagKind::exact:
      if (!m.flag.secret_ref) p.issue("flag.secret_ref", "required for kind exact");
      forbid("pattern", m.flag.pattern.has_value());
      forbid("solver_ref", m.flag.solver_ref.has_value());
      forbid("candidate_pattern", m.flag.candidate_pattern.has_value());
      break;
    case FlagKind::oracle:
      if (!m.flag.solver_ref) p.issue("flag.solver_ref", "required for kind oracle");
      forbid("pattern", m.flag.pattern.has_value());
      forbid("secret_ref", m.flag.secret_ref.has_value());
      break;
  }
}

}  // namespace

std::string platform_to_string(PlatformKind p) { return to_string_via(kPlatforms, p); }
std::string category_to_string(Category c) { return to_string_via(kCategories, c); }
std::string difficulty_to_string(Difficulty d) { return to_string_via(kDifficulties, d); }
std::string wargame_to_string(Wargame w) { return to_string_via(kWargames, w); }
std::string target_protocol_to_string(TargetProtocol p) { return to_string_via(kTargetProtocols, p); }
std::string flag_kind_to_string(FlagKind k) { return to_string_via(kFlagKinds, k); }

namespace {

template <typename T>
T from_string_via(const std::map<std::string, T>& table, const std::string& s, const char* what) {
  auto it = table.find(s);
  if (it == table.end())
    throw ConfigError("unknown " + std::string(what) + " '" + s + "' (legal values: " +
                      legal_values(table) + ")");
  return it->second;
}

}  // namespace

PlatformKind platform_from_string(const std::string& s) {
  return from_string_via(kPlatforms, s, "platform");
}
Category category_from_string(const std::string& s) {
  return from_string_via(kCategories, s, "category");
}
Difficulty difficulty_from_string(const std::string& s) {
  return from_string_via(kDifficulties, s, "difficulty");
}

const ChallengeManifest* Benchmark::find(const std::string& id) const {
  for (const auto& m : manifests)
    if (m.id == id) return &m;
  return nullptr;
}

ValidationError::ValidationError(std::vector<ValidationIssue> issues)
    : Error([&issues] {
        std::ostringstream ss;
        ss << issues.size() << " validation issue(s)";
        for (const auto& i : issues) ss << "\n  " << i.file << ": " << i.field << ": " << i.reason;
        return ss.str();
      }()),
      issues_(std::move(issues)) {}

ChallengeManifest manifest_from_json(const nlohmann::json& j, const std::string& file_label,
                                     std::vector<ValidationIssue>& issues) {
  ChallengeManifest m;
  Parser p(j, file_label, issues);
  if (!j.is_object()) {
    p.issue("", "manifest document must be a JSON object");
    return m;
  }
  p.check_unknown_keys(j,
                       {"id", "platform", "name", "category", "difficulty", "description", "hints",
                        "files", "target", "flag"},
                       "");

  if (auto id = p.req_string(j, "id")) m.id = *id;
  if (auto platform = p.req_enum(j, "platform", kPlatforms)) m.platform = *platform;
  if (auto name = p.req_string(j, "name")) m.name = *name;
  if (auto category = p.req_enum(j, "category", kCategories)) m.category = *category;
  if (auto difficulty = p.req_enum(j, "difficulty", kDifficulties)) m.difficulty = *difficulty;
  if (auto description = p.req_string(j, "description", /*allow_empty=*/true))
    m.description = *description;

  if (j.contains("hints")) {
    if (!j["hints"].is_array())
      p.issue("hints", "must be an array of strings");
    else
      for (const auto& h : j["hints"]) {
        if (!h.is_string())
          p.issue("hints", "must be an array of strings");
        else
          m.hints.push_back(h.get<std::string>());
      }
  }
  if (j.contains("files")) parse_files(p, j["files"], m);
  if (j.contains("target")) parse_target(p, j["target"], m);

  if (!j.contains("flag"))
    p.issue("flag", "required key missing");
  else
    parse_flag(p, j["flag"], m);

  if (m.platform == PlatformKind::overthewire && (!m.target || !m.target->wargame))
    p.issue("target.wargame",
            "platform overthewire requires a target with wargame in {" + legal_values(kWargames) +
                "}");
  return m;
}

nlohmann::ordered_json manifest_to_json(const ChallengeManifest& m) {
  nlohmann::ordered_json j;
  j["id"] = m.id;
  j["platform"] = platform_to_string(m.platform);
  j["name"] = m.name;
  j["category"] = category_to_string(m.category);
  j["difficulty"] = difficulty_to_string(m.difficulty);
  j["description"] = m.description;
  if (!m.hints.empty()) j["hints"] = m.hints;
  if (!m.files.empty()) {
    auto files = nlohmann::ordered_json::array();
    for (const auto& f : m.files) {
      nlohmann::ordered_json jf;
      jf["name"] = f.name;
      jf["url"] = f.url;
      jf["sha256"] = f.sha256;
      files.push_back(std::move(jf));
    }
    j["files"] = std::move(files);
  }
  if (m.target) {
    nlohmann::ordered_json jt;
    if (m.target->wargame) jt["wargame"] = wargame_to_string(*m.target->wargame);
    if (m.target->level) jt["level"] = *m.target->level;
    jt["host"] = m.target->host;
    jt["port"] = m.target->port;
    jt["protocol"] = target_protocol_to_string(m.target->protocol);
    j["target"] = std::move(jt);
  }
  nlohmann::ordered_json jf;
  jf["kind"] = flag_kind_to_string(m.flag.kind);
  if (m.flag.pattern) jf["pattern"] = *m.flag.pattern;
  if (m.flag.secret_ref) jf["secret_ref"] = *m.flag.secret_ref;
  if (m.flag.solver_ref) jf["solver_ref"] = *m.flag.solver_ref;
  if (m.flag.candidate_pattern) jf["candidate_pattern"] = *m.flag.candidate_pattern;
  j["flag"] = std::move(jf);
  return j;
}

bool manifests_equivalent(const ChallengeManifest& a, const ChallengeManifest& b) {
  return manifest_to_json(a) == manifest_to_json(b);
}

Benchmark load_benchmark(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw ValidationError({{dir.string(), "", "benchmark directory does not exist"}});

  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  Benchmark bench;
  bench.name = dir.filename().string();
  std::vector<ValidationIssue> issues;
  std::map<std::string, std::string> seen_ids;  // id -> first file

  for (const auto& path : files) {
    const std::string label = path.filename().string();
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
      issues.push_back({label, "", std::string("not valid JSON: ") + e.what()});
      continue;
    }
    size_t before = issues.size();
    ChallengeManifest m = manifest_from_json(j, label, issues);
    m.source_path = path;
    if (!m.id.empty()) {
      auto [it, inserted] = seen_ids.emplace(m.id, label);
      if (!inserted)
        issues.push_back({label, "id", "duplicate id '" + m.id + "' (also in " + it->second + ")"});
    }
    if (issues.size() == before) bench.manifests.push_back(std::move(m));
  }

  if (!issues.empty()) throw ValidationError(std::move(issues));
  return bench;
}

}  // namespace ctfagent
