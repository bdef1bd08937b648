#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ctfagent/errors.hpp"
#include "json.hpp"

namespace ctfagent {

enum class PlatformKind { picoctf, overthewire, synthetic };
enum class Category {
  GeneralSkills,
  Cryptography,
  WebExploitation,
  Forensics,
  ReverseEngineering,
  BinaryExploitation
};
enum class Difficulty { easy, medium, hard };
enum class Wargame { Bandit, Natas, Leviathan, Krypton };
enum class TargetProtocol { ssh, http, tcp };
enum class FlagKind { pattern, exact, oracle };

inline constexpr int kCategoryCount = 6;
inline constexpr int kDifficultyCount = 3;
inline constexpr int kPlatformCount = 3;

std::string platform_to_string(PlatformKind p);
std::string category_to_string(Category c);
std::string difficulty_to_string(Difficulty d);
std::string wargame_to_string(Wargame w);
std::string target_protocol_to_string(TargetProtocol p);
std::string flag_kind_to_string(FlagKind k);

// Strict parsers; throw ConfigError naming the legal values.
PlatformKind platform_from_string(const std::string& s);
Category category_from_string(const std::string& s);
Difficulty difficulty_from_string(const std::string& s);

struct ChallengeFile {
  std::string name;
  std::string url;  // http(s) URL or path relative to the manifest directory
  std::string sha256;
};

struct ChallengeTarget {
  std::optional<Wargame> wargame;
  std::optional<int> level;
  std::string host;
  int port = 0;
  TargetProtocol protocol = TargetProtocol::tcp;
};

// How an episode recognizes that the flag has been captured.
//   pattern: regex matched against raw command output.
//   exact:   the secret named by secret_ref (env var) appears verbatim.
//   oracle:  a solver executable produces the expected flag dynamically;
//            candidate_pattern optionally restricts which output tokens
//            are checked against it.
struct FlagSpec {
  FlagKind kind = FlagKind::pattern;
  std::optional<std::string> pattern;
  std::optional<std::string> secret_ref;
  std::optional<std::string> solver_ref;
  std::optional<std::string> candidate_pattern;
};

struct ChallengeManifest {
  std::string id;
  PlatformKind platform = PlatformKind::synthetic;
  std::string name;
  Category category = Category::GeneralSkills;
  Difficulty difficulty = Difficulty::easy;
  std::string description;
  std::vector<std::string> hints;
  std::vector<ChallengeFile> files;
  std::optional<ChallengeTarget> target;
  FlagSpec flag;

  // Where the manifest was loaded from (empty for in-memory manifests);
  // not part of the file schema. Solver paths resolve against it.
  std::filesystem::path source_path;
};

struct Benchmark {
  std::string name;
  std::vector<ChallengeManifest> manifests;

  const ChallengeManifest* find(const std::string& id) const;
};

struct ValidationIssue {
  std::string file;
  std::string field;
  std::string reason;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<ValidationIssue> issues);
  const std::vector<ValidationIssue>& issues() const { return issues_; }

 private:
  std::vector<ValidationIssue> issues_;
};

// Loads every *.json manifest in the directory, in filename order.
// All-or-nothing: any issue in any file fails the whole load, and the
// thrown ValidationError carries one (file, field, reason) per problem.
Benchmark load_benchmark(const std::filesystem::path& dir);

// Parses and validates one manifest document, appending problems to
// issues. The returned manifest is meaningful only when no issues were
// added for this file.
ChallengeManifest manifest_from_json(const nlohmann::json& j, const std::string& file_label,
                                     std::vector<ValidationIssue>& issues);

nlohmann::ordered_json manifest_to_json(const ChallengeManifest& m);

bool manifests_equivalent(const ChallengeManifest& a, const ChallengeManifest& b);

}  // namespace ctfagent
