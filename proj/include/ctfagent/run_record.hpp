#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ctfagent/agent.hpp"

namespace ctfagent {

struct RunParams {
  double temperature = 1.0;
  double top_p = 0.9;
  int window = 250;

  bool operator==(const RunParams&) const = default;
};

// One (model, params, challenge) execution. benchmark/category/difficulty
// are snapshotted so aggregation never needs the corpus on disk.
struct RunRecord {
  std::string plan_name;
  std::string benchmark;
  std::string model_id;
  RunParams params;
  std::string challenge_id;
  std::string category;
  std::string difficulty;
  long long created_at = 0;
  std::optional<std::string> error;  // provisioning/infrastructure note
  EpisodeResult result;
};

inline constexpr int kRecordSchemaVersion = 1;

nlohmann::ordered_json run_record_to_json(const RunRecord& r);
RunRecord run_record_from_json(const nlohmann::json& j);

// Resume key: a tuple already present in the log is not re-run.
std::string run_key(const std::string& model_id, const RunParams& params,
                    const std::string& challenge_id);

// Append-only newline-delimited record log; every append is flushed so a
// crashed sweep loses at most the episode in flight.
class RecordLog {
 public:
  explicit RecordLog(std::filesystem::path path) : path_(std::move(path)) {}

  void append(const RunRecord& record);
  const std::filesystem::path& path() const { return path_; }

  static std::vector<RunRecord> read_all(const std::filesystem::path& path);

 private:
  std::filesystem::path path_;
};

}  // namespace ctfagent
