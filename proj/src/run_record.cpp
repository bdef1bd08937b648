#include "ctfagent/run_record.hpp"

#include <fstream>

#include "ctfagent/util.hpp"

namespace ctfagent {

nlohmann::ordered_json run_record_to_json(const RunRecord& r) {
  nlohmann::ordered_json j;
  j["v"] = kRecordSchemaVersion;
  j["plan"] = r.plan_name;
  j["benchmark"] = r.benchmark;
  j["model"] = r.model_id;
  j["params"] = {{"temperature", r.params.temperature},
                 {"top_p", r.params.top_p},
                 {"window", r.params.window}};
  j["challenge_id"] = r.challenge_id;
  j["category"] = r.category;
  j["difficulty"] = r.difficulty;
  j["created_at"] = r.created_at;
  if (r.error)
    j["error"] = *r.error;
  else
    j["error"] = nullptr;
  j["result"] = episode_result_to_json(r.result);
  return j;
}

RunRecord run_record_from_json(const nlohmann::json& j) {
  const int v = j.value("v", 0);
  if (v != kRecordSchemaVersion)
    throw Error("unsupported record schema version " + std::to_string(v));
  RunRecord r;
  r.plan_name = j.value("plan", std::string());
  r.benchmark = j.value("benchmark", std::string());
  r.model_id = j.at("model").get<std::string>();
  r.params.temperature = j.at("params").at("temperature").get<double>();
  r.params.top_p = j.at("params").at("top_p").get<double>();
  r.params.window = j.at("params").at("window").get<int>();
  r.challenge_id = j.at("challenge_id").get<std::string>();
  r.category = j.value("category", std::string());
  r.difficulty = j.value("difficulty", std::string());
  r.created_at = j.value("created_at", 0LL);
  if (j.contains("error") && !j["error"].is_null()) r.error = j["error"].get<std::string>();
  r.result = episode_result_from_json(j.at("result"));
  return r;
}

std::string run_key(const std::string& model_id, const RunParams& params,
                    const std::string& challenge_id) {
  return model_id + "|" + format_param(params.temperature) + "|" + format_param(params.top_p) +
         "|" + std::to_string(params.window) + "|" + challenge_id;
}

void RecordLog::append(const RunRecord& record) {
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  if (!out) throw Error("cannot append to record log: " + path_.string());
  out << run_record_to_json(record).dump() << "\n";
  out.flush();
  if (!out) throw Error("record log write failed: " + path_.string());
}

std::vector<RunRecord> RecordLog::read_all(const std::filesystem::path& path) {
  std::vector<RunRecord> records;
  if (!std::filesystem::exists(path)) return records;
  for (const auto& line : read_lines(path)) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error("bad record log line in " + path.string() + ": " + e.what());
    }
    records.push_back(run_record_from_json(j));
  }
  return records;
}

}  // namespace ctfagent
