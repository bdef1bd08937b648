#include "ctfagent/plan.hpp"

#include <algorithm>

#include "ctfagent/config_json.hpp"
#include "ctfagent/util.hpp"

namespace ctfagent {

bool ChallengeFilter::matches(const ChallengeManifest& m) const {
  if (!categories.empty() &&
      std::find(categories.begin(), categories.end(), m.category) == categories.end())
    return false;
  if (!difficulties.empty() &&
      std::find(difficulties.begin(), difficulties.end(), m.difficulty) == difficulties.end())
    return false;
  if (!ids.empty() && std::find(ids.begin(), ids.end(), m.id) == ids.end()) return false;
  return true;
}

size_t ExperimentPlan::model_count() const {
  size_t n = 0;
  for (const auto& b : backends) n += b.model_ids.size();
  return n;
}

void ExperimentPlan::validate() const {
  if (name.empty()) throw ConfigError("plan name must be non-empty");
  if (backends.empty()) throw ConfigError("plan requires at least one backend");
  for (const auto& b : backends) {
    b.descriptor.validate();
    if (b.model_ids.empty())
      throw ConfigError("plan backend '" + b.name + "' requires at least one model id");
  }
  if (benchmark_ref.empty()) throw ConfigError("plan benchmark_ref must be non-empty");
  if (temperatures.empty() || top_ps.empty() || windows.empty())
    throw ConfigError("plan param_grid lists must be non-empty");
  for (double t : temperatures)
    if (!(t >= 0.0 && t <= 2.0)) throw ConfigError("grid temperature out of [0, 2]");
  for (double p : top_ps)
    if (!(p > 0.0 && p <= 1.0)) throw ConfigError("grid top_p out of (0, 1]");
  for (int w : windows)
    if (w < 1) throw ConfigError("grid window must be >= 1");
  if (max_steps < 1) throw ConfigError("plan max_steps must be >= 1");
  if (parallelism < 1) throw ConfigError("plan parallelism must be >= 1");
}

ExperimentPlan load_plan(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad plan file " + path.string() + ": " + e.what());
  }
  const std::filesystem::path base = path.parent_path();

  ExperimentPlan plan;
  plan.name = j.value("name", std::string());
  plan.benchmark_ref = j.value("benchmark_dir", std::string());
  if (!plan.benchmark_ref.empty())
    plan.benchmark_ref = resolve_relative(base, plan.benchmark_ref).string();

  if (j.contains("backends"))
    for (const auto& jb : j["backends"]) {
      PlanBackend pb;
      pb.name = jb.value("name", std::string());
      pb.descriptor = descriptor_from_json(jb, base);
      if (jb.contains("model_ids"))
        for (const auto& m : jb["model_ids"]) pb.model_ids.push_back(m.get<std::string>());
      plan.backends.push_back(std::move(pb));
    }

  if (j.contains("challenge_filter")) {
    const auto& jf = j["challenge_filter"];
    ChallengeFilter filter;
    if (jf.contains("categories"))
      for (const auto& c : jf["categories"])
        filter.categories.push_back(category_from_string(c.get<std::string>()));
    if (jf.contains("difficulties"))
      for (const auto& d : jf["difficulties"])
        filter.difficulties.push_back(difficulty_from_string(d.get<std::string>()));
    if (jf.contains("ids"))
      for (const auto& id : jf["ids"]) filter.ids.push_back(id.get<std::string>());
    plan.challenge_filter = std::move(filter);
  }

  if (j.contains("param_grid")) {
    const auto& jg = j["param_grid"];
    if (jg.contains("temperatures"))
      for (const auto& t : jg["temperatures"]) plan.temperatures.push_back(t.get<double>());
    if (jg.contains("top_ps"))
      for (const auto& p : jg["top_ps"]) plan.top_ps.push_back(p.get<double>());
    if (jg.contains("windows"))
      for (const auto& w : jg["windows"]) plan.windows.push_back(w.get<int>());
  }
  plan.max_steps = j.value("max_steps", 20);
  plan.parallelism = j.value("parallelism", 1);
  plan.seed_note = j.value("seed_note", std::string());
  plan.validate();
  return plan;
}

}  // namespace ctfagent
