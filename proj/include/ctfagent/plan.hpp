#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ctfagent/backend.hpp"
#include "ctfagent/manifest.hpp"

namespace ctfagent {

struct ChallengeFilter {
  std::vector<Category> categories;      // empty = any
  std::vector<Difficulty> difficulties;  // empty = any
  std::vector<std::string> ids;          // empty = any

  bool matches(const ChallengeManifest& m) const;
};

struct PlanBackend {
  std::string name;
  BackendDescriptor descriptor;
  std::vector<std::string> model_ids;
};

// One experiment: models x (temperature, top_p, window) grid x filtered
// challenges, run for max_steps each with up to `parallelism` episodes in
// flight.
struct ExperimentPlan {
  std::string name;
  std::vector<PlanBackend> backends;
  std::string benchmark_ref;  // benchmark directory
  std::optional<ChallengeFilter> challenge_filter;
  std::vector<double> temperatures;
  std::vector<double> top_ps;
  std::vector<int> windows;
  int max_steps = 20;
  int parallelism = 1;
  std::string seed_note;

  void validate() const;
  size_t grid_size() const { return temperatures.size() * top_ps.size() * windows.size(); }
  size_t model_count() const;
};

// Relative paths inside the file (benchmark_ref, backend script paths)
// resolve against the plan file's directory.
ExperimentPlan load_plan(const std::filesystem::path& path);

}  // namespace ctfagent
