#pragma once

#include <functional>
#include <memory>

#include "ctfagent/episode.hpp"
#include "ctfagent/plan.hpp"
#include "ctfagent/provision.hpp"
#include "ctfagent/run_record.hpp"

namespace ctfagent {

// Everything an episode needs besides the plan: how to build sandboxes and
// backends, the safety policy, prompts, and provisioning inputs. Factories
// are called once per episode; returned backends may be shared or fresh.
struct EpisodeEnv {
  std::function<std::unique_ptr<Sandbox>(const ChallengeManifest&)> make_sandbox;
  std::function<std::shared_ptr<CompletionBackend>(const BackendDescriptor& descriptor,
                                                   const std::string& model_id,
                                                   const RunParams& params)>
      make_planner;
  std::function<std::shared_ptr<CompletionBackend>(const BackendDescriptor& descriptor,
                                                   const std::string& model_id,
                                                   const RunParams& params)>
      make_summarizer;
  CommandPolicy policy;
  std::string planner_system_prompt = kDefaultPlannerSystemPrompt;
  std::string summarizer_system_prompt = kDefaultSummarizerSystemPrompt;
  ProvisionOptions provision_options;
  int per_command_timeout_s = 60;
};

// Runs every (model x grid point x filtered challenge) episode that is not
// already in the record log, appending each RunRecord durably as it
// completes (crash-resumable) with up to plan.parallelism episodes in
// flight. Per-episode failures become records with an error status;
// only persistence failures abort the plan.
std::vector<RunRecord> run_experiment(
    const ExperimentPlan& plan, const Benchmark& benchmark, const EpisodeEnv& env,
    const std::filesystem::path& record_log_path,
    const std::function<void(const RunRecord&)>& on_record = {});

}  // namespace ctfagent
