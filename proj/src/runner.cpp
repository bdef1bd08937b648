#include "ctfagent/runner.hpp"

#include <atomic>
#include <mutex>
#include <set>
#include <thread>

#include "ctfagent/util.hpp"

namespace ctfagent {

namespace {

struct EpisodeTask {
  const PlanBackend* backend;
  std::string model_id;
  RunParams params;
  const ChallengeManifest* manifest;
};

RunRecord execute_task(const ExperimentPlan& plan, const Benchmark& benchmark,
                       const EpisodeEnv& env, const EpisodeTask& task) {
  RunRecord record;
  record.plan_name = plan.name;
  record.benchmark = benchmark.name;
  record.model_id = task.model_id;
  record.params = task.params;
  record.challenge_id = task.manifest->id;
  record.category = category_to_string(task.manifest->category);
  record.difficulty = difficulty_to_string(task.manifest->difficulty);
  record.created_at = now_ms();
  record.result.challenge_id = task.manifest->id;

  std::unique_ptr<Sandbox> sandbox;
  try {
    sandbox = env.make_sandbox(*task.manifest);
    ChallengeContext ctx = provision(*task.manifest, *sandbox, env.provision_options);

    AgentConfig cfg;
    cfg.model_id = task.model_id;
    cfg.temperature = task.params.temperature;
    cfg.top_p = task.params.top_p;
    cfg.observation_window = task.params.window;
    cfg.max_steps = plan.max_steps;
    cfg.per_command_timeout = env.per_command_timeout_s;
    cfg.planner_system_prompt = env.planner_system_prompt;
    cfg.summarizer_system_prompt = env.summarizer_system_prompt;

    auto planner = env.make_planner(task.backend->descriptor, task.model_id, task.params);
    auto summarizer = env.make_summarizer(task.backend->descriptor, task.model_id, task.params);
    record.result = run_episode(ctx, cfg, *planner, *summarizer, *sandbox, env.policy);
  } catch (const BackendError& e) {
    record.result.status = EpisodeStatus::BackendError;
    record.error = e.what();
  } catch (const SandboxError& e) {
    record.result.status = EpisodeStatus::SandboxError;
    record.error = e.what();
  } catch (const Error& e) {
    record.result.status = EpisodeStatus::SandboxError;
    record.error = e.what();
  }
  if (sandbox) sandbox->destroy();
  return record;
}

}  // namespace

std::vector<RunRecord> run_experiment(const ExperimentPlan& plan, const Benchmark& benchmark,
                                      const EpisodeEnv& env,
                                      const std::filesystem::path& record_log_path,
                                      const std::function<void(const RunRecord&)>& on_record) {
  plan.validate();
  if (!env.make_sandbox || !env.make_planner || !env.make_summarizer)
    throw ConfigError("run_experiment requires sandbox and backend factories");

  // Resume: tuples already in the log are never re-executed.
  std::set<std::string> done;
  for (const auto& existing : RecordLog::read_all(record_log_path))
    done.insert(run_key(existing.model_id, existing.params, existing.challenge_id));

  std::vector<EpisodeTask> tasks;
  for (const auto& backend : plan.backends)
    for (const auto& model : backend.model_ids)
      for (double temperature : plan.temperatures)
        for (double top_p : plan.top_ps)
          for (int window : plan.windows)
            for (const auto& manifest : benchmark.manifests) {
              if (plan.challenge_filter && !plan.challenge_filter->matches(manifest)) continue;
              RunParams params{temperature, top_p, window};
              if (done.count(run_key(model, params, manifest.id))) continue;
              tasks.push_back({&backend, model, params, &manifest});
            }

  RecordLog log(record_log_path);
  std::vector<RunRecord> produced;
  std::mutex sink_mu;
  std::atomic<size_t> next_task{0};
  std::atomic<bool> abort{false};
  std::exception_ptr persist_failure;

  auto worker = [&] {
    while (!abort.load()) {
      const size_t i = next_task.fetch_add(1);
      if (i >= tasks.size()) return;
      RunRecord record = execute_task(plan, benchmark, env, tasks[i]);
      std::lock_guard lock(sink_mu);
      try {
        log.append(record);
      } catch (...) {
        persist_failure = std::current_exception();
        abort.store(true);
        return;
      }
      if (on_record) on_record(record);
      produced.push_back(std::move(record));
    }
  };

  const size_t thread_count =
      std::min(static_cast<size_t>(plan.parallelism), std::max<size_t>(tasks.size(), 1));
  std::vector<std::thread> pool;
  pool.reserve(thread_count);
  for (size_t i = 0; i < thread_count; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  if (persist_failure) std::rethrow_exception(persist_failure);
  return produced;
}

}  // namespace ctfagent
