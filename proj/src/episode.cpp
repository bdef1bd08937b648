#include "ctfagent/episode.hpp"

#include "ctfagent/flag_detect.hpp"
#include "ctfagent/prompt.hpp"
#include "ctfagent/util.hpp"

namespace ctfagent {

namespace {

RoleTokens sum_tokens(const ActionHistory& history) {
  RoleTokens total;
  for (const auto& rec : history) {
    total.planner += rec.planner_tokens.prompt + rec.planner_tokens.completion;
    total.summarizer += rec.summarizer_tokens.prompt + rec.summarizer_tokens.completion;
  }
  return total;
}

}  // namespace

EpisodeResult run_episode(const ChallengeContext& ctx, const AgentConfig& cfg,
                          CompletionBackend& planner, CompletionBackend& summarizer,
                          Sandbox& sandbox, const CommandPolicy& policy) {
  cfg.validate();
  FlagDetector detector(ctx.manifest);

  EpisodeResult result;
  result.challenge_id = ctx.manifest.id;
  const long long episode_start = steady_ms();
  const std::string summarizer_model = cfg.summarizer_model_id.value_or(cfg.model_id);

  EpisodeStatus status = EpisodeStatus::StepLimit;

  for (int step = 1; step <= cfg.max_steps; ++step) {
    ActionRecord rec;
    rec.step_index = step;
    rec.started_at = now_ms();

    CompletionResponse plan;
    try {
      plan = planner.complete(CompletionRequest(
          cfg.model_id, build_planner_prompt(ctx, result.history, cfg), cfg.temperature,
          cfg.top_p));
    } catch (const BackendError&) {
      status = EpisodeStatus::BackendError;
      break;
    }
    rec.planner_tokens = {plan.prompt_tokens, plan.completion_tokens};

    auto command = extract_command(plan.text);
    if (!command) {
      // A reply with no extractable command still consumes a step.
      rec.summary = "(planner reply contained no command)";
      rec.finished_at = now_ms();
      result.history.push_back(std::move(rec));
      continue;
    }
    rec.command = *command;

    PolicyDecision verdict = check_command_policy(rec.command, policy);
    if (!verdict.allowed) {
      rec.summary = "(command denied by policy: " + verdict.reason + ")";
      rec.finished_at = now_ms();
      result.history.push_back(std::move(rec));
      status = EpisodeStatus::SafetyAbort;
      break;
    }

    ExecResult exec;
    try {
      exec = sandbox.exec({rec.command, cfg.per_command_timeout, {}});
    } catch (const SandboxError&) {
      status = EpisodeStatus::SandboxError;
      break;
    }
    rec.exec = ExecDigest{exec.exit_code, exec.duration_ms};

    const std::string raw = combine_output(exec.out, exec.err);
    rec.observation = truncate_observation(raw, cfg.observation_window);

    // Detection runs on the raw output: a flag the window would cut off
    // still terminates the episode.
    if (auto flag = detector.detect(raw)) {
      rec.summary = "Flag captured: " + *flag;
      rec.finished_at = now_ms();
      result.history.push_back(std::move(rec));
      result.flag = std::move(flag);
      status = EpisodeStatus::Solved;
      break;
    }

    try {
      CompletionResponse summary = summarizer.complete(CompletionRequest(
          summarizer_model,
          build_summarizer_prompt(rec.command, rec.observation, cfg.summarizer_system_prompt),
          cfg.temperature, cfg.top_p));
      rec.summarizer_tokens = {summary.prompt_tokens, summary.completion_tokens};
      rec.summary = clamp_summary(summary.text);
    } catch (const BackendError&) {
      // The command ran; keep the step, then end the episode.
      rec.finished_at = now_ms();
      result.history.push_back(std::move(rec));
      status = EpisodeStatus::BackendError;
      break;
    }

    rec.finished_at = now_ms();
    result.history.push_back(std::move(rec));
  }

  result.status = status;
  result.steps_used = static_cast<int>(result.history.size());
  result.total_tokens = sum_tokens(result.history);
  result.wall_time_ms = steady_ms() - episode_start;
  return result;
}

}  // namespace ctfagent
