#pragma once

#include "ctfagent/agent.hpp"
#include "ctfagent/backend.hpp"
#include "ctfagent/policy.hpp"
#include "ctfagent/sandbox.hpp"

namespace ctfagent {

// Runs one challenge episode to termination: plan -> policy check ->
// execute -> truncate -> detect flag on raw output -> summarize -> record,
// for at most cfg.max_steps iterations. Terminates early on a captured
// flag (Solved), a policy denial (SafetyAbort), or an unrecoverable
// backend/sandbox failure (captured in the status, never thrown).
//
// Flag detection for exact/oracle specs resolves the expected flag before
// step 1; resolution failures (missing secret, broken solver) are
// configuration errors and DO propagate.
EpisodeResult run_episode(const ChallengeContext& ctx, const AgentConfig& cfg,
                          CompletionBackend& planner, CompletionBackend& summarizer,
                          Sandbox& sandbox, const CommandPolicy& policy);

}  // namespace ctfagent
