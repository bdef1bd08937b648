#include "ctfagent/prompt.hpp"

#include <set>
#include <sstream>

#include "ctfagent/util.hpp"

namespace ctfagent {

namespace {

// Language tags dropped from the first line of a fenced block. Anything
// else on that line is treated as command content, so single-line fences
// like ```pwd``` still work.
bool is_fence_info(std::string_view line) {
  static const std::set<std::string> tags = {"",     "bash",  "sh",        "shell", "zsh",
                                             "ksh",  "dash",  "console",   "text",  "plain",
                                             "posix", "plaintext", "shell-session"};
  return tags.count(to_lower(trim(line))) > 0;
}

std::optional<std::string> from_fenced_block(std::string_view text) {
  size_t open = text.find("```");
  if (open == std::string_view::npos) return std::nullopt;
  std::string_view rest = text.substr(open + 3);
  size_t close = rest.find("```");
  std::string_view between = close == std::string_view::npos ? rest : rest.substr(0, close);

  size_t nl = between.find('\n');
  if (nl != std::string_view::npos && is_fence_info(between.substr(0, nl)))
    between = between.substr(nl + 1);

  std::string content = trim(between);
  if (content.empty()) return std::nullopt;
  return content;
}

std::optional<std::string> from_inline_span(std::string_view text) {
  size_t pos = 0;
  while (true) {
    size_t open = text.find('`', pos);
    if (open == std::string_view::npos) return std::nullopt;
    size_t close = text.find('`', open + 1);
    if (close == std::string_view::npos) return std::nullopt;
    std::string_view between = text.substr(open + 1, close - open - 1);
    if (between.find('\n') == std::string_view::npos) {
      std::string content = trim(between);
      if (!content.empty()) return content;
    }
    pos = close + 1;
  }
}

std::optional<std::string> from_first_line(std::string_view text) {
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view line =
        nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
    std::string candidate = trim(line);
    if (!candidate.empty()) {
      if (candidate.rfind("$ ", 0) == 0) candidate = trim(candidate.substr(2));
      if (!candidate.empty()) return candidate;
      return std::nullopt;  // the line was just a prompt marker
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> extract_command(std::string_view planner_text) {
  if (auto cmd = from_fenced_block(planner_text)) return cmd;
  if (auto cmd = from_inline_span(planner_text)) return cmd;
  return from_first_line(planner_text);
}

std::string truncate_observation(std::string_view raw, int window) {
  if (window < 1) throw std::invalid_argument("observation window must be >= 1");
  if (raw.size() <= static_cast<size_t>(window)) return std::string(raw);
  std::string out(kTruncationMarker);
  out.push_back('\n');
  out.append(raw.substr(raw.size() - static_cast<size_t>(window)));
  return out;
}

std::string combine_output(std::string_view out, std::string_view err) {
  if (err.empty()) return std::string(out);
  if (out.empty()) return std::string(err);
  std::string combined(out);
  if (combined.back() != '\n') combined.push_back('\n');
  combined.append(err);
  return combined;
}

std::string clamp_summary(std::string_view text) {
  std::string s = trim(text);
  if (s.size() > kSummaryCharCap) s.resize(kSummaryCharCap);
  return s;
}

std::vector<ChatMessage> build_planner_prompt(const ChallengeContext& ctx,
                                              const ActionHistory& history,
                                              const AgentConfig& cfg) {
  std::vector<ChatMessage> messages;
  messages.push_back({Role::system, cfg.planner_system_prompt});

  const ChallengeManifest& m = ctx.manifest;
  std::ostringstream challenge;
  challenge << "Challenge: " << m.name << " [" << category_to_string(m.category) << ", "
            << difficulty_to_string(m.difficulty) << "]\n";
  if (!m.description.empty()) challenge << m.description << "\n";
  if (!m.hints.empty()) {
    challenge << "\nHints:\n";
    for (const auto& hint : m.hints) challenge << "- " << hint << "\n";
  }
  if (!ctx.staged_file_paths.empty()) {
    challenge << "\nFiles in your working directory:\n";
    for (const auto& path : ctx.staged_file_paths) challenge << "- " << path << "\n";
  }
  if (ctx.target_note) challenge << "\nTarget: " << *ctx.target_note << "\n";
  messages.push_back({Role::user, challenge.str()});

  for (const auto& rec : history) {
    std::ostringstream step;
    step << "Step " << rec.step_index << "\n";
    step << "Command: " << (rec.command.empty() ? "(none)" : rec.command) << "\n";
    step << "Result: " << (rec.summary.empty() ? "(no summary)" : rec.summary) << "\n";
    messages.push_back({Role::user, step.str()});
  }

  messages.push_back(
      {Role::user, "Reply with exactly one shell command to run next, in a fenced code block."});
  return messages;
}

std::vector<ChatMessage> build_summarizer_prompt(std::string_view command,
                                                 std::string_view truncated_observation,
                                                 std::string_view system_prompt) {
  std::vector<ChatMessage> messages;
  messages.push_back({Role::system, std::string(system_prompt)});

  std::ostringstream user;
  user << "Command:\n" << command << "\n\nOutput:\n";
  if (truncated_observation.empty())
    user << "(the command produced no output)\n";
  else
    user << truncated_observation << "\n";
  user << "\nSummarize in at most " << kSummaryCharCap
       << " characters what this output reveals.";
  messages.push_back({Role::user, user.str()});
  return messages;
}

}  // namespace ctfagent
