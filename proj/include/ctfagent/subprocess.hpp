#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ctfagent {

struct RunOptions {
  std::optional<long long> timeout_ms;
  size_t max_output_bytes = 1 << 20;  // per stream
  std::map<std::string, std::string> extra_env;
};

struct RunResult {
  std::string out;
  std::string err;
  int exit_code = 0;   // -1 when killed (timeout or signal)
  bool timed_out = false;
  long long duration_ms = 0;
  bool out_truncated = false;
  bool err_truncated = false;
};

// Runs argv[0] with the given arguments, capturing stdout and stderr
// separately. On timeout the whole process group is SIGKILLed and the
// result is marked timed_out with exit_code -1. Output beyond
// max_output_bytes per stream is drained but discarded.
RunResult run_process(const std::vector<std::string>& argv, const RunOptions& opts = {});

}  // namespace ctfagent
