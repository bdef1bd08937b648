#include "ctfagent/solver.hpp"

#include <unistd.h>

#include <cstdlib>

#include "ctfagent/subprocess.hpp"
#include "ctfagent/util.hpp"

namespace ctfagent {

std::string resolve_flag_spec(const FlagSpec& spec, const std::filesystem::path& manifest_path) {
  switch (spec.kind) {
    case FlagKind::pattern:
      throw std::invalid_argument("pattern specs have no expected flag to resolve");
    case FlagKind::exact: {
      if (!spec.secret_ref) throw MissingSecretError("exact spec lacks secret_ref");
      const char* value = std::getenv(spec.secret_ref->c_str());
      if (!value || !*value)
        throw MissingSecretError("environment variable '" + *spec.secret_ref + "' is not set");
      return value;
    }
    case FlagKind::oracle: {
      if (!spec.solver_ref) throw OracleUnavailableError("oracle spec lacks solver_ref");
      std::filesystem::path solver(*spec.solver_ref);
      if (solver.is_relative() && !manifest_path.empty())
        solver = manifest_path.parent_path() / solver;
      if (!std::filesystem::exists(solver))
        throw OracleUnavailableError("solver not found: " + solver.string());
      if (access(solver.c_str(), X_OK) != 0)
        throw OracleUnavailableError("solver not executable: " + solver.string());

      RunResult r = run_process({solver.string(), manifest_path.string()}, {.timeout_ms = 60000});
      if (r.timed_out) throw SolverFailureError("solver timed out: " + solver.string());
      if (r.exit_code != 0)
        throw SolverFailureError("solver exited " + std::to_string(r.exit_code) + ": " +
                                 trim(r.err));
      std::string flag = trim(r.out);
      if (flag.empty()) throw SolverFailureError("solver printed no flag: " + solver.string());
      if (flag.find('\n') != std::string::npos)
        throw SolverFailureError("solver stdout must be a single line: " + solver.string());
      return flag;
    }
  }
  throw std::logic_error("bad flag kind");
}

std::string resolve_expected_flag(const ChallengeManifest& manifest) {
  return resolve_flag_spec(manifest.flag, manifest.source_path);
}

}  // namespace ctfagent
