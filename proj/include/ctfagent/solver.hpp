#pragma once

#include <filesystem>
#include <string>

#include "ctfagent/errors.hpp"
#include "ctfagent/manifest.hpp"

namespace ctfagent {

class SolverFailureError : public Error {
 public:
  using Error::Error;
};

class MissingSecretError : public Error {
 public:
  using Error::Error;
};

class OracleUnavailableError : public Error {
 public:
  using Error::Error;
};

// The expected flag for an exact or oracle spec.
//   exact:  value of the environment variable named by secret_ref.
//   oracle: runs the solver executable with the manifest path as argv[1];
//           it must exit 0 and print the flag as its sole stdout line.
// A relative solver_ref resolves against the manifest's directory.
std::string resolve_expected_flag(const ChallengeManifest& manifest);

// Same protocol for a bare spec; manifest_path may be empty when the
// manifest never lived on disk (solvers still receive it as argv[1]).
std::string resolve_flag_spec(const FlagSpec& spec, const std::filesystem::path& manifest_path);

}  // namespace ctfagent
