#pragma once

#include <stdexcept>
#include <string>

namespace ctfagent {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operator-facing configuration problems (bad paths, malformed config files,
// missing env vars named by the config). CLI maps these to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace ctfagent
