// commands.hpp — subcommand entry points. Each returns the process exit code.

#pragma once

#include <iosfwd>
#include <string>

namespace cdh::cli {

enum ExitCode : int {
  kSuccess = 0,
  kConfigError = 1,
  kNumericalFailure = 2,
  kValidationFailure = 3,
};

struct CommandOptions {
  std::string config_path;  // may be empty for `validate`
  std::string out_path;     // overrides the config's "output"; empty = stdout
  int workers = 0;          // 0 = OpenMP default
  bool quick = false;
  double perturb = 0.0;
};

int cmd_spectrum(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_observable(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_sweep(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_validate(const CommandOptions& options, std::ostream& out, std::ostream& err);

}  // namespace cdh::cli
