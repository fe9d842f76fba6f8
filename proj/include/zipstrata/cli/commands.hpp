#pragma once

#include <string>

#include "json.hpp"
#include "zipstrata/cli/config.hpp"
#include "zipstrata/error.hpp"

namespace zipstrata::cli {

enum ExitCode { kOk = 0, kConfigError = 1, kBudget = 2, kIncomplete = 3, kFailure = 4 };

struct CommandResult {
  nlohmann::json payload;
  nlohmann::json timings;
  std::string dot;
  int exit_code = kOk;
};

int exit_code_for(ErrorKind kind);

CommandResult cmd_strata(const ExperimentConfig& c);
CommandResult cmd_oracle_verify(const ExperimentConfig& c);
CommandResult cmd_hasse(const ExperimentConfig& c);
CommandResult cmd_functor(const ExperimentConfig& c);

// Dispatches by name and turns errors into a structured payload with an exit code.
CommandResult run_command(const std::string& name, const ExperimentConfig& c);

}  // namespace zipstrata::cli
