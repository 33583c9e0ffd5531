#pragma once

#include <optional>
#include <ostream>
#include <string>

namespace mixtura {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kSuccess = 0, kConfigFailure = 1, kNumericalFailure = 2 };

struct CommandOptions {
  std::string config_path;
  std::optional<std::string> out;  // overrides MIXTURA_OUT and the config
  bool force = false;
};

/// Runs one of simulate | linearize | equivalence | lagrangian-check |
/// convergence. Progress and errors go to `log`. Never throws.
int run_command(const std::string& name, const CommandOptions& opts, std::ostream& log);

int cmd_simulate(const CommandOptions& opts, std::ostream& log);
int cmd_linearize(const CommandOptions& opts, std::ostream& log);
int cmd_equivalence(const CommandOptions& opts, std::ostream& log);
int cmd_lagrangian_check(const CommandOptions& opts, std::ostream& log);
int cmd_convergence(const CommandOptions& opts, std::ostream& log);

}  // namespace mixtura
