#pragma once

// The three weyl-lab commands. Each reads a RunConfig, writes its artifacts
// into the output directory and returns a process exit code.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "run_config.hpp"
#include "weyl/spectral.hpp"

namespace weyl::cli {

enum ExitCode : int {
  kExitPass = 0,
  kExitOtherError = 1,
  kExitValidation = 2,
  kExitSolverFailure = 3,
  kExitChecksFailed = 4,
  kExitInsufficientData = 5,
};

struct CommandOptions {
  std::string config_path;
  std::optional<std::string> out;    // overrides config.output
  std::optional<std::uint64_t> seed;  // overrides config.seed
  bool oracle_dirichlet_interval = false;
};

// Maps weyl errors to exit codes: ValidationError 2, ConvergenceError 3,
// InsufficientDataError 5, anything else 1. Messages go to `err`.
int run_command(Command command, const CommandOptions& options, std::ostream& out, std::ostream& err);

int cmd_spectrum(const RunConfig& config, std::ostream& out);
int cmd_verify(const RunConfig& config, bool oracle, std::ostream& out);
int cmd_symbol_audit(const RunConfig& config, std::ostream& out);

// Reads the CSV written by spectrum (k, lambda, residual, trusted). The
// reliability cutoff is not stored there and is left at +infinity.
// Throws ValidationError on malformed input.
spectral::Spectrum load_spectrum_csv(const std::string& path);

}  // namespace weyl::cli
