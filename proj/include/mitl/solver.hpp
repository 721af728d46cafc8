#pragma once

#include "mitl/encoder.hpp"

#include <string>

namespace mitl {

/// Environment variable holding the default solver command.
inline constexpr const char* kSolverEnv = "MITLSAT_SOLVER";

struct SolverConfig {
  /// Command line; "{file}" is replaced by the script path, which is appended
  /// when the placeholder is absent. Run through /bin/sh.
  std::string command = default_command();
  double timeoutSeconds = 60;
  /// Working directory of the solver process; empty keeps the current one.
  std::string workdir;

  /// $MITLSAT_SOLVER, or "z3 {file}".
  static std::string default_command();
};

struct SolverOutcome {
  enum class Kind { Sat, NoModelAtBound, Unknown, TimedOut, SolverError };
  Kind kind = Kind::SolverError;
  /// Model text for Sat.
  std::string model;
  /// Reason for Unknown, stderr excerpt for SolverError.
  std::string detail;
  int exitCode = 0;
  double seconds = 0;
};

const char* to_string(SolverOutcome::Kind k);

class SolverIoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Runs the solver on `script` (complete SMT-LIB text). Throws SolverIoError
/// when the script file or process cannot be set up.
SolverOutcome run_solver(const std::string& script, const SolverConfig& cfg);
SolverOutcome run_solver(const SmtScript& s, const SolverConfig& cfg);

} // namespace mitl
