#pragma once

#include "mitl/builder.hpp"
#include "mitl/formula.hpp"
#include "mitl/solver.hpp"
#include "mitl/translator.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mitl {

struct CheckOptions {
  Mode mode = Mode::General;
  bool restrictLcro = false;
  std::size_t bound = 10;
  /// When larger than `bound`, bounds bound..boundMax are tried in turn.
  std::size_t boundMax = 0;
  SolverConfig solver;
  std::optional<Rational> horizon;
  bool oracle = true;
  /// Output files; empty means not written.
  std::string emitSmt, emitCltloc, modelJson;
};

struct CheckReport {
  enum class Verdict { Sat, NoModelAtBound, Unknown, Timeout, Error };
  Verdict verdict = Verdict::Error;
  std::string formula;
  Mode mode = Mode::General;
  std::size_t bound = 0;
  std::size_t clocks = 0;
  std::size_t subformulas = 0;
  std::vector<std::pair<std::string, double>> timings;
  std::optional<DiscreteModel> model;
  std::optional<Signal> witness;
  /// Present iff a witness is present and the oracle ran.
  std::optional<bool> oracleAccepted;
  std::vector<std::string> modelIssues;
  std::string detail;

  /// 0 sat (confirmed), 1 no model at bound, 2 unknown or timeout, 3 error,
  /// 4 sat but rejected by the oracle or the model validator.
  int exitCode() const;
  std::string text() const;
  nlohmann::json toJson() const;
};

const char* to_string(CheckReport::Verdict v);

/// parse result -> normalize -> translate -> encode -> solve -> decode ->
/// to_signal -> oracle. Never throws for formula or solver problems; those
/// become an Error verdict with `detail`.
CheckReport run_check(const Formula& f, const CheckOptions& opts);

} // namespace mitl
