#pragma once

#include "mitl/cltloc.hpp"
#include "mitl/normalize.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace mitl {

class TranslationError : public std::runtime_error {
public:
  TranslationError(const std::string& message, Formula offending)
      : std::runtime_error(message + ": " + offending.str()), offending_(std::move(offending)) {}
  const Formula& offending() const { return offending_; }

private:
  Formula offending_;
};

struct SubformulaClocks {
  cltloc::ClockId z0, z1;
  std::vector<cltloc::ClockId> aux;
};

struct ClockAllocation {
  std::vector<SubformulaClocks> clocks;

  std::size_t total() const;
  std::vector<cltloc::ClockId> all() const;
};

ClockAllocation alloc_clocks(const SubformulaTable& t);

/// Atom naming: lcro mode uses one atom "u<i>" per subformula i; general mode
/// uses "f<i>" (value at the first instant of a position) and "r<i>" (value
/// on the rest of it).
struct AtomScheme {
  Mode mode = Mode::General;
  std::size_t count = 0;
  /// Proposition name -> subformula index.
  std::map<std::string, std::size_t> props;

  std::string up(std::size_t i) const { return "u" + std::to_string(i); }
  std::string first(std::size_t i) const { return "f" + std::to_string(i); }
  std::string rest(std::size_t i) const { return "r" + std::to_string(i); }
  std::vector<std::string> atoms() const;
};

struct TranslateOptions {
  Mode mode = Mode::General;
  /// General encoding restricted to left-closed right-open signals (fst <-> rest).
  bool restrictLcro = false;
  /// Leaving the root out yields the constraints describing every signal.
  bool assertRoot = true;
};

struct TranslationResult {
  cltloc::Formula formula;
  SubformulaTable table;
  ClockAllocation allocation;
  AtomScheme scheme;
  Mode mode = Mode::General;
  /// Index of the root subformula; the formula asserts it holds at 0.
  std::size_t root = 0;
  /// The conjuncts of `formula`, labelled for dumps.
  std::vector<std::pair<std::string, cltloc::Formula>> parts;
};

// Building blocks; `i` indexes the subformula table.
cltloc::Formula events_constraint(const SubformulaTable& t, std::size_t i, const ClockAllocation& a, Mode mode);
/// Throws TranslationError when the subformula has no auxiliary clocks.
cltloc::Formula auxclocks_constraint(const SubformulaTable& t, std::size_t i, const ClockAllocation& a, Mode mode);
cltloc::Formula translate_sub_lcro(const SubformulaTable& t, std::size_t i, const ClockAllocation& a);
cltloc::Formula translate_sub_general(const SubformulaTable& t, std::size_t i, const ClockAllocation& a);

/// `f` must already be normalized for the mode.
TranslationResult translate(const Formula& f, const TranslateOptions& opts = {});

/// Multi-line dump: one labelled conjunct per line.
std::string dump(const TranslationResult& r);

} // namespace mitl
