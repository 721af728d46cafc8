#pragma once

#include "mitl/formula.hpp"

#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace mitl {

/// lcro: signals are left-closed right-open; general: any finitely-variable signal.
enum class Mode { Lcro, General };

const char* to_string(Mode m);

class NormalizeError : public std::runtime_error {
public:
  NormalizeError(const std::string& message, Formula offending)
      : std::runtime_error(message + ": " + offending.str()), offending_(std::move(offending)) {}
  const Formula& offending() const { return offending_; }

private:
  Formula offending_;
};

/// Rewrites into the primitive basis: metric until and since are decomposed
/// into untimed until/since plus bounded eventually/past operators, G_I and
/// double negations are eliminated. In lcro mode the result is checked to stay
/// inside the operators that preserve left-closed right-open signals.
Formula normalize(const Formula& f, Mode mode);

/// Throws NormalizeError when a normalized formula leaves the lcro fragment.
void check_lcro_fragment(const Formula& f);

/// Number of auxiliary clocks for F<a,b> with 0 < a and finite b: 2*ceil(b/(b-a)).
std::uint32_t aux_clock_count(const Formula& f);

struct SubformulaEntry {
  Formula formula;
  std::vector<std::size_t> children;
  std::uint32_t auxClocks = 0;
};

/// Distinct subformulas of a normalized formula, children before parents; the
/// root is the last entry.
class SubformulaTable {
public:
  explicit SubformulaTable(const Formula& root);

  std::size_t size() const { return entries_.size(); }
  const SubformulaEntry& operator[](std::size_t i) const { return entries_.at(i); }
  const std::vector<SubformulaEntry>& entries() const { return entries_; }
  std::size_t root() const { return entries_.size() - 1; }
  /// Index of a subformula; throws std::out_of_range when absent.
  std::size_t indexOf(const Formula& f) const;

private:
  std::size_t visit(const Formula& f);
  std::vector<SubformulaEntry> entries_;
  std::unordered_map<Formula, std::size_t, FormulaHash> index_;
};

SubformulaTable subformulas(const Formula& f);

} // namespace mitl
