#pragma once

#include "mitl/formula.hpp"
#include "mitl/signal.hpp"

#include <stdexcept>
#include <vector>

namespace mitl {

class OracleError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Truth of one formula over time: a piecewise-constant Boolean signal listed
/// on [0, listedEnd) and periodic from tailStart on, where listedEnd is
/// tailStart plus a whole number of periods. `atPoint[i]` is the value at
/// times[i], `onInterval[i]` the value on (times[i], times[i+1]).
struct TruthSignal {
  std::vector<Rational> times;
  std::vector<bool> atPoint;
  std::vector<bool> onInterval;
  Rational listedEnd;
  Rational tailStart;
  Rational period;

  bool at(const Rational& t) const;
  /// Value on the open interval right after t.
  bool rightOf(const Rational& t) const;
  /// The same signal listed up to at least w (tailStart stays a breakpoint).
  TruthSignal expanded(const Rational& w) const;
  /// Drops breakpoints where nothing changes (0 and tailStart are kept).
  TruthSignal compressed() const;
};

/// Direct semantics of MITL over an ultimately periodic signal. Quantifiers
/// over real time are resolved exactly on interval endpoints.
TruthSignal truth_signal(const Signal& s, const Formula& f);

bool eval_at(const Signal& s, const Formula& f, const Rational& t);

/// M, 0 |= f.
bool holds(const Signal& s, const Formula& f);

} // namespace mitl
