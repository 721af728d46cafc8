#pragma once

#include "mitl/cltloc.hpp"
#include "mitl/rational.hpp"
#include "mitl/translator.hpp"

#include <json.hpp>

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace mitl {

/// A lasso-shaped CLTL-oc model: positions 0..k, the successor of k is `loop`.
/// `delta[i]` is the time elapsing from position i to its successor.
/// Clocks are reset exactly where their value is 0; a clock that is never reset
/// inside the loop keeps growing across iterations.
struct DiscreteModel {
  std::size_t k = 0;
  std::size_t loop = 1;
  std::vector<std::set<std::string>> atoms;
  std::map<cltloc::ClockId, std::vector<Rational>> clocks;
  std::vector<Rational> delta;

  std::size_t size() const { return k + 1; }
  /// Absolute time of position i (positions 0..k).
  Rational time(std::size_t i) const;
  /// Duration of one loop iteration.
  Rational loopDuration() const;
  bool holds(std::size_t i, const std::string& atom) const { return atoms.at(i).count(atom) > 0; }

  nlohmann::json toJson() const;
};

class ModelError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Direct CLTL-oc semantics on the infinite unrolling of the lasso. Returns the
/// truth of `f` at positions 0..k of the first traversal.
std::vector<bool> evaluate(const DiscreteModel& m, const cltloc::Formula& f);

/// (pi, sigma), 0 |= f.
bool satisfies(const DiscreteModel& m, const cltloc::Formula& f);

/// Structural invariants of a model produced for a translation: positive
/// deltas, clock progression, loop consistency, alternation of z clocks,
/// circular order of auxiliary clocks, origin resets. Empty when valid.
std::vector<std::string> validate_model(const DiscreteModel& m, const TranslationResult& tr);

} // namespace mitl
