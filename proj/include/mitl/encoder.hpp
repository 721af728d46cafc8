#pragma once

#include "mitl/cltloc.hpp"
#include "mitl/model.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace mitl {

class EncodeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DecodeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// What a solver variable stands for.
struct SmtVar {
  enum class Kind { Atom, Clock, Delta, Loop, Node, Witness };
  Kind kind = Kind::Node;
  std::size_t position = 0;
  std::string atom;
  cltloc::ClockId clock;
};

/// Variable names:
///   A_<atom>_<i>   atom at position i
///   C_<clock>_<i>  clock value at position i
///   D_<i>          time elapsing from position i to its successor
///   L_<i>          position i is the loop target (1 <= i <= k)
///   N<n>_<i>       value of subformula n at position i
///   W<n>_<i>       eventuality witness of until/release n inside the loop
struct SmtScript {
  std::size_t k = 0;
  std::vector<std::string> atoms;
  std::vector<cltloc::ClockId> clocks;
  /// Largest constant each clock is compared with; above it, a clock never reset
  /// inside the loop may take any value at the loop start.
  std::map<cltloc::ClockId, std::uint64_t> bounds;
  std::vector<std::string> declarations;
  std::vector<std::string> assertions;
  std::map<std::string, SmtVar> vars;

  /// Full script in SMT-LIB 2 (QF_LRA), ending with (check-sat) and, when
  /// requested, (get-model).
  std::string text(bool getModel = true) const;
};

/// Bounded lasso encoding of `f` holding at position 0 with positions 0..k.
/// `extraAtoms` are declared even when `f` does not mention them.
SmtScript encode(const cltloc::Formula& f, std::size_t k, const std::vector<std::string>& extraAtoms = {});

/// Rebuilds the model from solver output of (get-model). Throws DecodeError on
/// malformed text or when the assignment breaks a model invariant.
DiscreteModel decode(const SmtScript& s, const std::string& modelText);

} // namespace mitl
