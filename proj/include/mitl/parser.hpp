#pragma once

#include "mitl/formula.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace mitl {

class ParseError : public std::runtime_error {
public:
  enum class Kind { Syntax, Interval };

  ParseError(Kind kind, std::size_t position, const std::string& message)
      : std::runtime_error(message + " at offset " + std::to_string(position)), kind_(kind), position_(position) {}

  Kind kind() const { return kind_; }
  std::size_t position() const { return position_; }

private:
  Kind kind_;
  std::size_t position_;
};

/// Parses the ASCII formula syntax:
///
///   atoms     [a-zA-Z_][a-zA-Z0-9_]*, plus the constants true / false
///   unary     !f   F<I> f   G<I> f   P<I> f
///   binary    f & g   f | g   f -> g   f <-> g   f U<I> g   f S<I> g
///   intervals (a,b) [a,b) (a,b] [a,b] with "inf" as an open upper bound
///
/// Precedence from tightest: unary, &, |, ->, <->, U/S. Implication, iff and
/// the temporal binaries associate to the right. Or, implies and iff are
/// desugared into negation and conjunction.
Formula parse_mitl(std::string_view text);

} // namespace mitl
