#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace mitl {

/// Exact rational time value. All instants, deltas and clock values use it.
using Rational = mpq_class;

/// Parses "n", "n/d", "-n/d" or a decimal such as "1.25". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Canonical "num/den" text; integers print as "n".
std::string to_string(const Rational& q);

} // namespace mitl
