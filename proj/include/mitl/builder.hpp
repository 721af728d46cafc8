#pragma once

#include "mitl/model.hpp"
#include "mitl/signal.hpp"
#include "mitl/translator.hpp"

namespace mitl {

/// Signal represented by a decoded model: breakpoint i sits at the time of
/// position i; lcro mode reads proposition p from "u<p>" on [t_i, t_{i+1}),
/// general mode reads the breakpoint value from "f<p>" and the open interval
/// from "r<p>". The listed window covers at least `horizon`.
/// Throws SignalError on a non-positive horizon or a model that does not fit the scheme.
Signal to_signal(const DiscreteModel& m, const AtomScheme& scheme, const Rational& horizon);

/// Time of the loop start + two loop iterations + `maxConstant`.
Rational default_horizon(const DiscreteModel& m, std::uint64_t maxConstant);

} // namespace mitl
