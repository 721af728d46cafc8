#include "mitl/builder.hpp"

namespace mitl {

Signal to_signal(const DiscreteModel& m, const AtomScheme& scheme, const Rational& horizon) {
  if (horizon <= 0) throw SignalError("horizon must be positive");
  if (m.k < 1 || m.loop < 1 || m.loop > m.k || m.atoms.size() != m.k + 1 || m.delta.size() != m.k + 1)
    throw SignalError("model is not a well-formed lasso");
  const auto known = scheme.atoms();
  const std::set<std::string> names(known.begin(), known.end());
  for (std::size_t i = 0; i <= m.k; ++i)
    for (const auto& a : m.atoms[i])
      if (!names.count(a)) throw SignalError("model atom " + a + " is not part of the atom scheme");

  std::vector<Breakpoint> bps;
  for (std::size_t i = 0; i <= m.k; ++i) {
    Breakpoint b;
    b.t = m.time(i);
    for (const auto& [p, idx] : scheme.props) {
      if (scheme.mode == Mode::Lcro) {
        if (m.holds(i, scheme.up(idx))) b.point.insert(p), b.interval.insert(p);
      } else {
        if (m.holds(i, scheme.first(idx))) b.point.insert(p);
        if (m.holds(i, scheme.rest(idx))) b.interval.insert(p);
      }
    }
    bps.push_back(std::move(b));
  }
  return Signal(std::move(bps), m.loop, m.loopDuration()).unrolled(horizon);
}

Rational default_horizon(const DiscreteModel& m, std::uint64_t maxConstant) {
  return m.time(m.loop) + 2 * m.loopDuration() + Rational(maxConstant);
}

} // namespace mitl
