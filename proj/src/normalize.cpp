#include "mitl/normalize.hpp"

namespace mitl {

const char* to_string(Mode m) { return m == Mode::Lcro ? "lcro" : "general"; }

namespace {

Formula mk_not(const Formula& f) { return f.op() == MitlOp::Not ? f.child() : lnot(f); }
Formula mk_or(const Formula& a, const Formula& b) { return mk_not(land(mk_not(a), mk_not(b))); }
Formula mk_globally(const Formula& f, TimeInterval i) { return mk_not(eventually(mk_not(f), i)); }
Formula mk_historically(const Formula& f, TimeInterval i) { return mk_not(past(mk_not(f), i)); }

/// Metric until (or, mirrored, since) in terms of the untimed operator and
/// bounded eventually/past:
///   g U[0,inf) p = p | g U p
///   g U<0,b> p   = g U<0,inf) p & F<0,b> p
///   g U[a,b> p   = G(0,a) g & G(0,a](p | (g & g U p)) & F[a,b> p      (a > 0, b possibly inf)
///   g U(a,b> p   = G(0,a](g & g U p) & F(a,b> p
Formula decompose(const Formula& g, const Formula& p, const TimeInterval& i, bool isPast) {
  const Formula untimed = isPast ? since(g, p, strict_future()) : until(g, p, strict_future());
  auto bounded = [&](TimeInterval j) { return isPast ? past(p, j) : eventually(p, j); };
  auto always = [&](const Formula& f, TimeInterval j) {
    return isPast ? mk_historically(f, j) : mk_globally(f, j);
  };
  if (i == strict_future()) return untimed;
  if (i.lower() == 0) {
    Formula base = i.lowerOpen() ? untimed : mk_or(p, untimed);
    if (i.isUnbounded()) return base;
    return land(base, bounded(i));
  }
  const Formula chain = land(g, untimed);
  const TimeInterval upToA = TimeInterval::make(0, i.lower(), true, false);
  if (i.lowerOpen()) return land(always(chain, upToA), bounded(i));
  const TimeInterval beforeA = TimeInterval::make(0, i.lower(), true, true);
  return land(land(always(g, beforeA), always(mk_or(p, chain), upToA)), bounded(i));
}

Formula rewrite(const Formula& f) {
  switch (f.op()) {
  case MitlOp::Prop:
  case MitlOp::True: return f;
  case MitlOp::Not: return mk_not(rewrite(f.child()));
  case MitlOp::And: return land(rewrite(f.child(0)), rewrite(f.child(1)));
  case MitlOp::Eventually: return eventually(rewrite(f.child()), f.interval());
  case MitlOp::PastEventually: return past(rewrite(f.child()), f.interval());
  case MitlOp::Globally: return mk_globally(rewrite(f.child()), f.interval());
  case MitlOp::Until: return decompose(rewrite(f.child(0)), rewrite(f.child(1)), f.interval(), false);
  case MitlOp::Since: return decompose(rewrite(f.child(0)), rewrite(f.child(1)), f.interval(), true);
  }
  return f;
}

} // namespace

void check_lcro_fragment(const Formula& f) {
  switch (f.op()) {
  case MitlOp::Since:
  case MitlOp::PastEventually:
    throw NormalizeError("past operators do not preserve left-closed right-open signals", f);
  case MitlOp::Eventually:
    if (!f.interval().isUnbounded() && f.interval().upperOpen())
      throw NormalizeError("eventually over a right-open bounded interval leaves the lcro fragment", f);
    break;
  case MitlOp::Globally:
    throw NormalizeError("globally must be normalized away", f);
  case MitlOp::Until:
    if (!(f.interval() == strict_future()))
      throw NormalizeError("metric until must be normalized away", f);
    break;
  default: break;
  }
  for (const auto& c : f.children()) check_lcro_fragment(c);
}

Formula normalize(const Formula& f, Mode mode) {
  Formula n = rewrite(f);
  if (mode == Mode::Lcro) check_lcro_fragment(n);
  return n;
}

std::uint32_t aux_clock_count(const Formula& f) {
  if (f.op() != MitlOp::Eventually) return 0;
  const auto& i = f.interval();
  if (i.lower() == 0 || i.isUnbounded()) return 0;
  std::uint64_t b = *i.upper(), width = b - i.lower();
  return static_cast<std::uint32_t>(2 * ((b + width - 1) / width));
}

SubformulaTable::SubformulaTable(const Formula& root) { visit(root); }

std::size_t SubformulaTable::visit(const Formula& f) {
  if (auto it = index_.find(f); it != index_.end()) return it->second;
  std::vector<std::size_t> kids;
  for (const auto& c : f.children()) kids.push_back(visit(c));
  std::size_t idx = entries_.size();
  entries_.push_back(SubformulaEntry{f, std::move(kids), aux_clock_count(f)});
  index_.emplace(f, idx);
  return idx;
}

std::size_t SubformulaTable::indexOf(const Formula& f) const { return index_.at(f); }

SubformulaTable subformulas(const Formula& f) { return SubformulaTable(f); }

} // namespace mitl
