#include "mitl/formula.hpp"

#include <algorithm>
#include <functional>

namespace mitl {

TimeInterval TimeInterval::make(std::uint64_t lower, std::optional<std::uint64_t> upper, bool lowerOpen,
                                bool upperOpen) {
  if (upper) {
    if (lower >= *upper)
      throw IntervalError("interval lower bound " + std::to_string(lower) + " must be below upper bound " +
                          std::to_string(*upper));
  } else if (!upperOpen) {
    throw IntervalError("interval cannot be closed at infinity");
  }
  TimeInterval i;
  i.lower_ = lower;
  i.upper_ = upper;
  i.lowerOpen_ = lowerOpen;
  i.upperOpen_ = upperOpen;
  return i;
}

bool TimeInterval::contains(const Rational& d) const {
  Rational lo(lower_);
  if (lowerOpen_ ? d <= lo : d < lo) return false;
  if (!upper_) return true;
  Rational hi(*upper_);
  return upperOpen_ ? d < hi : d <= hi;
}

std::string TimeInterval::str() const {
  std::string s(lowerOpen_ ? "(" : "[");
  s += std::to_string(lower_);
  s += ",";
  s += upper_ ? std::to_string(*upper_) : "inf";
  s += upperOpen_ ? ")" : "]";
  return s;
}

TimeInterval strict_future() { return TimeInterval::unbounded(0, true); }

const char* to_string(MitlOp op) {
  switch (op) {
  case MitlOp::Prop: return "Prop";
  case MitlOp::True: return "True";
  case MitlOp::Not: return "Not";
  case MitlOp::And: return "And";
  case MitlOp::Until: return "Until";
  case MitlOp::Since: return "Since";
  case MitlOp::Eventually: return "Eventually";
  case MitlOp::Globally: return "Globally";
  case MitlOp::PastEventually: return "PastEventually";
  }
  return "?";
}

namespace {

std::size_t arity(MitlOp op) {
  switch (op) {
  case MitlOp::Prop:
  case MitlOp::True: return 0;
  case MitlOp::Not:
  case MitlOp::Eventually:
  case MitlOp::Globally:
  case MitlOp::PastEventually: return 1;
  case MitlOp::And:
  case MitlOp::Until:
  case MitlOp::Since: return 2;
  }
  return 0;
}

bool has_interval(MitlOp op) {
  return op == MitlOp::Until || op == MitlOp::Since || op == MitlOp::Eventually || op == MitlOp::Globally ||
         op == MitlOp::PastEventually;
}

void mix(std::size_t& h, std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); }

} // namespace

Formula Formula::make(MitlOp op, std::string name, TimeInterval interval, std::vector<Formula> children) {
  if (children.size() != arity(op))
    throw std::invalid_argument(std::string("wrong arity for ") + to_string(op));
  if (!has_interval(op)) interval = TimeInterval();
  std::size_t h = static_cast<std::size_t>(op) * 1000003u;
  mix(h, std::hash<std::string>{}(name));
  if (has_interval(op)) {
    mix(h, interval.lower());
    mix(h, interval.upper() ? *interval.upper() + 1 : 0);
    mix(h, interval.lowerOpen() * 2 + interval.upperOpen());
  }
  for (const auto& c : children) mix(h, c.hash());
  return Formula(std::make_shared<const Node>(Node{op, std::move(name), interval, std::move(children), h}));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.hash() != b.hash() || a.op() != b.op() || a.name() != b.name() || !(a.interval() == b.interval()))
    return false;
  return a.children() == b.children();
}

bool Formula::isTemporal() const { return has_interval(op()); }

std::string Formula::str() const {
  switch (op()) {
  case MitlOp::Prop: return name();
  case MitlOp::True: return "true";
  case MitlOp::Not: return "!" + child().str();
  case MitlOp::And: return "(" + child(0).str() + " & " + child(1).str() + ")";
  case MitlOp::Until: return "(" + child(0).str() + " U" + interval().str() + " " + child(1).str() + ")";
  case MitlOp::Since: return "(" + child(0).str() + " S" + interval().str() + " " + child(1).str() + ")";
  case MitlOp::Eventually: return "F" + interval().str() + " " + child().str();
  case MitlOp::Globally: return "G" + interval().str() + " " + child().str();
  case MitlOp::PastEventually: return "P" + interval().str() + " " + child().str();
  }
  return "?";
}

std::size_t Formula::size() const {
  std::size_t n = 1;
  for (const auto& c : children()) n += c.size();
  return n;
}

std::size_t Formula::depth() const {
  std::size_t d = 0;
  for (const auto& c : children()) d = std::max(d, c.depth());
  return d + 1;
}

std::uint64_t Formula::maxConstant() const {
  std::uint64_t k = 0;
  if (isTemporal()) k = interval().upper() ? *interval().upper() : interval().lower();
  for (const auto& c : children()) k = std::max(k, c.maxConstant());
  return k;
}

Formula prop(std::string name) { return Formula::make(MitlOp::Prop, std::move(name), {}, {}); }
Formula top() { return Formula::make(MitlOp::True, "", {}, {}); }
Formula bottom() { return lnot(top()); }
Formula lnot(Formula f) { return Formula::make(MitlOp::Not, "", {}, {std::move(f)}); }
Formula land(Formula a, Formula b) { return Formula::make(MitlOp::And, "", {}, {std::move(a), std::move(b)}); }
Formula lor(Formula a, Formula b) { return lnot(land(lnot(std::move(a)), lnot(std::move(b)))); }
Formula implies(Formula a, Formula b) { return lnot(land(std::move(a), lnot(std::move(b)))); }
Formula iff(Formula a, Formula b) { return land(implies(a, b), implies(b, a)); }
Formula until(Formula a, Formula b, TimeInterval i) {
  return Formula::make(MitlOp::Until, "", i, {std::move(a), std::move(b)});
}
Formula since(Formula a, Formula b, TimeInterval i) {
  return Formula::make(MitlOp::Since, "", i, {std::move(a), std::move(b)});
}
Formula eventually(Formula a, TimeInterval i) { return Formula::make(MitlOp::Eventually, "", i, {std::move(a)}); }
Formula globally(Formula a, TimeInterval i) { return Formula::make(MitlOp::Globally, "", i, {std::move(a)}); }
Formula past(Formula a, TimeInterval i) { return Formula::make(MitlOp::PastEventually, "", i, {std::move(a)}); }

} // namespace mitl
