#include "mitl/cltloc.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace mitl::cltloc {

std::string ClockId::name() const {
  switch (kind) {
  case Kind::Z0: return "z0_" + std::to_string(owner);
  case Kind::Z1: return "z1_" + std::to_string(owner);
  case Kind::Aux: return "x" + std::to_string(owner) + "_" + std::to_string(index);
  }
  return "?";
}

const char* to_string(Rel r) {
  switch (r) {
  case Rel::Lt: return "<";
  case Rel::Le: return "<=";
  case Rel::Eq: return "=";
  case Rel::Ge: return ">=";
  case Rel::Gt: return ">";
  case Rel::Ne: return "!=";
  }
  return "?";
}

Rel negate(Rel r) {
  switch (r) {
  case Rel::Lt: return Rel::Ge;
  case Rel::Le: return Rel::Gt;
  case Rel::Eq: return Rel::Ne;
  case Rel::Ge: return Rel::Lt;
  case Rel::Gt: return Rel::Le;
  case Rel::Ne: return Rel::Eq;
  }
  return r;
}

const char* to_string(Op op) {
  switch (op) {
  case Op::True: return "True";
  case Op::Atom: return "Atom";
  case Op::Constraint: return "Constraint";
  case Op::Not: return "Not";
  case Op::And: return "And";
  case Op::Or: return "Or";
  case Op::Next: return "Next";
  case Op::Yesterday: return "Yesterday";
  case Op::Until: return "Until";
  case Op::Since: return "Since";
  case Op::Release: return "Release";
  case Op::Trigger: return "Trigger";
  }
  return "?";
}

namespace {

void mix(std::size_t& h, std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); }

std::size_t expected_arity(Op op) {
  switch (op) {
  case Op::True:
  case Op::Atom:
  case Op::Constraint: return 0;
  case Op::Not:
  case Op::Next:
  case Op::Yesterday: return 1;
  case Op::Until:
  case Op::Since:
  case Op::Release:
  case Op::Trigger: return 2;
  case Op::And:
  case Op::Or: return SIZE_MAX;
  }
  return 0;
}

} // namespace

Formula Formula::make(Op op, std::string atom, ClockConstraint c, std::vector<Formula> children) {
  auto ar = expected_arity(op);
  if (ar != SIZE_MAX && children.size() != ar) throw std::invalid_argument(std::string("wrong arity for ") + to_string(op));
  std::size_t h = static_cast<std::size_t>(op) * 2654435761u;
  std::size_t size = 1;
  if (op == Op::Atom) mix(h, std::hash<std::string>{}(atom));
  if (op == Op::Constraint) {
    mix(h, c.clock.owner);
    mix(h, static_cast<std::size_t>(c.clock.kind));
    mix(h, c.clock.index);
    mix(h, static_cast<std::size_t>(c.rel));
    mix(h, c.constant);
    if (c.other) {
      mix(h, c.other->owner + 1);
      mix(h, static_cast<std::size_t>(c.other->kind));
      mix(h, c.other->index);
    }
  } else {
    c = ClockConstraint{};
  }
  for (const auto& ch : children) {
    mix(h, ch.hash());
    size = std::min<std::size_t>(size + ch.size(), SIZE_MAX / 2);
  }
  return Formula(std::make_shared<const Node>(Node{op, std::move(atom), c, std::move(children), h, size}));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  return a.hash() == b.hash() && a.op() == b.op() && a.atom() == b.atom() && a.constraint() == b.constraint() &&
         a.children() == b.children();
}

std::string Formula::str() const {
  auto join = [&](const char* sep) {
    std::string s = "(";
    for (std::size_t i = 0; i < children().size(); ++i) {
      if (i) s += sep;
      s += children()[i].str();
    }
    return s + ")";
  };
  switch (op()) {
  case Op::True: return "true";
  case Op::Atom: return atom();
  case Op::Constraint:
    return "(" + constraint().clock.name() + " " + to_string(constraint().rel) + " " +
           (constraint().other ? constraint().other->name() : std::to_string(constraint().constant)) + ")";
  case Op::Not:
    if (isFalse()) return "false";
    if (isOrigin()) return "orig";
    return "!" + child().str();
  case Op::And: return join(" & ");
  case Op::Or: return join(" | ");
  case Op::Next: return "X " + child().str();
  case Op::Yesterday: return "Y " + child().str();
  case Op::Until: return "(" + child(0).str() + " U " + child(1).str() + ")";
  case Op::Since: return "(" + child(0).str() + " S " + child(1).str() + ")";
  case Op::Release: return "(" + child(0).str() + " R " + child(1).str() + ")";
  case Op::Trigger: return "(" + child(0).str() + " T " + child(1).str() + ")";
  }
  return "?";
}

Formula top() { return Formula::make(Op::True, "", {}, {}); }
Formula bottom() { return Formula::make(Op::Not, "", {}, {top()}); }
Formula atom(std::string name) { return Formula::make(Op::Atom, std::move(name), {}, {}); }
Formula constraint(ClockId clock, Rel rel, std::uint64_t c) {
  return Formula::make(Op::Constraint, "", ClockConstraint{clock, rel, c, std::nullopt}, {});
}
Formula constraint(ClockId clock, Rel rel, ClockId other) {
  return Formula::make(Op::Constraint, "", ClockConstraint{clock, rel, 0, other}, {});
}

Formula lnot(Formula f) {
  if (f.op() == Op::Not) return f.child();
  return Formula::make(Op::Not, "", {}, {std::move(f)});
}

namespace {

Formula nary(Op op, std::vector<Formula> fs) {
  const bool conj = op == Op::And;
  std::vector<Formula> flat;
  for (auto& f : fs) {
    if (conj ? f.isTrue() : f.isFalse()) continue;
    if (conj ? f.isFalse() : f.isTrue()) return conj ? bottom() : top();
    if (f.op() == op) {
      for (const auto& c : f.children()) flat.push_back(c);
    } else {
      flat.push_back(std::move(f));
    }
  }
  // Drop repeated operands, keeping first occurrences in order.
  std::vector<Formula> uniq;
  std::unordered_set<Formula, FormulaHash> seen;
  for (auto& f : flat)
    if (seen.insert(f).second) uniq.push_back(std::move(f));
  if (uniq.empty()) return conj ? top() : bottom();
  if (uniq.size() == 1) return uniq.front();
  return Formula::make(op, "", {}, std::move(uniq));
}

} // namespace

Formula land(std::vector<Formula> fs) { return nary(Op::And, std::move(fs)); }
Formula lor(std::vector<Formula> fs) { return nary(Op::Or, std::move(fs)); }
Formula land(Formula a, Formula b) { return land(std::vector<Formula>{std::move(a), std::move(b)}); }
Formula lor(Formula a, Formula b) { return lor(std::vector<Formula>{std::move(a), std::move(b)}); }
Formula implies(Formula a, Formula b) { return lor(lnot(std::move(a)), std::move(b)); }
Formula iff(Formula a, Formula b) { return lor(land(a, b), land(lnot(a), lnot(b))); }
Formula next(Formula f) { return Formula::make(Op::Next, "", {}, {std::move(f)}); }
Formula yesterday(Formula f) { return Formula::make(Op::Yesterday, "", {}, {std::move(f)}); }
Formula until(Formula a, Formula b) { return Formula::make(Op::Until, "", {}, {std::move(a), std::move(b)}); }
Formula since(Formula a, Formula b) { return Formula::make(Op::Since, "", {}, {std::move(a), std::move(b)}); }
Formula release(Formula a, Formula b) { return Formula::make(Op::Release, "", {}, {std::move(a), std::move(b)}); }
Formula trigger(Formula a, Formula b) { return Formula::make(Op::Trigger, "", {}, {std::move(a), std::move(b)}); }
Formula globally(Formula f) { return release(bottom(), std::move(f)); }
Formula eventually(Formula f) { return until(top(), std::move(f)); }
Formula origin() { return lnot(yesterday(top())); }

namespace {

class NnfBuilder {
public:
  Formula run(const Formula& f, bool negated) {
    auto key = std::make_pair(f.identity(), negated);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Formula r = compute(f, negated);
    memo_.emplace(key, r);
    return r;
  }

private:
  struct KeyHash {
    std::size_t operator()(const std::pair<const void*, bool>& k) const {
      return std::hash<const void*>{}(k.first) * 2 + k.second;
    }
  };

  std::vector<Formula> map(const Formula& f, bool negated) {
    std::vector<Formula> out;
    for (const auto& c : f.children()) out.push_back(run(c, negated));
    return out;
  }

  Formula compute(const Formula& f, bool neg) {
    switch (f.op()) {
    case Op::True: return neg ? bottom() : f;
    case Op::Atom: return neg ? lnot(f) : f;
    case Op::Constraint: {
      const auto& c = f.constraint();
      if (!neg) return f;
      return c.other ? constraint(c.clock, negate(c.rel), *c.other) : constraint(c.clock, negate(c.rel), c.constant);
    }
    case Op::Not: return run(f.child(), !neg);
    case Op::And: return neg ? lor(map(f, true)) : land(map(f, false));
    case Op::Or: return neg ? land(map(f, true)) : lor(map(f, false));
    case Op::Next: return next(run(f.child(), neg));
    case Op::Yesterday:
      if (f.child().isTrue()) return neg ? origin() : f;
      // !Y a = orig | Y !a
      return neg ? lor(origin(), yesterday(run(f.child(), true))) : yesterday(run(f.child(), false));
    case Op::Until:
      return neg ? release(run(f.child(0), true), run(f.child(1), true))
                 : until(run(f.child(0), false), run(f.child(1), false));
    case Op::Release:
      return neg ? until(run(f.child(0), true), run(f.child(1), true))
                 : release(run(f.child(0), false), run(f.child(1), false));
    case Op::Since:
      return neg ? trigger(run(f.child(0), true), run(f.child(1), true))
                 : since(run(f.child(0), false), run(f.child(1), false));
    case Op::Trigger:
      return neg ? since(run(f.child(0), true), run(f.child(1), true))
                 : trigger(run(f.child(0), false), run(f.child(1), false));
    }
    return f;
  }

  std::unordered_map<std::pair<const void*, bool>, Formula, KeyHash> memo_;
};

template <class Visit>
void walk_dag(const Formula& f, Visit&& visit) {
  std::unordered_set<const void*> seen;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (!seen.insert(g.identity()).second) continue;
    visit(g);
    for (const auto& c : g.children()) stack.push_back(c);
  }
}

} // namespace

Formula nnf(const Formula& f) { return NnfBuilder().run(f, false); }

std::uint64_t max_constant(const Formula& f) {
  std::uint64_t k = 0;
  walk_dag(f, [&](const Formula& g) {
    if (g.op() == Op::Constraint && !g.constraint().other) k = std::max(k, g.constraint().constant);
  });
  return k;
}

std::vector<std::pair<ClockId, std::uint64_t>> clock_bounds(const Formula& f) {
  std::map<ClockId, std::uint64_t> bounds;
  walk_dag(f, [&](const Formula& g) {
    if (g.op() != Op::Constraint || g.constraint().other) return;
    auto& b = bounds[g.constraint().clock];
    b = std::max(b, g.constraint().constant);
  });
  return {bounds.begin(), bounds.end()};
}

} // namespace mitl::cltloc
