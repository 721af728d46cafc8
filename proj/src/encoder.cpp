#include "mitl/encoder.hpp"

#include <cctype>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_map>

namespace mitl {

namespace c = cltloc;

namespace {

bool plain_symbol(const std::string& s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_' && ch != '.' && ch != '\'') return false;
  return true;
}

std::string real(std::uint64_t v) { return std::to_string(v) + ".0"; }

std::string pos(std::size_t i) { return "_" + std::to_string(i); }

std::string nary(const char* op, const std::vector<std::string>& xs, const char* empty) {
  if (xs.empty()) return empty;
  if (xs.size() == 1) return xs[0];
  std::string s = "(" + std::string(op);
  for (const auto& x : xs) s += " " + x;
  return s + ")";
}

std::string iff(const std::string& a, const std::string& b) { return "(= " + a + " " + b + ")"; }

class Encoder {
public:
  Encoder(std::size_t k, SmtScript& s) : k_(k), s_(s) {}

  void run(const c::Formula& f, const std::vector<std::string>& extraAtoms) {
    collect(f);
    std::set<std::string> atoms(extraAtoms.begin(), extraAtoms.end());
    std::set<c::ClockId> clocks;
    for (const auto& n : nodes_) {
      if (n.op() == c::Op::Atom) atoms.insert(n.atom());
      if (n.op() == c::Op::Constraint) {
        clocks.insert(n.constraint().clock);
        if (n.constraint().other) clocks.insert(*n.constraint().other);
      }
    }
    s_.atoms.assign(atoms.begin(), atoms.end());
    s_.clocks.assign(clocks.begin(), clocks.end());
    for (const auto& x : s_.clocks) s_.bounds[x] = 0;
    for (const auto& [x, b] : c::clock_bounds(f)) s_.bounds[x] = b;

    for (const auto& a : s_.atoms) {
      if (!plain_symbol(a)) throw EncodeError("atom name not usable as a solver symbol: " + a);
      for (std::size_t i = 0; i <= k_; ++i) declare("A_" + a + pos(i), "Bool", {SmtVar::Kind::Atom, i, a, {}});
    }
    for (std::size_t i = 0; i <= k_; ++i) {
      declare(delta(i), "Real", {SmtVar::Kind::Delta, i, {}, {}});
      assert_("(> " + delta(i) + " 0.0)");
    }
    std::vector<std::string> loops;
    for (std::size_t j = 1; j <= k_; ++j) {
      declare(loopVar(j), "Bool", {SmtVar::Kind::Loop, j, {}, {}});
      loops.push_back(loopVar(j));
    }
    assert_(nary("or", loops, "false"));
    for (std::size_t j = 1; j <= k_; ++j)
      for (std::size_t m = j + 1; m <= k_; ++m) assert_("(not (and " + loopVar(j) + " " + loopVar(m) + "))");
    for (const auto& x : s_.clocks) encodeClock(x);

    for (std::size_t n = 0; n < nodes_.size(); ++n) encodeNode(n);
    assert_(at(f, 0));
  }

private:
  void collect(const c::Formula& f) {
    if (ids_.count(f)) return;
    for (const auto& ch : f.children()) collect(ch);
    ids_.emplace(f, nodes_.size());
    nodes_.push_back(f);
  }

  void declare(const std::string& name, const char* sort, SmtVar v) {
    s_.declarations.push_back("(declare-fun " + name + " () " + sort + ")");
    s_.vars.emplace(name, std::move(v));
  }
  void assert_(std::string e) { s_.assertions.push_back(std::move(e)); }

  static std::string delta(std::size_t i) { return "D" + pos(i); }
  static std::string loopVar(std::size_t j) { return "L" + pos(j); }
  static std::string clock(const c::ClockId& x, std::size_t i) { return "C_" + x.name() + pos(i); }
  std::string node(std::size_t n, std::size_t i) const { return "N" + std::to_string(n) + pos(i); }
  std::string witness(std::size_t n, std::size_t i) const { return "W" + std::to_string(n) + pos(i); }

  /// Value of the successor of k, given the value at each position.
  std::string atLoop(const std::function<std::string(std::size_t)>& v) const {
    std::vector<std::string> xs;
    for (std::size_t j = 1; j <= k_; ++j) xs.push_back("(and " + loopVar(j) + " " + v(j) + ")");
    return nary("or", xs, "false");
  }

  void encodeClock(const c::ClockId& x) {
    for (std::size_t i = 0; i <= k_; ++i) {
      declare(clock(x, i), "Real", {SmtVar::Kind::Clock, i, {}, x});
      assert_("(>= " + clock(x, i) + " 0.0)");
    }
    auto advance = [&](std::size_t i) { return "(+ " + clock(x, i) + " " + delta(i) + ")"; };
    for (std::size_t i = 0; i < k_; ++i)
      assert_("(or (= " + clock(x, i + 1) + " 0.0) (= " + clock(x, i + 1) + " " + advance(i) + "))");
    const std::string bound = real(s_.bounds.at(x));
    for (std::size_t j = 1; j <= k_; ++j) {
      std::vector<std::string> unreset;
      for (std::size_t m = j; m <= k_; ++m) unreset.push_back("(> " + clock(x, m) + " 0.0)");
      assert_("(=> " + loopVar(j) + " (or (= " + clock(x, j) + " 0.0) (= " + clock(x, j) + " " + advance(k_) +
              ") (and (> " + clock(x, j) + " " + bound + ") " + nary("and", unreset, "true") + ")))");
    }
  }

  /// Expression for the value of `f` at position i.
  std::string at(const c::Formula& f, std::size_t i) const {
    switch (f.op()) {
    case c::Op::True: return "true";
    case c::Op::Atom: return "A_" + f.atom() + pos(i);
    case c::Op::Not: return "(not " + at(f.child(), i) + ")";
    case c::Op::Constraint: {
      const auto& cc = f.constraint();
      const std::string lhs = clock(cc.clock, i);
      const std::string rhs = cc.other ? clock(*cc.other, i) : real(cc.constant);
      switch (cc.rel) {
      case c::Rel::Lt: return "(< " + lhs + " " + rhs + ")";
      case c::Rel::Le: return "(<= " + lhs + " " + rhs + ")";
      case c::Rel::Eq: return "(= " + lhs + " " + rhs + ")";
      case c::Rel::Ge: return "(>= " + lhs + " " + rhs + ")";
      case c::Rel::Gt: return "(> " + lhs + " " + rhs + ")";
      case c::Rel::Ne: return "(not (= " + lhs + " " + rhs + "))";
      }
      return "false";
    }
    default: return node(ids_.at(f), i);
    }
  }

  /// Past values must agree between the position before the loop target and k.
  void pastWrap(const c::Formula& f) {
    for (std::size_t j = 1; j <= k_; ++j)
      assert_("(=> " + loopVar(j) + " " + iff(at(f, j - 1), at(f, k_)) + ")");
  }

  void encodeNode(std::size_t n) {
    const c::Formula& f = nodes_[n];
    switch (f.op()) {
    case c::Op::True:
    case c::Op::Atom:
    case c::Op::Constraint:
    case c::Op::Not: return;
    default: break;
    }
    for (std::size_t i = 0; i <= k_; ++i) declare(node(n, i), "Bool", {SmtVar::Kind::Node, i, {}, {}});
    auto def = [&](std::size_t i, const std::string& e) { assert_(iff(node(n, i), e)); };
    const auto& ch = f.children();
    switch (f.op()) {
    case c::Op::And:
    case c::Op::Or:
      for (std::size_t i = 0; i <= k_; ++i) {
        std::vector<std::string> xs;
        for (const auto& g : ch) xs.push_back(at(g, i));
        def(i, f.op() == c::Op::And ? nary("and", xs, "true") : nary("or", xs, "false"));
      }
      break;
    case c::Op::Next:
      for (std::size_t i = 0; i < k_; ++i) def(i, at(ch[0], i + 1));
      def(k_, atLoop([&](std::size_t j) { return at(ch[0], j); }));
      break;
    case c::Op::Yesterday:
      def(0, "false");
      for (std::size_t i = 1; i <= k_; ++i) def(i, at(ch[0], i - 1));
      pastWrap(ch[0]);
      break;
    case c::Op::Until:
    case c::Op::Release: {
      // W is the same operator on the loop positions with the successor of k
      // replaced by false (until) or true (release): a witness inside one loop.
      const bool until = f.op() == c::Op::Until;
      auto step = [&](std::size_t i, const std::string& next) {
        const std::string a = at(ch[0], i), b = at(ch[1], i);
        return until ? "(or " + b + " (and " + a + " " + next + "))" : "(and " + b + " (or " + a + " " + next + "))";
      };
      for (std::size_t i = 1; i <= k_; ++i) declare(witness(n, i), "Bool", {SmtVar::Kind::Witness, i, {}, {}});
      for (std::size_t i = 1; i <= k_; ++i)
        assert_(iff(witness(n, i), step(i, i < k_ ? witness(n, i + 1) : (until ? "false" : "true"))));
      for (std::size_t i = 0; i < k_; ++i) def(i, step(i, node(n, i + 1)));
      def(k_, step(k_, atLoop([&](std::size_t j) { return witness(n, j); })));
      break;
    }
    case c::Op::Since:
    case c::Op::Trigger: {
      const bool since = f.op() == c::Op::Since;
      def(0, at(ch[1], 0));
      for (std::size_t i = 1; i <= k_; ++i) {
        const std::string a = at(ch[0], i), b = at(ch[1], i), prev = node(n, i - 1);
        def(i, since ? "(or " + b + " (and " + a + " " + prev + "))" : "(and " + b + " (or " + a + " " + prev + "))");
      }
      pastWrap(f);
      break;
    }
    default: throw EncodeError("unexpected operator");
    }
  }

  std::size_t k_;
  SmtScript& s_;
  std::unordered_map<c::Formula, std::size_t, c::FormulaHash> ids_;
  std::vector<c::Formula> nodes_;
};

// Minimal s-expression reader for solver output.
struct Sexp {
  std::string atom;
  std::vector<Sexp> list;
  bool isList = false;
};

class SexpReader {
public:
  explicit SexpReader(const std::string& text) : t_(text) {}

  std::vector<Sexp> all() {
    std::vector<Sexp> out;
    for (skip(); p_ < t_.size(); skip()) out.push_back(read());
    return out;
  }

private:
  void skip() {
    while (p_ < t_.size()) {
      if (std::isspace(static_cast<unsigned char>(t_[p_]))) ++p_;
      else if (t_[p_] == ';')
        while (p_ < t_.size() && t_[p_] != '\n') ++p_;
      else break;
    }
  }
  Sexp read() {
    skip();
    if (p_ >= t_.size()) throw DecodeError("unexpected end of solver output");
    Sexp s;
    if (t_[p_] == '(') {
      ++p_;
      s.isList = true;
      for (skip(); p_ < t_.size() && t_[p_] != ')'; skip()) s.list.push_back(read());
      if (p_ >= t_.size()) throw DecodeError("unbalanced parentheses in solver output");
      ++p_;
      return s;
    }
    if (t_[p_] == ')') throw DecodeError("unexpected ')' in solver output");
    if (t_[p_] == '|') {
      const auto end = t_.find('|', p_ + 1);
      if (end == std::string::npos) throw DecodeError("unterminated quoted symbol in solver output");
      s.atom = t_.substr(p_ + 1, end - p_ - 1);
      p_ = end + 1;
      return s;
    }
    const std::size_t start = p_;
    while (p_ < t_.size() && !std::isspace(static_cast<unsigned char>(t_[p_])) && t_[p_] != '(' && t_[p_] != ')') ++p_;
    s.atom = t_.substr(start, p_ - start);
    return s;
  }

  const std::string& t_;
  std::size_t p_ = 0;
};

Rational value_of(const Sexp& e) {
  if (!e.isList) {
    try {
      return parse_rational(e.atom);
    } catch (const std::exception&) {
      throw DecodeError("not a rational value: " + e.atom);
    }
  }
  if (e.list.size() == 2 && e.list[0].atom == "-") return -value_of(e.list[1]);
  if (e.list.size() == 3 && e.list[0].atom == "/") {
    Rational d = value_of(e.list[2]);
    if (d == 0) throw DecodeError("division by zero in solver output");
    Rational q = value_of(e.list[1]) / d;
    q.canonicalize();
    return q;
  }
  throw DecodeError("unsupported value term in solver output");
}

void find_defs(const Sexp& e, std::vector<const Sexp*>& out) {
  if (!e.isList) return;
  if (!e.list.empty() && !e.list[0].isList && e.list[0].atom == "define-fun") {
    out.push_back(&e);
    return;
  }
  for (const auto& x : e.list) find_defs(x, out);
}

} // namespace

std::string SmtScript::text(bool getModel) const {
  std::ostringstream o;
  o << "(set-option :produce-models true)\n(set-logic QF_LRA)\n";
  for (const auto& d : declarations) o << d << "\n";
  for (const auto& a : assertions) o << "(assert " << a << ")\n";
  o << "(check-sat)\n";
  if (getModel) o << "(get-model)\n";
  return o.str();
}

SmtScript encode(const c::Formula& f, std::size_t k, const std::vector<std::string>& extraAtoms) {
  if (k < 1) throw EncodeError("bound must be at least 1");
  SmtScript s;
  s.k = k;
  Encoder(k, s).run(f, extraAtoms);
  return s;
}

DiscreteModel decode(const SmtScript& s, const std::string& modelText) {
  std::map<std::string, bool> bools;
  std::map<std::string, Rational> reals;
  std::vector<const Sexp*> defs;
  auto top = SexpReader(modelText).all();
  for (const auto& e : top) find_defs(e, defs);
  for (const Sexp* d : defs) {
    if (d->list.size() != 5 || d->list[1].isList) throw DecodeError("malformed define-fun in solver output");
    const std::string& name = d->list[1].atom;
    if (!s.vars.count(name)) continue;
    const Sexp& sort = d->list[3];
    const Sexp& v = d->list[4];
    if (!sort.isList && sort.atom == "Bool") {
      if (v.isList || (v.atom != "true" && v.atom != "false")) throw DecodeError("non-literal Boolean for " + name);
      bools[name] = v.atom == "true";
    } else {
      reals[name] = value_of(v);
    }
  }
  auto real_of = [&](const std::string& name) {
    auto it = reals.find(name);
    if (it == reals.end()) throw DecodeError("solver output lacks a value for " + name);
    return it->second;
  };
  auto bool_of = [&](const std::string& name) {
    auto it = bools.find(name);
    return it != bools.end() && it->second;
  };

  DiscreteModel m;
  m.k = s.k;
  m.atoms.resize(s.k + 1);
  m.delta.resize(s.k + 1);
  std::size_t loops = 0;
  for (const auto& [name, v] : s.vars) {
    switch (v.kind) {
    case SmtVar::Kind::Atom:
      if (bool_of(name)) m.atoms[v.position].insert(v.atom);
      break;
    case SmtVar::Kind::Delta: m.delta[v.position] = real_of(name); break;
    case SmtVar::Kind::Loop:
      if (bool_of(name)) m.loop = v.position, ++loops;
      break;
    case SmtVar::Kind::Clock: {
      auto& vals = m.clocks[v.clock];
      vals.resize(s.k + 1);
      vals[v.position] = real_of(name);
      break;
    }
    default: break;
    }
  }
  if (loops != 1) throw DecodeError("assignment selects " + std::to_string(loops) + " loop positions");
  for (std::size_t i = 0; i <= s.k; ++i)
    if (m.delta[i] <= 0) throw DecodeError("non-positive delta at position " + std::to_string(i));
  for (const auto& [x, vals] : m.clocks) {
    for (std::size_t i = 0; i <= s.k; ++i) {
      if (vals[i] < 0) throw DecodeError("negative clock " + x.name());
      if (i < s.k && vals[i + 1] != 0 && vals[i + 1] != vals[i] + m.delta[i])
        throw DecodeError("clock " + x.name() + " breaks progression at position " + std::to_string(i + 1));
    }
    const Rational& start = vals[m.loop];
    bool reset = false;
    for (std::size_t i = m.loop; i <= s.k; ++i) reset |= vals[i] == 0;
    const bool grows = !reset && start > Rational(s.bounds.at(x));
    if (start != 0 && start != vals[s.k] + m.delta[s.k] && !grows)
      throw DecodeError("clock " + x.name() + " breaks the loop");
  }
  return m;
}

} // namespace mitl
