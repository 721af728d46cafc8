#include "mitl/model.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace mitl {

namespace c = cltloc;

Rational DiscreteModel::time(std::size_t i) const {
  Rational t = 0;
  for (std::size_t j = 0; j < i; ++j) t += delta.at(j);
  return t;
}

Rational DiscreteModel::loopDuration() const {
  Rational d = 0;
  for (std::size_t j = loop; j <= k; ++j) d += delta.at(j);
  return d;
}

nlohmann::json DiscreteModel::toJson() const {
  nlohmann::json positions = nlohmann::json::array();
  for (std::size_t i = 0; i <= k; ++i) {
    nlohmann::json clk = nlohmann::json::object();
    for (const auto& [id, vals] : clocks) clk[id.name()] = to_string(vals.at(i));
    positions.push_back({{"time", to_string(time(i))},
                         {"delta", to_string(delta.at(i))},
                         {"atoms", std::vector<std::string>(atoms.at(i).begin(), atoms.at(i).end())},
                         {"clocks", clk}});
  }
  return {{"k", k}, {"loop", loop}, {"positions", positions}};
}

namespace {

void check_shape(const DiscreteModel& m) {
  if (m.k < 1 || m.loop < 1 || m.loop > m.k) throw ModelError("loop must lie in [1, k]");
  if (m.atoms.size() != m.k + 1 || m.delta.size() != m.k + 1) throw ModelError("per-position data has wrong length");
  for (const auto& [id, v] : m.clocks)
    if (v.size() != m.k + 1) throw ModelError("clock " + id.name() + " has wrong length");
}

std::size_t past_depth(const c::Formula& f, std::unordered_map<const void*, std::size_t>& memo) {
  if (auto it = memo.find(f.identity()); it != memo.end()) return it->second;
  std::size_t d = 0;
  for (const auto& ch : f.children()) d = std::max(d, past_depth(ch, memo));
  if (f.op() == c::Op::Yesterday || f.op() == c::Op::Since || f.op() == c::Op::Trigger) ++d;
  memo.emplace(f.identity(), d);
  return d;
}

/// The lasso unrolled until clock comparisons and past operators are periodic.
class Unrolled {
public:
  Unrolled(const DiscreteModel& m, const c::Formula& f) : m_(m) {
    check_shape(m);
    const std::size_t len = m.k + 1 - m.loop;
    const Rational dur = m.loopDuration();
    Rational q = Rational(c::max_constant(f)) / dur;
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    std::unordered_map<const void*, std::size_t> memo;
    copies_ = fl.get_ui() + 2 * past_depth(f, memo) + 3;
    n_ = m.k + 1 + copies_ * len;
    lastStart_ = n_ - len;
    for (const auto& [id, v] : m.clocks) {
      std::vector<Rational> u(v.begin(), v.end());
      u.resize(n_);
      for (std::size_t p = m.k + 1; p < n_; ++p) {
        const std::size_t j = orig(p), prev = orig(p - 1);
        u[p] = v[j] == 0 ? Rational(0) : u[p - 1] + m.delta[prev];
      }
      clocks_.emplace(id, std::move(u));
    }
  }

  std::size_t n() const { return n_; }
  std::size_t orig(std::size_t p) const {
    if (p <= m_.k) return p;
    const std::size_t len = m_.k + 1 - m_.loop;
    return m_.loop + (p - m_.k - 1) % len;
  }
  std::size_t succ(std::size_t p) const { return p + 1 < n_ ? p + 1 : lastStart_; }
  std::size_t lastStart() const { return lastStart_; }

  const std::vector<char>& values(const c::Formula& f) {
    if (auto it = memo_.find(f.identity()); it != memo_.end()) return it->second;
    auto v = compute(f);
    return memo_.emplace(f.identity(), std::move(v)).first->second;
  }

private:
  const Rational& clock(const c::ClockId& x, std::size_t p) const {
    auto it = clocks_.find(x);
    if (it == clocks_.end()) throw ModelError("model has no clock " + x.name());
    return it->second[p];
  }

  static bool compare(const Rational& a, c::Rel r, const Rational& b) {
    switch (r) {
    case c::Rel::Lt: return a < b;
    case c::Rel::Le: return a <= b;
    case c::Rel::Eq: return a == b;
    case c::Rel::Ge: return a >= b;
    case c::Rel::Gt: return a > b;
    case c::Rel::Ne: return a != b;
    }
    return false;
  }

  std::vector<char> compute(const c::Formula& f) {
    std::vector<char> out(n_);
    switch (f.op()) {
    case c::Op::True: std::fill(out.begin(), out.end(), 1); break;
    case c::Op::Atom:
      for (std::size_t p = 0; p < n_; ++p) out[p] = m_.holds(orig(p), f.atom());
      break;
    case c::Op::Constraint: {
      const auto& cc = f.constraint();
      for (std::size_t p = 0; p < n_; ++p) {
        Rational rhs = cc.other ? clock(*cc.other, p) : Rational(cc.constant);
        out[p] = compare(clock(cc.clock, p), cc.rel, rhs);
      }
      break;
    }
    case c::Op::Not: {
      const auto& a = values(f.child());
      for (std::size_t p = 0; p < n_; ++p) out[p] = !a[p];
      break;
    }
    case c::Op::And:
    case c::Op::Or: {
      const bool conj = f.op() == c::Op::And;
      std::fill(out.begin(), out.end(), conj);
      for (const auto& ch : f.children()) {
        const auto& a = values(ch);
        for (std::size_t p = 0; p < n_; ++p) out[p] = conj ? (out[p] && a[p]) : (out[p] || a[p]);
      }
      break;
    }
    case c::Op::Next: {
      const auto& a = values(f.child());
      for (std::size_t p = 0; p < n_; ++p) out[p] = a[succ(p)];
      break;
    }
    case c::Op::Yesterday: {
      const auto& a = values(f.child());
      for (std::size_t p = 1; p < n_; ++p) out[p] = a[p - 1];
      break;
    }
    case c::Op::Until:
    case c::Op::Release: {
      // Least (until) or greatest (release) fixpoint; two passes over the final loop suffice.
      const bool until = f.op() == c::Op::Until;
      const auto& a = values(f.child(0));
      const auto& b = values(f.child(1));
      auto step = [&](std::size_t p, bool next) {
        return until ? (b[p] || (a[p] && next)) : (b[p] && (a[p] || next));
      };
      bool carry = !until;
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t p = n_; p-- > lastStart_;) {
          out[p] = step(p, p + 1 < n_ ? out[p + 1] : carry);
        }
        carry = out[lastStart_];
      }
      for (std::size_t p = lastStart_; p-- > 0;) out[p] = step(p, out[p + 1]);
      break;
    }
    case c::Op::Since:
    case c::Op::Trigger: {
      const bool since = f.op() == c::Op::Since;
      const auto& a = values(f.child(0));
      const auto& b = values(f.child(1));
      for (std::size_t p = 0; p < n_; ++p) {
        const bool prev = p > 0 ? out[p - 1] : !since;
        out[p] = since ? (b[p] || (p > 0 && a[p] && prev)) : (b[p] && (p == 0 || a[p] || prev));
      }
      break;
    }
    }
    if (f.op() == c::Op::Yesterday || f.op() == c::Op::Since || f.op() == c::Op::Trigger) {
      const std::size_t len = m_.k + 1 - m_.loop;
      for (std::size_t p = lastStart_; p < n_; ++p)
        if (out[p] != out[p - len]) throw ModelError("past operator did not become periodic: " + f.str());
    }
    return out;
  }

  const DiscreteModel& m_;
  std::size_t copies_ = 0, n_ = 0, lastStart_ = 0;
  std::map<c::ClockId, std::vector<Rational>> clocks_;
  std::unordered_map<const void*, std::vector<char>> memo_;
};

} // namespace

std::vector<bool> evaluate(const DiscreteModel& m, const c::Formula& f) {
  Unrolled u(m, f);
  const auto& v = u.values(f);
  return std::vector<bool>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(m.k + 1));
}

bool satisfies(const DiscreteModel& m, const c::Formula& f) { return evaluate(m, f).at(0); }

std::vector<std::string> validate_model(const DiscreteModel& m, const TranslationResult& tr) {
  std::vector<std::string> out;
  try {
    check_shape(m);
  } catch (const ModelError& e) {
    return {e.what()};
  }
  auto at = [](std::size_t i) { return " at position " + std::to_string(i); };
  for (std::size_t i = 0; i <= m.k; ++i)
    if (m.delta[i] <= 0) out.push_back("non-positive delta" + at(i));

  std::map<c::ClockId, std::uint64_t> bound;
  for (const auto& [id, b] : c::clock_bounds(tr.formula)) bound[id] = b;
  for (const auto& id : tr.allocation.all()) {
    auto it = m.clocks.find(id);
    if (it == m.clocks.end()) {
      out.push_back("missing clock " + id.name());
      continue;
    }
    const auto& v = it->second;
    for (std::size_t i = 0; i <= m.k; ++i) {
      if (v[i] < 0) out.push_back("negative clock " + id.name() + at(i));
      if (i < m.k && v[i + 1] != 0 && v[i + 1] != v[i] + m.delta[i])
        out.push_back("clock " + id.name() + " neither progresses nor resets" + at(i + 1));
    }
    const bool wraps = v[m.loop] == 0 || v[m.loop] == v[m.k] + m.delta[m.k];
    bool resetInLoop = false;
    for (std::size_t i = m.loop; i <= m.k; ++i) resetInLoop |= v[i] == 0;
    const bool grows = !resetInLoop && v[m.loop] > Rational(bound.count(id) ? bound[id] : 0);
    if (!wraps && !grows) out.push_back("clock " + id.name() + " breaks the loop");
  }
  if (!out.empty()) return out;

  // Resets along the first traversal followed by one more loop iteration.
  std::vector<std::size_t> seq;
  for (std::size_t i = 0; i <= m.k; ++i) seq.push_back(i);
  for (std::size_t i = m.loop; i <= m.k; ++i) seq.push_back(i);
  auto reset = [&](const c::ClockId& x, std::size_t i) { return m.clocks.at(x)[i] == 0; };

  for (std::size_t s = 0; s < tr.allocation.clocks.size(); ++s) {
    const auto& sc = tr.allocation.clocks[s];
    const std::string who = " of subformula " + std::to_string(s);
    if (!reset(sc.z0, 0)) out.push_back("z0" + who + " not reset at the origin");
    // Value changes per the atom scheme.
    auto changes = [&](std::size_t p, std::size_t prev, bool first) {
      if (first) return true;
      if (tr.mode == Mode::Lcro) return m.holds(p, tr.scheme.up(s)) != m.holds(prev, tr.scheme.up(s));
      const bool r0 = m.holds(prev, tr.scheme.rest(s)), f1 = m.holds(p, tr.scheme.first(s)),
                 r1 = m.holds(p, tr.scheme.rest(s));
      return r0 != f1 || f1 != r1;
    };
    int lastZ = -1;
    int nextAux = 0;
    const int d = static_cast<int>(sc.aux.size());
    if (d > 0 && !reset(sc.aux[0], 0)) out.push_back("x0" + who + " not reset at the origin");
    for (std::size_t q = 0; q < seq.size(); ++q) {
      const std::size_t p = seq[q];
      const bool chg = changes(p, q ? seq[q - 1] : 0, q == 0);
      const bool r0 = reset(sc.z0, p), r1 = reset(sc.z1, p);
      if (chg != (r0 || r1)) out.push_back("z reset does not match a value change" + who + at(p));
      if (r0 && r1 && q > 0) out.push_back("z0 and z1 reset together" + who + at(p));
      if (q > 0 && ((r0 && lastZ == 0) || (r1 && lastZ == 1))) out.push_back("z clocks do not alternate" + who + at(p));
      if (r0) lastZ = 0;
      if (r1) lastZ = 1;
      if (d == 0) continue;
      int count = 0, which = -1;
      for (int j = 0; j < d; ++j)
        if (reset(sc.aux[j], p)) ++count, which = j;
      if (count > 1) out.push_back("several auxiliary resets" + who + at(p));
      if ((count > 0) != chg) out.push_back("auxiliary reset does not match a value change" + who + at(p));
      if (count == 1) {
        if (which != nextAux) out.push_back("auxiliary clocks out of circular order" + who + at(p));
        nextAux = (which + 1) % d;
      }
    }
  }
  return out;
}

} // namespace mitl
