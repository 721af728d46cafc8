#include "mitl/translator.hpp"

#include <sstream>

namespace mitl {

namespace c = cltloc;
using c::ClockId;
using c::Rel;

std::size_t ClockAllocation::total() const {
  std::size_t n = 0;
  for (const auto& s : clocks) n += 2 + s.aux.size();
  return n;
}

std::vector<ClockId> ClockAllocation::all() const {
  std::vector<ClockId> out;
  for (const auto& s : clocks) {
    out.push_back(s.z0);
    out.push_back(s.z1);
    out.insert(out.end(), s.aux.begin(), s.aux.end());
  }
  return out;
}

ClockAllocation alloc_clocks(const SubformulaTable& t) {
  ClockAllocation a;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto owner = static_cast<std::uint32_t>(i);
    SubformulaClocks s{ClockId::z(owner, 0), ClockId::z(owner, 1), {}};
    for (std::uint32_t j = 0; j < t[i].auxClocks; ++j) s.aux.push_back(ClockId::aux(owner, j));
    a.clocks.push_back(std::move(s));
  }
  return a;
}

std::vector<std::string> AtomScheme::atoms() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) {
    if (mode == Mode::Lcro) {
      out.push_back(up(i));
    } else {
      out.push_back(first(i));
      out.push_back(rest(i));
    }
  }
  return out;
}

namespace {

using F = c::Formula;

F cc(ClockId x, Rel r, std::uint64_t k) { return c::constraint(x, r, k); }
F is0(ClockId x) { return cc(x, Rel::Eq, 0); }
F pos(ClockId x) { return cc(x, Rel::Gt, 0); }
F X(F f) { return c::next(std::move(f)); }
F Y(F f) { return c::yesterday(std::move(f)); }
F U(F a, F b) { return c::until(std::move(a), std::move(b)); }
F R(F a, F b) { return c::release(std::move(a), std::move(b)); }
F S(F a, F b) { return c::since(std::move(a), std::move(b)); }
F G(F f) { return c::globally(std::move(f)); }
F Fut(F f) { return c::eventually(std::move(f)); }
F NOT(F f) { return c::lnot(std::move(f)); }
F AND(std::vector<F> fs) { return c::land(std::move(fs)); }
F OR(std::vector<F> fs) { return c::lor(std::move(fs)); }
F IMP(F a, F b) { return c::implies(std::move(a), std::move(b)); }
F IFF(F a, F b) { return c::iff(std::move(a), std::move(b)); }
F ORIG() { return c::origin(); }

/// Event abbreviations of one subformula.
class Sub {
public:
  Sub(const SubformulaTable& t, std::size_t i, const ClockAllocation& a, Mode m)
      : i_(i), mode_(m), clocks_(a.clocks.at(i)) {
    (void)t;
  }

  F up() const { return c::atom("u" + std::to_string(i_)); }
  F fst() const { return c::atom("f" + std::to_string(i_)); }
  F rest() const { return c::atom("r" + std::to_string(i_)); }
  /// The value that tracks intervals: allup in lcro mode, rest in general mode.
  F val() const { return mode_ == Mode::Lcro ? up() : rest(); }

  F rise() const { return AND({NOT(Y(val())), val()}); }
  F fall() const { return AND({NOT(Y(NOT(val()))), NOT(val())}); }
  F sup() const { return AND({Y(NOT(rest())), fst(), NOT(rest())}); }
  F sdn() const { return AND({Y(rest()), NOT(fst()), rest()}); }
  F change() const {
    if (mode_ == Mode::Lcro) return OR({rise(), fall()});
    return OR({rise(), fall(), sup(), sdn()});
  }
  /// False just before, true now or right after.
  F becomesTrue() const { return OR({rise(), sup(), AND({ORIG(), fst()})}); }
  /// True now or just before, false right after.
  F nowOnFalse() const { return OR({fall(), sup()}); }
  /// End of a true stretch: true now or just before, false right after (origin included).
  F stretchEnd() const { return AND({OR({Y(rest()), fst()}), NOT(rest())}); }
  F anyTrue() const { return OR({fst(), rest()}); }

  ClockId z(int e) const { return e == 0 ? clocks_.z0 : clocks_.z1; }
  F zAny(Rel r, std::uint64_t k) const { return OR({cc(z(0), r, k), cc(z(1), r, k)}); }
  F zAll(Rel r, std::uint64_t k) const { return AND({cc(z(0), r, k), cc(z(1), r, k)}); }
  const std::vector<ClockId>& aux() const { return clocks_.aux; }
  F auxAny(Rel r, std::uint64_t k) const {
    std::vector<F> fs;
    for (auto x : aux()) fs.push_back(cc(x, r, k));
    return OR(std::move(fs));
  }

private:
  std::size_t i_;
  Mode mode_;
  SubformulaClocks clocks_;
};

Sub sub(const SubformulaTable& t, std::size_t i, const ClockAllocation& a, Mode m) { return Sub(t, i, a, m); }

/// Condition on psi at a window endpoint so that theta takes value `wanted` there.
F endpointValue(const Sub& psi, bool endpointIncluded, bool wanted) {
  if (wanted) return endpointIncluded ? psi.fst() : c::bottom();
  return endpointIncluded ? NOT(psi.fst()) : c::top();
}

F lower(ClockId x, const TimeInterval& iv) {
  return cc(x, iv.lowerOpen() ? Rel::Gt : Rel::Ge, iv.lower());
}

F upper(ClockId x, const TimeInterval& iv) {
  if (iv.isUnbounded()) return c::top();
  return cc(x, iv.upperOpen() ? Rel::Lt : Rel::Le, *iv.upper());
}

} // namespace

F events_constraint(const SubformulaTable& t, std::size_t i, const ClockAllocation& a, Mode mode) {
  Sub th = sub(t, i, a, mode);
  std::vector<F> body{IFF(th.change(), OR({is0(th.z(0)), is0(th.z(1))}))};
  for (int e = 0; e < 2; ++e) body.push_back(IMP(is0(th.z(e)), X(R(is0(th.z(1 - e)), NOT(is0(th.z(e)))))));
  return AND({is0(th.z(0)), G(AND(std::move(body)))});
}

F auxclocks_constraint(const SubformulaTable& t, std::size_t i, const ClockAllocation& a, Mode mode) {
  Sub th = sub(t, i, a, mode);
  const auto& x = th.aux();
  const std::size_t d = x.size();
  if (d == 0) throw TranslationError("no auxiliary clocks for", t[i].formula);
  std::vector<F> parts{is0(x[0])};
  // Origin order x0 < x(d-1) < ... < x1.
  if (d > 1) parts.push_back(c::constraint(x[0], Rel::Lt, x[d - 1]));
  for (std::size_t j = d - 1; j > 1; --j) parts.push_back(c::constraint(x[j], Rel::Lt, x[j - 1]));
  std::vector<F> body{IFF(th.change(), th.auxAny(Rel::Eq, 0))};
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = p + 1; q < d; ++q) body.push_back(NOT(AND({is0(x[p]), is0(x[q])})));
  for (std::size_t p = 0; p < d; ++p) {
    const std::size_t nxt = (p + 1) % d;
    std::vector<F> others;
    for (std::size_t j = 0; j < d; ++j)
      if (j != nxt) others.push_back(pos(x[j]));
    body.push_back(IMP(is0(x[p]), X(R(is0(x[nxt]), AND(std::move(others))))));
  }
  parts.push_back(G(AND(std::move(body))));
  return AND(std::move(parts));
}

F translate_sub_lcro(const SubformulaTable& t, std::size_t i, const ClockAllocation& a) {
  const auto& f = t[i].formula;
  Sub th = sub(t, i, a, Mode::Lcro);
  auto child = [&](std::size_t k) { return sub(t, t[i].children.at(k), a, Mode::Lcro); };
  switch (f.op()) {
  case MitlOp::Prop: return c::top();
  case MitlOp::True: return th.up();
  case MitlOp::Not: return IFF(th.up(), NOT(child(0).up()));
  case MitlOp::And: return IFF(th.up(), AND({child(0).up(), child(1).up()}));
  case MitlOp::Until:
    if (!(f.interval() == strict_future())) break;
    return IFF(th.up(), AND({child(0).up(), U(child(0).up(), child(1).up())}));
  case MitlOp::Eventually: {
    const auto& iv = f.interval();
    Sub psi = child(0);
    const std::uint64_t A = iv.lower();
    if (iv.isUnbounded()) {
      if (A == 0) return IFF(th.up(), Fut(psi.up()));
      const ClockId z0 = th.z(0), z1 = th.z(1);
      F e12 = IFF(th.rise(), AND({ORIG(), U(OR({ORIG(), pos(z0)}),
                                          AND({psi.up(), OR({cc(z0, Rel::Ge, A),
                                                             AND({cc(z0, Rel::Lt, A), X(cc(z0, Rel::Gt, A))})})}))}));
      F e13 = IFF(th.fall(), OR({AND({is0(z1), X(U(pos(z1), AND({psi.fall(), cc(z1, Rel::Eq, A), G(NOT(psi.rise()))})))}),
                                 AND({ORIG(), NOT(th.rise())})}));
      F e14 = IMP(AND({psi.fall(), G(NOT(psi.rise()))}), cc(z1, Rel::Eq, A));
      return AND({e12, e13, e14});
    }
    const std::uint64_t B = *iv.upper();
    if (A == 0) {
      std::vector<F> witnesses;
      for (int e = 0; e < 2; ++e)
        witnesses.push_back(AND({is0(th.z(e)), X(U(pos(th.z(e)), AND({psi.rise(), cc(th.z(e), Rel::Eq, B),
                                                                         psi.zAny(Rel::Gt, B)})))}));
      F e9 = IFF(th.rise(), OR({AND({NOT(ORIG()), NOT(psi.up()), OR(std::move(witnesses))}),
                                AND({ORIG(), U(OR({ORIG(), pos(th.z(0))}), AND({psi.up(), cc(th.z(0), Rel::Le, B)}))})}));
      F e10 = IMP(AND({psi.rise(), psi.zAny(Rel::Gt, B)}), th.zAny(Rel::Eq, B));
      F e11 = IFF(th.fall(), AND({psi.fall(), R(psi.rise(), NOT(AND({psi.rise(), psi.zAll(Rel::Le, B)})))}));
      return AND({e9, e10, e11});
    }
    const std::uint64_t W = B - A;
    const auto& x = th.aux();
    std::vector<F> up, down;
    for (auto xj : x) {
      up.push_back(AND({is0(xj), X(U(pos(xj), AND({psi.rise(), cc(xj, Rel::Eq, B), psi.zAny(Rel::Gt, W)})))}));
      down.push_back(AND({is0(xj), X(U(pos(xj), AND({psi.fall(), cc(xj, Rel::Eq, A),
                                                     R(psi.rise(), NOT(AND({psi.rise(), cc(xj, Rel::Le, B)})))})))}));
    }
    const ClockId x0 = x[0];
    F e5 = IFF(th.rise(),
               OR({AND({NOT(ORIG()), OR(std::move(up))}),
                   AND({ORIG(), U(OR({ORIG(), pos(x0)}),
                                  AND({psi.up(), OR({AND({cc(x0, Rel::Ge, A), cc(x0, Rel::Le, B)}),
                                                     AND({cc(x0, Rel::Lt, A), X(cc(x0, Rel::Gt, A))})})}))})}));
    F e6 = IMP(AND({psi.rise(), psi.zAny(Rel::Gt, W)}), th.auxAny(Rel::Eq, B));
    F e7 = IFF(th.fall(), OR({OR(std::move(down)), AND({ORIG(), NOT(th.rise())})}));
    F e8 = IMP(AND({psi.fall(), R(psi.rise(), NOT(AND({psi.rise(), psi.zAll(Rel::Le, W)})))}), th.auxAny(Rel::Eq, A));
    return AND({e5, e6, e7, e8});
  }
  default: break;
  }
  throw TranslationError("no lcro encoding for", f);
}

namespace {

/// Exact value of F<0,b> or F<a,b> at the origin, measured with clock `x` reset there.
F originEventually(const Sub& th, const Sub& psi, ClockId x, const TimeInterval& iv) {
  const std::uint64_t A = iv.lower();
  const F guard = OR({ORIG(), pos(x)});
  const F pastA = A == 0 ? c::top() : X(cc(x, Rel::Gt, A));
  const F fstAt = OR({AND({psi.fst(), lower(x, iv), upper(x, iv)}),
                      AND({psi.rest(), iv.isUnbounded() ? c::top() : cc(x, Rel::Lt, *iv.upper()), pastA})});
  const F restAt = OR({AND({psi.fst(), cc(x, Rel::Gt, A), iv.isUnbounded() ? c::top() : cc(x, Rel::Le, *iv.upper())}),
                       AND({psi.rest(), iv.isUnbounded() ? c::top() : cc(x, Rel::Le, *iv.upper()), pastA})});
  return IMP(ORIG(), AND({IFF(th.fst(), U(guard, AND({guard, fstAt}))), IFF(th.rest(), U(guard, AND({guard, restAt})))}));
}

F generalEventually(const SubformulaTable& t, std::size_t i, const ClockAllocation& a) {
  const auto& f = t[i].formula;
  const auto& iv = f.interval();
  Sub th = sub(t, i, a, Mode::General);
  Sub psi = sub(t, t[i].children.at(0), a, Mode::General);
  const std::uint64_t A = iv.lower();
  const bool inA = !iv.lowerOpen(), inB = !iv.upperOpen();
  const F notOrig = NOT(ORIG());

  if (iv.isUnbounded() && A == 0) {
    const F later = X(Fut(psi.anyTrue()));
    return AND({IFF(th.fst(), OR({inA ? psi.fst() : c::bottom(), psi.rest(), later})),
                IFF(th.rest(), OR({psi.rest(), later}))});
  }

  if (iv.isUnbounded()) {
    // True up to the last instant psi holds, minus a; at most one fall after 0.
    auto fallAt = [&](bool fstTheta) {
      std::vector<F> ws;
      for (int e = 0; e < 2; ++e)
        ws.push_back(AND({is0(th.z(e)), X(U(pos(th.z(e)), AND({psi.nowOnFalse(), cc(th.z(e), Rel::Eq, A),
                                                               endpointValue(psi, inA, fstTheta),
                                                               X(G(NOT(psi.becomesTrue())))})))}));
      return OR(std::move(ws));
    };
    return AND({
        originEventually(th, psi, th.z(0), iv),
        IMP(notOrig, NOT(OR({th.rise(), th.sup(), th.sdn()}))),
        IMP(AND({notOrig, th.fall(), th.fst()}), fallAt(true)),
        IMP(AND({notOrig, th.fall(), NOT(th.fst())}), fallAt(false)),
        IMP(AND({notOrig, psi.nowOnFalse(), X(G(NOT(psi.becomesTrue())))}), th.zAny(Rel::Eq, A)),
    });
  }

  const std::uint64_t B = *iv.upper();
  const std::uint64_t W = B - A;
  // Gap before a rising psi longer than b-a; gap after a falling psi longer than b-a; exactly b-a.
  const F gapBefore = psi.zAny(Rel::Gt, W);
  const F gapAfter = X(R(psi.becomesTrue(), NOT(AND({psi.becomesTrue(), psi.zAll(Rel::Le, W)}))));
  const F gapExact = AND({endpointValue(psi, inA, false),
                          X(U(NOT(psi.becomesTrue()), AND({psi.becomesTrue(), psi.zAny(Rel::Eq, W),
                                                           endpointValue(psi, inB, false)})))});

  std::vector<ClockId> marks;
  if (A == 0) {
    marks = {th.z(0), th.z(1)};
  } else {
    marks = th.aux();
  }
  auto riseAt = [&](bool fstTheta) {
    std::vector<F> ws;
    for (auto x : marks)
      ws.push_back(AND({is0(x), X(U(pos(x), AND({psi.becomesTrue(), cc(x, Rel::Eq, B), gapBefore,
                                                 endpointValue(psi, inB, fstTheta)})))}));
    return OR(std::move(ws));
  };
  auto dipAt = [&](F here) {
    std::vector<F> ws;
    for (auto x : marks) {
      F back = X(U(AND({NOT(psi.becomesTrue()), pos(x)}),
                   AND({psi.becomesTrue(), cc(x, Rel::Eq, B), endpointValue(psi, inB, false)})));
      if (A == 0) {
        ws.push_back(AND({is0(x), here, back}));
      } else {
        ws.push_back(AND({is0(x), X(U(pos(x), AND({here, cc(x, Rel::Eq, A), back})))}));
      }
    }
    return OR(std::move(ws));
  };
  auto fallAt = [&](bool fstTheta) {
    F here = AND({psi.nowOnFalse(), endpointValue(psi, inA, fstTheta), gapAfter});
    if (A == 0) return here;
    std::vector<F> ws;
    for (auto x : marks) ws.push_back(AND({is0(x), X(U(pos(x), AND({here, cc(x, Rel::Eq, A)})))}));
    return OR(std::move(ws));
  };
  const F markAtA = A == 0 ? th.change() : th.auxAny(Rel::Eq, A);
  const F markAtB = A == 0 ? th.zAny(Rel::Eq, B) : th.auxAny(Rel::Eq, B);

  std::vector<F> parts;
  if (iv.lowerOpen() && iv.upperOpen())
    parts.push_back(IMP(th.fst(), AND({th.rest(), OR({Y(th.rest()), ORIG()})})));
  parts.push_back(originEventually(th, psi, A == 0 ? th.z(0) : marks[0], iv));
  if (A > 0) {
    const ClockId x0 = marks[0];
    parts.push_back(IMP(ORIG(), X(R(cc(x0, Rel::Gt, B), NOT(is0(x0))))));
  }
  parts.push_back(NOT(th.sup()));
  parts.push_back(IMP(AND({notOrig, th.rise(), th.fst()}), riseAt(true)));
  parts.push_back(IMP(AND({notOrig, th.rise(), NOT(th.fst())}), riseAt(false)));
  parts.push_back(IMP(AND({notOrig, th.fall(), th.fst()}), fallAt(true)));
  parts.push_back(IMP(AND({notOrig, th.fall(), NOT(th.fst())}), fallAt(false)));
  parts.push_back(IMP(th.sdn(), dipAt(AND({psi.nowOnFalse(), endpointValue(psi, inA, false)}))));
  parts.push_back(IMP(AND({notOrig, psi.becomesTrue(), gapBefore}), markAtB));
  parts.push_back(IMP(AND({notOrig, psi.nowOnFalse(), OR({gapAfter, gapExact})}), markAtA));
  return AND(std::move(parts));
}

F generalPast(const SubformulaTable& t, std::size_t i, const ClockAllocation& a) {
  const auto& f = t[i].formula;
  const auto& iv = f.interval();
  Sub th = sub(t, i, a, Mode::General);
  Sub psi = sub(t, t[i].children.at(0), a, Mode::General);
  if (iv.lower() != 0) throw TranslationError("no encoding for past eventually with a positive lower bound", f);
  const bool inA = !iv.lowerOpen(), inB = !iv.upperOpen();
  const F now = inA ? psi.fst() : c::bottom();
  if (iv.isUnbounded()) {
    const F ever = S(c::top(), psi.anyTrue());
    return AND({IFF(th.fst(), OR({now, Y(ever)})), IFF(th.rest(), ever)});
  }
  const std::uint64_t B = *iv.upper();
  // The last true stretch of psi ended at the reset of z^e and psi is false since.
  auto lastEnd = [&](int e, F extra) {
    const ClockId z = psi.z(e);
    return Y(S(AND({NOT(psi.fst()), NOT(psi.rest()), pos(z)}), AND({psi.stretchEnd(), is0(z), std::move(extra)})));
  };
  std::vector<F> lt, eq, force;
  for (int e = 0; e < 2; ++e) {
    const ClockId z = psi.z(e);
    lt.push_back(AND({cc(z, Rel::Lt, B), lastEnd(e, c::top())}));
    if (inB) eq.push_back(AND({cc(z, Rel::Eq, B), lastEnd(e, psi.fst())}));
    force.push_back(AND({is0(z), X(U(cc(z, Rel::Lt, B), OR({cc(z, Rel::Eq, B), AND({psi.change(), cc(z, Rel::Lt, B)})})))}));
  }
  const F recent = OR(std::move(lt));
  return AND({
      IFF(th.fst(), OR({now, Y(psi.rest()), recent, OR(std::move(eq))})),
      IFF(th.rest(), OR({psi.fst(), psi.rest(), Y(psi.rest()), recent})),
      IMP(psi.stretchEnd(), OR(std::move(force))),
  });
}

} // namespace

F translate_sub_general(const SubformulaTable& t, std::size_t i, const ClockAllocation& a) {
  const auto& f = t[i].formula;
  Sub th = sub(t, i, a, Mode::General);
  auto child = [&](std::size_t k) { return sub(t, t[i].children.at(k), a, Mode::General); };
  switch (f.op()) {
  case MitlOp::Prop: return c::top();
  case MitlOp::True: return AND({th.fst(), th.rest()});
  case MitlOp::Not: return AND({IFF(th.fst(), NOT(child(0).fst())), IFF(th.rest(), NOT(child(0).rest()))});
  case MitlOp::And:
    return AND({IFF(th.fst(), AND({child(0).fst(), child(1).fst()})),
                IFF(th.rest(), AND({child(0).rest(), child(1).rest()}))});
  case MitlOp::Until: {
    if (!(f.interval() == strict_future())) break;
    Sub g = child(0), p = child(1);
    return AND({IFF(th.fst(), th.rest()),
                IFF(th.rest(), U(AND({g.rest(), X(g.fst())}), AND({g.rest(), OR({p.rest(), X(p.fst())})})))});
  }
  case MitlOp::Since: {
    if (!(f.interval() == strict_future())) break;
    Sub g = child(0), p = child(1);
    return AND({IFF(th.fst(), Y(th.rest())),
                IFF(th.rest(), S(AND({g.fst(), g.rest()}), AND({p.anyTrue(), g.rest()})))});
  }
  case MitlOp::Eventually: return generalEventually(t, i, a);
  case MitlOp::PastEventually: return generalPast(t, i, a);
  default: break;
  }
  throw TranslationError("no general encoding for", f);
}

TranslationResult translate(const Formula& f, const TranslateOptions& opts) {
  SubformulaTable table(f);
  ClockAllocation alloc = alloc_clocks(table);
  AtomScheme scheme;
  scheme.mode = opts.mode;
  scheme.count = table.size();
  for (std::size_t i = 0; i < table.size(); ++i)
    if (table[i].formula.op() == MitlOp::Prop) scheme.props.emplace(table[i].formula.name(), i);

  std::vector<std::pair<std::string, F>> parts;
  const std::size_t root = table.root();
  Sub r = sub(table, root, alloc, opts.mode);
  if (opts.assertRoot) parts.emplace_back("root", opts.mode == Mode::Lcro ? r.up() : r.fst());
  for (std::size_t i = 0; i < table.size(); ++i) {
    const std::string tag = "[" + std::to_string(i) + "] " + table[i].formula.str();
    F m = opts.mode == Mode::Lcro ? translate_sub_lcro(table, i, alloc) : translate_sub_general(table, i, alloc);
    if (opts.mode == Mode::General && opts.restrictLcro && table[i].formula.op() == MitlOp::Prop) {
      Sub p = sub(table, i, alloc, opts.mode);
      m = AND({m, IFF(p.fst(), p.rest())});
    }
    if (!m.isTrue()) parts.emplace_back("m " + tag, G(m));
    parts.emplace_back("events " + tag, events_constraint(table, i, alloc, opts.mode));
    if (table[i].auxClocks > 0) parts.emplace_back("auxclocks " + tag, auxclocks_constraint(table, i, alloc, opts.mode));
  }
  std::vector<F> all;
  for (const auto& p : parts) all.push_back(p.second);
  F formula = AND(std::move(all));
  return TranslationResult{formula, std::move(table), std::move(alloc), std::move(scheme), opts.mode, root, std::move(parts)};
}

std::string dump(const TranslationResult& r) {
  std::ostringstream os;
  os << "mode " << to_string(r.mode) << ", " << r.table.size() << " subformulas, " << r.allocation.total()
     << " clocks\n";
  for (const auto& [label, f] : r.parts) os << label << ":\n  " << f.str() << "\n";
  return os.str();
}

} // namespace mitl
