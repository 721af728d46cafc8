#include "mitl/oracle.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <unordered_map>

namespace mitl {

namespace {

mpz_class floor_div(const Rational& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

std::size_t segment(const std::vector<Rational>& times, const Rational& t) {
  auto it = std::upper_bound(times.begin(), times.end(), t);
  return static_cast<std::size_t>(it - times.begin()) - 1;
}

Rational fold(const TruthSignal& s, const Rational& t) {
  if (t < s.listedEnd) return t;
  mpz_class k = floor_div((t - s.listedEnd) / s.period) + 1;
  return t - Rational(k) * s.period;
}

/// Interval <lo, hi> of candidate witnesses.
struct Span {
  Rational lo;
  bool loClosed;
  Rational hi;
  bool hiClosed;
};

/// Whether the listed window of `s` has a true instant inside `j`.
bool any_true(const TruthSignal& s, const Span& j) {
  if (j.lo > j.hi) return false;
  const bool point = j.lo == j.hi;
  if (point && !(j.loClosed && j.hiClosed)) return false;
  for (std::size_t i = segment(s.times, j.lo); i < s.times.size(); ++i) {
    const Rational& a = s.times[i];
    if (a > j.hi) break;
    const bool aInside = (j.loClosed ? a >= j.lo : a > j.lo) && (j.hiClosed ? a <= j.hi : a < j.hi);
    if (aInside && s.atPoint[i]) return true;
    const Rational& b = i + 1 < s.times.size() ? s.times[i + 1] : s.listedEnd;
    const bool overlap = point ? (a < j.lo && j.lo < b) : (a < j.hi && j.lo < b);
    if (overlap && s.onInterval[i]) return true;
  }
  return false;
}

/// inf { u > t : not g(u) }, or nullopt when g holds up to the listed end.
std::optional<Rational> first_false_after(const TruthSignal& g, const Rational& t) {
  std::size_t i = segment(g.times, t);
  if (!g.onInterval[i]) return t;
  for (++i; i < g.times.size(); ++i) {
    if (!g.atPoint[i] || !g.onInterval[i]) return g.times[i];
  }
  return std::nullopt;
}

/// sup { u < t : not g(u) }, or nullopt when g holds on [0, t).
std::optional<Rational> last_false_before(const TruthSignal& g, const Rational& t) {
  std::size_t i = segment(g.times, t);
  if (g.times[i] < t) {
    if (!g.onInterval[i]) return t;
    if (!g.atPoint[i]) return g.times[i];
  }
  while (i > 0) {
    --i;
    if (!g.onInterval[i]) return g.times[i + 1];
    if (!g.atPoint[i]) return g.times[i];
  }
  return std::nullopt;
}

/// g U_I p at t, with both operands listed at least up to `window`.
bool until_at(const TruthSignal& g, const TruthSignal& p, const TimeInterval& iv, const Rational& t,
              const Rational& window) {
  Span j{t + Rational(iv.lower()), !iv.lowerOpen(), window, false};
  if (iv.upper()) {
    Rational b = t + Rational(*iv.upper());
    if (b < j.hi) j = Span{j.lo, j.loClosed, b, !iv.upperOpen()};
  }
  auto g_end = first_false_after(g, t);
  if (g_end && *g_end < j.hi) j = Span{j.lo, j.loClosed, *g_end, true};
  return any_true(p, j);
}

/// g S_I p at t.
bool since_at(const TruthSignal& g, const TruthSignal& p, const TimeInterval& iv, const Rational& t) {
  Span j{0, true, t - Rational(iv.lower()), !iv.lowerOpen()};
  if (iv.upper()) {
    Rational b = t - Rational(*iv.upper());
    if (b >= 0) j = Span{b, !iv.upperOpen(), j.hi, j.hiClosed};
  }
  auto g_start = last_false_before(g, t);
  if (g_start && *g_start > j.lo) j = Span{*g_start, true, j.hi, j.hiClosed};
  return any_true(p, j);
}

/// Breakpoints of `s` within [0, w), periodically continued.
std::vector<Rational> breakpoints_upto(const TruthSignal& s, const Rational& w) {
  return s.expanded(w).times;
}

/// Samples `eval` at the candidate instants and between them on [0, end).
TruthSignal build(const Rational& end, std::vector<Rational> cands, const std::function<bool(const Rational&)>& eval) {
  cands.push_back(0);
  std::erase_if(cands, [&](const Rational& u) { return u < 0 || u >= end; });
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  TruthSignal out;
  out.listedEnd = end;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const Rational& next = i + 1 < cands.size() ? cands[i + 1] : end;
    out.times.push_back(cands[i]);
    out.atPoint.push_back(eval(cands[i]));
    out.onInterval.push_back(eval((cands[i] + next) / 2));
  }
  return out;
}

/// Computes a result over two candidate periods starting at `t0` and checks
/// that the second repeats the first; slides t0 forward until it does.
TruthSignal periodic(Rational t0, const Rational& period,
                     const std::function<TruthSignal(const Rational& end, std::vector<Rational> extra)>& compute) {
  for (int attempt = 0; attempt < 64; ++attempt, t0 += period) {
    const Rational end = t0 + 2 * period;
    TruthSignal tr = compute(end, {t0, Rational(t0 + period)});
    tr.tailStart = t0;
    tr.period = period;
    std::vector<Rational> probes;
    for (const auto& u : tr.times) {
      if (u >= t0 + period) probes.push_back(u - period);
      else if (u >= t0) probes.push_back(u);
    }
    std::sort(probes.begin(), probes.end());
    probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
    bool stable = true;
    for (std::size_t i = 0; i < probes.size() && stable; ++i) {
      Rational next = i + 1 < probes.size() ? probes[i + 1] : Rational(t0 + period);
      Rational mid = (probes[i] + next) / 2;
      stable = tr.at(probes[i]) == tr.at(probes[i] + period) && tr.at(mid) == tr.at(mid + period);
    }
    if (!stable) continue;
    TruthSignal cut;
    cut.listedEnd = t0 + period;
    cut.tailStart = t0;
    cut.period = period;
    for (std::size_t i = 0; i < tr.times.size() && tr.times[i] < cut.listedEnd; ++i) {
      cut.times.push_back(tr.times[i]);
      cut.atPoint.push_back(tr.atPoint[i]);
      cut.onInterval.push_back(tr.onInterval[i]);
    }
    return cut.compressed();
  }
  throw OracleError("truth signal did not stabilize over the periodic tail");
}

class Evaluator {
public:
  explicit Evaluator(const Signal& s) : signal_(s.compact()) {}

  TruthSignal eval(const Formula& f) {
    if (auto it = memo_.find(f); it != memo_.end()) return it->second;
    TruthSignal s = compute(f);
    memo_.emplace(f, s);
    return s;
  }

private:
  TruthSignal compute(const Formula& f) {
    switch (f.op()) {
    case MitlOp::Prop: return prop(f.name());
    case MitlOp::True: return constant(true);
    case MitlOp::Not: return negate(eval(f.child()));
    case MitlOp::And: return conjunction(eval(f.child(0)), eval(f.child(1)));
    case MitlOp::Until: return until(eval(f.child(0)), eval(f.child(1)), f.interval());
    case MitlOp::Since: return since(eval(f.child(0)), eval(f.child(1)), f.interval());
    case MitlOp::Eventually: return until(constant(true), eval(f.child()), f.interval());
    case MitlOp::Globally: return negate(until(constant(true), negate(eval(f.child())), f.interval()));
    case MitlOp::PastEventually: return since(constant(true), eval(f.child()), f.interval());
    }
    throw OracleError("unknown operator");
  }

  TruthSignal prop(const std::string& name) const {
    TruthSignal out;
    for (const auto& b : signal_.breakpoints()) {
      out.times.push_back(b.t);
      out.atPoint.push_back(b.point.count(name) > 0);
      out.onInterval.push_back(b.interval.count(name) > 0);
    }
    out.tailStart = signal_.tailStartTime();
    out.period = signal_.period();
    out.listedEnd = out.tailStart + out.period;
    return out.compressed();
  }

  TruthSignal constant(bool v) const {
    TruthSignal out;
    out.times = {Rational(0)};
    out.atPoint = {v};
    out.onInterval = {v};
    out.tailStart = 0;
    out.period = signal_.period();
    out.listedEnd = out.period;
    return out;
  }

  static TruthSignal negate(TruthSignal s) {
    s.atPoint.flip();
    s.onInterval.flip();
    return s;
  }

  TruthSignal conjunction(const TruthSignal& a, const TruthSignal& b) const {
    const Rational t0 = std::max(a.tailStart, b.tailStart);
    return periodic(t0, signal_.period(), [&](const Rational& end, std::vector<Rational> cands) {
      for (auto* s : {&a, &b})
        for (auto& u : breakpoints_upto(*s, end)) cands.push_back(u);
      return build(end, std::move(cands), [&](const Rational& u) { return a.at(u) && b.at(u); });
    });
  }

  TruthSignal until(const TruthSignal& g, const TruthSignal& p, const TimeInterval& iv) const {
    const Rational period = signal_.period();
    const Rational t0 = std::max(g.tailStart, p.tailStart);
    const Rational reach = iv.upper() ? Rational(*iv.upper()) : Rational(Rational(iv.lower()) + period);
    return periodic(t0, period, [&](const Rational& end, std::vector<Rational> cands) {
      const Rational window = end + reach + period;
      TruthSignal eg = g.expanded(window), ep = p.expanded(window);
      for (auto* s : {&eg, &ep}) {
        for (const auto& u : s->times) {
          cands.push_back(u);
          cands.push_back(u - Rational(iv.lower()));
          if (iv.upper()) cands.push_back(u - Rational(*iv.upper()));
        }
      }
      return build(end, std::move(cands), [&](const Rational& t) { return until_at(eg, ep, iv, t, window); });
    });
  }

  TruthSignal since(const TruthSignal& g, const TruthSignal& p, const TimeInterval& iv) const {
    const Rational period = signal_.period();
    const Rational reach = iv.upper() ? Rational(*iv.upper()) : Rational(iv.lower());
    const Rational t0 = std::max(g.tailStart, p.tailStart) + reach + period;
    return periodic(t0, period, [&](const Rational& end, std::vector<Rational> cands) {
      TruthSignal eg = g.expanded(end), ep = p.expanded(end);
      for (auto* s : {&eg, &ep}) {
        for (const auto& u : s->times) {
          cands.push_back(u);
          cands.push_back(u + Rational(iv.lower()));
          if (iv.upper()) cands.push_back(u + Rational(*iv.upper()));
        }
      }
      return build(end, std::move(cands), [&](const Rational& t) { return since_at(eg, ep, iv, t); });
    });
  }

  Signal signal_;
  std::unordered_map<Formula, TruthSignal, FormulaHash> memo_;
};

} // namespace

bool TruthSignal::at(const Rational& t) const {
  if (t < 0) throw OracleError("negative instant");
  Rational u = fold(*this, t);
  std::size_t i = segment(times, u);
  return times[i] == u ? atPoint[i] : onInterval[i];
}

bool TruthSignal::rightOf(const Rational& t) const {
  Rational u = fold(*this, t);
  return onInterval[segment(times, u)];
}

TruthSignal TruthSignal::expanded(const Rational& w) const {
  TruthSignal out = *this;
  const std::size_t first = segment(times, tailStart);
  if (times[first] != tailStart) throw OracleError("tail start is not a breakpoint");
  const std::size_t count = [&] {
    std::size_t n = 0;
    for (std::size_t i = first; i < times.size() && times[i] < tailStart + period; ++i) ++n;
    return n;
  }();
  while (out.listedEnd < w) {
    for (std::size_t i = 0; i < count; ++i) {
      out.times.push_back(times[first + i] + (out.listedEnd - tailStart));
      out.atPoint.push_back(atPoint[first + i]);
      out.onInterval.push_back(onInterval[first + i]);
    }
    out.listedEnd += period;
  }
  return out;
}

TruthSignal TruthSignal::compressed() const {
  TruthSignal out;
  out.listedEnd = listedEnd;
  out.tailStart = tailStart;
  out.period = period;
  for (std::size_t i = 0; i < times.size(); ++i) {
    bool keep = i == 0 || times[i] == tailStart || atPoint[i] != out.onInterval.back() ||
                onInterval[i] != atPoint[i];
    if (!keep) continue;
    out.times.push_back(times[i]);
    out.atPoint.push_back(atPoint[i]);
    out.onInterval.push_back(onInterval[i]);
  }
  return out;
}

TruthSignal truth_signal(const Signal& s, const Formula& f) { return Evaluator(s).eval(f); }

bool eval_at(const Signal& s, const Formula& f, const Rational& t) { return truth_signal(s, f).at(t); }

bool holds(const Signal& s, const Formula& f) { return eval_at(s, f, 0); }

} // namespace mitl
