#include "mitl/check.hpp"
#include "mitl/normalize.hpp"
#include "mitl/oracle.hpp"
#include "mitl/parser.hpp"
#include "support/generators.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

using namespace mitl;
using namespace mitl::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string note;
};

std::vector<std::string> g_issues;
std::size_t g_models = 0;

std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream s;
  s << in.rdbuf();
  std::string t = s.str();
  while (!t.empty() && (t.back() == '\n' || t.back() == ' ')) t.pop_back();
  return t;
}

double env_seconds(const char* name, double fallback) {
  const char* v = std::getenv(name);
  return v && *v ? std::atof(v) : fallback;
}

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(double s) {
  std::ostringstream o;
  o.precision(3);
  o << s << "s";
  return o.str();
}

CheckReport check(const Formula& f, Mode mode, std::size_t k, double timeout) {
  CheckOptions o;
  o.mode = mode;
  o.bound = k;
  o.solver.timeoutSeconds = timeout;
  CheckReport r = run_check(f, o);
  if (r.model) {
    ++g_models;
    for (const auto& i : r.modelIssues) g_issues.push_back(r.formula + ": " + i);
  }
  return r;
}

bool confirmed(const CheckReport& r) {
  return r.verdict == CheckReport::Verdict::Sat && r.oracleAccepted.value_or(false) && r.modelIssues.empty();
}

std::string verdict_note(const CheckReport& r) {
  std::string n = to_string(r.verdict);
  if (r.oracleAccepted) n += *r.oracleAccepted ? ", oracle accepted" : ", oracle REJECTED";
  if (!r.detail.empty()) n += " (" + r.detail.substr(0, 200) + ")";
  return n;
}

/// p holds exactly at the multiples of 100 within the listed witness.
bool spikes_shape(const Signal& w, std::string& why) {
  const auto& bps = w.breakpoints();
  const Rational end = bps.back().t;
  std::set<Rational> seen;
  for (const auto& b : bps) {
    if (b.interval.count("p")) {
      why = "p holds on an open interval after t=" + to_string(b.t);
      return false;
    }
    if (b.point.count("p")) {
      Rational q = b.t / 100;
      q.canonicalize();
      if (q.get_den() != 1) {
        why = "p holds at t=" + to_string(b.t);
        return false;
      }
      seen.insert(b.t);
    }
  }
  for (Rational t = 0; t <= end; t += 100)
    if (!seen.count(t)) {
      why = "p missing at t=" + to_string(t);
      return false;
    }
  return true;
}

/// Some instant in (t-1, t+1) other than t carries q.
bool q_nearby(const Signal& w, const Rational& t) {
  std::set<Rational> cand;
  const Rational lo = t - 1 < 0 ? Rational(0) : t - 1, hi = t + 1;
  const Signal listed = w.unrolled(hi + 1);
  for (const auto& b : listed.breakpoints())
    if (b.t > lo && b.t < hi) cand.insert(b.t);
  cand.insert(lo);
  cand.insert(hi);
  cand.insert(t);
  std::vector<Rational> pts(cand.begin(), cand.end());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i] != t && pts[i] > t - 1 && pts[i] < hi && w.holds("q", pts[i])) return true;
    if (i + 1 < pts.size() && w.holds("q", (pts[i] + pts[i + 1]) / 2)) return true;
  }
  return false;
}

Outcome criterion1() {
  const auto t0 = Clock::now();
  auto r = check(parse_mitl(read_fixture("spikes.mitl")), Mode::General, 10, 900);
  Outcome o;
  o.note = verdict_note(r) + ", " + fmt(since(t0));
  if (!confirmed(r)) return o;
  std::string why;
  o.pass = spikes_shape(*r.witness, why) && since(t0) <= 900;
  if (!why.empty()) o.note += ", " + why;
  else o.note += ", p exactly at multiples of 100 up to t=" + to_string(r.witness->breakpoints().back().t);
  return o;
}

Outcome criterion2() {
  const auto t0 = Clock::now();
  const Formula f = land(parse_mitl(read_fixture("spikes.mitl")), parse_mitl(read_fixture("spikes_past.mitl")));
  auto r = check(f, Mode::General, 10, 1800);
  Outcome o;
  o.note = verdict_note(r) + ", " + fmt(since(t0));
  if (!confirmed(r)) return o;
  std::size_t occurrences = 0;
  for (const auto& b : r.witness->breakpoints()) {
    if (!b.point.count("p")) continue;
    ++occurrences;
    if (!q_nearby(*r.witness, b.t)) {
      o.note += ", no q within 1 of p at t=" + to_string(b.t);
      return o;
    }
  }
  o.pass = occurrences > 0 && since(t0) <= 1800;
  o.note += ", " + std::to_string(occurrences) + " p occurrences each with q within 1";
  return o;
}

Outcome criterion3() {
  const double budget = env_seconds("MITLSAT_STRETCH_BUDGET", 7200);
  const auto t0 = Clock::now();
  const Formula f = land(land(parse_mitl(read_fixture("spikes.mitl")), parse_mitl(read_fixture("spikes_past.mitl"))),
                         parse_mitl(read_fixture("spikes_past_q_per.mitl")));
  auto r = check(f, Mode::General, 20, budget);
  Outcome o;
  o.pass = confirmed(r);
  o.note = "stretch goal, budget " + fmt(budget) + ": " + verdict_note(r) + ", " + fmt(since(t0));
  return o;
}

Outcome criterion4() {
  std::mt19937 rng(20240517);
  FormulaGenOptions fo;
  fo.maxDepth = 3;
  fo.maxConstant = 5;
  fo.props = {"p", "q"};
  int formulas = 0, checks = 0, sat = 0, noModel = 0, inconclusive = 0, rejected = 0, errors = 0;
  std::string firstBad;
  while (formulas < 100) {
    const Formula f = random_formula(rng, fo, 1 + static_cast<int>(rng() % 3));
    try {
      TranslateOptions t;
      translate(normalize(f, Mode::General), t);
    } catch (const std::exception&) {
      continue;
    }
    ++formulas;
    std::vector<Mode> modes{Mode::General};
    try {
      normalize(f, Mode::Lcro);
      modes.push_back(Mode::Lcro);
    } catch (const NormalizeError&) {
    }
    for (Mode m : modes) {
      ++checks;
      auto r = check(f, m, 5, 30);
      switch (r.verdict) {
      case CheckReport::Verdict::Sat: ++sat; break;
      case CheckReport::Verdict::NoModelAtBound: ++noModel; break;
      case CheckReport::Verdict::Unknown:
      case CheckReport::Verdict::Timeout: ++inconclusive; break;
      case CheckReport::Verdict::Error: ++errors; break;
      }
      if (r.exitCode() == 4) {
        ++rejected;
        if (firstBad.empty()) firstBad = f.str() + " (" + to_string(m) + ")";
      }
      if (r.verdict == CheckReport::Verdict::Error && firstBad.empty())
        firstBad = f.str() + ": " + r.detail.substr(0, 200);
    }
  }
  Outcome o;
  o.pass = formulas >= 100 && rejected == 0 && errors == 0 && sat > 0;
  o.note = std::to_string(formulas) + " formulas, " + std::to_string(checks) + " checks: " + std::to_string(sat) +
           " sat (all oracle-confirmed unless noted), " + std::to_string(noModel) + " no-model, " +
           std::to_string(inconclusive) + " timeout/unknown, " + std::to_string(errors) + " errors, " +
           std::to_string(rejected) + " exit-4";
  if (!firstBad.empty()) o.note += "; first problem: " + firstBad;
  return o;
}

Formula random_prop_formula(std::mt19937& rng) {
  FormulaGenOptions fo;
  fo.props = {"p", "q", "r"};
  fo.maxDepth = 1;
  fo.maxConstant = 3;
  fo.past = false;
  return random_formula(rng, fo, static_cast<int>(rng() % 2));
}

Outcome criterion5() {
  std::mt19937 rng(515);
  SignalGenOptions general, lcro;
  general.resolution = lcro.resolution = 4;
  lcro.singular = 0;
  std::uniform_int_distribution<std::uint64_t> c(0, 5);
  std::bernoulli_distribution coin(0.5);
  const TimeInterval unboundedOpen = TimeInterval::unbounded(0, true);
  // Per case: literal rewrite disagreements on general and on l.c.r.o. signals,
  // normalizer disagreements on general signals.
  int literalGeneral[3] = {0, 0, 0}, literalLcro[3] = {0, 0, 0}, normalized[3] = {0, 0, 0};
  std::string firstBad;
  for (int kase = 0; kase < 3; ++kase) {
    for (int pairs = 0; pairs < 200;) {
      const std::uint64_t a = kase == 2 ? 0 : 1 + c(rng) % 4;
      const std::uint64_t b = a + 1 + c(rng) % 3;
      const bool lowOpen = kase == 1 || (kase == 2 && coin(rng));
      const TimeInterval I =
          coin(rng) ? TimeInterval::unbounded(a, lowOpen) : TimeInterval::make(a, b, lowOpen, coin(rng));
      const Formula phi = random_prop_formula(rng), psi = random_prop_formula(rng);
      const Formula lhs = until(phi, psi, I);
      Formula rhs;
      if (kase == 2) {
        rhs = land(until(phi, psi, TimeInterval::unbounded(0, I.lowerOpen())), eventually(psi, I));
      } else {
        const TimeInterval g = TimeInterval::make(0, a, false, kase == 0);
        rhs = land(globally(until(phi, psi, unboundedOpen), g), eventually(psi, I));
      }
      const Formula norm = normalize(lhs, Mode::General);
      const Signal s = random_signal(rng, general), sl = random_signal(rng, lcro);
      for (int j = 0; j < 4 && pairs < 200; ++j, ++pairs) {
        Rational t(static_cast<long>(rng() % 48), 4);
        t.canonicalize();
        const bool l = eval_at(s, lhs, t);
        if (l != eval_at(s, rhs, t)) {
          ++literalGeneral[kase];
          if (firstBad.empty()) firstBad = lhs.str() + " at t=" + to_string(t) + " on " + s.toJson().dump();
        }
        if (eval_at(sl, lhs, t) != eval_at(sl, rhs, t)) ++literalLcro[kase];
        if (l != eval_at(s, norm, t)) ++normalized[kase];
      }
    }
  }
  Outcome o;
  o.pass = true;
  for (int k = 0; k < 3; ++k) {
    o.pass = o.pass && literalGeneral[k] == 0 && literalLcro[k] == 0 && normalized[k] == 0;
    o.note += "case (" + std::to_string(k + 1) + "): " + std::to_string(literalGeneral[k]) + "/200 general, " +
              std::to_string(literalLcro[k]) + "/200 l.c.r.o. disagreements of the stated rewrite, " +
              std::to_string(normalized[k]) + "/200 of the normalizer's rewrite; ";
  }
  if (!firstBad.empty()) o.note += "first: " + firstBad;
  return o;
}

/// 2 clocks per distinct subformula plus 2*ceil(b/(b-a)) per bounded eventually with a > 0.
std::size_t expected_clocks(const Formula& f) {
  std::unordered_set<Formula, FormulaHash> seen;
  std::size_t aux = 0;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (!seen.insert(g).second) continue;
    if (g.op() == MitlOp::Eventually && g.interval().lower() > 0 && g.interval().upper()) {
      const std::uint64_t a = g.interval().lower(), b = *g.interval().upper();
      aux += 2 * ((b + (b - a) - 1) / (b - a));
    }
    for (const auto& ch : g.children()) stack.push_back(ch);
  }
  return 2 * seen.size() + aux;
}

Outcome criterion6() {
  const char* fixture[] = {"F(2,3] p",
                           "p",
                           "!p",
                           "p & q",
                           "p U(0,inf) q",
                           "F(0,5] p",
                           "F(1,inf) p",
                           "F[1,2] p & F(3,5] q",
                           "G(0,inf) (p -> F(0,200) p)",
                           "p U[2,5) q",
                           "p U(1,4] q",
                           "G[0,inf) (p -> F(1,2] q)",
                           "F(4,5] (p | q)",
                           "!F(0,3] !p",
                           "F(1,3] F(2,3] p",
                           "p S(0,inf) q",
                           "P(0,2) p",
                           "F(10,12] p & F(1,12] q",
                           "G[0,inf) ((G(0,100) !p -> G(100,200) !p) & (p -> F(0,200) p)) & p & G(0,100) !p",
                           "(p U(0,2] q) | F(3,7] r"};
  int bad = 0;
  std::string firstBad, f23;
  for (const char* text : fixture) {
    const Formula n = normalize(parse_mitl(text), Mode::General);
    const std::size_t got = translate(n).allocation.total(), want = expected_clocks(n);
    if (std::string(text) == "F(2,3] p") f23 = std::to_string(got);
    if (got != want) {
      ++bad;
      if (firstBad.empty()) firstBad = std::string(text) + ": " + std::to_string(got) + " vs " + std::to_string(want);
    }
  }
  Outcome o;
  o.pass = bad == 0 && f23 == "10";
  o.note = "20 formulas, " + std::to_string(bad) + " mismatches, F(2,3] p -> " + f23 + " clocks";
  if (!firstBad.empty()) o.note += "; first: " + firstBad;
  return o;
}

Outcome criterion7() {
  Outcome o;
  o.pass = g_models > 0 && g_issues.empty();
  o.note = std::to_string(g_models) + " decoded models validated, " + std::to_string(g_issues.size()) + " violations";
  if (!g_issues.empty()) o.note += "; first: " + g_issues.front();
  return o;
}

Outcome criterion8() {
  Outcome o;
  o.pass = true;
  double worst = 0;
  for (const char* text : {"p & !p", "F(0,5] p & !F(0,5] p"}) {
    for (std::size_t k : {1, 5, 10}) {
      const auto t0 = Clock::now();
      auto r = check(parse_mitl(text), Mode::General, k, 10);
      const double s = since(t0);
      worst = std::max(worst, s);
      if (r.verdict != CheckReport::Verdict::NoModelAtBound || s >= 10) {
        o.pass = false;
        o.note += std::string(text) + " k=" + std::to_string(k) + ": " + verdict_note(r) + "; ";
      }
    }
  }
  o.note += "6 checks, slowest " + fmt(worst);
  return o;
}

/// Maximal stretches where the truth signal holds, as [start, end) of times;
/// the last stretch is dropped when it reaches the end of the listed window.
std::vector<std::pair<Rational, Rational>> true_stretches(const TruthSignal& ts) {
  std::vector<std::pair<Rational, Rational>> out;
  std::optional<Rational> open;
  for (std::size_t i = 0; i < ts.times.size(); ++i) {
    const bool before = i > 0 && ts.onInterval[i - 1];
    const bool now = ts.atPoint[i] || ts.onInterval[i];
    if (!before && now) open = ts.times[i];
    if (open && !ts.onInterval[i]) {
      out.emplace_back(*open, ts.times[i]);
      open.reset();
    }
  }
  return out;
}

Outcome criterion9() {
  std::mt19937 rng(909);
  SignalGenOptions so;
  so.singular = 0;
  so.resolution = 4;
  const char* preserving[] = {"!p", "p & q", "p U(0,inf) q", "F(1,2] p", "F[1,3] q", "F(1,inf) p", "F[2,inf) q",
                              "F(0,2] p", "F[0,1] (p & !q)"};
  const char* bounded[] = {"F(1,2) p", "F[1,3] q", "F(0,2] p", "F(2,5) (p | q)", "F[1,2] !p"};
  int lcroBad = 0, gapBad = 0, stretches = 0;
  std::string firstBad;
  for (int n = 0; n < 50; ++n) {
    const Signal s = random_signal(rng, so);
    for (const char* text : preserving) {
      const TruthSignal ts = truth_signal(s, parse_mitl(text)).expanded(Rational(40));
      for (std::size_t i = 0; i < ts.times.size(); ++i)
        if (ts.atPoint[i] != ts.onInterval[i]) {
          ++lcroBad;
          if (firstBad.empty()) firstBad = std::string(text) + " not l.c.r.o. at t=" + to_string(ts.times[i]);
          break;
        }
    }
    for (const char* text : bounded) {
      const Formula f = parse_mitl(text);
      const Rational ba = Rational(*f.interval().upper() - f.interval().lower());
      for (const auto& [start, end] : true_stretches(truth_signal(s, f).expanded(Rational(40)))) {
        if (start == 0) continue;
        ++stretches;
        if (end - start < ba) {
          ++gapBad;
          if (firstBad.empty()) firstBad = std::string(text) + " up at " + to_string(start) + ", down at " + to_string(end);
        }
      }
    }
  }
  Outcome o;
  o.pass = lcroBad == 0 && gapBad == 0 && stretches > 0;
  o.note = "50 signals: " + std::to_string(lcroBad) + " non-l.c.r.o. truth signals, " + std::to_string(stretches) +
           " rise/fall pairs, " + std::to_string(gapBad) + " closer than b-a";
  if (!firstBad.empty()) o.note += "; first: " + firstBad;
  return o;
}

} // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  struct Criterion {
    int id;
    const char* title;
    Outcome (*run)();
  };
  const Criterion all[] = {
      {1, "Spikes sat at bound 10, witness shape", criterion1},
      {2, "Spikes & SpikesPast sat at bound 10", criterion2},
      {3, "Spikes & SpikesPast & SpikesPastqPer sat at bound 20", criterion3},
      {4, "soundness suite", criterion4},
      {5, "until decomposition equivalences", criterion5},
      {6, "clock-count law", criterion6},
      {7, "discrete-model invariants", criterion7},
      {8, "no-model detection", criterion8},
      {9, "l.c.r.o. preservation and rise/fall distance", criterion9},
  };
  int failed = 0;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.note = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << " | " << c.title << " | " << o.note
              << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
