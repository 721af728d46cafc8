#pragma once

#include "mitl/formula.hpp"
#include "mitl/signal.hpp"

#include <random>
#include <string>
#include <vector>

namespace mitl::testing {

struct FormulaGenOptions {
  std::vector<std::string> props{"p", "q", "r"};
  int maxDepth = 3;
  std::uint64_t maxConstant = 4;
  bool past = true;
  bool unbounded = true;
};

inline TimeInterval random_interval(std::mt19937& rng, const FormulaGenOptions& o) {
  std::uniform_int_distribution<std::uint64_t> c(0, o.maxConstant);
  std::bernoulli_distribution coin(0.5);
  for (;;) {
    std::uint64_t a = c(rng);
    bool lo = coin(rng);
    if (o.unbounded && std::bernoulli_distribution(0.25)(rng)) return TimeInterval::unbounded(a, lo);
    std::uint64_t b = c(rng);
    if (b <= a) continue;
    return TimeInterval::make(a, b, lo, coin(rng));
  }
}

inline Formula random_formula(std::mt19937& rng, const FormulaGenOptions& o, int depth) {
  std::uniform_int_distribution<std::size_t> pick(0, o.props.size() - 1);
  if (depth <= 0 || std::bernoulli_distribution(0.2)(rng)) return prop(o.props[pick(rng)]);
  const int kinds = o.past ? 10 : 7;
  switch (std::uniform_int_distribution<int>(0, kinds - 1)(rng)) {
  case 0: return lnot(random_formula(rng, o, depth - 1));
  case 1: return land(random_formula(rng, o, depth - 1), random_formula(rng, o, depth - 1));
  case 2: return lor(random_formula(rng, o, depth - 1), random_formula(rng, o, depth - 1));
  case 3:
  case 4:
    return until(random_formula(rng, o, depth - 1), random_formula(rng, o, depth - 1), random_interval(rng, o));
  case 5: return eventually(random_formula(rng, o, depth - 1), random_interval(rng, o));
  case 6: return globally(random_formula(rng, o, depth - 1), random_interval(rng, o));
  case 7:
  case 8:
    return since(random_formula(rng, o, depth - 1), random_formula(rng, o, depth - 1), random_interval(rng, o));
  default: return past(random_formula(rng, o, depth - 1), random_interval(rng, o));
  }
}

struct SignalGenOptions {
  std::vector<std::string> props{"p", "q", "r"};
  /// Breakpoints are multiples of 1/resolution.
  int resolution = 2;
  int maxPrefixSteps = 8;
  int maxPeriodSteps = 6;
  /// Probability that point values differ from the following open interval.
  double singular = 0.3;
};

/// Random ultimately periodic signal. Breakpoints sit on a 1/resolution grid.
inline Signal random_signal(std::mt19937& rng, const SignalGenOptions& o) {
  std::bernoulli_distribution coin(0.5), sing(o.singular);
  auto randomSet = [&] {
    std::set<std::string> s;
    for (const auto& p : o.props)
      if (coin(rng)) s.insert(p);
    return s;
  };
  const int prefix = std::uniform_int_distribution<int>(0, o.maxPrefixSteps)(rng);
  const int period = std::uniform_int_distribution<int>(1, o.maxPeriodSteps)(rng);
  std::vector<Breakpoint> bps;
  std::size_t tail = 0;
  for (int step = 0; step < prefix + period; ++step) {
    if (step == prefix) tail = bps.size();
    else if (step > 0 && step != prefix && coin(rng)) continue;
    Breakpoint b;
    b.t = Rational(step, o.resolution);
    b.t.canonicalize();
    b.interval = randomSet();
    b.point = sing(rng) ? randomSet() : b.interval;
    bps.push_back(std::move(b));
  }
  Rational per(period, o.resolution);
  per.canonicalize();
  return Signal(std::move(bps), tail, per);
}

} // namespace mitl::testing
