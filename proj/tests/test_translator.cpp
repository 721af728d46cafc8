#include <doctest.h>

#include "mitl/normalize.hpp"
#include "mitl/parser.hpp"
#include "mitl/translator.hpp"
#include "support/generators.hpp"
#include "support/pinned.hpp"

#include <random>

using namespace mitl;
using namespace mitl::testing;

namespace {

TranslationResult describe(const std::string& text, Mode mode) {
  TranslateOptions o;
  o.mode = mode;
  o.assertRoot = false;
  return translate(normalize(parse_mitl(text), mode), o);
}

Signal fixed_signal(std::vector<std::tuple<const char*, std::set<std::string>, std::set<std::string>>> bps,
                    std::size_t tail, const char* period) {
  std::vector<Breakpoint> v;
  for (auto& [t, pt, iv] : bps) v.push_back({parse_rational(t), pt, iv});
  return Signal(std::move(v), tail, parse_rational(period));
}

void expect_exact(const TranslationResult& tr, const Signal& s, std::size_t maxK = 80) {
  auto r = pinned_solve(tr, s, maxK);
  INFO("signal: " << s.toJson().dump());
  INFO("k = " << r.k << " " << r.detail);
  REQUIRE(r.status != PinnedResult::Status::Skipped);
  REQUIRE(r.status == PinnedResult::Status::Solved);
  for (const auto& m : r.mismatches) INFO(m);
  CHECK(r.mismatches.empty());
  CHECK(r.issues.empty());
  CHECK_FALSE(r.evaluatorRejects);
  CHECK(r.upSingular.empty());
}

const char* kShapes[] = {"F(1,2) p",      "F[1,2] p",     "F(1,2] p",    "F[1,2) p",      "F(0,2] p",
                         "F(0,2) p",      "F[0,2] p",     "F(1,inf) p",  "F[1,inf) p",    "F(0,inf) p",
                         "F[0,inf) p",    "p U(0,inf) q", "P(0,2) p",    "P[0,2] p",      "P(0,inf) p",
                         "P[0,inf) p",    "p S(0,inf) q", "!p & q",      "F(2,3] p",      "G(1,2) p",
                         "p U(1,2) q",    "p S(0,1) q",   "F(0,1) (p & !F(1,2) q)"};

} // namespace

TEST_CASE("translator: clock counts") {
  CHECK(describe("F(2,3] p", Mode::General).allocation.total() == 10);
  CHECK(describe("F(2,3] p", Mode::Lcro).allocation.total() == 10);
  CHECK(describe("p", Mode::General).allocation.total() == 2);
  CHECK(describe("F(0,3] p & q", Mode::General).allocation.total() == 8);
}

TEST_CASE("translator: errors and dump") {
  CHECK_THROWS_AS(describe("P(1,2) p", Mode::General), TranslationError);
  auto tr = describe("F(1,2) p", Mode::General);
  CHECK_THROWS_AS(auxclocks_constraint(tr.table, 0, tr.allocation, Mode::General), TranslationError);
  CHECK_NOTHROW(auxclocks_constraint(tr.table, 1, tr.allocation, Mode::General));
  const std::string d = dump(translate(normalize(parse_mitl("F(1,2) p"), Mode::General)));
  CHECK(d.find("root") != std::string::npos);
  CHECK(d.find("events [0]") != std::string::npos);
  CHECK(d.find("auxclocks [1]") != std::string::npos);
  CHECK(tr.scheme.atoms().size() == 4);
  CHECK(describe("F(1,2] p", Mode::Lcro).scheme.atoms() == std::vector<std::string>{"u0", "u1"});
}

TEST_CASE("translator: every operator shape is exact on fixed signals (general)") {
  const std::vector<Signal> signals = {
      fixed_signal({{"0", {"p"}, {}}, {"1", {}, {}}}, 1, "1"),
      fixed_signal({{"0", {}, {"p"}}, {"1/2", {"p", "q"}, {"q"}}, {"3/2", {}, {"p"}}, {"2", {"q"}, {}}}, 2, "3/2"),
      fixed_signal({{"0", {"p"}, {}}, {"1", {"p"}, {}}, {"2", {}, {}}}, 2, "5/2"),
      fixed_signal({{"0", {}, {}}, {"1/2", {}, {"p", "q"}}, {"1", {"p"}, {}}, {"2", {}, {"q"}}}, 1, "2"),
  };
  for (const char* text : kShapes) {
    auto tr = describe(text, Mode::General);
    for (const auto& s : signals) {
      INFO(text);
      expect_exact(tr, s);
    }
  }
}

TEST_CASE("translator: every operator shape is exact on fixed signals (lcro)") {
  const std::vector<Signal> signals = {
      fixed_signal({{"0", {"p"}, {"p"}}, {"1", {}, {}}}, 1, "1"),
      fixed_signal({{"0", {}, {}}, {"1/2", {"p", "q"}, {"p", "q"}}, {"3/2", {"p"}, {"p"}}, {"2", {"q"}, {"q"}}}, 2,
                   "3/2"),
  };
  for (const char* text : {"F(1,2] p", "F[1,2] p", "F(0,2] p", "F(1,inf) p", "F(0,inf) p", "p U(0,inf) q",
                           "!p & q", "F(2,3] p", "G[1,2] p"}) {
    Formula f = parse_mitl(text);
    auto n = normalize(f, Mode::Lcro);
    TranslateOptions o;
    o.mode = Mode::Lcro;
    o.assertRoot = false;
    auto tr = translate(n, o);
    for (const auto& s : signals) {
      INFO(text);
      expect_exact(tr, s);
    }
  }
}

namespace {

struct RandomRun {
  int solved = 0, skipped = 0;
};

RandomRun random_pinned(Mode mode, unsigned seed, int count) {
  std::mt19937 rng(seed);
  FormulaGenOptions fo;
  fo.props = {"p", "q"};
  fo.maxDepth = 2;
  fo.maxConstant = 3;
  SignalGenOptions so;
  so.props = {"p", "q"};
  so.maxPrefixSteps = 4;
  so.maxPeriodSteps = 4;
  if (mode == Mode::Lcro) so.singular = 0;
  RandomRun run;
  for (int n = 0; n < count;) {
    Formula f = random_formula(rng, fo, fo.maxDepth);
    std::optional<TranslationResult> tr;
    try {
      TranslateOptions o;
      o.mode = mode;
      o.assertRoot = false;
      tr.emplace(translate(normalize(f, mode), o));
    } catch (const NormalizeError&) {
      continue;
    } catch (const TranslationError&) {
      continue;
    }
    ++n;
    Signal s = random_signal(rng, so);
    auto r = pinned_solve(*tr, s, 60);
    INFO("formula: " << f.str());
    INFO("signal: " << s.toJson().dump());
    INFO("k = " << r.k << " " << r.detail);
    if (r.status == PinnedResult::Status::Skipped && r.detail.empty()) {
      ++run.skipped;
      continue;
    }
    CHECK(r.status == PinnedResult::Status::Solved);
    if (r.status != PinnedResult::Status::Solved) continue;
    ++run.solved;
    for (const auto& m : r.mismatches) INFO(m);
    CHECK(r.mismatches.empty());
    CHECK(r.issues.empty());
    CHECK_FALSE(r.evaluatorRejects);
    CHECK(r.upSingular.empty());
  }
  return run;
}

} // namespace

TEST_CASE("translator: random formulas are exact on random signals (general)") {
  auto run = random_pinned(Mode::General, 2024, 40);
  MESSAGE("solved " << run.solved << ", skipped " << run.skipped);
  CHECK(run.solved >= 30);
}

TEST_CASE("translator: random formulas are exact on random signals (lcro)") {
  auto run = random_pinned(Mode::Lcro, 99, 30);
  MESSAGE("solved " << run.solved << ", skipped " << run.skipped);
  CHECK(run.solved >= 20);
}
