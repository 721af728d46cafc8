#include "mitl/check.hpp"

#include "mitl/normalize.hpp"
#include "mitl/oracle.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

namespace mitl {

const char* to_string(CheckReport::Verdict v) {
  switch (v) {
  case CheckReport::Verdict::Sat: return "sat";
  case CheckReport::Verdict::NoModelAtBound: return "no-model-at-bound";
  case CheckReport::Verdict::Unknown: return "unknown";
  case CheckReport::Verdict::Timeout: return "timeout";
  case CheckReport::Verdict::Error: return "error";
  }
  return "?";
}

int CheckReport::exitCode() const {
  switch (verdict) {
  case Verdict::Sat: return (oracleAccepted && !*oracleAccepted) || !modelIssues.empty() ? 4 : 0;
  case Verdict::NoModelAtBound: return 1;
  case Verdict::Unknown:
  case Verdict::Timeout: return 2;
  case Verdict::Error: return 3;
  }
  return 3;
}

std::string CheckReport::text() const {
  std::ostringstream o;
  o << "formula: " << formula << "\n";
  o << "mode: " << to_string(mode) << ", bound: " << bound << ", subformulas: " << subformulas
    << ", clocks: " << clocks << "\n";
  o << "verdict: " << to_string(verdict) << "\n";
  if (!detail.empty()) o << "detail: " << detail << "\n";
  if (witness) {
    o << "witness (period " << to_string(witness->period()) << " from t=" << to_string(witness->tailStartTime())
      << "):\n";
    for (const auto& b : witness->breakpoints()) {
      o << "  t=" << to_string(b.t) << " point{";
      std::string sep;
      for (const auto& p : b.point) o << sep << p, sep = ",";
      o << "} interval{";
      sep.clear();
      for (const auto& p : b.interval) o << sep << p, sep = ",";
      o << "}\n";
    }
  }
  if (oracleAccepted) o << "oracle: " << (*oracleAccepted ? "accepted" : "REJECTED") << "\n";
  for (const auto& issue : modelIssues) o << "model invariant violated: " << issue << "\n";
  o << "timings:";
  for (const auto& [stage, s] : timings) o << " " << stage << "=" << s << "s";
  o << "\n";
  return o.str();
}

nlohmann::json CheckReport::toJson() const {
  nlohmann::json j{{"verdict", to_string(verdict)},
                   {"formula", formula},
                   {"mode", to_string(mode)},
                   {"bound", bound},
                   {"subformulas", subformulas},
                   {"clocks", clocks}};
  nlohmann::json t = nlohmann::json::object();
  for (const auto& [stage, s] : timings) t[stage] = s;
  j["timings"] = t;
  if (!detail.empty()) j["detail"] = detail;
  if (witness) j["witness"] = witness->toJson();
  if (oracleAccepted) j["oracle"] = *oracleAccepted ? "accepted" : "rejected";
  if (!modelIssues.empty()) j["modelIssues"] = modelIssues;
  return j;
}

namespace {

class Stopwatch {
public:
  explicit Stopwatch(CheckReport& r) : r_(r) {}
  template <class F> auto time(const std::string& stage, F&& f) {
    const auto start = std::chrono::steady_clock::now();
    struct Record {
      CheckReport& r;
      std::string stage;
      std::chrono::steady_clock::time_point start;
      ~Record() {
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        for (auto& [name, v] : r.timings)
          if (name == stage) {
            v += s;
            return;
          }
        r.timings.emplace_back(stage, s);
      }
    } rec{r_, stage, start};
    try {
      return f();
    } catch (const std::exception& e) {
      throw std::runtime_error(stage + ": " + e.what());
    }
  }

private:
  CheckReport& r_;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path);
}

} // namespace

CheckReport run_check(const Formula& f, const CheckOptions& opts) {
  CheckReport r;
  r.formula = f.str();
  r.mode = opts.mode;
  r.bound = opts.bound;
  Stopwatch sw(r);
  try {
    auto normalized = sw.time("normalize", [&] { return normalize(f, opts.mode); });
    TranslateOptions topts;
    topts.mode = opts.mode;
    topts.restrictLcro = opts.restrictLcro;
    auto tr = sw.time("translate", [&] { return translate(normalized, topts); });
    r.clocks = tr.allocation.total();
    r.subformulas = tr.table.size();
    if (!opts.emitCltloc.empty()) write_file(opts.emitCltloc, dump(tr));

    const std::size_t last = std::max(opts.bound, opts.boundMax);
    for (std::size_t k = opts.bound; k <= last; ++k) {
      r.bound = k;
      auto script = sw.time("encode", [&] { return encode(tr.formula, k, tr.scheme.atoms()); });
      const std::string text = script.text(true);
      if (!opts.emitSmt.empty()) write_file(opts.emitSmt, text);
      auto out = sw.time("solve", [&] { return run_solver(text, opts.solver); });
      switch (out.kind) {
      case SolverOutcome::Kind::NoModelAtBound:
        r.verdict = CheckReport::Verdict::NoModelAtBound;
        continue;
      case SolverOutcome::Kind::Unknown:
        r.verdict = CheckReport::Verdict::Unknown;
        r.detail = out.detail;
        return r;
      case SolverOutcome::Kind::TimedOut:
        r.verdict = CheckReport::Verdict::Timeout;
        r.detail = out.detail;
        return r;
      case SolverOutcome::Kind::SolverError:
        r.verdict = CheckReport::Verdict::Error;
        r.detail = "solver error (exit " + std::to_string(out.exitCode) + "): " + out.detail;
        return r;
      case SolverOutcome::Kind::Sat: break;
      }
      r.verdict = CheckReport::Verdict::Sat;
      r.model = sw.time("decode", [&] { return decode(script, out.model); });
      r.modelIssues = validate_model(*r.model, tr);
      if (!opts.modelJson.empty()) write_file(opts.modelJson, r.model->toJson().dump(2) + "\n");
      const Rational horizon = opts.horizon ? *opts.horizon : default_horizon(*r.model, cltloc::max_constant(tr.formula));
      r.witness = sw.time("build", [&] { return to_signal(*r.model, tr.scheme, horizon); });
      if (opts.oracle) r.oracleAccepted = sw.time("oracle", [&] { return holds(*r.witness, f); });
      return r;
    }
  } catch (const std::exception& e) {
    r.verdict = CheckReport::Verdict::Error;
    r.detail = e.what();
    r.model.reset();
    r.witness.reset();
    r.oracleAccepted.reset();
  }
  return r;
}

} // namespace mitl
