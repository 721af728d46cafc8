#include "mitl/check.hpp"
#include "mitl/normalize.hpp"
#include "mitl/parser.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace mitl;

namespace {

constexpr int kUsage = 3;

std::string read_formula(const std::string& expr, const std::string& file) {
  if (!expr.empty() && !file.empty()) throw CLI::ValidationError("give either -e EXPR or a formula file, not both");
  if (!expr.empty()) return expr;
  if (file.empty()) throw CLI::ValidationError("no formula: give -e EXPR or a formula file");
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot read " + file);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Mode parse_mode(const std::string& m) { return m == "lcro" ? Mode::Lcro : Mode::General; }

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded satisfiability checking for MITL over continuous time"};
  app.require_subcommand(1);

  std::string expr, file, mode = "general", solver = SolverConfig::default_command();
  std::string emitSmt, emitCltloc, modelJson, jsonReport, horizon;
  std::size_t bound = 10, boundMax = 0;
  double timeout = 600;
  bool noOracle = false, restrict = false;

  auto formulaOptions = [&](CLI::App* sub) {
    sub->add_option("-e,--expr", expr, "Formula text");
    sub->add_option("file", file, "File holding the formula");
    sub->add_option("--mode", mode, "Signal semantics")->check(CLI::IsMember({"lcro", "general"}));
    sub->add_flag("--restrict-lcro", restrict, "General encoding limited to left-closed right-open signals");
  };

  auto* check = app.add_subcommand("check", "Search for a model up to the bound and validate it");
  formulaOptions(check);
  check->add_option("--bound", bound, "Lasso bound k")->check(CLI::PositiveNumber);
  check->add_option("--bound-max", boundMax, "Try bounds from --bound up to this one");
  check->add_option("--solver", solver, "Solver command; {file} is replaced by the script path (env " +
                                            std::string(kSolverEnv) + ")");
  check->add_option("--timeout", timeout, "Solver timeout in seconds")->check(CLI::PositiveNumber);
  check->add_option("--emit-smt", emitSmt, "Write the SMT-LIB script");
  check->add_option("--emit-cltloc", emitCltloc, "Write the CLTL-oc translation");
  check->add_option("--model-json", modelJson, "Write the decoded discrete model");
  check->add_option("--json", jsonReport, "Write the report as JSON ('-' for stdout)");
  check->add_option("--horizon", horizon, "Witness horizon (rational)");
  check->add_flag("--no-oracle", noOracle, "Skip oracle validation of the witness");

  auto* translate = app.add_subcommand("translate", "Print the CLTL-oc translation");
  formulaOptions(translate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  Formula f;
  try {
    f = parse_mitl(read_formula(expr, file));
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "parse: " << e.what() << "\n";
    return kUsage;
  }

  if (translate->parsed()) {
    try {
      TranslateOptions o;
      o.mode = parse_mode(mode);
      o.restrictLcro = restrict;
      std::cout << dump(mitl::translate(normalize(f, o.mode), o));
      return 0;
    } catch (const std::exception& e) {
      std::cerr << "translate: " << e.what() << "\n";
      return kUsage;
    }
  }

  CheckOptions opts;
  opts.mode = parse_mode(mode);
  opts.restrictLcro = restrict;
  opts.bound = bound;
  opts.boundMax = boundMax;
  opts.solver.command = solver;
  opts.solver.timeoutSeconds = timeout;
  opts.oracle = !noOracle;
  opts.emitSmt = emitSmt;
  opts.emitCltloc = emitCltloc;
  opts.modelJson = modelJson;
  if (!horizon.empty()) {
    try {
      opts.horizon = parse_rational(horizon);
    } catch (const std::exception& e) {
      std::cerr << "usage error: --horizon: " << e.what() << "\n";
      return kUsage;
    }
    if (*opts.horizon <= 0) {
      std::cerr << "usage error: --horizon must be positive\n";
      return kUsage;
    }
  }

  const CheckReport r = run_check(f, opts);
  std::cout << r.text();
  if (!jsonReport.empty()) {
    const std::string j = r.toJson().dump(2) + "\n";
    if (jsonReport == "-") {
      std::cout << j;
    } else {
      std::ofstream out(jsonReport);
      if (!out || !(out << j)) {
        std::cerr << "cannot write " << jsonReport << "\n";
        return kUsage;
      }
    }
  }
  if (r.exitCode() == 4) std::cerr << "SOUNDNESS FAILURE: the witness was rejected; see the report\n";
  return r.exitCode();
}
