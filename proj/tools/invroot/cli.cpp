#include "invroot/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "invroot/catalog.hpp"
#include "invroot/jobs.hpp"

namespace invroot::cli {
namespace {

constexpr int kUsageExit = 3;

struct Flags {
  std::string function;
  std::string family;
  std::vector<double> params;
  std::vector<double> domain;
  std::vector<double> bracket;
  std::string h = "auto";
  double tol = 0.0;
  int samples = 100;
  unsigned long long seed = 42;
  int threads = 1;
  std::string batch_path;
  bool json = false;
  bool quiet = false;
};

void add_function_options(CLI::App* cmd, Flags& flags) {
  auto* fn = cmd->add_option("--function", flags.function, "Expression in x, e.g. \"ln(x)\"");
  auto* fam = cmd->add_option("--family", flags.family,
                              "Catalog family: log, affine, exp-shift, cube-shift, reciprocal");
  fn->excludes(fam);
  cmd->add_option("--params", flags.params, "Family parameters")->expected(0, -1);
  cmd->add_option("--domain", flags.domain, "Domain endpoints <lo> <hi>")->expected(2);
}

void add_tolerance_options(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--h", flags.h, "Residual offset: a nonzero real or 'auto'");
  cmd->add_option("--tol", flags.tol, "Absolute and relative tolerance (> 0)");
}

JobSpec job_from_flags(Command command, const Flags& flags, const Tolerance& default_tol) {
  JobSpec job;
  job.command = command;
  if (!flags.function.empty()) job.expression = flags.function;
  if (!flags.family.empty()) {
    job.family = catalog::family_from_id(flags.family);
    if (!job.family) {
      throw Error(ErrorKind::kSyntax, fmt::format("unknown family '{}'", flags.family));
    }
  }
  if (job.expression.has_value() == job.family.has_value()) {
    throw Error(ErrorKind::kSyntax, "exactly one of --function and --family is required");
  }
  job.params = flags.params;
  if (!flags.domain.empty()) job.domain = Interval(flags.domain[0], flags.domain[1]);
  if (!flags.bracket.empty()) job.bracket = Interval(flags.bracket[0], flags.bracket[1]);
  if (flags.h != "auto") {
    double h = 0.0;
    std::istringstream in(flags.h);
    if (!(in >> h) || !in.eof()) {
      throw Error(ErrorKind::kSyntax, fmt::format("--h expects a real or 'auto', got '{}'", flags.h));
    }
    job.h = HPolicy::fixed(h);
  }
  job.tol = default_tol;
  if (flags.tol != 0.0) {
    job.tol.abs_tol = flags.tol;
    job.tol.rel_tol = flags.tol;
  }
  job.samples = flags.samples;
  job.seed = flags.seed;
  return job;
}

int emit(const JobOutcome& outcome, const Flags& flags, std::ostream& out, std::ostream& err) {
  if (flags.json) {
    out << outcome.report.dump() << '\n';
  } else if (flags.quiet) {
    if (outcome.exit_code == 0 && outcome.report.contains("root")) {
      out << fmt::format("{:.17g}\n", outcome.report["root"].get<double>());
    }
  } else {
    out << render_text(outcome.report);
  }
  if (outcome.exit_code != 0 && !flags.json && outcome.report.contains("error")) {
    err << "invroot: " << outcome.report["error"].get<std::string>() << '\n';
  }
  return outcome.exit_code;
}

int list_families(const Flags& flags, std::ostream& out) {
  Json all = Json::array();
  for (const auto& f : catalog::list_families()) {
    Json j;
    j["id"] = f.id;
    j["formula"] = f.formula;
    j["parameters"] = f.parameter_names;
    j["default_params"] = f.default_params;
    j["default_domain"] = Json::array({f.default_domain.lo(), f.default_domain.hi()});
    j["admissibility"] = f.admissibility;
    j["monotonicity"] = f.monotonicity;
    j["root"] = f.root;
    j["closed_forms"] = f.closed_forms;
    all.push_back(std::move(j));
  }
  if (flags.json) {
    out << all.dump() << '\n';
    return 0;
  }
  for (const auto& j : all) {
    out << fmt::format("{:<12} {}\n", j["id"].get<std::string>(), j["formula"].get<std::string>());
    if (flags.quiet) continue;
    for (const char* key : {"admissibility", "monotonicity", "root", "closed_forms"}) {
      out << fmt::format("  {:<14} {}\n", key, j[key].get<std::string>());
    }
  }
  return 0;
}

int run_batch_file(const Flags& flags, const Tolerance& default_tol, std::ostream& out,
                   std::ostream& err) {
  std::ifstream in(flags.batch_path);
  if (!in) {
    err << "invroot: cannot open batch file '" << flags.batch_path << "'\n";
    return 4;
  }
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(std::move(line));
  const JobOutcome outcome = run_batch_lines(lines, default_tol, flags.threads);
  if (outcome.report.contains("warning")) {
    err << "invroot: warning: " << outcome.report["warning"].get<std::string>() << '\n';
  }
  if (flags.json) {
    out << outcome.report.dump() << '\n';
  } else {
    for (const auto& r : outcome.report["results"]) {
      std::string detail;
      if (r.contains("root") && r["status"] == "ok") {
        detail = fmt::format("root {:.17g}", r["root"].get<double>());
      } else if (r.contains("error")) {
        detail = r["error"].get<std::string>();
      }
      out << fmt::format("line {:<4} {:<20} exit {}  {}\n", r["line"].get<std::size_t>(),
                         r["status"].get<std::string>(), r["exit_code"].get<int>(), detail);
    }
    if (!flags.quiet) {
      out << fmt::format("{} job(s), {} failed\n", outcome.report["jobs"].get<std::size_t>(),
                         outcome.report["failed"].get<std::size_t>());
    }
  }
  return outcome.exit_code;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Root finding through the inverse-function integral identity", "invroot"};
  // `--h` is the residual offset, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.fallthrough();
  Flags flags;
  app.add_flag("--json", flags.json, "Machine-readable JSON output");
  app.add_flag("--quiet", flags.quiet, "Terse output");

  auto* solve = app.add_subcommand("solve", "Find a root by solving the identity residual");
  add_function_options(solve, flags);
  solve->add_option("--bracket", flags.bracket, "Bracket endpoints <lo> <hi>")
      ->expected(2)
      ->required();
  add_tolerance_options(solve, flags);

  auto* verify = app.add_subcommand("verify", "Check the rectangle identity and h-invariance");
  add_function_options(verify, flags);
  verify->add_option("--samples", flags.samples, "Random (a, b) pairs")->check(CLI::PositiveNumber);
  verify->add_option("--seed", flags.seed, "Sampling seed");
  verify->add_option("--tol", flags.tol, "Absolute and relative tolerance (> 0)");

  auto* compare = app.add_subcommand("compare", "Identity solver against plain bisection");
  add_function_options(compare, flags);
  compare->add_option("--bracket", flags.bracket, "Bracket endpoints <lo> <hi>")
      ->expected(2)
      ->required();
  add_tolerance_options(compare, flags);

  auto* batch = app.add_subcommand("batch", "Run one JSON job per line of a file");
  batch->add_option("path", flags.batch_path, "Batch file")->required();
  batch->add_option("--threads", flags.threads, "Concurrent jobs")->check(CLI::PositiveNumber);
  batch->add_option("--tol", flags.tol, "Default tolerance for jobs without 'tol'");

  auto* families = app.add_subcommand("families", "List the analytic function families");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kUsageExit;
  }

  try {
    Tolerance default_tol = default_tolerance(std::getenv("INVROOT_DEFAULT_TOL"));
    if (families->parsed()) return list_families(flags, out);
    if (batch->parsed()) {
      if (flags.tol != 0.0) default_tol.abs_tol = default_tol.rel_tol = flags.tol;
      return run_batch_file(flags, default_tol, out, err);
    }
    Command command = Command::kSolve;
    if (verify->parsed()) command = Command::kVerify;
    if (compare->parsed()) command = Command::kCompare;
    return emit(run_job(job_from_flags(command, flags, default_tol)), flags, out, err);
  } catch (const Error& e) {
    err << "invroot: " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"invroot"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace invroot::cli
