#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "invroot/catalog.hpp"
#include "invroot/solver.hpp"

namespace invroot::cli {

/// Reports keep insertion order so text and JSON output read the same way.
using Json = nlohmann::ordered_json;

enum class Command { kSolve, kVerify, kCompare };

std::string_view to_string(Command c);

/// Everything one solve/verify/compare run needs. Exactly one of
/// `expression` and `family` is set.
struct JobSpec {
  Command command = Command::kSolve;
  std::optional<std::string> expression;
  std::optional<catalog::Family> family;
  std::vector<double> params;      // empty: the family defaults
  std::optional<Interval> domain;  // defaults to the family domain
  std::optional<Interval> bracket;
  HPolicy h = HPolicy::automatic();
  Tolerance tol{};
  int samples = 100;
  unsigned long long seed = 42;
};

/// Exit status plus a machine-readable report.
struct JobOutcome {
  int exit_code = 0;
  Json report;
};

/// Tolerance used when --tol is absent; INVROOT_DEFAULT_TOL (a real > 0)
/// overrides both abs_tol and rel_tol. Error(kSyntax) on a malformed value.
Tolerance default_tolerance(const char* env_value);

/// Human-readable function label for reports.
std::string describe_source(const JobSpec& job);

/// Model for the job's function source; checks bracket inside domain.
FunctionModel build_model(const JobSpec& job);

JobOutcome run_solve(const JobSpec& job);
JobOutcome run_verify(const JobSpec& job);
JobOutcome run_compare(const JobSpec& job);
JobOutcome run_job(const JobSpec& job);

/// One batch line, e.g.
///   {"family": "log", "domain": [0.1, 10], "bracket": [0.2, 5]}
///   {"command": "verify", "function": "2*x - 4", "domain": [-5, 5], "samples": 50}
/// Keys: command, function | family + params, domain, bracket, h, tol, samples, seed.
/// Error(kSyntax) for malformed input.
JobSpec job_from_json(const Json& j, const Tolerance& default_tol);

/// Runs every non-blank line of a batch file. Results keep input order for any
/// thread count. exit_code is 0 only if every job succeeded, otherwise the
/// code of the first failing job.
JobOutcome run_batch_lines(const std::vector<std::string>& lines, const Tolerance& default_tol,
                           int threads);

/// Renders a report as aligned "key value" lines.
std::string render_text(const Json& report);

}  // namespace invroot::cli
