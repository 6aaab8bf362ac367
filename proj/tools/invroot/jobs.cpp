#include "invroot/jobs.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <random>
#include <thread>

#include <fmt/format.h>

#include "invroot/expr.hpp"
#include "invroot/identity.hpp"

namespace invroot::cli {

std::string_view to_string(Command c) {
  switch (c) {
    case Command::kSolve: return "solve";
    case Command::kVerify: return "verify";
    case Command::kCompare: return "compare";
  }
  return "unknown";
}

namespace {

constexpr double kVerifyThreshold = 1e-8;
constexpr int kSweepPoints = 20;

Json interval_json(const Interval& i) { return Json::array({i.lo(), i.hi()}); }

// NaN and infinities have no JSON spelling.
Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json result_json(const RootResult& r) {
  Json j;
  j["h_used"] = r.h_used;
  j["root"] = r.root;
  j["residual_at_root"] = r.residual_at_root;
  j["f_at_root"] = r.f_at_root;
  j["iterations"] = r.iterations;
  j["spurious_filtered"] = r.spurious_filtered;
  j["method"] = std::string(to_string(r.method));
  return j;
}

Json outcome_json(const MethodOutcome& o) {
  if (o.ok()) {
    Json j = result_json(*o.result);
    j["status"] = "ok";
    return j;
  }
  Json j;
  j["status"] = std::string(to_string(*o.error));
  j["error"] = o.message;
  j["exit_code"] = exit_code_for(*o.error);
  return j;
}

JobOutcome failure(Json report, const Error& e) {
  report["status"] = std::string(to_string(e.kind()));
  report["error"] = e.what();
  const int code = exit_code_for(e.kind());
  report["exit_code"] = code;
  return {code, std::move(report)};
}

Json header(const JobSpec& job) {
  Json r;
  r["command"] = std::string(to_string(job.command));
  r["function"] = describe_source(job);
  return r;
}

const Interval& require_bracket(const JobSpec& job) {
  if (!job.bracket) {
    throw Error(ErrorKind::kSyntax, fmt::format("{} requires a bracket", to_string(job.command)));
  }
  return *job.bracket;
}

template <typename Body>
JobOutcome guarded(const JobSpec& job, Body&& body) {
  Json report = header(job);
  try {
    return body(report);
  } catch (const Error& e) {
    return failure(std::move(report), e);
  } catch (const std::exception& e) {
    report["status"] = "internal_error";
    report["error"] = e.what();
    report["exit_code"] = 5;
    return {5, std::move(report)};
  }
}

}  // namespace

Tolerance default_tolerance(const char* env_value) {
  Tolerance tol;
  if (env_value == nullptr || *env_value == '\0') return tol;
  const std::string_view text(env_value);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !(value > 0.0) ||
      !std::isfinite(value)) {
    throw Error(ErrorKind::kSyntax,
                fmt::format("INVROOT_DEFAULT_TOL must be a real > 0, got '{}'", text));
  }
  tol.abs_tol = value;
  tol.rel_tol = value;
  return tol;
}

std::string describe_source(const JobSpec& job) {
  if (job.expression) return *job.expression;
  if (job.family) {
    std::string out(catalog::id(*job.family));
    if (!job.params.empty()) {
      out += "(";
      for (std::size_t i = 0; i < job.params.size(); ++i) {
        out += fmt::format("{}{:.17g}", i == 0 ? "" : ", ", job.params[i]);
      }
      out += ")";
    }
    return out;
  }
  return "";
}

FunctionModel build_model(const JobSpec& job) {
  if (job.expression.has_value() == job.family.has_value()) {
    throw Error(ErrorKind::kSyntax, "exactly one of --function and --family is required");
  }
  std::optional<FunctionModel> model;
  if (job.expression) {
    if (!job.domain) throw Error(ErrorKind::kSyntax, "--function requires --domain");
    model = expr::to_function_model(*job.expression, *job.domain);
  } else {
    catalog::FamilySpec spec = catalog::default_spec(*job.family);
    if (!job.params.empty()) spec.params = job.params;
    if (job.domain) spec.domain = *job.domain;
    model = catalog::instantiate(spec);
  }
  if (job.bracket && !model->domain().contains(*job.bracket)) {
    throw Error(ErrorKind::kInvalidArgument,
                fmt::format("bracket {} is not inside domain {}", job.bracket->to_string(),
                            model->domain().to_string()));
  }
  return *std::move(model);
}

JobOutcome run_solve(const JobSpec& job) {
  return guarded(job, [&](Json& report) {
    const Interval bracket = require_bracket(job);
    const FunctionModel model = build_model(job);
    report["domain"] = interval_json(model.domain());
    report["bracket"] = interval_json(bracket);
    const RootResult result = solve_identity(model, {bracket, job.h, job.tol, true});
    const Json fields = result_json(result);
    for (const auto& [key, value] : fields.items()) report[key] = value;
    report["status"] = "ok";
    report["exit_code"] = 0;
    return JobOutcome{0, std::move(report)};
  });
}

JobOutcome run_verify(const JobSpec& job) {
  return guarded(job, [&](Json& report) {
    if (job.samples < 1) {
      throw Error(ErrorKind::kInvalidArgument,
                  fmt::format("--samples must be >= 1, got {}", job.samples));
    }
    const FunctionModel model = build_model(job);
    const Interval& domain = model.domain();
    report["domain"] = interval_json(domain);
    const ValidationReport validation = validate_model(model);
    if (!validation.passed()) {
      throw Error(ErrorKind::kAdmissibility,
                  fmt::format("{} fails admissibility on {}: {}", model.name(),
                              domain.to_string(), validation.failures()));
    }

    std::mt19937_64 rng(job.seed);
    std::uniform_real_distribution<double> point(domain.lo(), domain.hi());
    double max_rectangle = 0.0;
    for (int i = 0; i < job.samples; ++i) {
      const double a = point(rng);
      const double b = point(rng);
      const double scale =
          1.0 + std::abs(b * model.value(b)) + std::abs(a * model.value(a));
      max_rectangle =
          std::max(max_rectangle, std::abs(rectangle_residual_full(model, a, b)) / scale);
    }

    // Offsets spanning two orders of magnitude toward the roomier side.
    double max_spread = 0.0;
    const int sweeps = std::min(job.samples, kSweepPoints);
    for (int i = 0; i < sweeps; ++i) {
      const double alpha = point(rng);
      const double room_right = domain.hi() - alpha;
      const double room_left = alpha - domain.lo();
      const double base = room_right >= room_left ? 0.9 * room_right : -0.9 * room_left;
      if (base == 0.0) continue;
      const double offsets[] = {base, 0.1 * base, 0.01 * base};
      const HSweep sweep = h_sweep(model, alpha, offsets);
      max_spread = std::max(
          max_spread, sweep.max_spread / (1.0 + std::abs(alpha * model.value(alpha))));
    }

    const bool ok = max_rectangle <= kVerifyThreshold && max_spread <= kVerifyThreshold;
    report["samples"] = job.samples;
    report["max_rectangle_residual"] = max_rectangle;
    report["max_h_spread"] = max_spread;
    report["threshold"] = kVerifyThreshold;
    report["status"] = ok ? "ok" : "identity_violation";
    report["exit_code"] = ok ? 0 : 5;
    return JobOutcome{ok ? 0 : 5, std::move(report)};
  });
}

JobOutcome run_compare(const JobSpec& job) {
  return guarded(job, [&](Json& report) {
    const Interval bracket = require_bracket(job);
    const FunctionModel model = build_model(job);
    report["domain"] = interval_json(model.domain());
    report["bracket"] = interval_json(bracket);
    const ComparisonReport cmp = compare_methods(model, {bracket, job.h, job.tol, true});
    report["identity"] = outcome_json(cmp.identity);
    report["oracle"] = outcome_json(cmp.oracle);
    report["difference"] = number_or_null(cmp.difference);
    report["agree"] = cmp.agree;

    int code = 0;
    std::string status = "ok";
    if (!cmp.identity.ok()) {
      code = exit_code_for(*cmp.identity.error);
      status = std::string(to_string(*cmp.identity.error));
    } else if (!cmp.oracle.ok()) {
      code = exit_code_for(*cmp.oracle.error);
      status = std::string(to_string(*cmp.oracle.error));
    } else if (!cmp.agree) {
      code = 5;
      status = "disagree";
    }
    report["status"] = status;
    report["exit_code"] = code;
    return JobOutcome{code, std::move(report)};
  });
}

JobOutcome run_job(const JobSpec& job) {
  switch (job.command) {
    case Command::kSolve: return run_solve(job);
    case Command::kVerify: return run_verify(job);
    case Command::kCompare: return run_compare(job);
  }
  return run_solve(job);
}

namespace {

[[noreturn]] void malformed(const std::string& why) { throw Error(ErrorKind::kSyntax, why); }

double number_field(const Json& j, const char* key) {
  if (!j.is_number()) malformed(fmt::format("'{}' must be a number", key));
  return j.get<double>();
}

Interval interval_field(const Json& j, const char* key) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    malformed(fmt::format("'{}' must be an array of two numbers", key));
  }
  return Interval(j[0].get<double>(), j[1].get<double>());
}

}  // namespace

JobSpec job_from_json(const Json& j, const Tolerance& default_tol) {
  if (!j.is_object()) malformed("job must be a JSON object");
  JobSpec job;
  job.tol = default_tol;
  for (const auto& [key, value] : j.items()) {
    if (key == "command") {
      const std::string c = value.is_string() ? value.get<std::string>() : "";
      if (c == "solve") {
        job.command = Command::kSolve;
      } else if (c == "verify") {
        job.command = Command::kVerify;
      } else if (c == "compare") {
        job.command = Command::kCompare;
      } else {
        malformed("'command' must be one of solve, verify, compare");
      }
    } else if (key == "function") {
      if (!value.is_string()) malformed("'function' must be a string");
      job.expression = value.get<std::string>();
    } else if (key == "family") {
      if (!value.is_string()) malformed("'family' must be a string");
      job.family = catalog::family_from_id(value.get<std::string>());
      if (!job.family) malformed(fmt::format("unknown family '{}'", value.get<std::string>()));
    } else if (key == "params") {
      if (!value.is_array()) malformed("'params' must be an array of numbers");
      for (const auto& p : value) job.params.push_back(number_field(p, "params"));
    } else if (key == "domain") {
      job.domain = interval_field(value, "domain");
    } else if (key == "bracket") {
      job.bracket = interval_field(value, "bracket");
    } else if (key == "h") {
      if (value.is_string() && value.get<std::string>() == "auto") {
        job.h = HPolicy::automatic();
      } else {
        job.h = HPolicy::fixed(number_field(value, "h"));
      }
    } else if (key == "tol") {
      const double t = number_field(value, "tol");
      job.tol.abs_tol = t;
      job.tol.rel_tol = t;
    } else if (key == "samples") {
      if (!value.is_number_integer()) malformed("'samples' must be an integer");
      job.samples = value.get<int>();
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) malformed("'seed' must be a non-negative integer");
      job.seed = value.get<unsigned long long>();
    } else {
      malformed(fmt::format("unknown key '{}'", key));
    }
  }
  if (job.expression.has_value() == job.family.has_value()) {
    malformed("exactly one of 'function' and 'family' is required");
  }
  if (job.command != Command::kVerify && !job.bracket) {
    malformed(fmt::format("'{}' requires 'bracket'", to_string(job.command)));
  }
  return job;
}

JobOutcome run_batch_lines(const std::vector<std::string>& lines, const Tolerance& default_tol,
                           int threads) {
  struct Entry {
    std::size_t line;
    const std::string* text;
  };
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].find_first_not_of(" \t\r\n") != std::string::npos) {
      entries.push_back({i + 1, &lines[i]});
    }
  }

  std::vector<JobOutcome> outcomes(entries.size());
  auto execute = [&](std::size_t k) {
    Json parsed;
    try {
      parsed = Json::parse(*entries[k].text);
      outcomes[k] = run_job(job_from_json(parsed, default_tol));
    } catch (const Json::exception& e) {
      Json r;
      r["status"] = std::string(to_string(ErrorKind::kSyntax));
      r["error"] = fmt::format("malformed JSON: {}", e.what());
      r["exit_code"] = 3;
      outcomes[k] = {3, std::move(r)};
    } catch (const Error& e) {
      Json r;
      r["status"] = std::string(to_string(e.kind()));
      r["error"] = e.what();
      r["exit_code"] = exit_code_for(e.kind());
      outcomes[k] = {exit_code_for(e.kind()), std::move(r)};
    }
  };

  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), entries.size());
  if (workers <= 1) {
    for (std::size_t k = 0; k < entries.size(); ++k) execute(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < entries.size(); k = next++) execute(k);
      });
    }
  }

  Json report;
  report["command"] = "batch";
  report["jobs"] = entries.size();
  Json results = Json::array();
  int exit_code = 0;
  std::size_t failed = 0;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    Json r;
    r["line"] = entries[k].line;
    for (auto& [key, value] : outcomes[k].report.items()) r[key] = value;
    results.push_back(std::move(r));
    if (outcomes[k].exit_code != 0) {
      ++failed;
      if (exit_code == 0) exit_code = outcomes[k].exit_code;
    }
  }
  report["failed"] = failed;
  if (entries.empty()) report["warning"] = "batch file contains no jobs";
  report["status"] = exit_code == 0 ? "ok" : "failed";
  report["exit_code"] = exit_code;
  report["results"] = std::move(results);
  return {exit_code, std::move(report)};
}

namespace {

void render_into(const Json& value, const std::string& prefix, std::string& out) {
  if (value.is_object()) {
    for (const auto& [key, child] : value.items()) {
      render_into(child, prefix.empty() ? key : prefix + "." + key, out);
    }
    return;
  }
  std::string text;
  if (value.is_number_float()) {
    text = fmt::format("{:.17g}", value.get<double>());
  } else if (value.is_string()) {
    text = value.get<std::string>();
  } else if (value.is_array() && value.size() == 2 && value[0].is_number()) {
    text = fmt::format("[{:.17g}, {:.17g}]", value[0].get<double>(), value[1].get<double>());
  } else if (value.is_array()) {
    for (std::size_t i = 0; i < value.size(); ++i) {
      render_into(value[i], fmt::format("{}[{}]", prefix, i), out);
    }
    return;
  } else {
    text = value.dump();
  }
  out += fmt::format("{:<24} {}\n", prefix, text);
}

}  // namespace

std::string render_text(const Json& report) {
  std::string out;
  render_into(report, "", out);
  return out;
}

}  // namespace invroot::cli
