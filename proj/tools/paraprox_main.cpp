// Command-line front end: load a problem file, run the block iteration,
// check operator hypotheses, or validate a schedule.
//
// Exit codes: 0 converged / checks passed, 1 input error, 2 run did not
// converge, 3 checks failed.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "paraprox/engine.hpp"
#include "paraprox/monotone.hpp"
#include "paraprox/operators.hpp"
#include "paraprox/problem_io.hpp"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitNotConverged = 2;
constexpr int kExitChecksFailed = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw paraprox::ParseError("cannot open problem file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json check_report_json(const paraprox::CheckReport& report) {
  Json j;
  j["passed"] = report.passed;
  j["worst_violation"] = report.worst_violation;
  j["trials"] = report.trials;
  j["slack"] = report.slack;
  if (report.witness) {
    j["witness_x"] = report.witness->first.data();
    j["witness_y"] = report.witness->second.data();
  }
  return j;
}

struct RunFlags {
  std::optional<double> tol;
  std::optional<std::size_t> max_iter;
  std::optional<int> workers;
  std::optional<std::uint64_t> seed;
  std::string trace_path;
};

int do_run(const std::string& file, const RunFlags& flags) {
  paraprox::ProblemSpec spec = paraprox::parse_problem(read_file(file));
  if (flags.tol) spec.run.tol = *flags.tol;
  if (flags.max_iter) spec.run.max_iter = *flags.max_iter;
  if (flags.workers) spec.run.workers = *flags.workers;
  if (flags.seed) spec.checks.seed = *flags.seed;
  if (!flags.trace_path.empty() &&
      spec.run.trace_level == paraprox::TraceLevel::none) {
    spec.run.trace_level = paraprox::TraceLevel::residuals;
  }

  const auto op = paraprox::make_operator(spec);
  const paraprox::Schedule schedule =
      paraprox::make_schedule(spec, spec.run.max_iter);
  const paraprox::RunConfig config = paraprox::make_run_config(spec);
  const paraprox::BlockVector x0 = paraprox::initial_point(spec);

  // Claimed hypotheses are verified before the run unless explicitly
  // disabled in the file; a failed claim is reported, not fatal.
  std::vector<std::string> warnings;
  auto verify_claim = [&](bool claimed, const std::optional<bool>& enabled,
                          const char* name, auto checker) {
    if (!claimed || (enabled.has_value() && !*enabled)) return;
    paraprox::PairSampler sampler(op->partition(), spec.checks.seed);
    const paraprox::CheckReport report =
        checker(*op, sampler, spec.checks.trials, 1e-10);
    if (!report.passed) {
      warnings.push_back(std::string("claimed hypothesis ") + name +
                         " falsified by randomized check (worst violation " +
                         std::to_string(report.worst_violation) + ")");
      std::cerr << "warning: " << warnings.back() << "\n";
    }
  };
  verify_claim(op->claims_h2(), spec.checks.run_h2, "h2",
               [](const paraprox::FixedPointOperator& f,
                  paraprox::PairSampler& s, int t, double slack) {
                 return paraprox::check_h2(f, s, t, slack);
               });
  verify_claim(op->claims_h3(), spec.checks.run_h3, "h3",
               [](const paraprox::FixedPointOperator& f,
                  paraprox::PairSampler& s, int t, double slack) {
                 return paraprox::check_h3(f, s, t, slack);
               });

  paraprox::RunResult result = paraprox::run_general(*op, schedule, x0, config);
  warnings.insert(warnings.end(), result.warnings.begin(),
                  result.warnings.end());

  if (!flags.trace_path.empty()) {
    std::ofstream trace(flags.trace_path, std::ios::binary);
    if (!trace) {
      std::cerr << "error: cannot open trace file '" << flags.trace_path
                << "'\n";
      return kExitInputError;
    }
    paraprox::write_trace_csv(trace, result);
  }

  Json summary;
  summary["status"] = paraprox::to_string(result.status);
  summary["iterations"] = result.iterations;
  summary["final_point"] = result.final_point.data();
  if (std::isfinite(result.final_residual)) {
    summary["residual_max"] = result.final_residual;
  } else {
    summary["residual_max"] = nullptr;
  }
  summary["warnings"] = warnings;
  std::cout << summary.dump() << "\n";

  return result.status == paraprox::RunStatus::converged ? kExitOk
                                                         : kExitNotConverged;
}

int do_check(const std::string& file) {
  const paraprox::ProblemSpec spec = paraprox::parse_problem(read_file(file));
  const auto op = paraprox::make_operator(spec);

  Json out;
  bool all_passed = true;
  // The check subcommand runs both checkers unless the file disables one.
  if (spec.checks.run_h2.value_or(true)) {
    paraprox::PairSampler sampler(op->partition(), spec.checks.seed);
    const auto report =
        paraprox::check_h2(*op, sampler, spec.checks.trials, 1e-10);
    out["h2"] = check_report_json(report);
    all_passed = all_passed && report.passed;
  } else {
    out["h2"] = nullptr;
  }
  if (spec.checks.run_h3.value_or(true)) {
    paraprox::PairSampler sampler(op->partition(), spec.checks.seed);
    const auto report =
        paraprox::check_h3(*op, sampler, spec.checks.trials, 1e-10);
    out["h3"] = check_report_json(report);
    all_passed = all_passed && report.passed;
  } else {
    out["h3"] = nullptr;
  }
  std::cout << out.dump() << "\n";
  return all_passed ? kExitOk : kExitChecksFailed;
}

int do_validate_schedule(const std::string& file,
                         std::optional<std::size_t> window) {
  const paraprox::ProblemSpec spec = paraprox::parse_problem(read_file(file));
  const paraprox::Schedule schedule =
      paraprox::make_schedule(spec, spec.run.max_iter);
  const std::size_t effective_window = window.value_or(schedule.alpha());
  const paraprox::ValidationReport report =
      paraprox::validate_schedule(schedule, effective_window);

  Json out;
  out["delay_legal"] = report.delay_legal;
  out["fairness"] = report.fairness;
  out["delay_progress"] = report.delay_progress;
  out["h0_satisfied"] = report.h0_satisfied;
  if (report.full_update_count > 0) {
    out["h0_gap"] = report.h0_gap;
  } else {
    out["h0_gap"] = nullptr;
  }
  out["full_update_count"] = report.full_update_count;
  out["max_delay"] = report.max_delay;
  out["window"] = report.window;
  out["synchronous"] = schedule.synchronous();
  out["all_passed"] = report.all_passed();
  if (!report.detail.empty()) out["detail"] = report.detail;
  std::cout << out.dump() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block-parallel fixed-point solver"};
  app.require_subcommand(1);

  std::string file;
  RunFlags flags;

  CLI::App* run = app.add_subcommand("run", "Run the iteration on a problem file");
  run->add_option("file", file, "problem file (JSON)")->required();
  double tol_flag = 0.0;
  std::size_t max_iter_flag = 0;
  int workers_flag = 0;
  std::uint64_t seed_flag = 0;
  CLI::Option* tol_opt = run->add_option("--tol", tol_flag, "stopping tolerance");
  CLI::Option* iter_opt =
      run->add_option("--max-iter", max_iter_flag, "iteration limit");
  CLI::Option* workers_opt =
      run->add_option("--workers", workers_flag, "worker threads");
  CLI::Option* seed_opt =
      run->add_option("--seed", seed_flag, "seed for the claim checkers");
  run->add_option("--trace", flags.trace_path, "write the trace CSV here");

  CLI::App* check =
      app.add_subcommand("check", "Run the hypothesis checkers on the operator");
  check->add_option("file", file, "problem file (JSON)")->required();

  CLI::App* validate = app.add_subcommand(
      "validate-schedule", "Report the schedule validation checks");
  validate->add_option("file", file, "problem file (JSON)")->required();
  std::size_t window_flag = 0;
  CLI::Option* window_opt = validate->add_option(
      "--window", window_flag, "validation window (default: block count)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (run->parsed()) {
      if (*tol_opt) flags.tol = tol_flag;
      if (*iter_opt) flags.max_iter = max_iter_flag;
      if (*workers_opt) flags.workers = workers_flag;
      if (*seed_opt) flags.seed = seed_flag;
      return do_run(file, flags);
    }
    if (check->parsed()) {
      return do_check(file);
    }
    if (validate->parsed()) {
      std::optional<std::size_t> window;
      if (*window_opt) window = window_flag;
      return do_validate_schedule(file, window);
    }
  } catch (const paraprox::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
