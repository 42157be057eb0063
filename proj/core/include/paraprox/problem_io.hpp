#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "paraprox/engine.hpp"
#include "paraprox/monotone.hpp"
#include "paraprox/operators.hpp"
#include "paraprox/schedule.hpp"

namespace paraprox {

enum class BuiltinKind { identity, scale, affine_average };

struct BuiltinOperatorSpec {
  BuiltinKind kind = BuiltinKind::identity;
  double factor = 0.0;           // scale
  std::vector<double> point;     // affine_average target

  friend bool operator==(const BuiltinOperatorSpec&,
                         const BuiltinOperatorSpec&) = default;
};

struct OperatorSpec {
  std::variant<BuiltinOperatorSpec, MonotoneProblem> value;

  friend bool operator==(const OperatorSpec&, const OperatorSpec&) = default;
};

/// Schedule description as written in the file. Indices are stored 0-based;
/// the JSON form uses 1-based block indices.
struct ScheduleSpec {
  ScheduleKind kind = ScheduleKind::jacobi;
  std::optional<std::size_t> alpha;  // optional cross-check, all kinds
  std::size_t period = 0;
  std::vector<std::vector<std::size_t>> base;
  std::vector<std::vector<std::size_t>> update_sets;
  std::vector<std::vector<std::size_t>> delays;

  friend bool operator==(const ScheduleSpec&, const ScheduleSpec&) = default;
};

struct RunSettings {
  double tol = 1e-8;
  std::size_t max_iter = 1000;
  int workers = 1;
  TraceLevel trace_level = TraceLevel::none;
  std::optional<std::vector<double>> reference_point;
  std::optional<std::vector<double>> x0;  // defaults to the zero vector

  friend bool operator==(const RunSettings&, const RunSettings&) = default;
};

struct CheckSettings {
  /// Unset flags mean "checker default": `run` verifies exactly the claimed
  /// hypotheses, `check` runs both.
  std::optional<bool> run_h2;
  std::optional<bool> run_h3;
  int trials = 1000;
  std::uint64_t seed = 12345;

  friend bool operator==(const CheckSettings&, const CheckSettings&) = default;
};

/// Fully validated in-memory form of a problem file.
struct ProblemSpec {
  std::vector<std::size_t> partition;
  OperatorSpec op;
  ScheduleSpec schedule;
  RunSettings run;
  CheckSettings checks;

  friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

/**
 * Parse and validate a problem file (JSON, top-level `format: 1`).
 * Unknown fields are errors. All cross-dimension checks happen here.
 *
 * @throws ParseError       malformed JSON, with line and column
 * @throws SchemaError      unknown field / wrong type, naming the field path
 * @throws ConsistencyError dimension mismatches, naming both fields
 */
ProblemSpec parse_problem(const std::string& text);

/// Inverse of parse_problem: parse_problem(render_problem(s)) == s.
std::string render_problem(const ProblemSpec& spec);

BlockPartition make_partition(const ProblemSpec& spec);
std::unique_ptr<FixedPointOperator> make_operator(const ProblemSpec& spec);
Schedule make_schedule(const ProblemSpec& spec, std::size_t horizon);
RunConfig make_run_config(const ProblemSpec& spec);
BlockVector initial_point(const ProblemSpec& spec);

}  // namespace paraprox
