#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "paraprox/blockspace.hpp"
#include "paraprox/operators.hpp"
#include "paraprox/schedule.hpp"

namespace paraprox {

enum class TraceLevel { none, residuals, full };

struct RunConfig {
  double tol = 1e-8;
  std::size_t max_iter = 1000;
  int workers = 1;
  TraceLevel trace_level = TraceLevel::none;
  /// Known fixed point; when set, distance_history records ||x^p - u||_max.
  std::optional<BlockVector> reference_point;
};

enum class RunStatus { converged, max_iterations, schedule_exhausted,
                       operator_failure };

const char* to_string(RunStatus status);

struct TraceRow {
  std::size_t iter = 0;
  double residual_max = 0.0;
  double residual_l2 = 0.0;
};

struct RunResult {
  explicit RunResult(BlockVector point) : final_point(std::move(point)) {}

  RunStatus status = RunStatus::max_iterations;
  /// Number of update steps performed before termination.
  std::size_t iterations = 0;
  BlockVector final_point;
  /// ||x - F(x)||_max at final_point; NaN if the operator failed there.
  double final_residual = std::numeric_limits<double>::quiet_NaN();
  /// One row per iterate x^0..x^iterations when trace_level >= residuals.
  std::vector<TraceRow> residual_history;
  /// ||x^p - u||_max per iterate when a reference point is supplied.
  std::vector<double> distance_history;
  /// Every iterate when trace_level == full.
  std::vector<BlockVector> iterates;
  std::vector<std::string> warnings;
};

/// ||x - F(x)||_max.
double residual(const FixedPointOperator& op, const BlockVector& x);

/**
 * Run the general block iteration under a schedule:
 *
 *   x_i^{p+1} = x_i^p                                  if i not in J(p)
 *   x_i^{p+1} = F_i(x_1^{s_1(p)},...,x_alpha^{s_alpha(p)})  if i in J(p)
 *
 * Stops when ||x^p - F(x^p)||_max <= tol — checked every step for
 * synchronous schedules and after full-update steps otherwise — or at
 * max_iter, or when the schedule horizon runs out. Block updates within a
 * step read a frozen snapshot and may run on any number of workers; the
 * result is bitwise identical for every worker count. Non-finite iterates
 * abort with operator_failure, as do evaluation failures.
 *
 * Schedules that are not jacobi-like run as experiments; a missing claimed
 * hypothesis is recorded as a warning, never an error.
 *
 * @throws ScheduleMismatch, PartitionMismatch, InvalidParams
 */
RunResult run_general(const FixedPointOperator& op, const Schedule& schedule,
                      const BlockVector& x0, const RunConfig& config);

/// x^{p+1} = F(x^p) with all blocks updated in parallel; equivalent to
/// run_general under the jacobi schedule. Warns when claims_h3 is absent.
RunResult run_jacobi(const FixedPointOperator& op, const BlockVector& x0,
                     const RunConfig& config);

/// Gauss-Seidel sweeps with every full_period-th step replaced by a full
/// update, so full updates recur by construction. full_period = 1 degenerates
/// to run_jacobi.
RunResult run_gauss_seidel_h0(const FixedPointOperator& op,
                              const BlockVector& x0, std::size_t full_period,
                              const RunConfig& config);

/// Trace CSV: header `iter,residual_max,residual_l2,dist_to_ref`, one row per
/// recorded iterate, values with 17 significant digits, dist_to_ref empty
/// when no reference point was supplied.
void write_trace_csv(std::ostream& os, const RunResult& result);

}  // namespace paraprox
