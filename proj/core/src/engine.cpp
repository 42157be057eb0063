#include "paraprox/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>

namespace paraprox {

const char* to_string(RunStatus status) {
  switch (status) {
    case RunStatus::converged: return "converged";
    case RunStatus::max_iterations: return "max_iterations";
    case RunStatus::schedule_exhausted: return "schedule_exhausted";
    case RunStatus::operator_failure: return "operator_failure";
  }
  return "unknown";
}

double residual(const FixedPointOperator& op, const BlockVector& x) {
  return max_norm_distance(x, op.apply(x));
}

namespace {

/// Evaluate the listed blocks of F at `input` into `out`, splitting the work
/// over up to `workers` threads. Each block lands in its own slice and every
/// block is computed by the same per-block call regardless of the split, so
/// results do not depend on the worker count.
void evaluate_blocks(const FixedPointOperator& op, const BlockVector& input,
                     const std::vector<std::size_t>& blocks, int workers,
                     BlockVector& out) {
  const std::size_t k =
      std::min<std::size_t>(static_cast<std::size_t>(workers), blocks.size());
  if (k <= 1) {
    for (std::size_t b : blocks) {
      op.apply_block(b, input, out.block(b));
    }
    return;
  }
  std::mutex error_mutex;
  std::exception_ptr error;
  std::vector<std::thread> pool;
  pool.reserve(k);
  const std::size_t per = (blocks.size() + k - 1) / k;
  for (std::size_t t = 0; t < k; ++t) {
    const std::size_t begin = t * per;
    const std::size_t end = std::min(begin + per, blocks.size());
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) {
          const std::size_t b = blocks[i];
          op.apply_block(b, input, out.block(b));
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

bool blocks_finite(const BlockVector& x, const std::vector<std::size_t>& blocks) {
  for (std::size_t b : blocks) {
    for (double v : x.block(b)) {
      if (!std::isfinite(v)) return false;
    }
  }
  return true;
}

}  // namespace

RunResult run_general(const FixedPointOperator& op, const Schedule& schedule,
                      const BlockVector& x0, const RunConfig& config) {
  const BlockPartition& partition = op.partition();
  if (x0.partition() != partition) {
    throw PartitionMismatch("run_general: x0 does not match the operator");
  }
  if (schedule.alpha() != partition.alpha()) {
    throw ScheduleMismatch("run_general: schedule plans " +
                           std::to_string(schedule.alpha()) +
                           " blocks, operator has " +
                           std::to_string(partition.alpha()));
  }
  if (!schedule.delays_legal()) {
    throw ScheduleMismatch(
        "run_general: schedule reads future iterates (some s_i(p) > p)");
  }
  if (!(config.tol > 0.0)) {
    throw InvalidParams("run_general: tol must be > 0");
  }
  if (config.max_iter < 1) {
    throw InvalidParams("run_general: max_iter must be >= 1");
  }
  if (config.workers < 1) {
    throw InvalidParams("run_general: workers must be >= 1");
  }
  if (config.reference_point &&
      config.reference_point->partition() != partition) {
    throw PartitionMismatch("run_general: reference point partition differs");
  }

  RunResult result(x0);
  if (schedule.jacobi_like()) {
    if (!op.claims_h3()) {
      result.warnings.push_back(
          "hypothesis warning: operator does not claim h3 (firm "
          "nonexpansiveness); convergence is not guaranteed");
    }
  } else {
    if (!op.claims_h2()) {
      result.warnings.push_back(
          "hypothesis warning: operator does not claim h2 (max-norm "
          "nonexpansiveness) required for general schedules; running as an "
          "experiment");
    }
    if (!op.claims_h3()) {
      result.warnings.push_back(
          "hypothesis warning: operator does not claim h3 (firm "
          "nonexpansiveness); convergence is not guaranteed");
    }
  }

  const bool trace_res = config.trace_level != TraceLevel::none;
  const bool trace_full = config.trace_level == TraceLevel::full;

  std::vector<std::size_t> all_blocks(partition.alpha());
  for (std::size_t i = 0; i < all_blocks.size(); ++i) all_blocks[i] = i;

  // Iterate history: a ring of the last D+2 iterates, D = largest live delay.
  // One extra slot keeps the iterate being built separate from every slot a
  // snapshot may read.
  const std::size_t ring_size = schedule.max_delay() + 2;
  std::vector<BlockVector> ring(ring_size, x0);
  BlockVector snapshot(partition);
  BlockVector image(partition);

  auto finish = [&](RunStatus status, std::size_t iterations,
                    const BlockVector& point, double res) {
    result.status = status;
    result.iterations = iterations;
    result.final_point = point;
    result.final_residual = res;
  };

  for (std::size_t p = 0;; ++p) {
    const BlockVector& x = ring[p % ring_size];

    if (p == 0 && !all_finite(x)) {
      result.warnings.push_back("initial point has non-finite coordinates");
      finish(RunStatus::operator_failure, 0, x,
             std::numeric_limits<double>::quiet_NaN());
      return result;
    }

    if (config.reference_point) {
      result.distance_history.push_back(
          max_norm_distance(x, *config.reference_point));
    }
    if (trace_full) {
      result.iterates.push_back(x);
    }

    const bool terminal_iter = p >= config.max_iter;
    const bool terminal_sched = p >= schedule.horizon();
    const bool after_full = p > 0 && schedule.full_update_at(p - 1);
    const bool want_residual = schedule.synchronous() || trace_res || p == 0 ||
                               after_full || terminal_iter || terminal_sched;

    double res_max = std::numeric_limits<double>::quiet_NaN();
    bool have_image_at_x = false;
    if (want_residual) {
      try {
        evaluate_blocks(op, x, all_blocks, config.workers, image);
      } catch (const Error& e) {
        result.warnings.push_back(std::string("operator failure: ") + e.what());
        finish(RunStatus::operator_failure, p, x,
               std::numeric_limits<double>::quiet_NaN());
        return result;
      }
      if (!all_finite(image)) {
        result.warnings.push_back(
            "operator failure: non-finite operator output at iteration " +
            std::to_string(p));
        finish(RunStatus::operator_failure, p, x,
               std::numeric_limits<double>::quiet_NaN());
        return result;
      }
      have_image_at_x = true;
      res_max = max_norm_distance(x, image);
      if (trace_res) {
        result.residual_history.push_back({p, res_max, l2_distance(x, image)});
      }
      if (res_max <= config.tol) {
        finish(RunStatus::converged, p, x, res_max);
        return result;
      }
    }
    if (terminal_iter) {
      finish(RunStatus::max_iterations, p, x, res_max);
      return result;
    }
    if (terminal_sched) {
      finish(RunStatus::schedule_exhausted, p, x, res_max);
      return result;
    }

    // Assemble the snapshot the update reads: block j comes from iterate
    // s_j(p). Synchronous steps read the current iterate directly.
    const bool sync_step = schedule.synchronous_at(p);
    const BlockVector* input = &x;
    if (!sync_step) {
      for (std::size_t j = 0; j < partition.alpha(); ++j) {
        const BlockVector& src = ring[schedule.delay(p, j) % ring_size];
        const auto from = src.block(j);
        auto to = snapshot.block(j);
        std::copy(from.begin(), from.end(), to.begin());
      }
      input = &snapshot;
    }

    const std::vector<std::size_t>& update = schedule.update_set(p);
    BlockVector& next = ring[(p + 1) % ring_size];
    next = x;
    if (sync_step && have_image_at_x) {
      // The residual evaluation already produced F(x^p); reuse its blocks.
      for (std::size_t b : update) {
        const auto from = image.block(b);
        auto to = next.block(b);
        std::copy(from.begin(), from.end(), to.begin());
      }
    } else {
      try {
        evaluate_blocks(op, *input, update, config.workers, next);
      } catch (const Error& e) {
        result.warnings.push_back(std::string("operator failure: ") + e.what());
        finish(RunStatus::operator_failure, p, x,
               std::numeric_limits<double>::quiet_NaN());
        return result;
      }
    }
    if (!blocks_finite(next, update)) {
      result.warnings.push_back("operator failure: non-finite value in iterate " +
                                std::to_string(p + 1));
      finish(RunStatus::operator_failure, p, x,
             std::numeric_limits<double>::quiet_NaN());
      return result;
    }
  }
}

RunResult run_jacobi(const FixedPointOperator& op, const BlockVector& x0,
                     const RunConfig& config) {
  const Schedule schedule = build_schedule(
      ScheduleKind::jacobi, op.partition().alpha(), config.max_iter);
  return run_general(op, schedule, x0, config);
}

RunResult run_gauss_seidel_h0(const FixedPointOperator& op,
                              const BlockVector& x0, std::size_t full_period,
                              const RunConfig& config) {
  if (full_period < 1) {
    throw InvalidParams("run_gauss_seidel_h0: full_period must be >= 1");
  }
  ScheduleParams params;
  params.period = full_period;
  params.base.reserve(op.partition().alpha());
  for (std::size_t i = 0; i < op.partition().alpha(); ++i) {
    params.base.push_back({i});
  }
  const Schedule schedule =
      build_schedule(ScheduleKind::periodic_full, op.partition().alpha(),
                     config.max_iter, params);
  return run_general(op, schedule, x0, config);
}

void write_trace_csv(std::ostream& os, const RunResult& result) {
  os << "iter,residual_max,residual_l2,dist_to_ref\n";
  char buf[64];
  for (const TraceRow& row : result.residual_history) {
    os << row.iter << ',';
    std::snprintf(buf, sizeof buf, "%.17g", row.residual_max);
    os << buf << ',';
    std::snprintf(buf, sizeof buf, "%.17g", row.residual_l2);
    os << buf << ',';
    if (row.iter < result.distance_history.size()) {
      std::snprintf(buf, sizeof buf, "%.17g", result.distance_history[row.iter]);
      os << buf;
    }
    os << '\n';
  }
}

}  // namespace paraprox
