#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "paraprox/errors.hpp"

namespace paraprox {

enum class ScheduleKind { jacobi, gauss_seidel, periodic_full, custom };

/// Kind-specific inputs for build_schedule. Block indices are 0-based here;
/// the file format and all reports use 1-based indices.
struct ScheduleParams {
  // periodic_full: every period-th step becomes a full update, the remaining
  // steps cycle through `base`.
  std::size_t period = 0;
  std::vector<std::vector<std::size_t>> base;

  // custom: explicit tables, one row per step. delays rows have alpha entries
  // holding absolute iteration indices s_i(p).
  std::vector<std::vector<std::size_t>> update_sets;
  std::vector<std::vector<std::size_t>> delays;
};

/**
 * Materialized update plan over a finite horizon: for each step p the set
 * J(p) of blocks to recompute and the iterate indices s_i(p) each block of
 * the argument is read from. Immutable once built.
 */
class Schedule {
 public:
  Schedule(std::size_t alpha,
           std::vector<std::vector<std::size_t>> update_sets,
           std::vector<std::vector<std::size_t>> delays);

  std::size_t alpha() const { return alpha_; }
  std::size_t horizon() const { return update_sets_.size(); }

  /// J(p), sorted ascending, 0-based.
  const std::vector<std::size_t>& update_set(std::size_t p) const {
    return update_sets_.at(p);
  }
  /// s_i(p)
  std::size_t delay(std::size_t p, std::size_t block) const {
    return delays_.at(p).at(block);
  }
  const std::vector<std::vector<std::size_t>>& update_sets() const {
    return update_sets_;
  }
  const std::vector<std::vector<std::size_t>>& delays() const {
    return delays_;
  }

  /// Steps p with J(p) = {1,...,alpha}, ascending.
  const std::vector<std::size_t>& full_update_steps() const {
    return full_update_steps_;
  }

  bool full_update_at(std::size_t p) const {
    return update_sets_.at(p).size() == alpha_;
  }
  /// s_i(p) == p for every block at step p.
  bool synchronous_at(std::size_t p) const;
  /// s_i(p) == p everywhere.
  bool synchronous() const { return synchronous_; }
  /// Full update and no delay at every step.
  bool jacobi_like() const { return synchronous_ && all_full_; }

  /// s_i(p) <= p everywhere; schedules violating this are reportable by
  /// validate_schedule but cannot be executed.
  bool delays_legal() const { return delays_legal_; }

  /// D = max_p (p - min_i s_i(p)); how many past iterates a runner must keep.
  /// Meaningful only when delays_legal().
  std::size_t max_delay() const { return max_delay_; }

 private:
  std::size_t alpha_;
  std::vector<std::vector<std::size_t>> update_sets_;
  std::vector<std::vector<std::size_t>> delays_;
  std::vector<std::size_t> full_update_steps_;
  bool synchronous_ = true;
  bool all_full_ = true;
  bool delays_legal_ = true;
  std::size_t max_delay_ = 0;
};

/**
 * Build one of the stock schedules.
 *
 *  - jacobi:        J(p) = {1..alpha}, s_i(p) = p
 *  - gauss_seidel:  J(p) = {(p mod alpha)+1}, s_i(p) = p
 *  - periodic_full: params.base cycled, every params.period-th step replaced
 *                   by a full update; synchronous delays
 *  - custom:        params tables copied verbatim
 *
 * @throws InvalidParams on bad kind-specific parameters (period < 1, tables
 *         of the wrong shape, empty update sets, block index out of range).
 */
Schedule build_schedule(ScheduleKind kind, std::size_t alpha,
                        std::size_t horizon,
                        const ScheduleParams& params = {});

/// Finite-horizon surrogate checks for the asymptotic schedule conditions.
/// Violations are reported, never thrown.
struct ValidationReport {
  bool delay_legal = true;     // s_i(p) <= p everywhere
  bool fairness = true;        // every block appears in every window
  bool delay_progress = true;  // min_i s_i(p) nondecreasing, stalls <= window
  bool h0_satisfied = false;   // full updates recur with gap <= window
  std::size_t h0_gap = 0;      // max gap between full updates (0 if none)
  std::size_t full_update_count = 0;
  std::size_t max_delay = 0;
  std::size_t window = 0;
  std::string detail;          // first failure of each kind, 1-based blocks

  bool all_passed() const {
    return delay_legal && fairness && delay_progress && h0_satisfied;
  }
};

/// @throws InvalidParams if window < 1
ValidationReport validate_schedule(const Schedule& schedule,
                                   std::size_t window);

}  // namespace paraprox
