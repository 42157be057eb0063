#include "paraprox/schedule.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace paraprox {

namespace {

std::vector<std::size_t> full_set(std::size_t alpha) {
  std::vector<std::size_t> all(alpha);
  std::iota(all.begin(), all.end(), std::size_t{0});
  return all;
}

std::vector<std::size_t> normalize_update_set(std::vector<std::size_t> set,
                                              std::size_t alpha,
                                              std::size_t step) {
  if (set.empty()) {
    throw InvalidParams("build_schedule: empty update set at step " +
                        std::to_string(step));
  }
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  if (set.back() >= alpha) {
    throw InvalidParams("build_schedule: block index out of range at step " +
                        std::to_string(step));
  }
  return set;
}

}  // namespace

Schedule::Schedule(std::size_t alpha,
                   std::vector<std::vector<std::size_t>> update_sets,
                   std::vector<std::vector<std::size_t>> delays)
    : alpha_(alpha),
      update_sets_(std::move(update_sets)),
      delays_(std::move(delays)) {
  if (alpha_ < 1) {
    throw InvalidParams("Schedule: alpha must be >= 1");
  }
  if (delays_.size() != update_sets_.size()) {
    throw InvalidParams("Schedule: update_sets and delays differ in length");
  }
  for (std::size_t p = 0; p < update_sets_.size(); ++p) {
    update_sets_[p] = normalize_update_set(std::move(update_sets_[p]), alpha_, p);
    if (delays_[p].size() != alpha_) {
      throw InvalidParams("Schedule: delays row " + std::to_string(p) +
                          " must have alpha entries");
    }
    if (update_sets_[p].size() == alpha_) {
      full_update_steps_.push_back(p);
    } else {
      all_full_ = false;
    }
    std::size_t min_delay = p;
    for (std::size_t s : delays_[p]) {
      if (s != p) synchronous_ = false;
      if (s > p) delays_legal_ = false;
      min_delay = std::min(min_delay, s);
    }
    max_delay_ = std::max(max_delay_, p - min_delay);
  }
}

bool Schedule::synchronous_at(std::size_t p) const {
  const auto& row = delays_.at(p);
  return std::all_of(row.begin(), row.end(),
                     [p](std::size_t s) { return s == p; });
}

Schedule build_schedule(ScheduleKind kind, std::size_t alpha,
                        std::size_t horizon, const ScheduleParams& params) {
  if (alpha < 1) {
    throw InvalidParams("build_schedule: alpha must be >= 1");
  }
  if (horizon < 1) {
    throw InvalidParams("build_schedule: horizon must be >= 1");
  }

  std::vector<std::vector<std::size_t>> sets;
  std::vector<std::vector<std::size_t>> delays;
  sets.reserve(horizon);
  delays.reserve(horizon);

  auto synchronous_row = [alpha](std::size_t p) {
    return std::vector<std::size_t>(alpha, p);
  };

  switch (kind) {
    case ScheduleKind::jacobi: {
      const auto all = full_set(alpha);
      for (std::size_t p = 0; p < horizon; ++p) {
        sets.push_back(all);
        delays.push_back(synchronous_row(p));
      }
      break;
    }
    case ScheduleKind::gauss_seidel: {
      for (std::size_t p = 0; p < horizon; ++p) {
        sets.push_back({p % alpha});
        delays.push_back(synchronous_row(p));
      }
      break;
    }
    case ScheduleKind::periodic_full: {
      if (params.period < 1) {
        throw InvalidParams("build_schedule: periodic_full needs period >= 1");
      }
      if (params.base.empty()) {
        throw InvalidParams(
            "build_schedule: periodic_full needs a non-empty base pattern");
      }
      const auto all = full_set(alpha);
      std::size_t base_pos = 0;  // advances only on base steps
      for (std::size_t p = 0; p < horizon; ++p) {
        if ((p + 1) % params.period == 0) {
          sets.push_back(all);
        } else {
          sets.push_back(params.base[base_pos % params.base.size()]);
          ++base_pos;
        }
        delays.push_back(synchronous_row(p));
      }
      break;
    }
    case ScheduleKind::custom: {
      if (params.update_sets.size() != horizon ||
          params.delays.size() != horizon) {
        throw InvalidParams(
            "build_schedule: custom tables must have one row per step of the "
            "horizon");
      }
      sets = params.update_sets;
      delays = params.delays;
      break;
    }
  }

  return Schedule(alpha, std::move(sets), std::move(delays));
}

ValidationReport validate_schedule(const Schedule& schedule,
                                   std::size_t window) {
  if (window < 1) {
    throw InvalidParams("validate_schedule: window must be >= 1");
  }

  ValidationReport report;
  report.window = window;
  report.max_delay = schedule.max_delay();
  const std::size_t horizon = schedule.horizon();
  const std::size_t alpha = schedule.alpha();
  std::string detail;

  // (a) delay legality: s_i(p) <= p.
  for (std::size_t p = 0; p < horizon && report.delay_legal; ++p) {
    for (std::size_t i = 0; i < alpha; ++i) {
      if (schedule.delay(p, i) > p) {
        report.delay_legal = false;
        detail += "delay: s_" + std::to_string(i + 1) + "(" +
                  std::to_string(p) + ") = " +
                  std::to_string(schedule.delay(p, i)) + " exceeds p; ";
        break;
      }
    }
  }

  // (b) fairness: each block occurs in every window of the horizon. With
  // sentinels at -1 and horizon this is: all occurrence gaps <= window.
  for (std::size_t i = 0; i < alpha; ++i) {
    std::size_t prev_plus1 = 0;  // previous occurrence + 1 (0 = sentinel -1)
    std::size_t worst_gap = 0;
    for (std::size_t p = 0; p < horizon; ++p) {
      const auto& set = schedule.update_set(p);
      if (std::binary_search(set.begin(), set.end(), i)) {
        worst_gap = std::max(worst_gap, p + 1 - prev_plus1);
        prev_plus1 = p + 1;
      }
    }
    worst_gap = std::max(worst_gap, horizon + 1 - prev_plus1);
    if (worst_gap > window) {
      report.fairness = false;
      detail += "fairness: block " + std::to_string(i + 1) +
                " has update gap " + std::to_string(worst_gap) + "; ";
      break;
    }
  }

  // (c) delay progress: min_i s_i(p) nondecreasing, no stall beyond window.
  {
    std::size_t prev_min = 0;
    std::size_t stall = 0;
    for (std::size_t p = 0; p < horizon; ++p) {
      std::size_t m = schedule.delay(p, 0);
      for (std::size_t i = 1; i < alpha; ++i) {
        m = std::min(m, schedule.delay(p, i));
      }
      if (p == 0) {
        prev_min = m;
        stall = 1;
      } else if (m < prev_min) {
        report.delay_progress = false;
        detail += "delay_progress: min delay decreases at step " +
                  std::to_string(p) + "; ";
        break;
      } else if (m == prev_min) {
        ++stall;
      } else {
        prev_min = m;
        stall = 1;
      }
      if (stall > window) {
        report.delay_progress = false;
        detail += "delay_progress: min delay stalls for " +
                  std::to_string(stall) + " steps; ";
        break;
      }
    }
  }

  // (d) recurring full updates.
  {
    const auto& fulls = schedule.full_update_steps();
    report.full_update_count = fulls.size();
    if (!fulls.empty()) {
      std::size_t gap = fulls.front() + 1;
      for (std::size_t k = 1; k < fulls.size(); ++k) {
        gap = std::max(gap, fulls[k] - fulls[k - 1]);
      }
      gap = std::max(gap, horizon - fulls.back());
      report.h0_gap = gap;
      report.h0_satisfied = gap <= window;
      if (!report.h0_satisfied) {
        detail += "h0: full updates recur with gap " + std::to_string(gap) +
                  " > window; ";
      }
    } else {
      detail += "h0: no step updates every block; ";
    }
  }

  report.detail = std::move(detail);
  return report;
}

}  // namespace paraprox
