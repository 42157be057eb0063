#include "paraprox/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace paraprox {

BlockVector FixedPointOperator::apply(const BlockVector& x) const {
  if (x.partition() != partition_) {
    throw PartitionMismatch("FixedPointOperator::apply: partition mismatch");
  }
  BlockVector out(partition_);
  do_apply(x, out);
  return out;
}

void FixedPointOperator::apply_block(std::size_t block, const BlockVector& x,
                                     std::span<double> out) const {
  if (x.partition() != partition_) {
    throw PartitionMismatch(
        "FixedPointOperator::apply_block: partition mismatch");
  }
  if (block >= partition_.alpha() || out.size() != partition_.size(block)) {
    throw DimensionMismatch(
        "FixedPointOperator::apply_block: bad block index or output size");
  }
  do_apply_block(block, x, out);
}

void FixedPointOperator::do_apply_block(std::size_t block,
                                        const BlockVector& x,
                                        std::span<double> out) const {
  BlockVector full(partition_);
  do_apply(x, full);
  const auto src = full.block(block);
  std::copy(src.begin(), src.end(), out.begin());
}

namespace {

/// Blockwise-separable coordinate map t -> fn(t); avoids whole-vector
/// evaluation when a runner asks for a single block.
class CoordinatewiseOperator final : public FixedPointOperator {
 public:
  using Fn = double (*)(double, double);
  CoordinatewiseOperator(BlockPartition partition, Fn fn, double param,
                         bool claims_h2, bool claims_h3)
      : FixedPointOperator(std::move(partition), claims_h2, claims_h3),
        fn_(fn),
        param_(param) {}

 private:
  void do_apply(const BlockVector& x, BlockVector& out) const override {
    for (std::size_t i = 0; i < x.size(); ++i) {
      out[i] = fn_(x[i], param_);
    }
  }
  void do_apply_block(std::size_t block, const BlockVector& x,
                      std::span<double> out) const override {
    const auto src = x.block(block);
    for (std::size_t k = 0; k < src.size(); ++k) {
      out[k] = fn_(src[k], param_);
    }
  }
  Fn fn_;
  double param_;
};

/// F(x) = (x + a)/2 with a stored componentwise.
class AffineAverageOperator final : public FixedPointOperator {
 public:
  explicit AffineAverageOperator(BlockVector target)
      : FixedPointOperator(target.partition(), true, true),
        target_(std::move(target)) {}

 private:
  void do_apply(const BlockVector& x, BlockVector& out) const override {
    for (std::size_t i = 0; i < x.size(); ++i) {
      out[i] = 0.5 * (x[i] + target_[i]);
    }
  }
  void do_apply_block(std::size_t block, const BlockVector& x,
                      std::span<double> out) const override {
    const auto src = x.block(block);
    const auto tgt = target_.block(block);
    for (std::size_t k = 0; k < src.size(); ++k) {
      out[k] = 0.5 * (src[k] + tgt[k]);
    }
  }
  BlockVector target_;
};

}  // namespace

std::unique_ptr<FixedPointOperator> make_identity(BlockPartition partition) {
  return std::make_unique<CoordinatewiseOperator>(
      std::move(partition), [](double t, double) { return t; }, 0.0, true,
      true);
}

std::unique_ptr<FixedPointOperator> make_scale(BlockPartition partition,
                                               double factor) {
  const bool h2 = std::abs(factor) <= 1.0;
  const bool h3 = factor >= 0.0 && factor <= 1.0;
  return std::make_unique<CoordinatewiseOperator>(
      std::move(partition), [](double t, double k) { return k * t; }, factor,
      h2, h3);
}

std::unique_ptr<FixedPointOperator> make_affine_average(BlockVector target) {
  return std::make_unique<AffineAverageOperator>(std::move(target));
}

PairSampler::PairSampler(BlockPartition partition, std::uint64_t seed,
                         double lo, double hi)
    : partition_(std::move(partition)), rng_(seed), dist_(lo, hi) {
  if (!(lo < hi)) {
    throw InvalidParams("PairSampler: need lo < hi");
  }
}

std::pair<BlockVector, BlockVector> PairSampler::next() {
  BlockVector x(partition_);
  BlockVector y(partition_);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = dist_(rng_);
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] = dist_(rng_);
  }
  return {std::move(x), std::move(y)};
}

namespace {

CheckReport run_check(const FixedPointOperator& op, PairSampler& sampler,
                      int trials, double slack,
                      double (*violation)(const FixedPointOperator&,
                                          const BlockVector&,
                                          const BlockVector&)) {
  if (trials < 1) {
    throw InvalidParams("hypothesis check: trials must be >= 1");
  }
  if (slack < 0.0) {
    throw InvalidParams("hypothesis check: slack must be >= 0");
  }
  CheckReport report;
  report.trials = trials;
  report.slack = slack;
  report.worst_violation = -std::numeric_limits<double>::infinity();
  std::optional<std::pair<BlockVector, BlockVector>> worst_pair;
  for (int t = 0; t < trials; ++t) {
    auto [x, y] = sampler.next();
    const double v = violation(op, x, y);
    if (v > report.worst_violation) {
      report.worst_violation = v;
      worst_pair = std::make_pair(std::move(x), std::move(y));
    }
  }
  report.passed = report.worst_violation <= slack;
  if (!report.passed) {
    report.witness = std::move(worst_pair);
  }
  return report;
}

double h2_violation(const FixedPointOperator& op, const BlockVector& x,
                    const BlockVector& y) {
  const BlockVector fx = op.apply(x);
  const BlockVector fy = op.apply(y);
  return max_norm_distance(fx, fy) - max_norm_distance(x, y);
}

double h3_violation(const FixedPointOperator& op, const BlockVector& x,
                    const BlockVector& y) {
  const BlockVector fx = op.apply(x);
  const BlockVector fy = op.apply(y);
  double lhs = 0.0;
  double rhs = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double df = fx[i] - fy[i];
    lhs += df * df;
    rhs += df * (x[i] - y[i]);
  }
  return lhs - rhs;
}

}  // namespace

CheckReport check_h2(const FixedPointOperator& op, PairSampler& sampler,
                     int trials, double slack) {
  return run_check(op, sampler, trials, slack, &h2_violation);
}

CheckReport check_h3(const FixedPointOperator& op, PairSampler& sampler,
                     int trials, double slack) {
  return run_check(op, sampler, trials, slack, &h3_violation);
}

}  // namespace paraprox
