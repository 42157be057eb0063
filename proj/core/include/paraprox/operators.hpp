#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <utility>

#include "paraprox/blockspace.hpp"

namespace paraprox {

/**
 * A block-structured map F = (F_1,...,F_alpha) on a partitioned space.
 *
 * Evaluation must be deterministic (same input, bitwise same output) and
 * safe for simultaneous calls on distinct inputs. do_apply_block(i, x) must
 * produce bitwise the block i slice of do_apply(x); runners rely on that to
 * stay reproducible across worker counts.
 *
 * The claims flags declare which contraction hypotheses the operator is
 * asserted to satisfy:
 *   h2 - nonexpansive in the block maximum norm,
 *   h3 - firmly nonexpansive: ||F(x)-F(y)||^2 <= <F(x)-F(y), x-y>.
 * Claims gate runner warnings only; check_h2/check_h3 exist to falsify them.
 */
class FixedPointOperator {
 public:
  virtual ~FixedPointOperator() = default;

  const BlockPartition& partition() const { return partition_; }
  bool claims_h2() const { return claims_h2_; }
  bool claims_h3() const { return claims_h3_; }

  /// F(x). @throws PartitionMismatch, EvaluationFailure
  BlockVector apply(const BlockVector& x) const;

  /// Block i of F(x), written into out (length = partition().size(i)).
  void apply_block(std::size_t block, const BlockVector& x,
                   std::span<double> out) const;

 protected:
  FixedPointOperator(BlockPartition partition, bool claims_h2, bool claims_h3)
      : partition_(std::move(partition)),
        claims_h2_(claims_h2),
        claims_h3_(claims_h3) {}

  virtual void do_apply(const BlockVector& x, BlockVector& out) const = 0;

  /// Default: evaluate the whole map and copy out the requested slice.
  /// Blockwise-separable operators override this with the cheap path.
  virtual void do_apply_block(std::size_t block, const BlockVector& x,
                              std::span<double> out) const;

 private:
  BlockPartition partition_;
  bool claims_h2_;
  bool claims_h3_;
};

/// Adapts a callable to the operator interface. Used for the named built-in
/// maps and for experiments.
class FunctionOperator final : public FixedPointOperator {
 public:
  using Fn = std::function<void(const BlockVector&, BlockVector&)>;
  FunctionOperator(BlockPartition partition, Fn fn, bool claims_h2,
                   bool claims_h3)
      : FixedPointOperator(std::move(partition), claims_h2, claims_h3),
        fn_(std::move(fn)) {}

 private:
  void do_apply(const BlockVector& x, BlockVector& out) const override {
    fn_(x, out);
  }
  Fn fn_;
};

/// F(x) = x.
std::unique_ptr<FixedPointOperator> make_identity(BlockPartition partition);

/// F(x) = k x. Claims follow from k: h2 iff |k| <= 1, h3 iff 0 <= k <= 1.
std::unique_ptr<FixedPointOperator> make_scale(BlockPartition partition,
                                               double factor);

/// F(x) = (x + a)/2; the unique fixed point is a.
std::unique_ptr<FixedPointOperator> make_affine_average(BlockVector target);

/// Seeded source of random vector pairs, componentwise uniform on [lo, hi].
class PairSampler {
 public:
  explicit PairSampler(BlockPartition partition, std::uint64_t seed,
                       double lo = -10.0, double hi = 10.0);

  std::pair<BlockVector, BlockVector> next();

 private:
  BlockPartition partition_;
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> dist_;
};

/// Outcome of a randomized hypothesis check. Violations are signed: the
/// check passes when the worst one does not exceed the slack.
struct CheckReport {
  bool passed = false;
  double worst_violation = 0.0;
  int trials = 0;
  double slack = 0.0;
  /// The pair realizing worst_violation, recorded when the check fails.
  std::optional<std::pair<BlockVector, BlockVector>> witness;
};

/// Samples pairs and reports the worst value of
/// ||F(x)-F(y)||_max - ||x-y||_max.
/// @throws InvalidParams if trials < 1 or slack < 0
CheckReport check_h2(const FixedPointOperator& op, PairSampler& sampler,
                     int trials = 1000, double slack = 1e-10);

/// Samples pairs and reports the worst value of
/// ||F(x)-F(y)||^2 - <F(x)-F(y), x-y>.
/// @throws InvalidParams if trials < 1 or slack < 0
CheckReport check_h3(const FixedPointOperator& op, PairSampler& sampler,
                     int trials = 1000, double slack = 1e-10);

}  // namespace paraprox
