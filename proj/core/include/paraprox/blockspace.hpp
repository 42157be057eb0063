#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "paraprox/errors.hpp"

namespace paraprox {

/**
 * Splitting of R^n into alpha contiguous blocks of sizes n_1,...,n_alpha,
 * n = sum n_i. Blocks are indexed 0-based in code; reports and files use
 * 1-based indices.
 */
class BlockPartition {
 public:
  /// @throws EmptyPartition, InvalidSize
  explicit BlockPartition(std::vector<std::size_t> sizes);

  std::size_t alpha() const { return sizes_.size(); }
  std::size_t total() const { return offsets_.back(); }
  std::size_t size(std::size_t block) const { return sizes_.at(block); }
  std::size_t offset(std::size_t block) const { return offsets_.at(block); }
  const std::vector<std::size_t>& sizes() const { return sizes_; }

  friend bool operator==(const BlockPartition&, const BlockPartition&) = default;

 private:
  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> offsets_;  // alpha+1 entries, offsets_[alpha] == total
};

/**
 * A point of R^n stored contiguously in partition order. Block views are
 * index ranges into the flat storage: writing through a view mutates the
 * vector.
 */
class BlockVector {
 public:
  /// Zero vector.
  explicit BlockVector(BlockPartition partition);
  /// @throws DimensionMismatch if data.size() != partition.total()
  BlockVector(BlockPartition partition, std::vector<double> data);

  const BlockPartition& partition() const { return partition_; }
  std::size_t size() const { return data_.size(); }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  std::span<double> block(std::size_t i);
  std::span<const double> block(std::size_t i) const;

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  friend bool operator==(const BlockVector&, const BlockVector&) = default;

 private:
  BlockPartition partition_;
  std::vector<double> data_;
};

/// @throws PartitionMismatch unless x and y share a partition
double inner_product(const BlockVector& x, const BlockVector& y);

/// Euclidean norm, ||x|| = sqrt(<x,x>).
double l2_norm(const BlockVector& x);

/// Euclidean norm of block i alone.
double block_norm(const BlockVector& x, std::size_t block);

/// max_i ||x_i||, the block maximum norm.
double block_max_norm(const BlockVector& x);

/// ||x - y||_max without forming the difference.
double max_norm_distance(const BlockVector& x, const BlockVector& y);

/// ||x - y|| without forming the difference.
double l2_distance(const BlockVector& x, const BlockVector& y);

bool all_finite(const BlockVector& x);

}  // namespace paraprox
