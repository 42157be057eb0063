#include "paraprox/blockspace.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace paraprox {

BlockPartition::BlockPartition(std::vector<std::size_t> sizes)
    : sizes_(std::move(sizes)) {
  if (sizes_.empty()) {
    throw EmptyPartition("BlockPartition: size list is empty");
  }
  offsets_.reserve(sizes_.size() + 1);
  std::size_t running = 0;
  offsets_.push_back(0);
  for (std::size_t s : sizes_) {
    if (s < 1) {
      throw InvalidSize("BlockPartition: every block size must be >= 1");
    }
    running += s;
    offsets_.push_back(running);
  }
}

BlockVector::BlockVector(BlockPartition partition)
    : partition_(std::move(partition)), data_(partition_.total(), 0.0) {}

BlockVector::BlockVector(BlockPartition partition, std::vector<double> data)
    : partition_(std::move(partition)), data_(std::move(data)) {
  if (data_.size() != partition_.total()) {
    throw DimensionMismatch("BlockVector: data has " +
                            std::to_string(data_.size()) +
                            " coordinates, partition expects " +
                            std::to_string(partition_.total()));
  }
}

std::span<double> BlockVector::block(std::size_t i) {
  return std::span<double>(data_.data() + partition_.offset(i),
                           partition_.size(i));
}

std::span<const double> BlockVector::block(std::size_t i) const {
  return std::span<const double>(data_.data() + partition_.offset(i),
                                 partition_.size(i));
}

namespace {

void require_same_partition(const BlockVector& x, const BlockVector& y,
                            const char* where) {
  if (x.partition() != y.partition()) {
    throw PartitionMismatch(std::string(where) +
                            ": operands have different partitions");
  }
}

}  // namespace

double inner_product(const BlockVector& x, const BlockVector& y) {
  require_same_partition(x, y, "inner_product");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    acc += x[i] * y[i];
  }
  return acc;
}

double l2_norm(const BlockVector& x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    acc += x[i] * x[i];
  }
  return std::sqrt(acc);
}

double block_norm(const BlockVector& x, std::size_t block) {
  double acc = 0.0;
  for (double v : x.block(block)) {
    acc += v * v;
  }
  return std::sqrt(acc);
}

double block_max_norm(const BlockVector& x) {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.partition().alpha(); ++i) {
    worst = std::max(worst, block_norm(x, i));
  }
  return worst;
}

double max_norm_distance(const BlockVector& x, const BlockVector& y) {
  require_same_partition(x, y, "max_norm_distance");
  const BlockPartition& part = x.partition();
  double worst = 0.0;
  for (std::size_t i = 0; i < part.alpha(); ++i) {
    double acc = 0.0;
    const std::size_t off = part.offset(i);
    for (std::size_t k = 0; k < part.size(i); ++k) {
      const double d = x[off + k] - y[off + k];
      acc += d * d;
    }
    worst = std::max(worst, std::sqrt(acc));
  }
  return worst;
}

double l2_distance(const BlockVector& x, const BlockVector& y) {
  require_same_partition(x, y, "l2_distance");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

bool all_finite(const BlockVector& x) {
  return std::all_of(x.data().begin(), x.data().end(),
                     [](double v) { return std::isfinite(v); });
}

}  // namespace paraprox
