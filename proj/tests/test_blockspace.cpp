#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "paraprox/blockspace.hpp"

using namespace paraprox;

TEST_CASE("partition construction") {
  BlockPartition p({2, 1});
  CHECK(p.alpha() == 2);
  CHECK(p.total() == 3);
  CHECK(p.size(0) == 2);
  CHECK(p.offset(1) == 2);

  BlockPartition single({5});
  CHECK(single.alpha() == 1);
  CHECK(single.total() == 5);

  CHECK_THROWS_AS(BlockPartition({}), EmptyPartition);
  CHECK_THROWS_AS(BlockPartition({2, 0}), InvalidSize);
}

TEST_CASE("block vector shape checks") {
  BlockPartition p({2, 1});
  CHECK_THROWS_AS(BlockVector(p, {1.0, 2.0}), DimensionMismatch);
  BlockVector x(p);
  CHECK(x.size() == 3);
  CHECK(x[0] == 0.0);
}

TEST_CASE("inner product") {
  BlockPartition p({1, 1});
  BlockVector x(p, {1.0, 2.0});
  BlockVector y(p, {3.0, 4.0});
  CHECK(inner_product(x, y) == doctest::Approx(11.0));

  BlockVector zero(p);
  CHECK(inner_product(x, zero) == 0.0);

  BlockPartition other({2});
  BlockVector z(other, {1.0, 1.0});
  CHECK_THROWS_AS(inner_product(x, z), PartitionMismatch);
}

TEST_CASE("inner product symmetry on random pairs") {
  BlockPartition p({2, 3, 1});
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  for (int t = 0; t < 200; ++t) {
    BlockVector x(p);
    BlockVector y(p);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = dist(rng);
      y[i] = dist(rng);
    }
    CHECK(inner_product(x, y) == inner_product(y, x));
  }
}

TEST_CASE("block max norm") {
  BlockPartition p({2, 1});
  BlockVector x(p, {3.0, 4.0, 1.0});
  CHECK(block_max_norm(x) == doctest::Approx(5.0));

  BlockVector zero(p);
  CHECK(block_max_norm(zero) == 0.0);

  BlockPartition q({1, 1});
  BlockVector y(q, {0.0, 2.0});
  CHECK(block_max_norm(y) == doctest::Approx(2.0));
}

TEST_CASE("norm compatibility on random samples") {
  BlockPartition p({3, 2, 2});
  const double root_alpha = std::sqrt(3.0);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  for (int t = 0; t < 500; ++t) {
    BlockVector x(p);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = dist(rng);
    const double mx = block_max_norm(x);
    const double l2 = l2_norm(x);
    CHECK(mx <= l2 * (1 + 1e-15));
    CHECK(l2 <= root_alpha * mx * (1 + 1e-15));
    // ||x||^2 == <x,x> up to relative 1e-12
    CHECK(std::abs(l2 * l2 - inner_product(x, x)) <=
          1e-12 * std::max(1.0, inner_product(x, x)));
  }
}

TEST_CASE("block views alias the flat storage") {
  BlockPartition p({2, 2});
  BlockVector x(p, {1.0, 2.0, 3.0, 4.0});
  auto b1 = x.block(1);
  CHECK(b1.size() == 2);
  CHECK(b1[0] == 3.0);
  b1[1] = 9.0;
  CHECK(x[3] == 9.0);

  // round-trip: concatenating the blocks reproduces the flat data
  std::vector<double> flat;
  for (std::size_t i = 0; i < p.alpha(); ++i) {
    for (double v : x.block(i)) flat.push_back(v);
  }
  CHECK(flat == x.data());
}

TEST_CASE("distance helpers agree with explicit differences") {
  BlockPartition p({2, 1});
  BlockVector x(p, {1.0, 2.0, -3.0});
  BlockVector y(p, {0.0, 4.0, 1.0});
  BlockVector d(p, {1.0, -2.0, -4.0});
  CHECK(max_norm_distance(x, y) == doctest::Approx(block_max_norm(d)));
  CHECK(l2_distance(x, y) == doctest::Approx(l2_norm(d)));
}

TEST_CASE("finiteness scan") {
  BlockPartition p({2});
  BlockVector x(p, {1.0, 2.0});
  CHECK(all_finite(x));
  x[1] = std::numeric_limits<double>::quiet_NaN();
  CHECK(!all_finite(x));
}
