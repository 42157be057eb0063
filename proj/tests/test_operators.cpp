#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "paraprox/monotone.hpp"
#include "paraprox/operators.hpp"

using namespace paraprox;

TEST_CASE("apply: identity and scaling") {
  BlockPartition p({1, 1});
  BlockVector x(p, {4.0, 2.0});

  auto id = make_identity(p);
  CHECK(id->apply(x) == x);

  auto half = make_scale(p, 0.5);
  const BlockVector y = half->apply(x);
  CHECK(y[0] == doctest::Approx(2.0));
  CHECK(y[1] == doctest::Approx(1.0));

  BlockPartition other({2});
  BlockVector z(other, {1.0, 1.0});
  CHECK_THROWS_AS(half->apply(z), PartitionMismatch);
}

TEST_CASE("apply: soft threshold through the resolvent wrapper") {
  const auto prob =
      MonotoneProblem::separable_prox({ProxAtom::absolute_value()});
  const auto op = as_fixed_point_operator(prob, BlockPartition({1}));
  BlockVector x(BlockPartition({1}), {3.0});
  CHECK(op->apply(x)[0] == doctest::Approx(2.0));
}

TEST_CASE("apply_block matches slices of apply for a coupled map") {
  BlockPartition p({2, 1});
  // Couples all coordinates: out_i depends on the whole input.
  FunctionOperator op(
      p,
      [](const BlockVector& in, BlockVector& out) {
        double sum = 0.0;
        for (std::size_t i = 0; i < in.size(); ++i) sum += in[i];
        for (std::size_t i = 0; i < in.size(); ++i) {
          out[i] = 0.25 * (in[i] + sum / 3.0);
        }
      },
      false, false);
  BlockVector x(p, {1.0, -2.0, 5.0});
  const BlockVector full = op.apply(x);
  for (std::size_t b = 0; b < p.alpha(); ++b) {
    std::vector<double> slot(p.size(b), 0.0);
    op.apply_block(b, x, slot);
    const auto expect = full.block(b);
    for (std::size_t k = 0; k < slot.size(); ++k) {
      CHECK(slot[k] == expect[k]);
    }
  }
}

TEST_CASE("claims follow the scale factor") {
  BlockPartition p({1});
  CHECK(make_scale(p, 0.5)->claims_h2());
  CHECK(make_scale(p, 0.5)->claims_h3());
  CHECK(!make_scale(p, 2.0)->claims_h2());
  CHECK(!make_scale(p, 2.0)->claims_h3());
  CHECK(make_scale(p, -1.0)->claims_h2());
  CHECK(!make_scale(p, -1.0)->claims_h3());
}

TEST_CASE("check_h2: contraction, expansion, identity") {
  BlockPartition p({2, 1});

  auto half = make_scale(p, 0.5);
  PairSampler s1(p, 42);
  const CheckReport pass = check_h2(*half, s1, 500, 1e-10);
  CHECK(pass.passed);
  CHECK(pass.worst_violation <= 0.0);
  CHECK(!pass.witness.has_value());

  auto twice = make_scale(p, 2.0);
  PairSampler s2(p, 42);
  const CheckReport fail = check_h2(*twice, s2, 500, 1e-10);
  CHECK(!fail.passed);
  REQUIRE(fail.witness.has_value());
  const auto& [wx, wy] = *fail.witness;
  // violation for F = 2x is exactly ||x - y||_max
  CHECK(fail.worst_violation ==
        doctest::Approx(max_norm_distance(wx, wy)).epsilon(1e-12));

  auto id = make_identity(p);
  PairSampler s3(p, 42);
  const CheckReport eq = check_h2(*id, s3, 500, 0.0);
  CHECK(eq.passed);
  CHECK(eq.worst_violation == 0.0);
}

TEST_CASE("check_h3: contraction, sign flip, identity") {
  BlockPartition p({1, 1});

  auto half = make_scale(p, 0.5);
  PairSampler s1(p, 5);
  CHECK(check_h3(*half, s1, 500, 1e-10).passed);

  auto neg = make_scale(p, -1.0);
  PairSampler s2(p, 5);
  const CheckReport fail = check_h3(*neg, s2, 500, 1e-10);
  CHECK(!fail.passed);
  REQUIRE(fail.witness.has_value());
  CHECK(fail.worst_violation > 0.0);

  auto id = make_identity(p);
  PairSampler s3(p, 5);
  const CheckReport eq = check_h3(*id, s3, 500, 0.0);
  CHECK(eq.passed);
  CHECK(eq.worst_violation == 0.0);
}

TEST_CASE("checks are deterministic given the sampler seed") {
  BlockPartition p({2, 2});
  auto op = make_scale(p, 0.9);
  PairSampler a(p, 123);
  PairSampler b(p, 123);
  const CheckReport ra = check_h3(*op, a, 200, 1e-10);
  const CheckReport rb = check_h3(*op, b, 200, 1e-10);
  CHECK(ra.worst_violation == rb.worst_violation);
  CHECK(ra.passed == rb.passed);
}

TEST_CASE("h3 implies euclidean nonexpansiveness on samples") {
  const auto prob = MonotoneProblem::convex_program_qp(
      Eigen::MatrixXd::Constant(1, 1, 2.0), Eigen::VectorXd::Zero(1),
      Eigen::MatrixXd::Constant(1, 1, -1.0), Eigen::VectorXd::Ones(1));
  BlockPartition p({1, 1});
  const auto op = as_fixed_point_operator(prob, p);

  PairSampler probe(p, 77);
  const CheckReport h3 = check_h3(*op, probe, 300, 0.0);
  CHECK(h3.passed);

  PairSampler again(p, 77);
  for (int t = 0; t < 300; ++t) {
    const auto [x, y] = again.next();
    const BlockVector fx = op->apply(x);
    const BlockVector fy = op->apply(y);
    CHECK(l2_distance(fx, fy) <= l2_distance(x, y) + 1e-12);
  }
}

TEST_CASE("checker argument validation") {
  BlockPartition p({1});
  auto id = make_identity(p);
  PairSampler s(p, 1);
  CHECK_THROWS_AS(check_h2(*id, s, 0, 1e-10), InvalidParams);
  CHECK_THROWS_AS(check_h3(*id, s, 10, -1.0), InvalidParams);
}
