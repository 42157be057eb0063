#include <benchmark/benchmark.h>

#include <random>

#include "paraprox/engine.hpp"
#include "paraprox/monotone.hpp"
#include "paraprox/schedule.hpp"

using namespace paraprox;

namespace {

Eigen::MatrixXd random_monotone(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXd A(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) A(r, c) = dist(rng);
  }
  // PSD part plus a skew part keeps the symmetric part nonnegative.
  return 0.1 * (A.transpose() * A) + 0.5 * (A - A.transpose());
}

BlockVector random_point(const BlockPartition& p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  BlockVector x(p);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = dist(rng);
  return x;
}

void LinearResolvent(benchmark::State& state) {
  const Eigen::Index n = state.range(0);
  const Eigen::MatrixXd M = random_monotone(n, 1);
  const BlockVector z = random_point(BlockPartition({std::size_t(n)}), 2);
  for (auto _ : state) {
    BlockVector w = resolvent_linear(M, z);
    benchmark::DoNotOptimize(w.data().data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(LinearResolvent)->RangeMultiplier(4)->Range(4, 64)->Complexity();

void SaddlePatternResolvent(benchmark::State& state) {
  const Eigen::Index m = state.range(0);
  const Eigen::Index n = 4;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXd A(m, n);
  for (Eigen::Index r = 0; r < m; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) A(r, c) = dist(rng);
  }
  const MonotoneProblem qp = MonotoneProblem::convex_program_qp(
      2.0 * Eigen::MatrixXd::Identity(n, n), Eigen::VectorXd::Ones(n), A,
      -Eigen::VectorXd::Ones(m));
  const SaddlePoint z{random_point(BlockPartition({std::size_t(n)}), 4),
                      random_point(BlockPartition({std::size_t(m)}), 5)};
  for (auto _ : state) {
    SaddlePoint w = resolvent_saddle(qp, z);
    benchmark::DoNotOptimize(w.x.data().data());
  }
}
BENCHMARK(SaddlePatternResolvent)->DenseRange(2, 10, 2);

void InnerSolverVsEnumeration(benchmark::State& state) {
  const Eigen::Index n = state.range(0);
  Eigen::MatrixXd G = random_monotone(n, 6);
  G += 0.5 * Eigen::MatrixXd::Identity(n, n);
  const MonotoneProblem vi = MonotoneProblem::variational_inequality(
      G, Eigen::VectorXd::Ones(n), Eigen::VectorXd::Zero(n),
      Eigen::VectorXd::Ones(n));
  const BlockVector z =
      random_point(BlockPartition(std::vector<std::size_t>(n, 1)), 7);
  for (auto _ : state) {
    BlockVector w = iterative_resolvent(vi, z, 1e-8, 200000);
    benchmark::DoNotOptimize(w.data().data());
  }
}
BENCHMARK(InnerSolverVsEnumeration)->RangeMultiplier(2)->Range(2, 16);

void JacobiRunProx(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::vector<ProxAtom> atoms;
  for (std::size_t i = 0; i < n; ++i) {
    atoms.push_back(ProxAtom::quadratic(1.0, static_cast<double>(i)));
  }
  const BlockPartition partition{std::vector<std::size_t>(n, 1)};
  const auto op =
      as_fixed_point_operator(MonotoneProblem::separable_prox(atoms), partition);
  const BlockVector x0 = random_point(partition, 8);
  RunConfig cfg;
  cfg.tol = 1e-9;
  cfg.max_iter = 60;
  for (auto _ : state) {
    RunResult r = run_jacobi(*op, x0, cfg);
    benchmark::DoNotOptimize(r.final_point.data().data());
  }
  state.SetComplexityN(static_cast<std::int64_t>(n));
}
BENCHMARK(JacobiRunProx)->RangeMultiplier(4)->Range(4, 256)->Complexity();

void BuildAndValidateSchedule(benchmark::State& state) {
  const std::size_t horizon = static_cast<std::size_t>(state.range(0));
  ScheduleParams params;
  params.period = 4;
  params.base = {{0}, {1}, {2}};
  for (auto _ : state) {
    const Schedule s =
        build_schedule(ScheduleKind::periodic_full, 3, horizon, params);
    const ValidationReport r = validate_schedule(s, 4);
    benchmark::DoNotOptimize(&r);
  }
}
BENCHMARK(BuildAndValidateSchedule)->RangeMultiplier(8)->Range(64, 4096);

}  // namespace

BENCHMARK_MAIN();
