#include <random>

#include <benchmark/benchmark.h>

#include "ccm/ccm.hpp"

namespace {

Eigen::MatrixXd gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd M(rows, cols);
  for (Eigen::Index i = 0; i < M.size(); ++i) M.data()[i] = normal(rng);
  return M;
}

ccm::Problem regression_problem(Eigen::Index n, Eigen::Index d) {
  ccm::Dataset data;
  data.X = gaussian_matrix(n, d, 1);
  data.targets = data.X.col(0).array().sin().matrix() + 0.5 * gaussian_matrix(n, 1, 2).col(0);
  return ccm::make_problem(data, ccm::GaussianKernel{ccm::median_bandwidth(data.X)});
}

void BM_GaussianGram(benchmark::State& state) {
  const Eigen::Index n = state.range(0);
  const Eigen::MatrixXd X = gaussian_matrix(n, 50, 3);
  const Eigen::VectorXd w = Eigen::VectorXd::Constant(50, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(ccm::weighted_gaussian_gram(X, w, 2.0));
  state.SetComplexityN(n);
}
BENCHMARK(BM_GaussianGram)->RangeMultiplier(2)->Range(64, 1024)->Complexity(benchmark::oNSquared);

void BM_ExactObjective(benchmark::State& state) {
  const ccm::Problem p = regression_problem(state.range(0), 50);
  ccm::ObjectiveConfig cfg;
  cfg.epsilon = 0.1;
  const Eigen::VectorXd w = Eigen::VectorXd::Constant(50, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(ccm::exact_objective(p, w, cfg).value);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExactObjective)->Arg(100)->Arg(250)->Arg(500)->Unit(benchmark::kMillisecond)->Complexity(benchmark::oNCubed);

void BM_LowRankObjective(benchmark::State& state) {
  const ccm::Problem p = regression_problem(500, 50);
  ccm::ObjectiveConfig cfg;
  cfg.epsilon = 0.1;
  const Eigen::VectorXd w = Eigen::VectorXd::Constant(50, 0.2);
  const ccm::FeatureMap map = ccm::draw_map(50, state.range(0), std::get<ccm::GaussianKernel>(p.kernel).bandwidth, 1);
  for (auto _ : state) benchmark::DoNotOptimize(ccm::low_rank_objective(p, w, cfg, map).value);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LowRankObjective)->RangeMultiplier(2)->Range(64, 2048)->Unit(benchmark::kMillisecond);

void BM_Project(benchmark::State& state) {
  const Eigen::Index d = state.range(0);
  const Eigen::VectorXd v = gaussian_matrix(d, 1, 4).col(0).array() + 0.5;
  const double m = static_cast<double>(d) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(ccm::project(v, m));
  state.SetComplexityN(d);
}
BENCHMARK(BM_Project)->RangeMultiplier(10)->Range(10, 10000)->Complexity(benchmark::oN);

void BM_MedianBandwidth(benchmark::State& state) {
  const Eigen::MatrixXd X = gaussian_matrix(state.range(0), 10, 5);
  for (auto _ : state) benchmark::DoNotOptimize(ccm::median_bandwidth(X));
}
BENCHMARK(BM_MedianBandwidth)->Arg(100)->Arg(1000);

void BM_OptimizeExact(benchmark::State& state) {
  const ccm::Dataset data = ccm::gen_binary_ring(state.range(0), 7);
  ccm::ObjectiveConfig cfg;
  cfg.m = 4;
  const ccm::InputKernel kernel = ccm::GaussianKernel{ccm::median_bandwidth(data.X)};
  for (auto _ : state) benchmark::DoNotOptimize(ccm::optimize(data, kernel, cfg, {}).ranking);
}
BENCHMARK(BM_OptimizeExact)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
