#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ccm/optimizer.hpp"
#include "ccm/synthdata.hpp"

namespace ccm {

enum class Method { ccm_exact, ccm_soft, ccm_alpha, ccm_lowrank, pearson };

std::string_view to_string(Method method);
/// "ccm-exact", "ccm-soft", "ccm-alpha", "ccm-lowrank", "pearson".
Method parse_method(std::string_view name);

/// Regularization used for each task type: 0.001 for classification, 0.1 for regression.
double default_epsilon(Task task);

/// Median of the 1-based positions of `true_features` in `ranking`.
double median_rank(const std::vector<int>& ranking, const std::vector<int>& true_features);

/// Features by descending |Pearson correlation| with the response; for
/// classification the maximum over one-hot class indicators. Constant
/// columns score 0. Ties go to the lower index.
std::vector<int> pearson_baseline(const Dataset& data);

/// Independent per-cell stream: mixes (master_seed, kind, size, trial).
std::uint64_t derive_seed(std::uint64_t master_seed, SyntheticKind kind, Eigen::Index size, int trial);

struct BenchmarkOptions {
  SyntheticKind kind = SyntheticKind::binary_ring;
  std::vector<Eigen::Index> sizes{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  int trials = 10;
  std::vector<Method> methods{Method::ccm_exact, Method::pearson};
  std::uint64_t master_seed = 0;
  int jobs = 1;
  /// Overrides default_epsilon when set.
  std::optional<double> epsilon;
  double lambda1 = 1.0;
  double lambda2 = 1e3;
  Eigen::Index num_random_features = 2048;
  OptimizerConfig optimizer;
};

struct TrialRecord {
  Method method = Method::ccm_exact;
  Eigen::Index size = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  double median_rank = 0.0;
};

struct BenchmarkReport {
  BenchmarkOptions options;
  double epsilon = 0.0;
  int m = 0;
  /// Ordered by (size, trial, method) regardless of execution order.
  std::vector<TrialRecord> records;
  /// mean_median_rank[method index][size index], methods as in options.
  std::vector<std::vector<double>> mean_median_rank;
};

/// Runs every (size, trial, method) cell. Any failure aborts the whole report.
BenchmarkReport run_benchmark(const BenchmarkOptions& options);

/// Ranking produced by one method on one dataset.
std::vector<int> rank_with(Method method, const Dataset& data, const BenchmarkOptions& options, double epsilon,
                           std::uint64_t seed);

std::string report_to_csv(const BenchmarkReport& report);
std::string report_to_json(const BenchmarkReport& report);
/// Whitespace-separated size-by-method table of mean median ranks.
std::string report_to_table(const BenchmarkReport& report);

}  // namespace ccm
