#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ccm/objective.hpp"

namespace ccm {

struct OptimizerConfig {
  int max_iters = 1000;
  double rel_tol = 1e-6;
  double armijo_beta = 0.5;
  double armijo_c = 1e-4;
  double init_step = 1.0;
  /// Magnitude of a seeded uniform perturbation added to the uniform start
  /// (m/d)1 before projecting. 0 disables it.
  double init_jitter = 0.0;
  /// Warm start; overrides the uniform start when set.
  std::optional<Eigen::VectorXd> initial_weights;
};

void validate(const OptimizerConfig& opt);

struct SelectionResult {
  Eigen::VectorXd final_weights;
  std::vector<int> ranking;   ///< feature indices by descending weight, ties by index
  std::vector<int> selected;  ///< first m entries of ranking
  std::vector<double> objective_trace;
  ObjectiveConfig config;
  OptimizerConfig optimizer;
  double bandwidth = 0.0;  ///< Gaussian sigma used, 0 for the linear kernel
  std::uint64_t seed = 0;
  int iterations = 0;
  bool converged = false;
  /// eps * Tr[G_Y (G_T + n eps I)^{-1}] at the rounded subset.
  double selected_trace = 0.0;
};

/// Euclidean projection onto {w : 0 <= w <= 1, sum(w) <= m}.
Eigen::VectorXd project(const Eigen::VectorXd& v, double m);

/// Euclidean projection onto the box [0, 1]^d.
Eigen::VectorXd project_box(const Eigen::VectorXd& v);

/// Feature indices sorted by descending weight, ties broken by ascending index.
std::vector<int> rank_features(const Eigen::VectorXd& w);

/// Indices of the m largest weights (ascending-index tie-break), sorted.
std::vector<int> round_to_subset(const Eigen::VectorXd& w, Eigen::Index m);

/// Projected gradient descent with Armijo backtracking on the configured
/// variant, followed by rounding. For the low-rank variant a feature map is
/// drawn once from cfg.seed and held fixed for the whole run.
SelectionResult optimize(const Problem& problem, const ObjectiveConfig& cfg, const OptimizerConfig& opt);

/// Builds the problem from a dataset and kernel, then optimizes.
SelectionResult optimize(const Dataset& data, const InputKernel& kernel, const ObjectiveConfig& cfg,
                         const OptimizerConfig& opt);

}  // namespace ccm
