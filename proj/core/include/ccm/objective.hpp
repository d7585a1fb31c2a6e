#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ccm/dataset.hpp"
#include "ccm/kernels.hpp"
#include "ccm/random_features.hpp"

namespace ccm {

enum class Variant { exact, soft_penalty, alpha, low_rank };

std::string_view to_string(Variant v);
/// Accepts "exact", "soft"/"soft_penalty", "alpha", "lowrank"/"low_rank".
Variant parse_variant(std::string_view name);

struct ObjectiveConfig {
  Variant variant = Variant::exact;
  double epsilon = 1e-3;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  Eigen::Index num_random_features = 2048;
  Eigen::Index m = 1;
  std::uint64_t seed = 0;
};

/// Throws InvalidParameterError unless eps > 0, lambdas >= 0, 1 <= m <= d, D >= 1.
void validate(const ObjectiveConfig& cfg, Eigen::Index num_features);

struct ObjectiveValue {
  double value = 0.0;
  Eigen::VectorXd gradient_w;      ///< empty when the gradient was not requested
  Eigen::MatrixXd gradient_alpha;  ///< alpha variant only
};

/// Everything the objective needs that does not depend on w.
struct Problem {
  Eigen::MatrixXd X;
  Eigen::MatrixXd Y;  ///< centered response matrix, n x k
  InputKernel kernel = GaussianKernel{};

  Eigen::Index num_samples() const { return X.rows(); }
  Eigen::Index num_features() const { return X.cols(); }
};

Problem make_problem(const Dataset& data, const InputKernel& kernel);

/// Tr[Y^T (G_w + n eps I)^{-1} Y] and its gradient in w.
ObjectiveValue exact_objective(const Problem& problem, const Eigen::VectorXd& w, const ObjectiveConfig& cfg,
                               bool with_gradient = true);

/// exact_objective + lambda1 (sum(w) - m).
ObjectiveValue soft_penalty_objective(const Problem& problem, const Eigen::VectorXd& w, const ObjectiveConfig& cfg,
                                      bool with_gradient = true);

/// Tr[Y^T alpha] + lambda2 ||(G_w + n eps I) alpha - Y||_F^2, alpha is n x k.
ObjectiveValue alpha_objective(const Problem& problem, const Eigen::VectorXd& w, const Eigen::MatrixXd& alpha,
                               const ObjectiveConfig& cfg, bool with_gradient = true);

/// argmin over alpha of alpha_objective at fixed w (needs lambda2 > 0).
Eigen::MatrixXd optimal_alpha(const Problem& problem, const Eigen::VectorXd& w, const ObjectiveConfig& cfg);

/// -Tr[Y^T V_w (V_w^T V_w + n eps I_D)^{-1} V_w^T Y], the Woodbury form scaled
/// by n eps with the constant Tr[Y^T Y] dropped. The feature map is held fixed.
ObjectiveValue low_rank_objective(const Problem& problem, const Eigen::VectorXd& w, const ObjectiveConfig& cfg,
                                  const FeatureMap& features, bool with_gradient = true);

/// Undoes the scaling of low_rank_objective so it is comparable with
/// exact_objective: (Tr[Y^T Y] + value) / (n eps).
double low_rank_to_exact_scale(double low_rank_value, const Problem& problem, double epsilon);

/// Dispatches on cfg.variant. The alpha variant is evaluated at its optimal
/// alpha; the low-rank variant needs `features`.
ObjectiveValue evaluate(const Problem& problem, const Eigen::VectorXd& w, const ObjectiveConfig& cfg,
                        const FeatureMap* features, bool with_gradient = true);

/// Q(T) = Tr[Y^T (G_T + n eps I)^{-1} Y] for a feature subset, via a binary mask.
double subset_score(const Problem& problem, const std::vector<int>& subset, double epsilon);

/// Contracts a symmetric n x n weight matrix C against dK/dw_l for the
/// problem's input kernel: out_l = sum_ij C_ij dK_ij/dw_l.
/// `K` is the uncentered Gram matrix at w (used by the Gaussian kernel).
Eigen::VectorXd contract_kernel_derivative(const Problem& problem, const Eigen::VectorXd& w,
                                           const Eigen::MatrixXd& K, const Eigen::MatrixXd& C);

}  // namespace ccm
