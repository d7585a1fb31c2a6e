#pragma once

#include <cstdint>
#include <variant>

#include <Eigen/Dense>

namespace ccm {

/// Random Fourier features for the Gaussian kernel of bandwidth sigma:
/// z(x)_r = scale * cos(<omega_r, x> + b_r), omega_r ~ N(0, I / sigma^2),
/// b_r ~ U[0, 2 pi), scale = sqrt(2 / D). Immutable once drawn.
struct RandomFeatureMap {
  Eigen::MatrixXd frequencies;  ///< D x d
  Eigen::VectorXd phases;       ///< D
  double scale = 0.0;
  double bandwidth = 1.0;
  std::uint64_t seed = 0;

  Eigen::Index num_features() const { return frequencies.rows(); }
  Eigen::Index input_dim() const { return frequencies.cols(); }
};

/// Exact finite feature map of the linear kernel: U_w = X diag(w), D = d.
struct LinearFeatureMap {
  Eigen::Index input_dim = 0;
};

using FeatureMap = std::variant<RandomFeatureMap, LinearFeatureMap>;

/// Deterministic in (d, D, sigma, seed).
RandomFeatureMap draw_map(Eigen::Index d, Eigen::Index D, double sigma, std::uint64_t seed);

/// n x D matrix whose row i is the feature vector of w .* x_i.
Eigen::MatrixXd embed(const RandomFeatureMap& map, const Eigen::MatrixXd& X, const Eigen::VectorXd& w);
Eigen::MatrixXd embed(const FeatureMap& map, const Eigen::MatrixXd& X, const Eigen::VectorXd& w);

/// embed() with column means removed: V_w = (I - 11^T/n) U_w.
Eigen::MatrixXd centered_embed(const FeatureMap& map, const Eigen::MatrixXd& X, const Eigen::VectorXd& w);

/// Centered features together with the phase matrix the pullback needs, so
/// both come from a single pass over X.
struct Embedding {
  Eigen::MatrixXd V;       ///< centered features, n x D
  Eigen::MatrixXd angles;  ///< (w .* x_i)^T Omega^T + b; empty for the linear map
};

Embedding centered_embedding(const FeatureMap& map, const Eigen::MatrixXd& X, const Eigen::VectorXd& w);

/// embed_pullback reusing the phase matrix of an Embedding taken at the same w.
Eigen::VectorXd embed_pullback(const FeatureMap& map, const Embedding& at, const Eigen::MatrixXd& X,
                               const Eigen::MatrixXd& P);

/// Contracts an n x D sensitivity matrix P = dF/dU_w against dU_w/dw,
/// returning the d-vector dF/dw.
Eigen::VectorXd embed_pullback(const FeatureMap& map, const Eigen::MatrixXd& X, const Eigen::VectorXd& w,
                               const Eigen::MatrixXd& P);

Eigen::Index num_features(const FeatureMap& map);

}  // namespace ccm
