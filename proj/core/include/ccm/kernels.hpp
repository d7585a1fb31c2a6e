#pragma once

#include <cstdint>
#include <variant>

#include <Eigen/Dense>

#include "ccm/dataset.hpp"

namespace ccm {

/// k(x, x') = exp(-||x - x'||^2 / (2 bandwidth^2)).
struct GaussianKernel {
  double bandwidth = 1.0;
};

/// k(x, x') = <x, x'>.
struct LinearKernel {};

using InputKernel = std::variant<GaussianKernel, LinearKernel>;

/// Linear kernel on a real response.
struct LinearResponse {};

/// Kronecker delta on class labels, i.e. a linear kernel on one-hot rows.
struct OneHotResponse {
  int num_classes = 2;
};

using ResponseKernel = std::variant<LinearResponse, OneHotResponse>;

struct KernelSpec {
  InputKernel input = GaussianKernel{};
  ResponseKernel response = LinearResponse{};
};

/// Throws InvalidParameterError if bandwidth <= 0 or num_classes < 2.
void validate(const KernelSpec& spec);

struct GramMatrix {
  Eigen::MatrixXd entries;
  bool centered = false;
};

/// Gaussian Gram matrix of the rows of X after masking each coordinate l by
/// w_l, so the squared distance carries w_l^2. Each unordered pair is
/// evaluated once and mirrored, which makes the result exactly symmetric.
GramMatrix weighted_gaussian_gram(const Eigen::MatrixXd& X, const Eigen::VectorXd& w, double sigma);

/// (X diag(w)) (X diag(w))^T, exactly symmetric.
GramMatrix weighted_linear_gram(const Eigen::MatrixXd& X, const Eigen::VectorXd& w);

/// Dispatch on the input kernel.
GramMatrix weighted_gram(const Eigen::MatrixXd& X, const Eigen::VectorXd& w, const InputKernel& kernel);

/// H K H with H = I - 11^T/n, computed by subtracting row and column means
/// and adding back the grand mean. Symmetric input yields symmetric output.
GramMatrix center(const GramMatrix& K);

/// Subtracts the column means in place.
void center_columns(Eigen::MatrixXd& M);

struct ResponseGram {
  Eigen::MatrixXd Y;  ///< n x k, every column exactly zero-mean
  GramMatrix G;       ///< Y Y^T (already centered)
};

/// Response matrix (real column, or one-hot rows for classification) with
/// column means removed, together with its linear Gram matrix.
ResponseGram response_gram(const Eigen::VectorXd& y);
ResponseGram response_gram(const std::vector<int>& labels, int num_classes);
ResponseGram response_gram(const Dataset& data);

/// Centered response matrix only (skips the n x n Gram product).
Eigen::MatrixXd response_matrix(const Dataset& data);

/// Median of all pairwise Euclidean distances between rows, divided by
/// sqrt(2). Above 5000 rows a seeded uniform subsample of 5000 rows is used.
double median_bandwidth(const Eigen::MatrixXd& X, std::uint64_t seed = 0);

}  // namespace ccm
