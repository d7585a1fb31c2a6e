#include "ccm/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "ccm/errors.hpp"

namespace ccm {
namespace {

constexpr Eigen::Index kMaxBandwidthSamples = 5000;

void require_finite(const Eigen::MatrixXd& X, const char* what) {
  if (!X.allFinite()) throw InvalidDataError(std::string(what) + " contains non-finite entries");
}

void require_weights(const Eigen::MatrixXd& X, const Eigen::VectorXd& w) {
  if (X.rows() < 1 || X.cols() < 1) throw InvalidDataError("feature matrix must be non-empty");
  if (w.size() != X.cols()) throw InvalidDataError("weight vector length does not match feature count");
  require_finite(X, "feature matrix");
  if (!w.allFinite()) throw InvalidDataError("weight vector contains non-finite entries");
}

double median_of(std::vector<double>& values) {
  const std::size_t n = values.size();
  const std::size_t mid = n / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (n % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

}  // namespace

void validate(const KernelSpec& spec) {
  if (const auto* g = std::get_if<GaussianKernel>(&spec.input)) {
    if (!(g->bandwidth > 0.0) || !std::isfinite(g->bandwidth))
      throw InvalidParameterError("Gaussian bandwidth must be positive and finite");
  }
  if (const auto* r = std::get_if<OneHotResponse>(&spec.response)) {
    if (r->num_classes < 2) throw InvalidParameterError("one-hot response needs at least 2 classes");
  }
}

GramMatrix weighted_gaussian_gram(const Eigen::MatrixXd& X, const Eigen::VectorXd& w, double sigma) {
  require_weights(X, w);
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidParameterError("bandwidth must be positive and finite");

  const Eigen::Index n = X.rows();
  // Column i of Z is the masked sample w .* x_i.
  const Eigen::MatrixXd Z = (X * w.asDiagonal()).transpose();
  const double inv_two_sigma_sq = 1.0 / (2.0 * sigma * sigma);

  GramMatrix K{Eigen::MatrixXd(n, n), false};
  for (Eigen::Index j = 0; j < n; ++j) {
    K.entries(j, j) = 1.0;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double sq = (Z.col(i) - Z.col(j)).squaredNorm();
      const double k = std::exp(-sq * inv_two_sigma_sq);
      K.entries(i, j) = k;
      K.entries(j, i) = k;
    }
  }
  return K;
}

GramMatrix weighted_linear_gram(const Eigen::MatrixXd& X, const Eigen::VectorXd& w) {
  require_weights(X, w);
  const Eigen::MatrixXd Z = X * w.asDiagonal();
  GramMatrix K{Eigen::MatrixXd(X.rows(), X.rows()), false};
  K.entries.setZero();
  K.entries.selfadjointView<Eigen::Lower>().rankUpdate(Z);
  K.entries.triangularView<Eigen::StrictlyUpper>() = K.entries.transpose();
  return K;
}

GramMatrix weighted_gram(const Eigen::MatrixXd& X, const Eigen::VectorXd& w, const InputKernel& kernel) {
  if (const auto* g = std::get_if<GaussianKernel>(&kernel)) return weighted_gaussian_gram(X, w, g->bandwidth);
  return weighted_linear_gram(X, w);
}

GramMatrix center(const GramMatrix& K) {
  const Eigen::MatrixXd& A = K.entries;
  if (A.rows() != A.cols()) throw InvalidDataError("Gram matrix must be square");
  const Eigen::Index n = A.rows();
  if (n == 0) return {A, true};

  const Eigen::VectorXd row_mean = A.rowwise().mean();
  const Eigen::VectorXd col_mean = A.colwise().mean().transpose();
  const double grand = row_mean.mean();

  GramMatrix G{Eigen::MatrixXd(n, n), true};
  const bool symmetric = (A.array() == A.transpose().array()).all();
  if (symmetric) {
    // r_i + r_j is commutative in floating point, so mirroring is exact.
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = j; i < n; ++i) {
        const double v = A(i, j) - (row_mean(i) + row_mean(j)) + grand;
        G.entries(i, j) = v;
        G.entries(j, i) = v;
      }
    }
  } else {
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < n; ++i) G.entries(i, j) = A(i, j) - (row_mean(i) + col_mean(j)) + grand;
  }
  return G;
}

void center_columns(Eigen::MatrixXd& M) {
  if (M.rows() == 0) return;
  M.rowwise() -= M.colwise().mean();
}

namespace {

ResponseGram finish_response(Eigen::MatrixXd Y) {
  center_columns(Y);
  ResponseGram out;
  out.G.entries = Eigen::MatrixXd::Zero(Y.rows(), Y.rows());
  out.G.entries.selfadjointView<Eigen::Lower>().rankUpdate(Y);
  out.G.entries.triangularView<Eigen::StrictlyUpper>() = out.G.entries.transpose();
  out.G.centered = true;
  out.Y = std::move(Y);
  return out;
}

Eigen::MatrixXd one_hot(const std::vector<int>& labels, int num_classes) {
  if (num_classes < 2) throw InvalidParameterError("one-hot response needs at least 2 classes");
  Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(labels.size()), num_classes);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int c = labels[i];
    if (c < 0 || c >= num_classes)
      throw InvalidLabelError("class label " + std::to_string(c) + " outside [0, " + std::to_string(num_classes) + ")");
    Y(static_cast<Eigen::Index>(i), c) = 1.0;
  }
  return Y;
}

}  // namespace

ResponseGram response_gram(const Eigen::VectorXd& y) {
  if (!y.allFinite()) throw InvalidDataError("response contains non-finite entries");
  return finish_response(Eigen::MatrixXd(y));
}

ResponseGram response_gram(const std::vector<int>& labels, int num_classes) {
  return finish_response(one_hot(labels, num_classes));
}

ResponseGram response_gram(const Dataset& data) {
  if (data.task == Task::classification) return response_gram(data.labels, data.num_classes);
  return response_gram(data.targets);
}

Eigen::MatrixXd response_matrix(const Dataset& data) {
  Eigen::MatrixXd Y;
  if (data.task == Task::classification) {
    Y = one_hot(data.labels, data.num_classes);
  } else {
    if (!data.targets.allFinite()) throw InvalidDataError("response contains non-finite entries");
    Y = data.targets;
  }
  center_columns(Y);
  return Y;
}

double median_bandwidth(const Eigen::MatrixXd& X, std::uint64_t seed) {
  if (X.rows() < 2) throw InvalidDataError("median bandwidth needs at least two samples");
  require_finite(X, "feature matrix");

  std::vector<Eigen::Index> rows(static_cast<std::size_t>(X.rows()));
  std::iota(rows.begin(), rows.end(), Eigen::Index{0});
  if (X.rows() > kMaxBandwidthSamples) {
    std::mt19937_64 rng(seed);
    std::shuffle(rows.begin(), rows.end(), rng);
    rows.resize(kMaxBandwidthSamples);
    std::sort(rows.begin(), rows.end());
  }

  const Eigen::MatrixXd Xt = X.transpose();
  std::vector<double> dist;
  dist.reserve(rows.size() * (rows.size() - 1) / 2);
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = a + 1; b < rows.size(); ++b) dist.push_back((Xt.col(rows[a]) - Xt.col(rows[b])).norm());

  const double med = median_of(dist);
  if (!(med > 0.0)) throw DegenerateDataError("median pairwise distance is zero; samples are (mostly) identical");
  return med / std::sqrt(2.0);
}

}  // namespace ccm
