#include <cmath>
#include <numbers>
#include <set>

#include <gtest/gtest.h>

#include "ccm/errors.hpp"
#include "ccm/synthdata.hpp"

using namespace ccm;

namespace {

double abs_correlation(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Eigen::ArrayXd x = a.array() - a.mean();
  const Eigen::ArrayXd y = b.array() - b.mean();
  return std::abs((x * y).sum()) / std::sqrt(x.square().sum() * y.square().sum());
}

Eigen::VectorXd indicator(const std::vector<int>& labels, int c) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(labels.size()));
  for (std::size_t i = 0; i < labels.size(); ++i) out(static_cast<Eigen::Index>(i)) = labels[i] == c ? 1.0 : 0.0;
  return out;
}

Eigen::MatrixXd rows_of_class(const Dataset& data, int c, Eigen::Index cols) {
  std::vector<Eigen::Index> idx;
  for (std::size_t i = 0; i < data.labels.size(); ++i)
    if (data.labels[i] == c) idx.push_back(static_cast<Eigen::Index>(i));
  Eigen::MatrixXd out(static_cast<Eigen::Index>(idx.size()), cols);
  for (std::size_t r = 0; r < idx.size(); ++r) out.row(static_cast<Eigen::Index>(r)) = data.X.row(idx[r]).head(cols);
  return out;
}

Eigen::MatrixXd covariance(const Eigen::MatrixXd& M) {
  const Eigen::MatrixXd C = M.rowwise() - M.colwise().mean();
  return C.transpose() * C / static_cast<double>(M.rows() - 1);
}

}  // namespace

TEST(Synthetic, ShapesAndTrueFeatures) {
  for (SyntheticKind kind : {SyntheticKind::binary_ring, SyntheticKind::xor_4class, SyntheticKind::additive_regression}) {
    const Dataset data = generate({kind, 37, 5});
    EXPECT_EQ(data.X.rows(), 37);
    EXPECT_EQ(data.X.cols(), kSyntheticDims);
    EXPECT_EQ(static_cast<int>(data.true_features.size()), num_true_features(kind));
    for (int i = 0; i < num_true_features(kind); ++i) EXPECT_EQ(data.true_features[static_cast<std::size_t>(i)], i);
    EXPECT_NO_THROW(validate(data));
    EXPECT_EQ(parse_synthetic_kind(to_string(kind)), kind);
  }
  EXPECT_EQ(num_true_features(SyntheticKind::binary_ring), 4);
  EXPECT_EQ(num_true_features(SyntheticKind::xor_4class), 3);
  EXPECT_EQ(num_true_features(SyntheticKind::additive_regression), 4);
}

TEST(Synthetic, DeterministicPerSeed) {
  for (SyntheticKind kind : {SyntheticKind::binary_ring, SyntheticKind::xor_4class, SyntheticKind::additive_regression}) {
    const Dataset a = generate({kind, 64, 42});
    const Dataset b = generate({kind, 64, 42});
    const Dataset c = generate({kind, 64, 43});
    EXPECT_EQ(a.X, b.X);
    EXPECT_EQ(a.labels, b.labels);
    EXPECT_EQ(a.targets, b.targets);
    EXPECT_NE(a.X, c.X);
  }
}

TEST(BinaryRing, ShellConditionAndBalance) {
  const Dataset data = gen_binary_ring(101, 3);
  ASSERT_EQ(data.num_classes, 2);
  int positives = 0;
  const int plus = data.class_names[1] == "1" ? 1 : 0;
  for (Eigen::Index i = 0; i < data.X.rows(); ++i) {
    if (data.labels[static_cast<std::size_t>(i)] != plus) continue;
    ++positives;
    const double r2 = data.X.row(i).head(4).squaredNorm();
    EXPECT_GE(r2, 9.0);
    EXPECT_LE(r2, 16.0);
  }
  EXPECT_EQ(positives, 51);
}

TEST(BinaryRing, NegativeClassIsStandardNormal) {
  const Dataset data = gen_binary_ring(100000, 4);
  const int minus = data.class_names[0] == "-1" ? 0 : 1;
  const Eigen::MatrixXd neg = rows_of_class(data, minus, 10);
  EXPECT_EQ(neg.rows(), 50000);
  EXPECT_LE(neg.colwise().mean().cwiseAbs().maxCoeff(), 0.02);
}

TEST(Xor, ClassMomentsFollowTheCornerPairs) {
  const Dataset data = gen_xor_4class(100000, 6);
  ASSERT_EQ(data.num_classes, 4);
  std::set<std::pair<int, int>> tuples;
  for (int c = 0; c < 4; ++c) {
    const Eigen::MatrixXd M = rows_of_class(data, c, 3);
    EXPECT_EQ(M.rows(), 25000);
    EXPECT_LE(std::abs(M.col(0).mean()), 0.02);
    const Eigen::MatrixXd S = covariance(M);
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(S(j, j), 1.5, 0.05) << "class " << c;
    // cov = 0.5 I + v v^T with v a cube corner, so off-diagonals are +-1
    // and v1v2 = (v1v3)(v2v3).
    const double s13 = std::round(S(0, 2));
    const double s23 = std::round(S(1, 2));
    EXPECT_NEAR(S(0, 2), s13, 0.05);
    EXPECT_NEAR(S(1, 2), s23, 0.05);
    EXPECT_NEAR(S(0, 1), s13 * s23, 0.05);
    tuples.insert({static_cast<int>(s13), static_cast<int>(s23)});
  }
  EXPECT_EQ(tuples.size(), 4u);
}

TEST(AdditiveRegression, Moments) {
  const Dataset data = gen_additive_regression(100000, 8);
  const double expected = 1.0 / std::sqrt(2.0 * std::numbers::pi) + std::exp(0.5);
  EXPECT_NEAR(expected, 2.0477, 1e-4);
  EXPECT_NEAR(data.targets.mean(), expected, 0.03);
  const Eigen::ArrayXd x3 = data.X.col(2).array() - data.X.col(2).mean();
  EXPECT_NEAR(x3.square().sum() / (100000 - 1), 1.0, 0.02);
}

TEST(Synthetic, NoiseFeaturesAreUncorrelatedWithResponse) {
  const Dataset reg = gen_additive_regression(100000, 9);
  for (Eigen::Index j = 4; j < 10; ++j) EXPECT_LE(abs_correlation(reg.X.col(j), reg.targets), 0.01) << j;

  const Dataset ring = gen_binary_ring(100000, 10);
  for (Eigen::Index j = 4; j < 10; ++j) EXPECT_LE(abs_correlation(ring.X.col(j), indicator(ring.labels, 1)), 0.01);

  const Dataset xr = gen_xor_4class(100000, 11);
  for (Eigen::Index j = 3; j < 10; ++j)
    for (int c = 0; c < 4; ++c) EXPECT_LE(abs_correlation(xr.X.col(j), indicator(xr.labels, c)), 0.01);
}

TEST(Synthetic, RejectsTooFewSamples) {
  EXPECT_THROW(gen_binary_ring(1, 0), InvalidParameterError);
  EXPECT_THROW(gen_xor_4class(3, 0), InvalidParameterError);
  EXPECT_THROW(gen_additive_regression(0, 0), InvalidParameterError);
  EXPECT_THROW(parse_synthetic_kind("spiral"), InvalidParameterError);
}
