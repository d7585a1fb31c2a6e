#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "ccm/errors.hpp"
#include "ccm/objective.hpp"
#include "support/oracles.hpp"

using namespace ccm;
using ccm::testing::central_differences;
using ccm::testing::random_matrix;
using ccm::testing::random_weights;
using ccm::testing::relative_error;

namespace {

struct Instance {
  Problem problem;
  Eigen::VectorXd w;
  ObjectiveConfig cfg;
};

// n <= 30, d <= 8, alternating regression / 3-class responses; every third
// instance has one zero weight.
Instance random_instance(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> n_dist(6, 30);
  std::uniform_int_distribution<int> d_dist(2, 8);
  std::uniform_real_distribution<double> eps_dist(0.05, 0.5);
  const Eigen::Index n = n_dist(rng);
  const Eigen::Index d = d_dist(rng);

  Dataset data;
  data.X = random_matrix(n, d, rng);
  if (seed % 2 == 0) {
    data.task = Task::regression;
    data.targets = data.X.col(0).array().sin() + 0.3 * random_matrix(n, 1, rng).col(0).array();
  } else {
    data.task = Task::classification;
    data.num_classes = 3;
    for (Eigen::Index i = 0; i < n; ++i) data.labels.push_back(static_cast<int>(i % 3));
  }
  Instance inst{make_problem(data, GaussianKernel{median_bandwidth(data.X)}), random_weights(d, rng), {}};
  if (seed % 3 == 0) inst.w(static_cast<Eigen::Index>(seed % static_cast<std::uint64_t>(d))) = 0.0;
  inst.cfg.epsilon = eps_dist(rng);
  inst.cfg.lambda1 = 0.7;
  inst.cfg.lambda2 = 2.0;
  inst.cfg.m = 1;
  return inst;
}

Eigen::MatrixXd dense_A(const Problem& p, const Eigen::VectorXd& w, double eps) {
  Eigen::MatrixXd A = ccm::testing::dense_center(weighted_gram(p.X, w, p.kernel).entries);
  A.diagonal().array() += static_cast<double>(p.num_samples()) * eps;
  return A;
}

}  // namespace

TEST(ExactObjective, ZeroWeightsClosedForm) {
  Dataset data;
  data.X = Eigen::MatrixXd::Zero(2, 1);
  data.X << 0.0, 1.0;
  data.targets = Eigen::Vector2d(1.0, -1.0);
  const Problem p = make_problem(data, GaussianKernel{1.0});
  ObjectiveConfig cfg;
  cfg.epsilon = 0.5;
  EXPECT_NEAR(exact_objective(p, Eigen::VectorXd::Zero(1), cfg).value, 2.0, 1e-14);

  std::mt19937_64 rng(1);
  const Problem q = make_problem(
      Dataset{random_matrix(11, 3, rng), Task::regression, random_matrix(11, 1, rng).col(0), {}, 0, {}, {}, {}},
      GaussianKernel{0.8});
  cfg.epsilon = 0.2;
  EXPECT_NEAR(exact_objective(q, Eigen::VectorXd::Zero(3), cfg).value, q.Y.squaredNorm() / (11 * 0.2), 1e-12);
}

TEST(ExactObjective, MatchesExplicitInverse) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance inst = random_instance(seed);
    const double ridge = static_cast<double>(inst.problem.num_samples()) * inst.cfg.epsilon;
    const double ref = ccm::testing::dense_objective(weighted_gram(inst.problem.X, inst.w, inst.problem.kernel).entries,
                                                     inst.problem.Y, ridge);
    EXPECT_NEAR(exact_objective(inst.problem, inst.w, inst.cfg).value, ref, 1e-10 * ref);
  }
}

TEST(ExactObjective, GradientMatchesFiniteDifferences) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = random_instance(seed);
    const auto value = exact_objective(inst.problem, inst.w, inst.cfg);
    auto f = [&](const Eigen::VectorXd& v) { return exact_objective(inst.problem, v, inst.cfg, false).value; };
    EXPECT_LE(relative_error(value.gradient_w, central_differences(f, inst.w)), 1e-5) << "seed " << seed;
    for (Eigen::Index l = 0; l < inst.w.size(); ++l)
      if (inst.w(l) == 0.0) EXPECT_EQ(value.gradient_w(l), 0.0);
  }
}

TEST(ExactObjective, LinearKernelGradient) {
  std::mt19937_64 rng(2);
  Dataset data{random_matrix(15, 4, rng), Task::regression, random_matrix(15, 1, rng).col(0), {}, 0, {}, {}, {}};
  const Problem p = make_problem(data, LinearKernel{});
  ObjectiveConfig cfg;
  cfg.epsilon = 0.1;
  const Eigen::VectorXd w = random_weights(4, rng);
  auto f = [&](const Eigen::VectorXd& v) { return exact_objective(p, v, cfg, false).value; };
  EXPECT_LE(relative_error(exact_objective(p, w, cfg).gradient_w, central_differences(f, w)), 1e-5);
}

TEST(ExactObjective, BinaryMaskEqualsColumnSubset) {
  std::mt19937_64 rng(3);
  const Eigen::MatrixXd X = random_matrix(20, 6, rng);
  const Eigen::VectorXd y = X.col(1).array().square() + 0.1 * random_matrix(20, 1, rng).col(0).array();
  const double sigma = 1.4;
  const std::vector<int> active{1, 3, 4};
  Eigen::VectorXd w = Eigen::VectorXd::Zero(6);
  for (int l : active) w(l) = 1.0;
  ObjectiveConfig cfg;
  cfg.epsilon = 0.05;

  const Problem full = make_problem(Dataset{X, Task::regression, y, {}, 0, {}, {}, {}}, GaussianKernel{sigma});
  const Problem sub = make_problem(
      Dataset{ccm::testing::column_subset(X, active), Task::regression, y, {}, 0, {}, {}, {}}, GaussianKernel{sigma});
  const double a = exact_objective(full, w, cfg).value;
  const double b = exact_objective(sub, Eigen::VectorXd::Ones(3), cfg).value;
  EXPECT_NEAR(a, b, 1e-10 * b);
  EXPECT_NEAR(subset_score(full, active, cfg.epsilon), b, 1e-10 * b);
}

TEST(ExactObjective, PositiveForNonConstantResponse) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance inst = random_instance(seed);
    EXPECT_GT(exact_objective(inst.problem, inst.w, inst.cfg).value, 0.0);
  }
}

TEST(ExactObjective, ResponseScalingAndArgmin) {
  std::mt19937_64 rng(4);
  const Eigen::MatrixXd X = random_matrix(18, 4, rng);
  const Eigen::VectorXd y = X.col(2) + 0.2 * random_matrix(18, 1, rng).col(0);
  const double c = -3.0;
  const Problem p = make_problem(Dataset{X, Task::regression, y, {}, 0, {}, {}, {}}, GaussianKernel{1.2});
  const Problem q = make_problem(Dataset{X, Task::regression, c * y, {}, 0, {}, {}, {}}, GaussianKernel{1.2});
  ObjectiveConfig cfg;
  cfg.epsilon = 0.1;

  int argmin_p = -1;
  int argmin_q = -1;
  double best_p = INFINITY;
  double best_q = INFINITY;
  int idx = 0;
  for (double a : {0.0, 0.5, 1.0})
    for (double b : {0.0, 0.5, 1.0})
      for (double e : {0.0, 1.0}) {
        const Eigen::Vector4d w(a, b, e, 1.0 - e);
        const double vp = exact_objective(p, w, cfg).value;
        const double vq = exact_objective(q, w, cfg).value;
        EXPECT_NEAR(vq, c * c * vp, 1e-12 * std::abs(vq));
        if (vp < best_p) best_p = vp, argmin_p = idx;
        if (vq < best_q) best_q = vq, argmin_q = idx;
        ++idx;
      }
  EXPECT_EQ(argmin_p, argmin_q);
}

TEST(ExactObjective, RejectsNonFiniteWeights) {
  const Instance inst = random_instance(1);
  Eigen::VectorXd w = inst.w;
  w(0) = std::nan("");
  EXPECT_THROW(exact_objective(inst.problem, w, inst.cfg), InvalidDataError);
}

TEST(SoftPenaltyObjective, PenaltyAlgebra) {
  Instance inst = random_instance(4);
  const double exact = exact_objective(inst.problem, inst.w, inst.cfg).value;

  inst.cfg.lambda1 = 0.0;
  const auto zero = soft_penalty_objective(inst.problem, inst.w, inst.cfg);
  EXPECT_EQ(zero.value, exact);

  inst.cfg.lambda1 = 5.0;
  inst.cfg.m = 1;
  Eigen::VectorXd tight = Eigen::VectorXd::Zero(inst.w.size());
  tight(0) = 1.0;
  EXPECT_NEAR(soft_penalty_objective(inst.problem, tight, inst.cfg).value,
              exact_objective(inst.problem, tight, inst.cfg).value, 1e-12);

  inst.cfg.lambda1 = 1.0;
  Eigen::VectorXd over = Eigen::VectorXd::Constant(inst.w.size(), 3.0 / static_cast<double>(inst.w.size()));
  EXPECT_NEAR(soft_penalty_objective(inst.problem, over, inst.cfg).value -
                  exact_objective(inst.problem, over, inst.cfg).value,
              2.0, 1e-12);
}

TEST(SoftPenaltyObjective, GradientMatchesFiniteDifferences) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = random_instance(seed);
    const auto value = soft_penalty_objective(inst.problem, inst.w, inst.cfg);
    auto f = [&](const Eigen::VectorXd& v) { return soft_penalty_objective(inst.problem, v, inst.cfg, false).value; };
    EXPECT_LE(relative_error(value.gradient_w, central_differences(f, inst.w)), 1e-5) << "seed " << seed;
    for (Eigen::Index l = 0; l < inst.w.size(); ++l)
      if (inst.w(l) == 0.0) EXPECT_EQ(value.gradient_w(l), inst.cfg.lambda1);
  }
}

TEST(AlphaObjective, ExactSolutionRecoversExactValue) {
  const Instance inst = random_instance(5);
  const Eigen::MatrixXd alpha = dense_A(inst.problem, inst.w, inst.cfg.epsilon).llt().solve(inst.problem.Y);
  const double exact = exact_objective(inst.problem, inst.w, inst.cfg).value;
  EXPECT_NEAR(alpha_objective(inst.problem, inst.w, alpha, inst.cfg).value, exact, 1e-10 * exact);
}

TEST(AlphaObjective, ZeroAlpha) {
  const Instance inst = random_instance(6);
  const Eigen::MatrixXd alpha = Eigen::MatrixXd::Zero(inst.problem.Y.rows(), inst.problem.Y.cols());
  EXPECT_NEAR(alpha_objective(inst.problem, inst.w, alpha, inst.cfg).value,
              inst.cfg.lambda2 * inst.problem.Y.squaredNorm(), 1e-12);
}

TEST(AlphaObjective, GradientsMatchFiniteDifferences) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = random_instance(seed);
    std::mt19937_64 rng(seed + 100);
    const Eigen::MatrixXd alpha = 0.1 * random_matrix(inst.problem.Y.rows(), inst.problem.Y.cols(), rng);
    const auto value = alpha_objective(inst.problem, inst.w, alpha, inst.cfg);

    auto fw = [&](const Eigen::VectorXd& v) { return alpha_objective(inst.problem, v, alpha, inst.cfg, false).value; };
    EXPECT_LE(relative_error(value.gradient_w, central_differences(fw, inst.w)), 1e-5) << "seed " << seed;
    for (Eigen::Index l = 0; l < inst.w.size(); ++l)
      if (inst.w(l) == 0.0) EXPECT_EQ(value.gradient_w(l), 0.0);

    const Eigen::Index rows = alpha.rows();
    const Eigen::Index cols = alpha.cols();
    auto fa = [&](const Eigen::VectorXd& flat) {
      return alpha_objective(inst.problem, inst.w, Eigen::Map<const Eigen::MatrixXd>(flat.data(), rows, cols),
                             inst.cfg, false)
          .value;
    };
    const Eigen::VectorXd flat = Eigen::Map<const Eigen::VectorXd>(alpha.data(), alpha.size());
    const Eigen::VectorXd ga = Eigen::Map<const Eigen::VectorXd>(value.gradient_alpha.data(), alpha.size());
    EXPECT_LE(relative_error(ga, central_differences(fa, flat)), 1e-5) << "seed " << seed;
  }
}

TEST(AlphaObjective, OptimalAlphaIsStationary) {
  const Instance inst = random_instance(7);
  const Eigen::MatrixXd alpha = optimal_alpha(inst.problem, inst.w, inst.cfg);
  const auto v = alpha_objective(inst.problem, inst.w, alpha, inst.cfg);
  EXPECT_LE(v.gradient_alpha.norm(), 1e-8 * inst.problem.Y.norm());
}

TEST(AlphaObjective, LargePenaltyApproachesExact) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Instance inst = random_instance(seed);
    inst.cfg.lambda2 = 1e3;
    // Direct solve of the stationarity system A^2 alpha = A Y - Y / (2 lambda2).
    const Eigen::MatrixXd A = dense_A(inst.problem, inst.w, inst.cfg.epsilon);
    const Eigen::MatrixXd rhs = A * inst.problem.Y - inst.problem.Y / (2.0 * inst.cfg.lambda2);
    const Eigen::MatrixXd alpha = (A * A).partialPivLu().solve(rhs);
    const double relaxed = alpha_objective(inst.problem, inst.w, alpha, inst.cfg).value;
    const double exact = exact_objective(inst.problem, inst.w, inst.cfg).value;
    EXPECT_LE(std::abs(relaxed - exact), 0.01 * exact) << "seed " << seed;
  }
}

TEST(LowRankObjective, ExactForLinearFeatureMap) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::Index n = 25;
    const Eigen::Index d = 3 + trial;
    Dataset data{random_matrix(n, d, rng), Task::regression, random_matrix(n, 1, rng).col(0), {}, 0, {}, {}, {}};
    const Problem p = make_problem(data, LinearKernel{});
    ObjectiveConfig cfg;
    cfg.epsilon = 0.05;
    const Eigen::VectorXd w = random_weights(d, rng);
    const double exact = exact_objective(p, w, cfg).value;
    const double low = low_rank_objective(p, w, cfg, LinearFeatureMap{d}).value;
    EXPECT_NEAR(low_rank_to_exact_scale(low, p, cfg.epsilon), exact, 1e-8 * exact);
  }
}

TEST(LowRankObjective, ZeroWeightsGiveZero) {
  const Instance inst = random_instance(9);
  const FeatureMap map = draw_map(inst.problem.num_features(), 40, 1.0, 3);
  const auto v = low_rank_objective(inst.problem, Eigen::VectorXd::Zero(inst.problem.num_features()), inst.cfg, map);
  EXPECT_EQ(v.value, 0.0);
}

TEST(LowRankObjective, MatchesDenseWoodburyOnBothPaths) {
  for (Eigen::Index D : {8, 60}) {
    const Instance inst = random_instance(10);  // n <= 30, so D = 60 takes the n x n path
    const FeatureMap map = draw_map(inst.problem.num_features(), D, 1.1, 4);
    const Eigen::MatrixXd V = centered_embed(map, inst.problem.X, inst.w);
    const double ridge = static_cast<double>(inst.problem.num_samples()) * inst.cfg.epsilon;
    const Eigen::MatrixXd M = V.transpose() * V + ridge * Eigen::MatrixXd::Identity(D, D);
    const double ref = -(inst.problem.Y.transpose() * V * M.inverse() * V.transpose() * inst.problem.Y).trace();
    EXPECT_NEAR(low_rank_objective(inst.problem, inst.w, inst.cfg, map).value, ref, 1e-10 * std::abs(ref));
  }
}

TEST(LowRankObjective, GradientMatchesFiniteDifferences) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = random_instance(seed);
    const Eigen::Index D = seed % 2 ? 12 : 48;
    const FeatureMap map = draw_map(inst.problem.num_features(), D, median_bandwidth(inst.problem.X), seed);
    const auto value = low_rank_objective(inst.problem, inst.w, inst.cfg, map);
    auto f = [&](const Eigen::VectorXd& v) { return low_rank_objective(inst.problem, v, inst.cfg, map, false).value; };
    EXPECT_LE(relative_error(value.gradient_w, central_differences(f, inst.w)), 1e-5) << "seed " << seed;
  }
}

TEST(LowRankObjective, RandomFeaturesApproximateExactValue) {
  std::mt19937_64 rng(11);
  const Eigen::Index n = 100;
  Dataset data{random_matrix(n, 10, rng), Task::regression, {}, {}, 0, {}, {}, {}};
  data.targets = data.X.col(0).array().sin() + data.X.col(1).array() + 0.5 * random_matrix(n, 1, rng).col(0).array();
  const double sigma = median_bandwidth(data.X);
  const Problem p = make_problem(data, GaussianKernel{sigma});
  ObjectiveConfig cfg;
  cfg.epsilon = 0.1;
  const Eigen::VectorXd w = Eigen::VectorXd::Constant(10, 0.4);
  const double exact = exact_objective(p, w, cfg).value;
  const double low = low_rank_objective(p, w, cfg, draw_map(10, 4096, sigma, 1)).value;
  EXPECT_LE(std::abs(low_rank_to_exact_scale(low, p, cfg.epsilon) - exact) / exact, 0.05);
}

TEST(ObjectiveConfigValidation, Invariants) {
  ObjectiveConfig cfg;
  cfg.m = 2;
  EXPECT_NO_THROW(validate(cfg, 5));
  cfg.epsilon = 0.0;
  EXPECT_THROW(validate(cfg, 5), InvalidParameterError);
  cfg.epsilon = 0.1;
  cfg.m = 6;
  EXPECT_THROW(validate(cfg, 5), InvalidParameterError);
  cfg.m = 2;
  cfg.lambda1 = -1.0;
  EXPECT_THROW(validate(cfg, 5), InvalidParameterError);
  cfg.lambda1 = 0.0;
  cfg.num_random_features = 0;
  EXPECT_THROW(validate(cfg, 5), InvalidParameterError);
  cfg.num_random_features = 10;
  cfg.variant = Variant::alpha;
  EXPECT_THROW(validate(cfg, 5), InvalidParameterError);
}

TEST(Variant, ParseRoundTrip) {
  for (Variant v : {Variant::exact, Variant::soft_penalty, Variant::alpha, Variant::low_rank})
    EXPECT_EQ(parse_variant(to_string(v)), v);
  EXPECT_THROW(parse_variant("newton"), InvalidParameterError);
}
