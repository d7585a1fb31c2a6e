#include "ccm/synthdata.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string>

#include "ccm/errors.hpp"

namespace ccm {
namespace {

constexpr int kMaxRejections = 100000;

Dataset empty_dataset(Eigen::Index n, Task task) {
  Dataset data;
  data.X.resize(n, kSyntheticDims);
  data.task = task;
  data.feature_names = default_feature_names(kSyntheticDims);
  return data;
}

// Round-robin class assignment followed by a seeded shuffle.
std::vector<int> balanced_labels(Eigen::Index n, int num_classes, std::mt19937_64& rng) {
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = static_cast<int>(i % num_classes);
  std::shuffle(labels.begin(), labels.end(), rng);
  return labels;
}

}  // namespace

std::string_view to_string(SyntheticKind kind) {
  switch (kind) {
    case SyntheticKind::binary_ring: return "binary_ring";
    case SyntheticKind::xor_4class: return "xor_4class";
    case SyntheticKind::additive_regression: return "additive_regression";
  }
  return "unknown";
}

SyntheticKind parse_synthetic_kind(std::string_view name) {
  if (name == "binary_ring") return SyntheticKind::binary_ring;
  if (name == "xor_4class") return SyntheticKind::xor_4class;
  if (name == "additive_regression") return SyntheticKind::additive_regression;
  throw InvalidParameterError("unknown synthetic data kind '" + std::string(name) + "'");
}

int num_true_features(SyntheticKind kind) { return kind == SyntheticKind::xor_4class ? 3 : 4; }

Dataset gen_binary_ring(Eigen::Index n, std::uint64_t seed) {
  if (n < 2) throw InvalidParameterError("binary_ring needs n >= 2");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  // class 1 is Y = +1, class 0 is Y = -1
  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  std::fill(labels.begin(), labels.begin() + (n + 1) / 2, 1);
  std::shuffle(labels.begin(), labels.end(), rng);

  Dataset data = empty_dataset(n, Task::classification);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (labels[static_cast<std::size_t>(i)] == 1) {
      bool accepted = false;
      for (int attempt = 0; attempt < kMaxRejections && !accepted; ++attempt) {
        double r2 = 0.0;
        for (int j = 0; j < 4; ++j) {
          data.X(i, j) = normal(rng);
          r2 += data.X(i, j) * data.X(i, j);
        }
        accepted = r2 >= 9.0 && r2 <= 16.0;
      }
      if (!accepted) throw NumericalError("binary_ring rejection sampling exceeded 1e5 attempts");
      for (Eigen::Index j = 4; j < kSyntheticDims; ++j) data.X(i, j) = normal(rng);
    } else {
      for (Eigen::Index j = 0; j < kSyntheticDims; ++j) data.X(i, j) = normal(rng);
    }
  }
  data.labels = std::move(labels);
  data.num_classes = 2;
  data.class_names = {"-1", "1"};
  data.true_features = {0, 1, 2, 3};
  return data;
}

Dataset gen_xor_4class(Eigen::Index n, std::uint64_t seed) {
  if (n < 4) throw InvalidParameterError("xor_4class needs n >= 4");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  const double sd = std::sqrt(0.5);

  // Representative corner (t1, t2, 1) of each antipodal pair; its tuple
  // (v1 v3, v2 v3) is (t1, t2).
  constexpr std::array<std::array<double, 3>, 4> corners{{
      {1.0, 1.0, 1.0}, {1.0, -1.0, 1.0}, {-1.0, 1.0, 1.0}, {-1.0, -1.0, 1.0}}};

  Dataset data = empty_dataset(n, Task::classification);
  data.labels = balanced_labels(n, 4, rng);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& v = corners[static_cast<std::size_t>(data.labels[static_cast<std::size_t>(i)])];
    const double sign = coin(rng) ? 1.0 : -1.0;
    for (int j = 0; j < 3; ++j) data.X(i, j) = sign * v[static_cast<std::size_t>(j)] + sd * normal(rng);
    for (Eigen::Index j = 3; j < kSyntheticDims; ++j) data.X(i, j) = normal(rng);
  }
  data.num_classes = 4;
  data.class_names = {"0", "1", "2", "3"};
  data.true_features = {0, 1, 2};
  return data;
}

Dataset gen_additive_regression(Eigen::Index n, std::uint64_t seed) {
  if (n < 1) throw InvalidParameterError("additive_regression needs n >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  Dataset data = empty_dataset(n, Task::regression);
  data.targets.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < kSyntheticDims; ++j) data.X(i, j) = normal(rng);
    const double noise = normal(rng);
    data.targets(i) = -2.0 * std::sin(2.0 * data.X(i, 0)) + std::max(data.X(i, 1), 0.0) + data.X(i, 2) +
                      std::exp(-data.X(i, 3)) + noise;
  }
  data.true_features = {0, 1, 2, 3};
  return data;
}

Dataset generate(const SyntheticSpec& spec) {
  switch (spec.kind) {
    case SyntheticKind::binary_ring: return gen_binary_ring(spec.n, spec.seed);
    case SyntheticKind::xor_4class: return gen_xor_4class(spec.n, spec.seed);
    case SyntheticKind::additive_regression: return gen_additive_regression(spec.n, spec.seed);
  }
  throw InvalidParameterError("unknown synthetic data kind");
}

}  // namespace ccm
