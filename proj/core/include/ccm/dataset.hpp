#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ccm {

enum class Task { regression, classification };

/// Feature matrix plus response. For regression `targets` holds the real
/// responses; for classification `labels` holds class indices in
/// [0, num_classes) and `class_names` maps each index back to its raw value.
struct Dataset {
  Eigen::MatrixXd X;
  Task task = Task::regression;
  Eigen::VectorXd targets;
  std::vector<int> labels;
  int num_classes = 0;
  std::vector<std::string> feature_names;
  std::vector<std::string> class_names;
  /// Known relevant features (0-based), empty unless the data is synthetic.
  std::vector<int> true_features;

  Eigen::Index num_samples() const { return X.rows(); }
  Eigen::Index num_features() const { return X.cols(); }
};

/// Names "x1", ..., "xd".
std::vector<std::string> default_feature_names(Eigen::Index d);

/// Throws InvalidDataError if the dataset is internally inconsistent
/// (shape mismatch, non-finite entries, labels out of range).
void validate(const Dataset& data);

}  // namespace ccm
