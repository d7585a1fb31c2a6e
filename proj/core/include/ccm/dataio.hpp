#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ccm/dataset.hpp"
#include "ccm/optimizer.hpp"

namespace ccm {

/// Reads a comma-separated file whose first row is a header. `label_column`
/// is a header name or, failing that, a 0-based column index. Class labels
/// are mapped to 0..k-1 in order of first appearance. Empty cells and
/// NA/NaN markers are rejected; there is no imputation.
Dataset load_csv(const std::filesystem::path& path, const std::string& label_column, Task task);

/// Writes features then a trailing "y" column, 17 significant digits.
void save_csv(const Dataset& data, const std::filesystem::path& path);

struct StandardizationInfo {
  Eigen::VectorXd mean;
  Eigen::VectorXd stddev;     ///< sample standard deviation (n - 1 denominator)
  std::vector<bool> constant; ///< zero-variance columns, left unscaled
  bool applied = false;
};

/// Centers and scales every non-constant column to mean 0, sd 1.
std::pair<Dataset, StandardizationInfo> standardize(const Dataset& data);

enum class ResultFormat { json, csv };

ResultFormat parse_result_format(const std::string& name);

/// JSON document (schema_version 1) for a selection result.
std::string result_to_json(const SelectionResult& result, const std::vector<std::string>& feature_names = {});

/// CSV rows (feature_index, weight, rank); rank is 1-based.
std::string result_to_csv(const SelectionResult& result);

void save_result(const SelectionResult& result, const std::filesystem::path& path, ResultFormat format,
                 const std::vector<std::string>& feature_names = {});

/// Writes `contents` to `path`, throwing InvalidDataError on I/O failure.
void write_text(const std::filesystem::path& path, const std::string& contents);

/// Shortest-round-trip-safe text for a double (17 significant digits).
std::string format_double(double value);

}  // namespace ccm
