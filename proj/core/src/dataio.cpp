#include "ccm/dataio.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "ccm/errors.hpp"

namespace ccm {
namespace {

using json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.emplace_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

bool is_missing(std::string_view cell) {
  return cell.empty() || cell == "NA" || cell == "na" || cell == "NaN" || cell == "nan" || cell == "?";
}

double parse_number(std::string_view cell, long row, long col) {
  if (is_missing(cell)) throw ParseError("missing value", row, col);
  if (cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size())
    throw ParseError("non-numeric value '" + std::string(cell) + "'", row, col);
  if (!std::isfinite(value)) throw ParseError("non-finite value", row, col);
  return value;
}

std::size_t resolve_label_column(const std::vector<std::string>& header, const std::string& label_column) {
  for (std::size_t j = 0; j < header.size(); ++j)
    if (header[j] == label_column) return j;
  std::size_t index = 0;
  const auto [ptr, ec] = std::from_chars(label_column.data(), label_column.data() + label_column.size(), index);
  if (ec == std::errc() && ptr == label_column.data() + label_column.size() && index < header.size()) return index;
  throw InvalidParameterError("label column '" + label_column + "' not found in header");
}

json config_json(const SelectionResult& r) {
  const auto& c = r.config;
  const auto& o = r.optimizer;
  return json{
      {"variant", std::string(to_string(c.variant))},
      {"epsilon", c.epsilon},
      {"lambda1", c.lambda1},
      {"lambda2", c.lambda2},
      {"num_random_features", c.num_random_features},
      {"m", c.m},
      {"seed", c.seed},
      {"kernel", r.bandwidth > 0.0 ? "gaussian" : "linear"},
      {"bandwidth", r.bandwidth},
      {"optimizer",
       {{"max_iters", o.max_iters},
        {"rel_tol", o.rel_tol},
        {"armijo_beta", o.armijo_beta},
        {"armijo_c", o.armijo_c},
        {"init_step", o.init_step},
        {"init_jitter", o.init_jitter},
        {"warm_start", o.initial_weights.has_value()}}},
  };
}

}  // namespace

std::vector<std::string> default_feature_names(Eigen::Index d) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(d));
  for (Eigen::Index j = 0; j < d; ++j) names.push_back("x" + std::to_string(j + 1));
  return names;
}

void validate(const Dataset& data) {
  const Eigen::Index n = data.X.rows();
  if (n < 1 || data.X.cols() < 1) throw InvalidDataError("dataset is empty");
  if (!data.X.allFinite()) throw InvalidDataError("feature matrix contains non-finite entries");
  if (data.task == Task::regression) {
    if (data.targets.size() != n) throw InvalidDataError("target count does not match sample count");
    if (!data.targets.allFinite()) throw InvalidDataError("targets contain non-finite entries");
  } else {
    if (static_cast<Eigen::Index>(data.labels.size()) != n)
      throw InvalidDataError("label count does not match sample count");
    if (data.num_classes < 2) throw InvalidDataError("classification needs at least two classes");
    for (int c : data.labels)
      if (c < 0 || c >= data.num_classes) throw InvalidLabelError("class label out of range");
  }
}

Dataset load_csv(const std::filesystem::path& path, const std::string& label_column, Task task) {
  std::ifstream in(path);
  if (!in) throw InvalidDataError("cannot open '" + path.string() + "'");

  std::string line;
  if (!std::getline(in, line)) throw InvalidDataError("'" + path.string() + "' is empty");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  const std::vector<std::string> header = split_row(line);
  const std::size_t label = resolve_label_column(header, label_column);
  if (header.size() < 2) throw InvalidDataError("need at least one feature column besides the label");

  Dataset data;
  data.task = task;
  for (std::size_t j = 0; j < header.size(); ++j)
    if (j != label) data.feature_names.push_back(header[j]);

  std::vector<double> values;
  std::vector<double> targets;
  std::unordered_map<std::string, int> class_index;
  long row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split_row(line);
    if (cells.size() != header.size())
      throw ParseError("expected " + std::to_string(header.size()) + " fields, found " + std::to_string(cells.size()),
                       row, static_cast<long>(cells.size()));
    for (std::size_t j = 0; j < cells.size(); ++j) {
      const long col = static_cast<long>(j) + 1;
      if (j != label) {
        values.push_back(parse_number(cells[j], row, col));
      } else if (task == Task::regression) {
        targets.push_back(parse_number(cells[j], row, col));
      } else {
        if (is_missing(cells[j])) throw ParseError("missing label", row, col);
        auto [it, inserted] = class_index.try_emplace(cells[j], static_cast<int>(data.class_names.size()));
        if (inserted) data.class_names.push_back(cells[j]);
        data.labels.push_back(it->second);
      }
    }
  }

  const Eigen::Index d = static_cast<Eigen::Index>(header.size() - 1);
  const Eigen::Index n = static_cast<Eigen::Index>(values.size()) / d;
  if (n == 0) throw InvalidDataError("'" + path.string() + "' has a header but no data rows");
  data.X = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(values.data(), n, d);
  if (task == Task::regression) {
    data.targets = Eigen::Map<Eigen::VectorXd>(targets.data(), n);
  } else {
    data.num_classes = static_cast<int>(data.class_names.size());
    if (data.num_classes < 2) throw InvalidDataError("classification data has fewer than two classes");
  }
  return data;
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidDataError("cannot write '" + path.string() + "'");
  out << contents;
  if (!out) throw InvalidDataError("write to '" + path.string() + "' failed");
}

void save_csv(const Dataset& data, const std::filesystem::path& path) {
  validate(data);
  const auto names = data.feature_names.size() == static_cast<std::size_t>(data.X.cols())
                         ? data.feature_names
                         : default_feature_names(data.X.cols());
  std::ostringstream os;
  for (const auto& name : names) os << name << ',';
  os << "y\n";
  for (Eigen::Index i = 0; i < data.X.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.X.cols(); ++j) os << format_double(data.X(i, j)) << ',';
    if (data.task == Task::regression) {
      os << format_double(data.targets(i));
    } else {
      const int c = data.labels[static_cast<std::size_t>(i)];
      os << (static_cast<std::size_t>(c) < data.class_names.size() ? data.class_names[static_cast<std::size_t>(c)]
                                                                    : std::to_string(c));
    }
    os << '\n';
  }
  write_text(path, os.str());
}

std::pair<Dataset, StandardizationInfo> standardize(const Dataset& data) {
  validate(data);
  Dataset out = data;
  StandardizationInfo info;
  const Eigen::Index n = data.X.rows();
  const Eigen::Index d = data.X.cols();
  info.mean = data.X.colwise().mean().transpose();
  info.stddev = Eigen::VectorXd::Zero(d);
  info.constant.assign(static_cast<std::size_t>(d), true);
  for (Eigen::Index j = 0; j < d; ++j) {
    const Eigen::ArrayXd centered = data.X.col(j).array() - info.mean(j);
    const double ss = centered.square().sum();
    if (n < 2 || !(ss > 0.0)) continue;
    info.stddev(j) = std::sqrt(ss / static_cast<double>(n - 1));
    info.constant[static_cast<std::size_t>(j)] = false;
    out.X.col(j) = (centered / info.stddev(j)).matrix();
  }
  info.applied = true;
  return {std::move(out), std::move(info)};
}

ResultFormat parse_result_format(const std::string& name) {
  if (name == "json") return ResultFormat::json;
  if (name == "csv") return ResultFormat::csv;
  throw InvalidParameterError("unknown result format '" + name + "'");
}

std::string result_to_json(const SelectionResult& result, const std::vector<std::string>& feature_names) {
  json doc;
  doc["schema_version"] = 1;
  doc["config"] = config_json(result);
  doc["seed"] = result.seed;
  doc["ranking"] = result.ranking;
  doc["selected"] = result.selected;
  if (!feature_names.empty()) {
    std::vector<std::string> names;
    for (int j : result.selected) names.push_back(feature_names.at(static_cast<std::size_t>(j)));
    doc["selected_names"] = names;
    doc["feature_names"] = feature_names;
  }
  doc["weights"] = std::vector<double>(result.final_weights.data(),
                                       result.final_weights.data() + result.final_weights.size());
  doc["objective_trace"] = result.objective_trace;
  doc["iterations"] = result.iterations;
  doc["converged"] = result.converged;
  doc["selected_trace"] = result.selected_trace;
  return doc.dump(2) + "\n";
}

std::string result_to_csv(const SelectionResult& result) {
  std::vector<int> rank_of(result.ranking.size());
  for (std::size_t r = 0; r < result.ranking.size(); ++r)
    rank_of[static_cast<std::size_t>(result.ranking[r])] = static_cast<int>(r) + 1;
  std::ostringstream os;
  os << "feature_index,weight,rank\n";
  for (Eigen::Index j = 0; j < result.final_weights.size(); ++j)
    os << j << ',' << format_double(result.final_weights(j)) << ',' << rank_of[static_cast<std::size_t>(j)] << '\n';
  return os.str();
}

void save_result(const SelectionResult& result, const std::filesystem::path& path, ResultFormat format,
                 const std::vector<std::string>& feature_names) {
  write_text(path, format == ResultFormat::json ? result_to_json(result, feature_names) : result_to_csv(result));
}

}  // namespace ccm
