#include "ccm/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "ccm/dataio.hpp"
#include "ccm/errors.hpp"
#include "ccm/kernels.hpp"

namespace ccm {
namespace {

using json = nlohmann::ordered_json;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Variant variant_of(Method method) {
  switch (method) {
    case Method::ccm_soft: return Variant::soft_penalty;
    case Method::ccm_alpha: return Variant::alpha;
    case Method::ccm_lowrank: return Variant::low_rank;
    default: return Variant::exact;
  }
}

double abs_correlation(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Eigen::ArrayXd ca = a.array() - a.mean();
  const Eigen::ArrayXd cb = b.array() - b.mean();
  const double denom = std::sqrt(ca.square().sum() * cb.square().sum());
  if (!(denom > 0.0)) return 0.0;
  return std::abs((ca * cb).sum() / denom);
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::ccm_exact: return "ccm-exact";
    case Method::ccm_soft: return "ccm-soft";
    case Method::ccm_alpha: return "ccm-alpha";
    case Method::ccm_lowrank: return "ccm-lowrank";
    case Method::pearson: return "pearson";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (Method m : {Method::ccm_exact, Method::ccm_soft, Method::ccm_alpha, Method::ccm_lowrank, Method::pearson})
    if (name == to_string(m)) return m;
  throw InvalidParameterError("unknown method '" + std::string(name) + "'");
}

double default_epsilon(Task task) { return task == Task::classification ? 1e-3 : 0.1; }

double median_rank(const std::vector<int>& ranking, const std::vector<int>& true_features) {
  if (true_features.empty()) throw InvalidParameterError("true feature set is empty");
  std::vector<double> ranks;
  ranks.reserve(true_features.size());
  for (int f : true_features) {
    const auto it = std::find(ranking.begin(), ranking.end(), f);
    if (it == ranking.end()) throw InvalidParameterError("true feature missing from ranking");
    ranks.push_back(static_cast<double>(it - ranking.begin() + 1));
  }
  std::sort(ranks.begin(), ranks.end());
  const std::size_t k = ranks.size();
  return k % 2 == 1 ? ranks[k / 2] : 0.5 * (ranks[k / 2 - 1] + ranks[k / 2]);
}

std::vector<int> pearson_baseline(const Dataset& data) {
  validate(data);
  const Eigen::Index d = data.X.cols();
  Eigen::VectorXd score = Eigen::VectorXd::Zero(d);
  for (Eigen::Index l = 0; l < d; ++l) {
    const Eigen::VectorXd x = data.X.col(l);
    if (data.task == Task::regression) {
      score(l) = abs_correlation(x, data.targets);
    } else {
      for (int c = 0; c < data.num_classes; ++c) {
        Eigen::VectorXd indicator(data.X.rows());
        for (Eigen::Index i = 0; i < data.X.rows(); ++i)
          indicator(i) = data.labels[static_cast<std::size_t>(i)] == c ? 1.0 : 0.0;
        score(l) = std::max(score(l), abs_correlation(x, indicator));
      }
    }
  }
  return rank_features(score);
}

std::uint64_t derive_seed(std::uint64_t master_seed, SyntheticKind kind, Eigen::Index size, int trial) {
  std::uint64_t h = splitmix64(master_seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(kind));
  h = splitmix64(h ^ static_cast<std::uint64_t>(size));
  return splitmix64(h ^ static_cast<std::uint64_t>(trial));
}

std::vector<int> rank_with(Method method, const Dataset& data, const BenchmarkOptions& options, double epsilon,
                           std::uint64_t seed) {
  if (method == Method::pearson) return pearson_baseline(data);
  ObjectiveConfig cfg;
  cfg.variant = variant_of(method);
  cfg.epsilon = epsilon;
  cfg.lambda1 = options.lambda1;
  cfg.lambda2 = options.lambda2;
  cfg.num_random_features = options.num_random_features;
  cfg.m = static_cast<Eigen::Index>(data.true_features.size());
  cfg.seed = seed;
  const GaussianKernel kernel{median_bandwidth(data.X, seed)};
  return optimize(data, kernel, cfg, options.optimizer).ranking;
}

BenchmarkReport run_benchmark(const BenchmarkOptions& options) {
  if (options.sizes.empty()) throw InvalidParameterError("no sample sizes given");
  if (options.trials < 1) throw InvalidParameterError("trials must be >= 1");
  if (options.methods.empty()) throw InvalidParameterError("no methods given");
  if (options.jobs < 1) throw InvalidParameterError("jobs must be >= 1");

  BenchmarkReport report;
  report.options = options;
  report.m = num_true_features(options.kind);
  const Task task = options.kind == SyntheticKind::additive_regression ? Task::regression : Task::classification;
  report.epsilon = options.epsilon.value_or(default_epsilon(task));

  const std::size_t num_methods = options.methods.size();
  const std::size_t num_cells = options.sizes.size() * static_cast<std::size_t>(options.trials);
  report.records.resize(num_cells * num_methods);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t cell = next++; cell < num_cells; cell = next++) {
      {
        std::lock_guard lock(failure_mutex);
        if (failure) return;
      }
      try {
        const std::size_t s = cell / static_cast<std::size_t>(options.trials);
        const int trial = static_cast<int>(cell % static_cast<std::size_t>(options.trials));
        const Eigen::Index size = options.sizes[s];
        const std::uint64_t seed = derive_seed(options.master_seed, options.kind, size, trial);
        const Dataset data = generate({options.kind, size, seed});
        for (std::size_t k = 0; k < num_methods; ++k) {
          const Method method = options.methods[k];
          const auto ranking = rank_with(method, data, options, report.epsilon, seed);
          report.records[cell * num_methods + k] = {method, size, trial, seed, median_rank(ranking, data.true_features)};
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  if (options.jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < options.jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  report.mean_median_rank.assign(num_methods, std::vector<double>(options.sizes.size(), 0.0));
  for (std::size_t cell = 0; cell < num_cells; ++cell) {
    const std::size_t s = cell / static_cast<std::size_t>(options.trials);
    for (std::size_t k = 0; k < num_methods; ++k)
      report.mean_median_rank[k][s] += report.records[cell * num_methods + k].median_rank;
  }
  for (auto& row : report.mean_median_rank)
    for (double& v : row) v /= static_cast<double>(options.trials);
  return report;
}

std::string report_to_csv(const BenchmarkReport& report) {
  std::ostringstream os;
  os << "method,size,trial,median_rank\n";
  for (const auto& r : report.records)
    os << to_string(r.method) << ',' << r.size << ',' << r.trial << ',' << format_double(r.median_rank) << '\n';
  return os.str();
}

std::string report_to_json(const BenchmarkReport& report) {
  const auto& o = report.options;
  json doc;
  doc["schema_version"] = 1;
  doc["kind"] = std::string(to_string(o.kind));
  doc["sizes"] = o.sizes;
  doc["trials"] = o.trials;
  doc["master_seed"] = o.master_seed;
  std::vector<std::string> methods;
  for (Method m : o.methods) methods.emplace_back(to_string(m));
  doc["methods"] = methods;
  doc["config"] = {
      {"epsilon", report.epsilon},
      {"m", report.m},
      {"bandwidth", "median_heuristic"},
      {"lambda1", o.lambda1},
      {"lambda2", o.lambda2},
      {"num_random_features", o.num_random_features},
      {"max_iters", o.optimizer.max_iters},
      {"rel_tol", o.optimizer.rel_tol},
      {"init_jitter", o.optimizer.init_jitter},
      {"xor_component_covariance", "0.5*I"},
  };
  doc["optimal_median_rank"] = (report.m + 1) / 2.0;
  json curves = json::object();
  for (std::size_t k = 0; k < o.methods.size(); ++k) curves[methods[k]] = report.mean_median_rank[k];
  doc["mean_median_rank"] = curves;
  json seeds = json::array();
  for (std::size_t s = 0; s < o.sizes.size(); ++s) {
    std::vector<std::uint64_t> row;
    for (int t = 0; t < o.trials; ++t) row.push_back(derive_seed(o.master_seed, o.kind, o.sizes[s], t));
    seeds.push_back(row);
  }
  doc["seeds"] = seeds;
  return doc.dump(2) + "\n";
}

std::string report_to_table(const BenchmarkReport& report) {
  std::ostringstream os;
  os << "size";
  for (Method m : report.options.methods) os << ' ' << to_string(m);
  os << '\n';
  for (std::size_t s = 0; s < report.options.sizes.size(); ++s) {
    os << report.options.sizes[s];
    for (const auto& row : report.mean_median_rank) os << ' ' << format_double(row[s]);
    os << '\n';
  }
  return os.str();
}

}  // namespace ccm
