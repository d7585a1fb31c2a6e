#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ccm/ccm.hpp"

namespace ccm::cli {
namespace {

Task parse_task(const std::string& name) {
  if (name == "reg" || name == "regression") return Task::regression;
  if (name == "cls" || name == "classification") return Task::classification;
  throw InvalidParameterError("unknown task '" + name + "' (expected reg or cls)");
}

std::string_view task_name(Task task) { return task == Task::regression ? "regression" : "classification"; }

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

long parse_long(const std::string& text) {
  long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw InvalidParameterError("not an integer: '" + text + "'");
  return value;
}

std::string join(const std::vector<int>& idx, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) out += ", ";
    out += names[static_cast<std::size_t>(idx[i])];
  }
  return out;
}

void print_kv(const char* key, const std::string& value) { std::printf("  %-20s %s\n", key, value.c_str()); }
// Shortest text that reads back to the same double.
std::string show(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

void print_kv(const char* key, double value) { print_kv(key, show(value)); }

Dataset load_input(const std::string& input, const std::string& label, const std::string& task, bool standardize_x) {
  if (task.empty()) throw InvalidParameterError("--task is required with --input");
  Dataset data = load_csv(input, label, parse_task(task));
  if (standardize_x) data = standardize(data).first;
  return data;
}

}  // namespace

std::vector<long> parse_sizes(const std::string& text) {
  std::vector<long> sizes;
  const auto parts = split(text, ':');
  if (text.find(':') != std::string::npos) {
    if (parts.size() != 3) throw InvalidParameterError("--sizes range must be start:stop:step");
    const long start = parse_long(parts[0]);
    const long stop = parse_long(parts[1]);
    const long step = parse_long(parts[2]);
    if (step <= 0 || start > stop) throw InvalidParameterError("--sizes range is empty");
    for (long s = start; s <= stop; s += step) sizes.push_back(s);
  } else {
    for (const auto& p : split(text, ',')) sizes.push_back(parse_long(p));
  }
  if (sizes.empty()) throw InvalidParameterError("--sizes is empty");
  return sizes;
}

int run_select(const SelectArgs& args) {
  const Dataset data = load_input(args.input, args.label, args.task, args.standardize);

  ObjectiveConfig cfg;
  cfg.variant = parse_variant(args.variant);
  cfg.epsilon = args.epsilon.value_or(default_epsilon(data.task));
  cfg.lambda1 = args.lambda1;
  cfg.lambda2 = args.lambda2;
  cfg.num_random_features = args.rff_dim;
  cfg.m = args.m;
  cfg.seed = args.seed;
  validate(cfg, data.num_features());

  OptimizerConfig opt;
  opt.init_jitter = args.init_jitter;
  opt.max_iters = args.max_iters;
  validate(opt);

  InputKernel kernel = LinearKernel{};
  double sigma = 0.0;
  if (args.kernel == "gaussian") {
    sigma = args.sigma.value_or(0.0);
    if (!args.sigma) sigma = median_bandwidth(data.X, args.seed);
    kernel = GaussianKernel{sigma};
  } else if (args.kernel != "linear") {
    throw InvalidParameterError("unknown kernel '" + args.kernel + "'");
  }
  validate(KernelSpec{kernel, data.task == Task::regression ? ResponseKernel{LinearResponse{}}
                                                             : ResponseKernel{OneHotResponse{data.num_classes}}});

  const ResultFormat format =
      !args.format.empty() ? parse_result_format(args.format)
                           : (args.out.size() >= 4 && args.out.substr(args.out.size() - 4) == ".csv" ? ResultFormat::csv
                                                                                                      : ResultFormat::json);
  const auto names = data.feature_names.empty() ? default_feature_names(data.num_features()) : data.feature_names;

  std::printf("select configuration\n");
  print_kv("input", args.input);
  print_kv("task", std::string(task_name(data.task)));
  print_kv("samples", std::to_string(data.num_samples()));
  print_kv("features", std::to_string(data.num_features()));
  if (data.task == Task::classification) print_kv("classes", std::to_string(data.num_classes));
  print_kv("standardize", args.standardize ? "yes" : "no");
  print_kv("m", std::to_string(cfg.m));
  print_kv("variant", std::string(to_string(cfg.variant)));
  print_kv("kernel", args.kernel);
  if (args.kernel == "gaussian") print_kv("sigma", show(sigma) + (args.sigma ? " (given)" : " (median heuristic)"));
  print_kv("epsilon", cfg.epsilon);
  if (cfg.variant == Variant::soft_penalty) print_kv("lambda1", cfg.lambda1);
  if (cfg.variant == Variant::alpha) print_kv("lambda2", cfg.lambda2);
  if (cfg.variant == Variant::low_rank) print_kv("rff_dim", std::to_string(cfg.num_random_features));
  print_kv("seed", std::to_string(cfg.seed));
  print_kv("init_jitter", opt.init_jitter);
  print_kv("max_iters", std::to_string(opt.max_iters));
  print_kv("rel_tol", opt.rel_tol);
  std::fflush(stdout);

  const SelectionResult result = optimize(data, kernel, cfg, opt);

  std::printf("selected: %s\n", join(result.selected, names).c_str());
  std::printf("ranking: %s\n", join(result.ranking, names).c_str());
  std::printf("iterations: %d (%s)\n", result.iterations, result.converged ? "converged" : "iteration cap");
  std::printf("final objective: %s\n", show(result.objective_trace.back()).c_str());
  std::printf("selected trace: %s\n", show(result.selected_trace).c_str());
  if (!args.out.empty()) {
    save_result(result, args.out, format, names);
    std::printf("wrote %s\n", args.out.c_str());
  }
  return 0;
}

int run_benchmark(const BenchmarkArgs& args) {
  BenchmarkOptions opt;
  opt.kind = parse_synthetic_kind(args.kind);
  opt.trials = args.trials;
  opt.sizes.clear();
  for (long s : parse_sizes(args.sizes)) opt.sizes.push_back(s);
  opt.methods.clear();
  for (const auto& name : split(args.methods, ',')) opt.methods.push_back(parse_method(name));
  if (opt.methods.empty()) throw InvalidParameterError("--methods is empty");
  opt.master_seed = args.master_seed;
  opt.jobs = args.jobs;
  opt.epsilon = args.epsilon;
  opt.lambda1 = args.lambda1;
  opt.lambda2 = args.lambda2;
  opt.num_random_features = args.rff_dim;
  opt.optimizer.init_jitter = args.init_jitter;
  validate(opt.optimizer);
  if (opt.epsilon && !(*opt.epsilon > 0.0)) throw InvalidParameterError("--epsilon must be positive");
  if (opt.num_random_features < 1) throw InvalidParameterError("--rff-dim must be >= 1");
  if (opt.lambda1 < 0.0 || opt.lambda2 <= 0.0) throw InvalidParameterError("lambdas must be non-negative (lambda2 > 0)");
  for (auto s : opt.sizes)
    if (s < 4) throw InvalidParameterError("sample sizes must be >= 4");

  const Task task = opt.kind == SyntheticKind::additive_regression ? Task::regression : Task::classification;
  std::string methods;
  for (auto m : opt.methods) methods += (methods.empty() ? "" : ",") + std::string(to_string(m));
  std::string sizes;
  for (auto s : opt.sizes) sizes += (sizes.empty() ? "" : ",") + std::to_string(s);

  std::printf("benchmark configuration\n");
  print_kv("kind", std::string(to_string(opt.kind)));
  print_kv("sizes", sizes);
  print_kv("trials", std::to_string(opt.trials));
  print_kv("methods", methods);
  print_kv("m", std::to_string(num_true_features(opt.kind)));
  print_kv("epsilon", opt.epsilon.value_or(default_epsilon(task)));
  print_kv("sigma", "median heuristic per dataset");
  print_kv("master_seed", std::to_string(opt.master_seed));
  print_kv("jobs", std::to_string(opt.jobs));
  print_kv("init_jitter", opt.optimizer.init_jitter);
  std::fflush(stdout);

  const BenchmarkReport report = ccm::run_benchmark(opt);
  std::printf("%s", report_to_table(report).c_str());
  if (!args.out.empty()) {
    write_text(args.out, report_to_csv(report));
    std::printf("wrote %s\n", args.out.c_str());
  }
  if (!args.json.empty()) {
    write_text(args.json, report_to_json(report));
    std::printf("wrote %s\n", args.json.c_str());
  }
  return 0;
}

int run_oracle(const OracleArgs& args) {
  if (args.input.empty() == args.kind.empty()) throw InvalidParameterError("give exactly one of --input or --kind");
  Dataset data;
  if (!args.input.empty()) {
    data = load_input(args.input, args.label, args.task, args.standardize);
  } else {
    data = generate({parse_synthetic_kind(args.kind), args.n, args.seed});
    if (args.standardize) data = standardize(data).first;
  }
  const Eigen::Index d = data.num_features();
  if (args.m < 1 || args.m > d) throw InvalidParameterError("--m must be in [1, d]");
  const double count = binomial(d, args.m);
  if (count > kMaxOracleSubsets) {
    throw GuardExceededError("C(" + std::to_string(d) + ", " + std::to_string(args.m) + ") = " + show(count) +
                             " subsets exceeds the limit of 1e6");
  }
  const double epsilon = args.epsilon.value_or(default_epsilon(data.task));
  if (!(epsilon > 0.0)) throw InvalidParameterError("--epsilon must be positive");
  const double sigma = args.sigma ? *args.sigma : median_bandwidth(data.X, args.seed);
  if (!(sigma > 0.0)) throw InvalidParameterError("--sigma must be positive");

  const auto names = data.feature_names.empty() ? default_feature_names(d) : data.feature_names;
  std::printf("oracle configuration\n");
  print_kv("source", args.input.empty() ? "synthetic " + args.kind : args.input);
  print_kv("task", std::string(task_name(data.task)));
  print_kv("samples", std::to_string(data.num_samples()));
  print_kv("features", std::to_string(d));
  print_kv("m", std::to_string(args.m));
  print_kv("subsets", show(count));
  print_kv("epsilon", epsilon);
  print_kv("sigma", show(sigma) + (args.sigma ? " (given)" : " (median heuristic)"));
  print_kv("seed", std::to_string(args.seed));
  std::fflush(stdout);

  const OracleResult result = exhaustive_argmin(make_problem(data, GaussianKernel{sigma}), args.m, epsilon);
  std::printf("evaluated %zu subsets\n", result.all.size());
  std::printf("best: {%s} score %s\n", join(result.best.subset, names).c_str(), show(result.best.score).c_str());

  std::vector<std::size_t> order(result.all.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return result.all[a].score < result.all[b].score; });
  const std::size_t shown = std::min(args.show, order.size());
  if (shown > 0) std::printf("lowest %zu scores:\n", shown);
  for (std::size_t i = 0; i < shown; ++i) {
    const auto& s = result.all[order[i]];
    std::printf("  %-32s %s\n", ("{" + join(s.subset, names) + "}").c_str(), show(s.score).c_str());
  }
  if (!args.out.empty()) {
    std::string csv = "subset,score\n";
    for (const auto& s : result.all) {
      std::string key;
      for (int j : s.subset) key += (key.empty() ? "" : " ") + std::to_string(j);
      csv += key + "," + format_double(s.score) + "\n";
    }
    write_text(args.out, csv);
    std::printf("wrote %s\n", args.out.c_str());
  }
  return 0;
}

int run_gen_data(const GenDataArgs& args) {
  const SyntheticSpec spec{parse_synthetic_kind(args.kind), args.n, args.seed};
  std::printf("gen-data configuration\n");
  print_kv("kind", std::string(to_string(spec.kind)));
  print_kv("n", std::to_string(spec.n));
  print_kv("seed", std::to_string(spec.seed));
  print_kv("out", args.out);
  std::fflush(stdout);

  const Dataset data = generate(spec);
  save_csv(data, args.out);

  nlohmann::ordered_json meta;
  meta["kind"] = to_string(spec.kind);
  meta["n"] = spec.n;
  meta["d"] = data.num_features();
  meta["seed"] = spec.seed;
  meta["task"] = task_name(data.task);
  meta["true_features"] = data.true_features;
  meta["label_column"] = "y";
  if (spec.kind == SyntheticKind::xor_4class) meta["mixture_scale"] = "0.5*I covariance (sd sqrt(0.5) per axis)";
  const std::string meta_path = args.out + ".meta.json";
  write_text(meta_path, meta.dump(2) + "\n");
  std::printf("wrote %s and %s\n", args.out.c_str(), meta_path.c_str());
  return 0;
}

}  // namespace ccm::cli
