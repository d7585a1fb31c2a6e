#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ccm::cli {

struct SelectArgs {
  std::string input;
  std::string label = "y";
  std::string task;
  long m = 0;
  std::string variant = "exact";
  std::string kernel = "gaussian";
  std::optional<double> epsilon;
  std::optional<double> sigma;
  double lambda1 = 1.0;
  double lambda2 = 1e3;
  long rff_dim = 2048;
  std::uint64_t seed = 0;
  bool standardize = false;
  double init_jitter = 0.0;
  int max_iters = 1000;
  std::string out;
  std::string format;
};

struct BenchmarkArgs {
  std::string kind;
  int trials = 10;
  std::string sizes = "10:100:10";
  std::string methods = "ccm-exact,pearson";
  std::uint64_t master_seed = 0;
  int jobs = 1;
  std::optional<double> epsilon;
  double lambda1 = 1.0;
  double lambda2 = 1e3;
  long rff_dim = 2048;
  double init_jitter = 0.0;
  std::string out;
  std::string json;
};

struct OracleArgs {
  std::string input;
  std::string label = "y";
  std::string task;
  std::string kind;
  long n = 100;
  std::uint64_t seed = 0;
  long m = 0;
  std::optional<double> epsilon;
  std::optional<double> sigma;
  bool standardize = false;
  std::size_t show = 20;
  std::string out;
};

struct GenDataArgs {
  std::string kind;
  long n = 100;
  std::uint64_t seed = 0;
  std::string out;
};

int run_select(const SelectArgs& args);
int run_benchmark(const BenchmarkArgs& args);
int run_oracle(const OracleArgs& args);
int run_gen_data(const GenDataArgs& args);

/// "a:b:step" or a comma list.
std::vector<long> parse_sizes(const std::string& text);

}  // namespace ccm::cli
