#include <cstdio>
#include <exception>

#include <CLI11.hpp>

#include "ccm/errors.hpp"
#include "commands.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

}  // namespace

int main(int argc, char** argv) {
  using namespace ccm::cli;

  CLI::App app{"Kernel feature selection by conditional covariance minimization", "ccm"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "ccm 0.1.0");

  SelectArgs sel;
  auto* select = app.add_subcommand("select", "Select m features from a CSV dataset");
  select->add_option("--input", sel.input, "CSV file with a header row")->required()->check(CLI::ExistingFile);
  select->add_option("--label", sel.label, "Label column name or 0-based index")->capture_default_str();
  select->add_option("--task", sel.task, "reg or cls")->required()->check(CLI::IsMember({"reg", "cls", "regression", "classification"}));
  select->add_option("--m", sel.m, "Number of features to select")->required();
  select->add_option("--variant", sel.variant, "exact, soft, alpha or lowrank")->capture_default_str();
  select->add_option("--kernel", sel.kernel, "gaussian or linear input kernel")->capture_default_str();
  select->add_option("--epsilon", sel.epsilon, "Regularization (default 0.001 cls, 0.1 reg)");
  select->add_option("--sigma", sel.sigma, "Gaussian bandwidth (default: median heuristic)");
  select->add_option("--lambda1", sel.lambda1, "Soft penalty weight")->capture_default_str();
  select->add_option("--lambda2", sel.lambda2, "Alpha residual weight")->capture_default_str();
  select->add_option("--rff-dim", sel.rff_dim, "Random features for lowrank")->capture_default_str();
  select->add_option("--seed", sel.seed, "Seed for random features and jitter")->capture_default_str();
  select->add_flag("--standardize", sel.standardize, "Scale features to mean 0, sd 1 first");
  select->add_option("--init-jitter", sel.init_jitter, "Seeded perturbation of the uniform start, <= 1e-3")
      ->capture_default_str();
  select->add_option("--max-iters", sel.max_iters, "Iteration cap")->capture_default_str();
  select->add_option("--out", sel.out, "Result file");
  select->add_option("--format", sel.format, "json or csv (default from --out extension)");

  BenchmarkArgs ben;
  auto* benchmark = app.add_subcommand("benchmark", "Median-rank curves on a synthetic generator");
  benchmark->add_option("--kind", ben.kind, "binary_ring, xor_4class or additive_regression")->required();
  benchmark->add_option("--trials", ben.trials, "Trials per size")->capture_default_str();
  benchmark->add_option("--sizes", ben.sizes, "start:stop:step or comma list")->capture_default_str();
  benchmark->add_option("--methods", ben.methods, "Comma list of ccm-exact, ccm-soft, ccm-alpha, ccm-lowrank, pearson")
      ->capture_default_str();
  benchmark->add_option("--master-seed", ben.master_seed, "Seed all trial seeds derive from")->capture_default_str();
  benchmark->add_option("--jobs", ben.jobs, "Worker threads")->capture_default_str();
  benchmark->add_option("--epsilon", ben.epsilon, "Override the per-task regularization");
  benchmark->add_option("--lambda1", ben.lambda1, "Soft penalty weight")->capture_default_str();
  benchmark->add_option("--lambda2", ben.lambda2, "Alpha residual weight")->capture_default_str();
  benchmark->add_option("--rff-dim", ben.rff_dim, "Random features for ccm-lowrank")->capture_default_str();
  benchmark->add_option("--init-jitter", ben.init_jitter, "Seeded perturbation of the uniform start")
      ->capture_default_str();
  benchmark->add_option("--out", ben.out, "CSV report (method,size,trial,median_rank)");
  benchmark->add_option("--json", ben.json, "JSON summary");

  OracleArgs ora;
  auto* oracle = app.add_subcommand("oracle", "Exhaustive search over all size-m subsets");
  auto* input_opt = oracle->add_option("--input", ora.input, "CSV file with a header row")->check(CLI::ExistingFile);
  oracle->add_option("--label", ora.label, "Label column name or 0-based index")->capture_default_str();
  oracle->add_option("--task", ora.task, "reg or cls")->check(CLI::IsMember({"reg", "cls", "regression", "classification"}));
  auto* kind_opt = oracle->add_option("--kind", ora.kind, "Synthetic generator instead of --input");
  input_opt->excludes(kind_opt);
  oracle->add_option("--n", ora.n, "Samples for --kind")->capture_default_str();
  oracle->add_option("--seed", ora.seed, "Seed for --kind and bandwidth subsampling")->capture_default_str();
  oracle->add_option("--m", ora.m, "Subset size")->required();
  oracle->add_option("--epsilon", ora.epsilon, "Regularization (default 0.001 cls, 0.1 reg)");
  oracle->add_option("--sigma", ora.sigma, "Gaussian bandwidth (default: median heuristic)");
  oracle->add_flag("--standardize", ora.standardize, "Scale features to mean 0, sd 1 first");
  oracle->add_option("--show", ora.show, "Number of best subsets to print")->capture_default_str();
  oracle->add_option("--out", ora.out, "CSV with the full score table");

  GenDataArgs gen;
  auto* gen_data = app.add_subcommand("gen-data", "Write a synthetic dataset as CSV");
  gen_data->add_option("--kind", gen.kind, "binary_ring, xor_4class or additive_regression")->required();
  gen_data->add_option("--n", gen.n, "Samples")->capture_default_str();
  gen_data->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
  gen_data->add_option("--out", gen.out, "CSV path; metadata goes to <out>.meta.json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: %s\n\n", e.what());
    const auto active = app.get_subcommands();
    std::fputs((active.empty() ? app.help() : active.back()->help()).c_str(), stderr);
    return kExitValidation;
  }

  try {
    if (*select) return run_select(sel);
    if (*benchmark) return run_benchmark(ben);
    if (*oracle) return run_oracle(ora);
    if (*gen_data) return run_gen_data(gen);
  } catch (const ccm::NumericalError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return kExitNumerical;
  } catch (const ccm::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
  return 0;
}
