#include "ccm/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "ccm/errors.hpp"

namespace ccm {
namespace {

constexpr int kMaxBacktracks = 60;
constexpr int kMaxBisection = 200;
constexpr double kBisectionTol = 1e-12;

double clipped_sum(const Eigen::VectorXd& v, double tau) {
  return (v.array() - tau).max(0.0).min(1.0).sum();
}

bool uses_box_only(Variant v) { return v == Variant::soft_penalty; }

Eigen::VectorXd initial_point(const Problem& problem, const ObjectiveConfig& cfg, const OptimizerConfig& opt) {
  const Eigen::Index d = problem.num_features();
  const double m = static_cast<double>(cfg.m);
  Eigen::VectorXd w;
  if (opt.initial_weights) {
    w = *opt.initial_weights;
    if (w.size() != d) throw InvalidParameterError("initial weights have the wrong length");
  } else {
    w = Eigen::VectorXd::Constant(d, m / static_cast<double>(d));
    if (opt.init_jitter > 0.0) {
      std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
      std::uniform_real_distribution<double> jitter(-opt.init_jitter, opt.init_jitter);
      for (Eigen::Index l = 0; l < d; ++l) w(l) += jitter(rng);
    }
  }
  return uses_box_only(cfg.variant) ? project_box(w) : project(w, m);
}

}  // namespace

void validate(const OptimizerConfig& opt) {
  if (opt.max_iters < 1) throw InvalidParameterError("max_iters must be >= 1");
  if (!(opt.rel_tol > 0.0)) throw InvalidParameterError("rel_tol must be positive");
  if (!(opt.armijo_beta > 0.0 && opt.armijo_beta < 1.0)) throw InvalidParameterError("armijo_beta must be in (0, 1)");
  if (!(opt.armijo_c > 0.0 && opt.armijo_c < 1.0)) throw InvalidParameterError("armijo_c must be in (0, 1)");
  if (!(opt.init_step > 0.0) || !std::isfinite(opt.init_step)) throw InvalidParameterError("init_step must be positive");
  if (!(opt.init_jitter >= 0.0 && opt.init_jitter <= 1e-3))
    throw InvalidParameterError("init_jitter must be in [0, 1e-3]");
}

Eigen::VectorXd project_box(const Eigen::VectorXd& v) { return v.array().max(0.0).min(1.0).matrix(); }

Eigen::VectorXd project(const Eigen::VectorXd& v, double m) {
  Eigen::VectorXd w = project_box(v);
  if (w.sum() <= m) return w;

  // sum_i clip(v_i - tau, 0, 1) is continuous and non-increasing in tau.
  double lo = 0.0;
  double hi = v.maxCoeff();
  for (int it = 0; it < kMaxBisection && hi - lo > kBisectionTol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (clipped_sum(v, mid) > m)
      lo = mid;
    else
      hi = mid;
  }
  // hi always satisfies the sum constraint
  return (v.array() - hi).max(0.0).min(1.0).matrix();
}

std::vector<int> rank_features(const Eigen::VectorXd& w) {
  std::vector<int> order(static_cast<std::size_t>(w.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return w(a) > w(b); });
  return order;
}

std::vector<int> round_to_subset(const Eigen::VectorXd& w, Eigen::Index m) {
  if (m < 0 || m > w.size()) throw InvalidParameterError("m must satisfy 0 <= m <= d");
  std::vector<int> ranking = rank_features(w);
  ranking.resize(static_cast<std::size_t>(m));
  std::sort(ranking.begin(), ranking.end());
  return ranking;
}

SelectionResult optimize(const Problem& problem, const ObjectiveConfig& cfg, const OptimizerConfig& opt) {
  validate(cfg, problem.num_features());
  validate(opt);

  const double m = static_cast<double>(cfg.m);
  const bool box_only = uses_box_only(cfg.variant);
  auto feasible = [&](const Eigen::VectorXd& v) { return box_only ? project_box(v) : project(v, m); };

  std::optional<FeatureMap> features;
  if (cfg.variant == Variant::low_rank) {
    if (const auto* g = std::get_if<GaussianKernel>(&problem.kernel))
      features = draw_map(problem.num_features(), cfg.num_random_features, g->bandwidth, cfg.seed);
    else
      features = LinearFeatureMap{problem.num_features()};
  }
  const FeatureMap* fmap = features ? &*features : nullptr;

  // The alpha variant alternates an exact alpha solve with a projected w step
  // on the objective at that alpha; the rest are plain PGD.
  Eigen::MatrixXd alpha;
  auto value_at = [&](const Eigen::VectorXd& w, bool grad) {
    if (cfg.variant == Variant::alpha) return alpha_objective(problem, w, alpha, cfg, grad);
    return evaluate(problem, w, cfg, fmap, grad);
  };

  SelectionResult result;
  result.config = cfg;
  result.optimizer = opt;
  result.seed = cfg.seed;
  if (const auto* g = std::get_if<GaussianKernel>(&problem.kernel)) result.bandwidth = g->bandwidth;

  Eigen::VectorXd w = initial_point(problem, cfg, opt);
  if (cfg.variant == Variant::alpha) alpha = optimal_alpha(problem, w, cfg);
  ObjectiveValue current = value_at(w, true);
  result.objective_trace.push_back(current.value);

  double step = opt.init_step;
  for (int iter = 0; iter < opt.max_iters; ++iter) {
    bool accepted = false;
    Eigen::VectorXd w_next;
    double f_next = 0.0;
    for (int bt = 0; bt < kMaxBacktracks; ++bt) {
      w_next = feasible(w - step * current.gradient_w);
      const double moved_sq = (w_next - w).squaredNorm();
      if (moved_sq == 0.0) break;  // projected gradient vanishes: stationary
      f_next = value_at(w_next, false).value;
      if (f_next <= current.value - opt.armijo_c / step * moved_sq) {
        accepted = true;
        break;
      }
      step *= opt.armijo_beta;
    }
    result.iterations = iter + 1;
    if (!accepted) {
      result.converged = true;
      break;
    }

    const double f_prev = current.value;
    w = std::move(w_next);
    if (cfg.variant == Variant::alpha) alpha = optimal_alpha(problem, w, cfg);
    current = value_at(w, true);
    result.objective_trace.push_back(current.value);
    step /= opt.armijo_beta;

    const double scale = std::max(std::abs(f_prev), std::numeric_limits<double>::min());
    if ((f_prev - current.value) / scale < opt.rel_tol) {
      result.converged = true;
      break;
    }
  }

  result.final_weights = w;
  result.ranking = rank_features(w);
  result.selected.assign(result.ranking.begin(), result.ranking.begin() + cfg.m);
  result.selected_trace = cfg.epsilon * subset_score(problem, result.selected, cfg.epsilon);
  return result;
}

SelectionResult optimize(const Dataset& data, const InputKernel& kernel, const ObjectiveConfig& cfg,
                         const OptimizerConfig& opt) {
  return optimize(make_problem(data, kernel), cfg, opt);
}

}  // namespace ccm
