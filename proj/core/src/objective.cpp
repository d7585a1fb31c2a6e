#include "ccm/objective.hpp"

#include <cmath>
#include <string>

#include "ccm/errors.hpp"

namespace ccm {
namespace {

Eigen::LLT<Eigen::MatrixXd> factorize(Eigen::MatrixXd A, const char* what) {
  Eigen::LLT<Eigen::MatrixXd> llt(std::move(A));
  if (llt.info() != Eigen::Success) throw NumericalError(std::string("Cholesky factorization failed for ") + what);
  return llt;
}

// G_w + n eps I
Eigen::MatrixXd regularized_gram(const GramMatrix& K, double ridge) {
  Eigen::MatrixXd A = center(K).entries;
  A.diagonal().array() += ridge;
  return A;
}

void require_problem(const Problem& problem, const Eigen::VectorXd& w) {
  if (problem.Y.rows() != problem.X.rows()) throw InvalidDataError("response rows do not match sample count");
  if (w.size() != problem.X.cols()) throw InvalidDataError("weight vector length does not match feature count");
  if (!w.allFinite()) throw InvalidDataError("weight vector contains non-finite entries");
}

double ridge_of(const Problem& problem, const ObjectiveConfig& cfg) {
  return static_cast<double>(problem.num_samples()) * cfg.epsilon;
}

}  // namespace

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::exact: return "exact";
    case Variant::soft_penalty: return "soft";
    case Variant::alpha: return "alpha";
    case Variant::low_rank: return "lowrank";
  }
  return "unknown";
}

Variant parse_variant(std::string_view name) {
  if (name == "exact") return Variant::exact;
  if (name == "soft" || name == "soft_penalty") return Variant::soft_penalty;
  if (name == "alpha") return Variant::alpha;
  if (name == "lowrank" || name == "low_rank") return Variant::low_rank;
  throw InvalidParameterError("unknown objective variant '" + std::string(name) + "'");
}

void validate(const ObjectiveConfig& cfg, Eigen::Index num_features) {
  if (!(cfg.epsilon > 0.0) || !std::isfinite(cfg.epsilon)) throw InvalidParameterError("epsilon must be positive");
  if (!(cfg.lambda1 >= 0.0) || !std::isfinite(cfg.lambda1)) throw InvalidParameterError("lambda1 must be >= 0");
  if (!(cfg.lambda2 >= 0.0) || !std::isfinite(cfg.lambda2)) throw InvalidParameterError("lambda2 must be >= 0");
  if (cfg.m < 1 || cfg.m > num_features)
    throw InvalidParameterError("m must satisfy 1 <= m <= d (d = " + std::to_string(num_features) + ")");
  if (cfg.num_random_features < 1) throw InvalidParameterError("number of random features must be >= 1");
  if (cfg.variant == Variant::alpha && !(cfg.lambda2 > 0.0))
    throw InvalidParameterError("the alpha variant needs lambda2 > 0");
}

Problem make_problem(const Dataset& data, const InputKernel& kernel) {
  validate(data);
  return Problem{data.X, response_matrix(data), kernel};
}

Eigen::VectorXd contract_kernel_derivative(const Problem& problem, const Eigen::VectorXd& w,
                                           const Eigen::MatrixXd& K, const Eigen::MatrixXd& C) {
  const Eigen::MatrixXd& X = problem.X;
  const Eigen::Index n = X.rows();
  if (const auto* g = std::get_if<GaussianKernel>(&problem.kernel)) {
    // dK_ij/dw_l = -K_ij w_l (x_il - x_jl)^2 / sigma^2
    const Eigen::MatrixXd Xt = X.transpose();
    Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(X.cols());
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = j + 1; i < n; ++i) {
        const double e = (C(i, j) + C(j, i)) * K(i, j);
        acc += e * (Xt.col(i) - Xt.col(j)).array().square();
      }
    }
    const double inv_sigma_sq = 1.0 / (g->bandwidth * g->bandwidth);
    return -(w.array() * acc * inv_sigma_sq).matrix();
  }
  // dK_ij/dw_l = 2 w_l x_il x_jl
  const Eigen::MatrixXd CX = C * X;
  return 2.0 * (w.array() * (X.array() * CX.array()).colwise().sum().transpose()).matrix();
}

ObjectiveValue exact_objective(const Problem& problem, const Eigen::VectorXd& w, const ObjectiveConfig& cfg,
                               bool with_gradient) {
  require_problem(problem, w);
  const GramMatrix K = weighted_gram(problem.X, w, problem.kernel);
  const auto llt = factorize(regularized_gram(K, ridge_of(problem, cfg)), "G + n eps I");

  // value = sum over response columns of ||L^{-1} y||^2
  const Eigen::MatrixXd Z = llt.matrixL().solve(problem.Y);
  ObjectiveValue out;
  out.value = Z.squaredNorm();
  if (!with_gradient) return out;

  Eigen::MatrixXd B = llt.matrixU().solve(Z);  // A^{-1} Y
  center_columns(B);
  // d/dw_l Tr[Y^T A^{-1} Y] = -sum_ij (HB)_i . (HB)_j dK_ij/dw_l
  const Eigen::MatrixXd C = -(B * B.transpose());
  out.gradient_w = contract_kernel_derivative(problem, w, K.entries, C);
  return out;
}

ObjectiveValue soft_penalty_objective(const Problem& problem, const Eigen::VectorXd& w, const ObjectiveConfig& cfg,
                                      bool with_gradient) {
  ObjectiveValue out = exact_objective(problem, w, cfg, with_gradient);
  out.value += cfg.lambda1 * (w.sum() - static_cast<double>(cfg.m));
  if (with_gradient) out.gradient_w.array() += cfg.lambda1;
  return out;
}

ObjectiveValue alpha_objective(const Problem& problem, const Eigen::VectorXd& w, const Eigen::MatrixXd& alpha,
                               const ObjectiveConfig& cfg, bool with_gradient) {
  require_problem(problem, w);
  if (alpha.rows() != problem.Y.rows() || alpha.cols() != problem.Y.cols())
    throw InvalidDataError("alpha must have the shape of the response matrix");
  if (!alpha.allFinite()) throw InvalidDataError("alpha contains non-finite entries");

  const GramMatrix K = weighted_gram(problem.X, w, problem.kernel);
  const Eigen::MatrixXd A = regularized_gram(K, ridge_of(problem, cfg));
  const Eigen::MatrixXd R = A * alpha - problem.Y;

  ObjectiveValue out;
  out.value = problem.Y.cwiseProduct(alpha).sum() + cfg.lambda2 * R.squaredNorm();
  if (!with_gradient) return out;

  out.gradient_alpha = problem.Y + 2.0 * cfg.lambda2 * (A * R);
  // 2 lambda2 Tr[R^T H dK H alpha], symmetrized over (i, j)
  Eigen::MatrixXd HR = R;
  Eigen::MatrixXd Ha = alpha;
  center_columns(HR);
  center_columns(Ha);
  const Eigen::MatrixXd outer = HR * Ha.transpose();
  const Eigen::MatrixXd C = cfg.lambda2 * (outer + outer.transpose());
  out.gradient_w = contract_kernel_derivative(problem, w, K.entries, C);
  return out;
}

Eigen::MatrixXd optimal_alpha(const Problem& problem, const Eigen::VectorXd& w, const ObjectiveConfig& cfg) {
  require_problem(problem, w);
  if (!(cfg.lambda2 > 0.0)) throw InvalidParameterError("optimal alpha needs lambda2 > 0");
  const GramMatrix K = weighted_gram(problem.X, w, problem.kernel);
  const auto llt = factorize(regularized_gram(K, ridge_of(problem, cfg)), "G + n eps I");
  // Stationarity: Y + 2 lambda2 A (A alpha - Y) = 0  =>  alpha = A^{-1} Y - A^{-2} Y / (2 lambda2)
  const Eigen::MatrixXd B = llt.solve(problem.Y);
  return B - llt.solve(B) / (2.0 * cfg.lambda2);
}

ObjectiveValue low_rank_objective(const Problem& problem, const Eigen::VectorXd& w, const ObjectiveConfig& cfg,
                                  const FeatureMap& features, bool with_gradient) {
  require_problem(problem, w);
  const Embedding emb = centered_embedding(features, problem.X, w);
  const Eigen::MatrixXd& V = emb.V;
  const Eigen::Index n = V.rows();
  const Eigen::Index D = V.cols();
  const double ridge = ridge_of(problem, cfg);
  const Eigen::MatrixXd& Y = problem.Y;
  const Eigen::MatrixXd VtY = V.transpose() * Y;

  // S = (V^T V + ridge I_D)^{-1} V^T Y
  Eigen::MatrixXd S;
  if (D <= n) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(D, D);
    M.selfadjointView<Eigen::Lower>().rankUpdate(V.transpose());
    M.diagonal().array() += ridge;
    S = factorize(std::move(M), "V^T V + n eps I").solve(VtY);
  } else {
    // push-through: (V^T V + rI)^{-1} V^T = V^T (V V^T + rI)^{-1}
    Eigen::MatrixXd N = Eigen::MatrixXd::Zero(n, n);
    N.selfadjointView<Eigen::Lower>().rankUpdate(V);
    N.diagonal().array() += ridge;
    S = V.transpose() * factorize(std::move(N), "V V^T + n eps I").solve(Y);
  }

  ObjectiveValue out;
  out.value = -VtY.cwiseProduct(S).sum();
  if (!with_gradient) return out;

  // dF = <dV, 2 (V S - Y) S^T>, and dV = H dU
  Eigen::MatrixXd P = 2.0 * (V * S - Y) * S.transpose();
  center_columns(P);
  out.gradient_w = embed_pullback(features, emb, problem.X, P);
  return out;
}

double low_rank_to_exact_scale(double low_rank_value, const Problem& problem, double epsilon) {
  return (problem.Y.squaredNorm() + low_rank_value) / (static_cast<double>(problem.num_samples()) * epsilon);
}

ObjectiveValue evaluate(const Problem& problem, const Eigen::VectorXd& w, const ObjectiveConfig& cfg,
                        const FeatureMap* features, bool with_gradient) {
  switch (cfg.variant) {
    case Variant::exact: return exact_objective(problem, w, cfg, with_gradient);
    case Variant::soft_penalty: return soft_penalty_objective(problem, w, cfg, with_gradient);
    case Variant::alpha: return alpha_objective(problem, w, optimal_alpha(problem, w, cfg), cfg, with_gradient);
    case Variant::low_rank:
      if (features == nullptr) throw InvalidParameterError("low-rank objective needs a feature map");
      return low_rank_objective(problem, w, cfg, *features, with_gradient);
  }
  throw InvalidParameterError("unknown objective variant");
}

double subset_score(const Problem& problem, const std::vector<int>& subset, double epsilon) {
  Eigen::VectorXd mask = Eigen::VectorXd::Zero(problem.num_features());
  for (int l : subset) {
    if (l < 0 || l >= problem.num_features()) throw InvalidParameterError("subset index out of range");
    mask(l) = 1.0;
  }
  ObjectiveConfig cfg;
  cfg.epsilon = epsilon;
  return exact_objective(problem, mask, cfg, false).value;
}

}  // namespace ccm
