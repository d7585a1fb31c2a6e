#include "ccm/random_features.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "ccm/errors.hpp"
#include "trig.hpp"

namespace ccm {
namespace {

void require_shapes(Eigen::Index input_dim, const Eigen::MatrixXd& X, const Eigen::VectorXd& w) {
  if (X.cols() != input_dim || w.size() != input_dim)
    throw InvalidDataError("feature map input dimension does not match data");
}

// Rows of (w .* x_i)^T Omega^T + b.
Eigen::MatrixXd phase_angles(const RandomFeatureMap& map, const Eigen::MatrixXd& X, const Eigen::VectorXd& w) {
  Eigen::MatrixXd theta = (X * w.asDiagonal()) * map.frequencies.transpose();
  theta.rowwise() += map.phases.transpose();
  return theta;
}

Eigen::MatrixXd cos_of(const Eigen::MatrixXd& a) {
  Eigen::MatrixXd out(a.rows(), a.cols());
  detail::cos_into(a.data(), out.data(), static_cast<std::size_t>(a.size()));
  return out;
}

Eigen::MatrixXd sin_of(const Eigen::MatrixXd& a) {
  Eigen::MatrixXd out(a.rows(), a.cols());
  detail::sin_into(a.data(), out.data(), static_cast<std::size_t>(a.size()));
  return out;
}

}  // namespace

RandomFeatureMap draw_map(Eigen::Index d, Eigen::Index D, double sigma, std::uint64_t seed) {
  if (d < 1) throw InvalidParameterError("input dimension must be at least 1");
  if (D < 1) throw InvalidParameterError("number of random features must be at least 1");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidParameterError("bandwidth must be positive and finite");

  RandomFeatureMap map;
  map.frequencies.resize(D, d);
  map.phases.resize(D);
  map.scale = std::sqrt(2.0 / static_cast<double>(D));
  map.bandwidth = sigma;
  map.seed = seed;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0 / sigma);
  std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);
  for (Eigen::Index r = 0; r < D; ++r)
    for (Eigen::Index l = 0; l < d; ++l) map.frequencies(r, l) = normal(rng);
  for (Eigen::Index r = 0; r < D; ++r) map.phases(r) = uniform(rng);
  return map;
}

Eigen::MatrixXd embed(const RandomFeatureMap& map, const Eigen::MatrixXd& X, const Eigen::VectorXd& w) {
  require_shapes(map.input_dim(), X, w);
  return map.scale * cos_of(phase_angles(map, X, w));
}

Eigen::MatrixXd embed(const FeatureMap& map, const Eigen::MatrixXd& X, const Eigen::VectorXd& w) {
  if (const auto* rff = std::get_if<RandomFeatureMap>(&map)) return embed(*rff, X, w);
  require_shapes(std::get<LinearFeatureMap>(map).input_dim, X, w);
  return X * w.asDiagonal();
}

namespace {

// Shift by the first row before removing the mean, so identical rows give exact zeros.
void center_rows(Eigen::MatrixXd& V) {
  if (V.rows() == 0) return;
  V.rowwise() -= V.row(0).eval();
  V.rowwise() -= V.colwise().mean();
}

}  // namespace

Embedding centered_embedding(const FeatureMap& map, const Eigen::MatrixXd& X, const Eigen::VectorXd& w) {
  Embedding out;
  if (const auto* rff = std::get_if<RandomFeatureMap>(&map)) {
    require_shapes(rff->input_dim(), X, w);
    out.angles = phase_angles(*rff, X, w);
    out.V = rff->scale * cos_of(out.angles);
  } else {
    out.V = embed(map, X, w);
  }
  center_rows(out.V);
  return out;
}

Eigen::MatrixXd centered_embed(const FeatureMap& map, const Eigen::MatrixXd& X, const Eigen::VectorXd& w) {
  Eigen::MatrixXd V = embed(map, X, w);
  center_rows(V);
  return V;
}

Eigen::VectorXd embed_pullback(const FeatureMap& map, const Embedding& at, const Eigen::MatrixXd& X,
                               const Eigen::MatrixXd& P) {
  if (const auto* rff = std::get_if<RandomFeatureMap>(&map)) {
    if (at.angles.rows() != X.rows() || at.angles.cols() != rff->num_features())
      throw InvalidDataError("embedding does not match the feature map");
    // dU_ir/dw_l = -scale * sin(theta_ir) * omega_rl * x_il
    const Eigen::MatrixXd SO = P.cwiseProduct(sin_of(at.angles)) * rff->frequencies;  // n x d
    return (-rff->scale) * (SO.array() * X.array()).colwise().sum().transpose();
  }
  if (X.cols() != std::get<LinearFeatureMap>(map).input_dim)
    throw InvalidDataError("feature map input dimension does not match data");
  // dU_il'/dw_l = x_il [l == l']
  return (P.array() * X.array()).colwise().sum().transpose();
}

Eigen::VectorXd embed_pullback(const FeatureMap& map, const Eigen::MatrixXd& X, const Eigen::VectorXd& w,
                               const Eigen::MatrixXd& P) {
  Embedding at;
  if (const auto* rff = std::get_if<RandomFeatureMap>(&map)) {
    require_shapes(rff->input_dim(), X, w);
    at.angles = phase_angles(*rff, X, w);
  } else {
    require_shapes(std::get<LinearFeatureMap>(map).input_dim, X, w);
  }
  return embed_pullback(map, at, X, P);
}

Eigen::Index num_features(const FeatureMap& map) {
  if (const auto* rff = std::get_if<RandomFeatureMap>(&map)) return rff->num_features();
  return std::get<LinearFeatureMap>(map).input_dim;
}

}  // namespace ccm
