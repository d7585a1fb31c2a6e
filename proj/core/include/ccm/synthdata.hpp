#pragma once

#include <cstdint>
#include <string_view>

#include "ccm/dataset.hpp"

namespace ccm {

enum class SyntheticKind { binary_ring, xor_4class, additive_regression };

std::string_view to_string(SyntheticKind kind);
SyntheticKind parse_synthetic_kind(std::string_view name);

struct SyntheticSpec {
  SyntheticKind kind = SyntheticKind::binary_ring;
  Eigen::Index n = 100;
  std::uint64_t seed = 0;
};

/// Number of relevant features of each generator (4, 3, 4).
int num_true_features(SyntheticKind kind);

/// Every generator emits 10 features.
inline constexpr Eigen::Index kSyntheticDims = 10;

/// Y = +1 (class 1) for the first ceil(n/2) rows before a seeded shuffle,
/// Y = -1 (class 0) for the rest. Class +1 draws x_1..x_4 from a standard
/// normal conditioned on 9 <= sum x_j^2 <= 16 (rejection sampling, at most
/// 1e5 attempts per row); everything else is N(0, 1).
Dataset gen_binary_ring(Eigen::Index n, std::uint64_t seed);

/// Four classes assigned round-robin then shuffled. Class i draws
/// (x_1, x_2, x_3) from 1/2 N(v_i, 0.5 I) + 1/2 N(-v_i, 0.5 I), where the
/// cube corners are grouped by (v1 v3, v2 v3); 0.5 I is a covariance.
/// x_4..x_10 are N(0, 1) noise.
Dataset gen_xor_4class(Eigen::Index n, std::uint64_t seed);

/// X ~ N(0, I_10), Y = -2 sin(2 x_1) + max(x_2, 0) + x_3 + exp(-x_4) + N(0, 1).
Dataset gen_additive_regression(Eigen::Index n, std::uint64_t seed);

Dataset generate(const SyntheticSpec& spec);

}  // namespace ccm
