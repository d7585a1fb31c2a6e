#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "ccm/objective.hpp"

namespace ccm {

struct SubsetScore {
  std::vector<int> subset;  ///< ascending feature indices
  double score = 0.0;       ///< Tr[Y^T (G_T + n eps I)^{-1} Y]
};

struct OracleResult {
  SubsetScore best;
  std::vector<SubsetScore> all;  ///< lexicographic enumeration order
};

/// Largest number of subsets exhaustive_argmin will evaluate.
inline constexpr double kMaxOracleSubsets = 1e6;

/// C(d, m) as a double (exact for every count below 2^53).
double binomial(Eigen::Index d, Eigen::Index m);

/// Evaluates the score of every size-m subset and returns the minimizer;
/// ties go to the lexicographically smallest subset. Throws
/// GuardExceededError when C(d, m) > 1e6.
OracleResult exhaustive_argmin(const Problem& problem, Eigen::Index m, double epsilon);

}  // namespace ccm
