#include "ccm/oracle.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "ccm/errors.hpp"

namespace ccm {
namespace {

// Advances to the next combination in lexicographic order; false when done.
bool next_combination(std::vector<int>& c, int d) {
  const int m = static_cast<int>(c.size());
  int i = m - 1;
  while (i >= 0 && c[static_cast<std::size_t>(i)] == d - m + i) --i;
  if (i < 0) return false;
  ++c[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < m; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

}  // namespace

double binomial(Eigen::Index d, Eigen::Index m) {
  if (m < 0 || m > d) return 0.0;
  m = std::min(m, d - m);
  double c = 1.0;
  for (Eigen::Index i = 1; i <= m; ++i) c = c * static_cast<double>(d - m + i) / static_cast<double>(i);
  return std::round(c);
}

OracleResult exhaustive_argmin(const Problem& problem, Eigen::Index m, double epsilon) {
  const Eigen::Index d = problem.num_features();
  if (m < 1 || m > d) throw InvalidParameterError("m must satisfy 1 <= m <= d");
  if (!(epsilon > 0.0)) throw InvalidParameterError("epsilon must be positive");
  const double count = binomial(d, m);
  if (count > kMaxOracleSubsets)
    throw GuardExceededError("exhaustive search over C(" + std::to_string(d) + ", " + std::to_string(m) +
                             ") subsets exceeds the limit of 1e6");

  OracleResult out;
  out.all.reserve(static_cast<std::size_t>(count));
  std::vector<int> subset(static_cast<std::size_t>(m));
  std::iota(subset.begin(), subset.end(), 0);
  do {
    out.all.push_back({subset, subset_score(problem, subset, epsilon)});
  } while (next_combination(subset, static_cast<int>(d)));

  // Strict comparison keeps the first (lexicographically smallest) minimizer.
  const SubsetScore* best = &out.all.front();
  for (const auto& s : out.all)
    if (s.score < best->score) best = &s;
  out.best = *best;
  return out;
}

}  // namespace ccm
