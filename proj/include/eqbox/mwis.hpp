#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace eqbox {

/// Default vertex budget for the exact solver.
inline constexpr std::size_t kDefaultMwisBudget = 30;
/// Hard ceiling of the exact solver (one machine word per vertex set).
inline constexpr std::size_t kMaxExactMwis = 64;

struct MwisResult {
  double mass = 0.0;
  /// Ascending vertex indices.
  std::vector<std::size_t> vertices;
  bool exact = true;
};

using Edge = std::pair<std::size_t, std::size_t>;

/// Maximum-weight independent set by branch and bound. Among optimal sets the
/// lexicographically least is returned. Throws BudgetExceeded when the vertex
/// count exceeds `budget` (or kMaxExactMwis).
MwisResult mwis(const std::vector<double>& weights, const std::vector<Edge>& edges,
                std::size_t budget = kDefaultMwisBudget);

/// Greedy by weight followed by (1,k)-swaps. Feasible, not necessarily optimal.
MwisResult mwis_heuristic(const std::vector<double>& weights, const std::vector<Edge>& edges);

}  // namespace eqbox
