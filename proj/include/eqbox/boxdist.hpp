#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "eqbox/coupling.hpp"
#include "eqbox/group.hpp"
#include "eqbox/mmspace.hpp"
#include "eqbox/mwis.hpp"

namespace eqbox {

enum class Side { X, Y };

/// A self-map of one of the two spaces being compared.
struct MapPair {
  Side side = Side::X;
  Permutation perm;

  static MapPair on_x(Permutation p) { return {Side::X, std::move(p)}; }
  static MapPair on_y(Permutation p) { return {Side::Y, std::move(p)}; }
};

/// sup over ordered pairs (p, q) of S of |f_g1(p,q) - f_g2(p,q)|; 0 on the empty set.
double d_S(const MapPair& g1, const MapPair& g2, const Relation& s, const MMSpace& x, const MMSpace& y);

struct DPiOptions {
  std::size_t mwis_budget = kDefaultMwisBudget;
  /// Past the budget, fall back to the heuristic solver instead of throwing.
  bool heuristic = false;
};

struct DPiCertificate {
  /// max(1 - pi(subset), threshold)
  double value = 1.0;
  Relation subset;
  /// d^S on `subset`, recomputed.
  double threshold = 0.0;
  /// False when the heuristic solver was used; value is then only an upper bound.
  bool exact = true;
};

/// Minimum over S within supp pi of max(1 - pi(S), d^S(g1, g2)).
/// Throws TooLarge when |supp pi| exceeds the exact budget and heuristics are off.
DPiCertificate d_pi(const MapPair& g1, const MapPair& g2, const Coupling& pi, const MMSpace& x,
                    const MMSpace& y, const DPiOptions& opts = {});

/// Hausdorff distance between G and H under d^pi, with the full table of
/// certificates (row g, column h).
struct BoxPiResult {
  double value = 0.0;
  bool exact = true;
  std::size_t cols = 0;
  std::vector<DPiCertificate> table;

  const DPiCertificate& at(std::size_t g, std::size_t h) const { return table[g * cols + h]; }
};

BoxPiResult box_pi(const MMAction& a, const MMAction& b, const Coupling& pi, const DPiOptions& opts = {});

/// Value of box_pi, allowed to stop early: once the value is known to be at
/// least `cutoff`, any number >= cutoff may be returned.
double box_pi_value(const MMAction& a, const MMAction& b, const Coupling& pi, const DPiOptions& opts = {},
                    double cutoff = std::numeric_limits<double>::infinity(), bool* exact = nullptr);

struct SearchBudget {
  std::uint64_t seed = 0;
  /// All permutation couplings are tried when both measures are uniform with
  /// equal size up to this many points.
  std::size_t exhaustive_perm_limit = 7;
  std::size_t random_perms = 32;
  std::size_t random_vertices = 32;
  std::size_t refine_passes = 8;
  /// Cycle moves tried per refinement pass.
  std::size_t refine_moves = 400;
  std::size_t max_evals = 20000;
  DPiOptions dpi;
};

struct SearchResult {
  double value = 1.0;
  Coupling witness;
  bool exact_inner = true;
  std::size_t evaluations = 0;
};

/// Objective of a coupling search. May stop early once the value reaches `cutoff`.
using CouplingObjective = std::function<double(const Coupling& pi, double cutoff, bool* exact)>;

/// Northwest-corner vertex of the transportation polytope under the given orders.
Coupling northwest_corner(const std::vector<double>& muX, const std::vector<double>& muY,
                          const std::vector<std::size_t>& row_order, const std::vector<std::size_t>& col_order);

/// Min-cost perfect matching (Hungarian method) on a square cost matrix;
/// returns the column assigned to each row.
std::vector<std::size_t> min_cost_assignment(const Matrix& cost);

/// Permutation coupling of two uniform measures of equal size along the
/// min-cost assignment. Throws SizeMismatch.
Coupling assignment_coupling(const Matrix& cost);

/// Seeded candidate vertices: permutation couplings, product, northwest corners.
std::vector<Coupling> candidate_couplings(const std::vector<double>& muX, const std::vector<double>& muY,
                                          const SearchBudget& budget);

/// Minimum of `objective` over the candidates, then local refinement by 2x2
/// cycle moves. Deterministic for a fixed budget.
SearchResult search_couplings(const std::vector<double>& muX, const std::vector<double>& muY,
                              const SearchBudget& budget, const CouplingObjective& objective,
                              const std::vector<Coupling>& extra = {});

/// Upper bound on the equivariant box distance with its witness coupling.
SearchResult box_upper(const MMAction& a, const MMAction& b, const SearchBudget& budget = {},
                       const std::vector<Coupling>& extra = {});

struct OracleResult {
  double value = 1.0;
  /// True infimum lies in [value - err, value].
  double err = 0.0;
  Coupling witness;
  std::size_t evaluations = 0;
};

/// Grid rounding error of the oracle: min(n floor(m/2), m floor(n/2)) * grid.
double grid_rounding_error(std::size_t n, std::size_t m, double grid);

/// Every coupling with entries in multiples of `grid`. Throws GridIncompatible
/// when a marginal is off the grid and TooLarge past `max_count` tables.
std::vector<Coupling> grid_couplings(const std::vector<double>& muX, const std::vector<double>& muY,
                                     double grid, std::size_t max_count = 200000);

/// Exact minimum of box_pi over the grid couplings. Throws TooLarge when n*m > 9.
OracleResult box_oracle(const MMAction& a, const MMAction& b, double grid, const DPiOptions& opts = {});

}  // namespace eqbox
