#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "eqbox/boxdist.hpp"
#include "eqbox/coupling.hpp"
#include "eqbox/group.hpp"
#include "eqbox/mmspace.hpp"

namespace eqbox {

/// max of the two Ky Fan terms under pi: (i,j) -> f[i] - f'[j] and
/// (i,j) -> f[g i] - f'[h j]. Throws SpaceMismatch on inconsistent sizes.
double rho_pi_gh(const LipFunction& f, const LipFunction& fprime, const Permutation& g, const Permutation& h,
                 const Coupling& pi);

/// y -> min over (x', y') in S of d_Y(y, y') + f(x'). Throws EmptyRelation.
LipFunction mcshane_extend(const LipFunction& f, const Relation& s, const MMSpace& y);

struct RhoUpper {
  /// min(1, 4 eps); an upper bound on rho^pi(g, h).
  double bound = 1.0;
  /// max of the three mass defects and the three d^S terms.
  double eps = 1.0;
  /// Largest rho over distance-function probes matched through McShane
  /// extension. Diagnostic only: the probes sample Lip1, they do not exhaust it.
  double probe = 0.0;
};

/// Bound on rho^pi(g, h) from subsets S, S1, S2 of supp pi, where S controls
/// (g, h), S1 controls (g1, id_Y) and S2 controls (id_X, h2).
RhoUpper rho_pi_upper(const MMSpace& x, const MMSpace& y, const Permutation& g, const Permutation& h,
                      const Coupling& pi, const Relation& s, const Relation& s1, const Permutation& g1,
                      const Relation& s2, const Permutation& h2);

/// All 1-Lipschitz vectors with values in grid multiples inside [-range, range];
/// with `pin_first`, the first value is 0. Throws TooLarge past `max_count`.
std::vector<std::vector<double>> lip_grid(const MMSpace& space, double grid, double range, bool pin_first,
                                          std::size_t max_count = 400000);

/// Rounding slack of the grid oracle: grid when every distance of both spaces
/// is a grid multiple, otherwise 2 (max(n, m) - 1) grid.
double rho_slack(const MMSpace& x, const MMSpace& y, double grid);

struct RhoOracle {
  double value = 0.0;
  double slack = 0.0;
};

/// Grid brute force for rho^pi(g, h). Throws TooLarge for more than 4 points
/// per side or a grid finer than max diam / 16.
RhoOracle rho_oracle(const MMSpace& x, const MMSpace& y, const Permutation& g, const Permutation& h,
                     const Coupling& pi, double grid);

enum class DconcMode { Upper, Oracle };

struct DconcResult {
  double value = 0.0;
  /// Oracle mode: |value - dconc^pi| <= slack. Upper mode: 0.
  double slack = 0.0;
  bool exact_inner = true;
  /// Upper mode only: Hausdorff of the McShane probe values.
  double probe = 0.0;
};

struct DconcOptions {
  DPiOptions dpi;
  double grid = 0.125;
};

/// Hausdorff distance between G and H under rho^pi.
DconcResult dconc_pi(const MMAction& a, const MMAction& b, const Coupling& pi, DconcMode mode,
                     const DconcOptions& opts = {},
                     double cutoff = std::numeric_limits<double>::infinity());

/// Coupling search with the Upper-mode objective.
SearchResult dconc_upper(const MMAction& a, const MMAction& b, const SearchBudget& budget = {});

struct DconcOracleResult {
  double value = 1.0;
  /// True dconc lies in [value - err, value + lip_slack].
  double err = 0.0;
  double lip_slack = 0.0;
  Coupling witness;
  std::size_t evaluations = 0;
};

/// Oracle over every coupling on the mass grid `coupling_grid`, with Lip1
/// families on `lip_grid`. Coupling rounding enters twice (dconc^pi moves by at
/// most 2 d_P, and d_P is at most the rounding mass).
DconcOracleResult dconc_oracle(const MMAction& a, const MMAction& b, double coupling_grid, double lip_grid_step,
                               std::size_t max_tables = 20000);

}  // namespace eqbox
