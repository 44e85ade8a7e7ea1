#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eqbox/boxdist.hpp"
#include "eqbox/generators.hpp"
#include "eqbox/report.hpp"

namespace eqbox {

struct NamedAction {
  std::string name;
  MMAction action;
};

struct QuotientOptions {
  SearchBudget budget;
  double kappa = 0.1;
};

/// Per sequence element: equivariant box/dconc bounds against the target,
/// plain bounds between the quotients, the observable-diameter lower bound and
/// the margin sqrt(3 (D + 1) dconc_eq) + kappa - dconc_quot.
ExperimentReport run_quotient_convergence(const std::vector<NamedAction>& seq, const NamedAction& target,
                                          const QuotientOptions& opts = {});

/// Sum of pi over orbit pairs.
Coupling pushforward_coupling(const Coupling& pi, const Quotient& qx, const Quotient& qy);

struct LensExperimentConfig {
  LensConfig lens;
  std::vector<std::size_t> sample_counts{2, 4, 8};
  std::vector<std::uint64_t> seeds{1, 2, 3};
  SearchBudget budget;
};

/// Rows "seed=<s>/samples=<m>/j=<j>" with metrics box_eq and box_quot (UPPER).
ExperimentReport run_lens_experiment(const LensExperimentConfig& cfg);

struct LensTrend {
  std::uint64_t seed = 0;
  bool nonincreasing = true;
  bool quotient_below = true;
};

/// Per seed: box_eq nonincreasing in sample count for every j, and
/// box_quot <= box_eq on every row.
std::vector<LensTrend> lens_trend(const ExperimentReport& report, const LensExperimentConfig& cfg);

struct PropernessResult {
  ExperimentReport report;
  /// Generated subgroup of Aut(Y) per sequence element.
  std::vector<std::vector<Permutation>> groups;
  std::vector<double> defects;
};

/// Witness coupling for plain box(X_n, Y), its certificate subset S_n, then
/// extract_limit_group(G_n, Y, S_n).
PropernessResult run_properness_probe(const std::vector<NamedAction>& seq, const MMSpace& limit,
                                      const SearchBudget& budget = {});

}  // namespace eqbox
