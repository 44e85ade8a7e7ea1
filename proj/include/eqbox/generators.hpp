#pragma once

#include <cstddef>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "eqbox/group.hpp"
#include "eqbox/matrix.hpp"

namespace eqbox {

enum class CycleMetric { Geodesic, Chord };

/// n uniform points on a circle of circumference 1 with the rotation group Z_n.
MMAction gen_cycle(std::size_t n, CycleMetric metric = CycleMetric::Geodesic);

struct LensConfig {
  std::vector<std::size_t> js{2, 3, 4};
  /// Complex dimension per entry of js; empty means `truncation` for every j.
  std::vector<std::size_t> n_of_j;
  /// Target axes a_i; missing entries are 0.
  std::vector<double> a{1.0, 0.5, 0.25};
  /// Per-j axes a_ij; empty means a_ij = a_i.
  std::vector<std::vector<double>> a_of_j;
  std::size_t samples = 8;
  std::size_t K = 8;
  std::size_t truncation = 3;
  std::uint64_t seed = 0;
  std::size_t point_budget = 256;
};

/// Sampled action together with the ambient coordinates of every point.
struct PointCloud {
  MMAction action;
  std::vector<std::vector<std::complex<double>>> coords;
};

/// Seeded base points on the unit sphere of C^{n(j)}, scaled by the ellipsoid
/// axes, each closed under the Z_j rotation z -> e^{2 pi i / j} z.
/// Throws BudgetExceeded when samples * j exceeds the point budget.
PointCloud gen_lens_cloud(const LensConfig& cfg, std::size_t j);
MMAction gen_lens_instance(const LensConfig& cfg, std::size_t j);

/// Seeded samples of the truncated product Gaussian on C^N with axes a_i,
/// closed under the Z_K rotation. Throws BudgetExceeded.
PointCloud gen_gaussian_cloud(const LensConfig& cfg);
MMAction gen_gaussian_instance(const LensConfig& cfg);

/// Euclidean distances between two clouds, shorter coordinate vectors padded with 0.
Matrix cross_distances(const PointCloud& a, const PointCloud& b);

/// Uniform space from an explicit distance matrix with the given generators.
MMAction make_action(const std::vector<std::vector<double>>& dist, const std::vector<std::vector<std::size_t>>& gens,
                     const std::vector<double>& mass = {});

}  // namespace eqbox
