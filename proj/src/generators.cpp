#include "eqbox/generators.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>

#include "eqbox/error.hpp"

namespace eqbox {

namespace {

using Cx = std::complex<double>;

// Orbit-closed point cloud: point b * k + r is w^r z_b with w = e^{2 pi i / k}.
// Distances use the relative rotation only, so the shift is an exact isometry.
PointCloud orbit_cloud(const std::vector<std::vector<Cx>>& base, std::size_t k, const std::string& tag) {
  const std::size_t s = base.size(), n = s * k;
  std::vector<Cx> rot(k);
  for (std::size_t r = 0; r < k; ++r) rot[r] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(k));
  auto dist = [&](std::size_t b, std::size_t c, std::size_t rel) {
    double sq = 0.0;
    for (std::size_t i = 0; i < base[b].size(); ++i) sq += std::norm(base[b][i] - rot[rel] * base[c][i]);
    return std::sqrt(sq);
  };
  RawSpace raw;
  raw.dist.assign(n, std::vector<double>(n, 0.0));
  raw.mass.assign(n, 1.0 / static_cast<double>(n));
  for (std::size_t b = 0; b < s; ++b)
    for (std::size_t r = 0; r < k; ++r) {
      raw.labels.push_back(tag + std::to_string(b) + "." + std::to_string(r));
      for (std::size_t c = 0; c < s; ++c)
        for (std::size_t t = 0; t < k; ++t) {
          if (b * k + r == c * k + t) continue;
          raw.dist[b * k + r][c * k + t] = dist(b, c, (t + k - r) % k);
        }
    }
  // |z_b - w^d z_c| = |z_c - w^{-d} z_b| holds exactly only in exact arithmetic
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) raw.dist[q][p] = raw.dist[p][q];
  std::vector<std::size_t> shift(n);
  for (std::size_t b = 0; b < s; ++b)
    for (std::size_t r = 0; r < k; ++r) shift[b * k + r] = b * k + (r + 1) % k;
  PointCloud out{validate_action(validate_space(raw), {Permutation(shift)}), {}};
  out.coords.reserve(n);
  for (std::size_t b = 0; b < s; ++b)
    for (std::size_t r = 0; r < k; ++r) {
      std::vector<Cx> z(base[b].size());
      for (std::size_t i = 0; i < z.size(); ++i) z[i] = rot[r] * base[b][i];
      out.coords.push_back(std::move(z));
    }
  return out;
}

void check_budget(std::size_t samples, std::size_t k, std::size_t budget) {
  if (samples * k > budget)
    throw Error(Errc::BudgetExceeded, std::to_string(samples * k) + " points exceed the budget of " + std::to_string(budget));
}

}  // namespace

MMAction gen_cycle(std::size_t n, CycleMetric metric) {
  if (n == 0) throw Error(Errc::InvalidArgument, "cycle needs at least one point");
  RawSpace raw;
  raw.dist.assign(n, std::vector<double>(n, 0.0));
  raw.mass.assign(n, 1.0 / static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    raw.labels.push_back("c" + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t k = (j + n - i) % n;
      const double arc = static_cast<double>(std::min(k, n - k)) / static_cast<double>(n);
      raw.dist[i][j] = metric == CycleMetric::Geodesic ? arc : std::sin(std::numbers::pi * arc) / std::numbers::pi;
    }
  }
  std::vector<std::size_t> rot(n);
  for (std::size_t i = 0; i < n; ++i) rot[i] = (i + 1) % n;
  return validate_action(validate_space(raw), {Permutation(rot)});
}

PointCloud gen_lens_cloud(const LensConfig& cfg, std::size_t j) {
  if (j == 0) throw Error(Errc::InvalidArgument, "cyclic order must be positive");
  check_budget(cfg.samples, j, cfg.point_budget);
  const auto pos = std::find(cfg.js.begin(), cfg.js.end(), j);
  const std::size_t idx = static_cast<std::size_t>(pos - cfg.js.begin());
  const bool listed = pos != cfg.js.end();
  const std::size_t dim = listed && idx < cfg.n_of_j.size() ? cfg.n_of_j[idx] : cfg.truncation;
  if (dim == 0) throw Error(Errc::InvalidArgument, "ellipsoid dimension must be positive");
  std::vector<double> axes(dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) {
    if (listed && idx < cfg.a_of_j.size())
      axes[i] = i < cfg.a_of_j[idx].size() ? cfg.a_of_j[idx][i] : 0.0;
    else
      axes[i] = i < cfg.a.size() ? cfg.a[i] : 0.0;
    if (!(axes[i] > 0.0)) throw Error(Errc::InvalidArgument, "ellipsoid axes must be positive");
  }
  // alpha_ij = a_ij sqrt(n); the extra sqrt 2 gives each real coordinate
  // variance a_ij^2 in the large-n limit, matching the Gaussian instance
  const double scale = std::sqrt(2.0 * static_cast<double>(dim));
  std::mt19937_64 rng(cfg.seed * 1000003u + j);
  std::normal_distribution<double> normal;
  std::vector<std::vector<Cx>> base(cfg.samples, std::vector<Cx>(dim));
  for (auto& z : base) {
    double norm = 0.0;
    for (auto& c : z) {
      c = Cx(normal(rng), normal(rng));
      norm += std::norm(c);
    }
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < dim; ++i) z[i] = z[i] / norm * axes[i] * scale;
  }
  return orbit_cloud(base, j, "e");
}

PointCloud gen_gaussian_cloud(const LensConfig& cfg) {
  if (cfg.K == 0 || cfg.truncation == 0) throw Error(Errc::InvalidArgument, "K and truncation must be positive");
  check_budget(cfg.samples, cfg.K, cfg.point_budget);
  std::mt19937_64 rng(cfg.seed * 1000003u + 7777u);
  std::normal_distribution<double> normal;
  std::vector<std::vector<Cx>> base(cfg.samples, std::vector<Cx>(cfg.truncation));
  for (auto& z : base)
    for (std::size_t i = 0; i < cfg.truncation; ++i) {
      const double a = i < cfg.a.size() ? cfg.a[i] : 0.0;
      z[i] = a * Cx(normal(rng), normal(rng));
    }
  return orbit_cloud(base, cfg.K, "g");
}

MMAction gen_lens_instance(const LensConfig& cfg, std::size_t j) { return gen_lens_cloud(cfg, j).action; }

MMAction gen_gaussian_instance(const LensConfig& cfg) { return gen_gaussian_cloud(cfg).action; }

Matrix cross_distances(const PointCloud& a, const PointCloud& b) {
  Matrix d(a.coords.size(), b.coords.size(), 0.0);
  for (std::size_t p = 0; p < a.coords.size(); ++p)
    for (std::size_t q = 0; q < b.coords.size(); ++q) {
      const auto& x = a.coords[p];
      const auto& y = b.coords[q];
      double sq = 0.0;
      for (std::size_t i = 0; i < std::max(x.size(), y.size()); ++i) {
        const Cx u = i < x.size() ? x[i] : Cx{};
        const Cx v = i < y.size() ? y[i] : Cx{};
        sq += std::norm(u - v);
      }
      d(p, q) = std::sqrt(sq);
    }
  return d;
}

MMAction make_action(const std::vector<std::vector<double>>& dist, const std::vector<std::vector<std::size_t>>& gens,
                     const std::vector<double>& mass) {
  const std::size_t n = dist.size();
  RawSpace raw{{}, dist, mass.empty() ? std::vector<double>(n, 1.0 / static_cast<double>(n)) : mass};
  MMSpace space = validate_space(raw);
  std::vector<Permutation> ps;
  for (const auto& g : gens) ps.push_back(Permutation::checked(g, n));
  return validate_action(space, ps);
}

}  // namespace eqbox
