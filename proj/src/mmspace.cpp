#include "eqbox/mmspace.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "eqbox/error.hpp"

namespace eqbox {

namespace {

std::string idx(std::size_t i) { return std::to_string(i); }

}  // namespace

bool MMSpace::is_uniform(double tol) const {
  if (mass_.empty()) return true;
  const double u = 1.0 / static_cast<double>(mass_.size());
  return std::all_of(mass_.begin(), mass_.end(), [&](double m) { return std::abs(m - u) <= tol; });
}

RawSpace MMSpace::raw() const { return RawSpace{labels_, dist_.to_rows(), mass_}; }

MMSpace validate_space(const RawSpace& raw) {
  const std::size_t n = raw.mass.size();
  if (n == 0) throw Error(Errc::SizeMismatch, "empty space");
  if (raw.dist.size() != n) throw Error(Errc::SizeMismatch, "distance matrix has wrong row count");
  if (!raw.labels.empty() && raw.labels.size() != n)
    throw Error(Errc::SizeMismatch, "label count differs from point count");
  for (const auto& row : raw.dist)
    if (row.size() != n) throw Error(Errc::SizeMismatch, "distance matrix is not square");

  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(raw.dist[i][i]) || std::abs(raw.dist[i][i]) > kAxiomTol)
      throw Error(Errc::InvalidDiagonal, "dist[" + idx(i) + "][" + idx(i) + "] != 0");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!std::isfinite(raw.dist[i][j]) || !std::isfinite(raw.dist[j][i]) ||
          std::abs(raw.dist[i][j] - raw.dist[j][i]) > kAxiomTol)
        throw Error(Errc::NonSymmetric, "dist[" + idx(i) + "][" + idx(j) + "] != dist[" + idx(j) +
                                            "][" + idx(i) + "]");
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (raw.dist[i][j] > raw.dist[i][k] + raw.dist[k][j] + kAxiomTol)
          throw Error(Errc::TriangleViolation,
                      "d(" + idx(i) + "," + idx(j) + ") > d(" + idx(i) + "," + idx(k) + ") + d(" +
                          idx(k) + "," + idx(j) + ")");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (raw.dist[i][j] <= kAxiomTol)
        throw Error(Errc::DuplicatePoint, "points " + idx(i) + " and " + idx(j) + " coincide");

  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(raw.mass[i]) || raw.mass[i] <= 0.0)
      throw Error(Errc::ZeroMass, "mass[" + idx(i) + "] is not positive");
    total += raw.mass[i];
  }
  if (std::abs(total - 1.0) > kAxiomTol)
    throw Error(Errc::MassNotNormalized, "masses sum to " + std::to_string(total));

  MMSpace out;
  out.dist_ = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // symmetrize below the tolerance so downstream comparisons are exact
      const double d = i == j ? 0.0 : (i < j ? raw.dist[i][j] : raw.dist[j][i]);
      out.dist_(i, j) = d;
      out.diameter_ = std::max(out.diameter_, d);
    }
  out.mass_ = raw.mass;
  if (raw.labels.empty()) {
    out.labels_.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.labels_[i] = idx(i);
  } else {
    out.labels_ = raw.labels;
  }
  return out;
}

MMSpace validate_space(const Matrix& dist, const std::vector<double>& mass,
                       std::vector<std::string> labels) {
  return validate_space(RawSpace{std::move(labels), dist.to_rows(), mass});
}

MMSpace uniform_space(const Matrix& dist, std::vector<std::string> labels) {
  const std::size_t n = dist.rows();
  return validate_space(dist, std::vector<double>(n, n ? 1.0 / static_cast<double>(n) : 0.0),
                        std::move(labels));
}

bool is_one_lipschitz(const MMSpace& space, std::span<const double> values, double tol) {
  if (values.size() != space.size()) return false;
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j)
      if (std::abs(values[i] - values[j]) > space.dist(i, j) + tol) return false;
  return true;
}

LipFunction LipFunction::checked(const MMSpace& space, std::vector<double> values) {
  if (values.size() != space.size())
    throw Error(Errc::LengthMismatch, "function length differs from point count");
  if (!is_one_lipschitz(space, values)) throw Error(Errc::NotLipschitz, "function is not 1-Lipschitz");
  return LipFunction(std::move(values));
}

LipFunction LipFunction::compose(const Permutation& g) const {
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = values_[g(i)];
  return LipFunction(std::move(out));
}

LipFunction distance_function(const MMSpace& space, std::size_t i) {
  std::vector<double> v(space.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = space.dist(i, j);
  return LipFunction::checked(space, std::move(v));
}

double ky_fan_gap(std::span<const double> gap, std::span<const double> mu) {
  if (gap.size() != mu.size()) throw Error(Errc::LengthMismatch, "gap and measure lengths differ");
  std::vector<std::size_t> order(gap.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return gap[a] < gap[b]; });

  // F(eps) = mu(gap > eps) is a right-continuous step function; on each
  // constancy interval [lo, hi) the least feasible eps is max(lo, F).
  double tail = 0.0;
  for (double m : mu) tail += m;
  double lo = 0.0;
  std::size_t k = 0;
  while (k < order.size() && gap[order[k]] <= 0.0) tail -= mu[order[k++]];
  while (true) {
    const double hi = k < order.size() ? gap[order[k]] : INFINITY;
    const double candidate = std::max(lo, std::max(tail, 0.0));
    if (candidate < hi) return candidate;
    // advance past every point at the next distinct gap value
    lo = hi;
    while (k < order.size() && gap[order[k]] <= lo) tail -= mu[order[k++]];
  }
}

double ky_fan(std::span<const double> f, std::span<const double> g, std::span<const double> mu) {
  if (f.size() != g.size() || f.size() != mu.size())
    throw Error(Errc::LengthMismatch, "ky_fan arguments differ in length");
  std::vector<double> gap(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) gap[i] = std::abs(f[i] - g[i]);
  return ky_fan_gap(gap, mu);
}

double ky_fan_map(const Permutation& g, const Permutation& h, const MMSpace& space) {
  if (g.size() != space.size() || h.size() != space.size())
    throw Error(Errc::LengthMismatch, "map size differs from point count");
  std::vector<double> gap(space.size());
  for (std::size_t i = 0; i < gap.size(); ++i) gap[i] = space.dist(g(i), h(i));
  return ky_fan_gap(gap, space.masses());
}

std::vector<Atom> pushforward(const MMSpace& space, std::span<const double> f) {
  if (f.size() != space.size()) throw Error(Errc::LengthMismatch, "function length differs from point count");
  std::vector<Atom> atoms(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) atoms[i] = {f[i], space.mass(i)};
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.value < b.value; });
  std::vector<Atom> merged;
  for (const Atom& a : atoms) {
    if (!merged.empty() && merged.back().value == a.value)
      merged.back().mass += a.mass;
    else
      merged.push_back(a);
  }
  return merged;
}

double partial_diameter(std::vector<Atom> atoms, double kappa) {
  if (!(kappa > 0.0 && kappa < 1.0)) throw Error(Errc::KappaOutOfRange, "kappa must lie in (0,1)");
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.value < b.value; });
  const double need = 1.0 - kappa - kAxiomTol;
  double best = INFINITY;
  // two-pointer over intervals [atoms[lo].value, atoms[hi].value]
  double window = 0.0;
  std::size_t lo = 0;
  for (std::size_t hi = 0; hi < atoms.size(); ++hi) {
    window += atoms[hi].mass;
    while (lo < hi && window - atoms[lo].mass >= need) window -= atoms[lo++].mass;
    if (window >= need) best = std::min(best, atoms[hi].value - atoms[lo].value);
  }
  return std::isfinite(best) ? best : (atoms.empty() ? 0.0 : atoms.back().value - atoms.front().value);
}

double obs_diam_lower(const MMSpace& space, double kappa, std::uint64_t seed,
                      std::size_t random_probes) {
  if (!(kappa > 0.0 && kappa < 1.0)) throw Error(Errc::KappaOutOfRange, "kappa must lie in (0,1)");
  const std::size_t n = space.size();
  double best = 0.0;
  auto probe = [&](const std::vector<double>& f) {
    best = std::max(best, partial_diameter(pushforward(space, f), kappa));
  };
  for (std::size_t i = 0; i < n; ++i) probe(distance_function(space, i).values());

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> f(n);
  for (std::size_t r = 0; r < random_probes; ++r) {
    switch (r % 3) {
      case 0:  // McShane lower envelope min_i (c_i + d(x_i, .))
      case 1: {  // upper envelope max_i (c_i - d(x_i, .))
        const bool lower = r % 3 == 0;
        std::vector<double> c(n);
        for (double& ci : c) ci = unit(rng) * space.diameter();
        for (std::size_t j = 0; j < n; ++j) {
          double v = lower ? INFINITY : -INFINITY;
          for (std::size_t i = 0; i < n; ++i)
            v = lower ? std::min(v, c[i] + space.dist(i, j)) : std::max(v, c[i] - space.dist(i, j));
          f[j] = v;
        }
        break;
      }
      default: {  // signed convex combination of distance functions
        std::vector<double> w(n);
        double total = 0.0;
        for (double& wi : w) total += (wi = unit(rng));
        std::fill(f.begin(), f.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
          const double s = (unit(rng) < 0.5 ? -1.0 : 1.0) * w[i] / total;
          for (std::size_t j = 0; j < n; ++j) f[j] += s * space.dist(i, j);
        }
        break;
      }
    }
    probe(f);
  }
  // a rounded convex combination can overshoot by an ulp
  return std::min(best, space.diameter());
}

double obs_diam_oracle(const MMSpace& space, double kappa, double grid) {
  if (!(kappa > 0.0 && kappa < 1.0)) throw Error(Errc::KappaOutOfRange, "kappa must lie in (0,1)");
  const std::size_t n = space.size();
  if (n > 5) throw Error(Errc::TooLarge, "obs_diam_oracle supports at most 5 points");
  if (!(grid > 0.0)) throw Error(Errc::InvalidArgument, "grid must be positive");
  if (n == 1) return 0.0;
  const auto steps = static_cast<long>(std::floor(space.diameter() / grid + 1e-9));
  std::vector<double> f(n, 0.0);
  double best = 0.0;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == n) {
      best = std::max(best, partial_diameter(pushforward(space, f), kappa));
      return;
    }
    for (long s = -steps; s <= steps; ++s) {
      const double v = static_cast<double>(s) * grid;
      bool ok = true;
      for (std::size_t i = 0; i < k && ok; ++i) ok = std::abs(v - f[i]) <= space.dist(i, k) + kAxiomTol;
      if (!ok) continue;
      f[k] = v;
      rec(k + 1);
    }
  };
  rec(1);
  return best;
}

}  // namespace eqbox
