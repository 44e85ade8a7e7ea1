#include "eqbox/mwis.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <string>

#include "eqbox/error.hpp"

namespace eqbox {

namespace {

using Bits = std::uint64_t;

constexpr double kImproveTol = 1e-12;

std::size_t lowest(Bits b) { return static_cast<std::size_t>(std::countr_zero(b)); }

struct Solver {
  std::vector<double> w;
  std::vector<Bits> adj;
  double best = -1.0;
  Bits best_set = 0;

  // Greedy clique partition of the candidates; each clique holds at most one
  // chosen vertex, so summing clique maxima bounds the remaining gain.
  double bound(Bits cand) const {
    double total = 0.0;
    while (cand) {
      const std::size_t v = lowest(cand);
      Bits clique = Bits{1} << v;
      Bits common = adj[v] & cand;
      double top = w[v];
      while (common) {
        const std::size_t u = lowest(common);
        clique |= Bits{1} << u;
        common &= adj[u];
        top = std::max(top, w[u]);
      }
      total += top;
      cand &= ~clique;
    }
    return total;
  }

  void search(Bits cand, Bits chosen, double weight) {
    if (!cand) {
      if (weight > best + kImproveTol) {
        best = weight;
        best_set = chosen;
      }
      return;
    }
    if (weight + bound(cand) <= best + kImproveTol) return;
    const std::size_t v = lowest(cand);
    const Bits bit = Bits{1} << v;
    // include first: the first optimum reached is the lexicographically least
    search(cand & ~bit & ~adj[v], chosen | bit, weight + w[v]);
    search(cand & ~bit, chosen, weight);
  }
};

std::vector<std::vector<char>> adjacency(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::vector<char>> a(n, std::vector<char>(n, 0));
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw Error(Errc::SizeMismatch, "edge endpoint out of range");
    if (u != v) a[u][v] = a[v][u] = 1;
  }
  return a;
}

}  // namespace

MwisResult mwis(const std::vector<double>& weights, const std::vector<Edge>& edges, std::size_t budget) {
  const std::size_t n = weights.size();
  if (n > std::min(budget, kMaxExactMwis))
    throw Error(Errc::BudgetExceeded,
                std::to_string(n) + " vertices exceed the exact solver budget of " +
                    std::to_string(std::min(budget, kMaxExactMwis)));
  Solver s;
  s.w = weights;
  s.adj.assign(n, 0);
  const auto a = adjacency(n, edges);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (a[u][v]) s.adj[u] |= Bits{1} << v;
  // zero-weight vertices never help and would break the lexicographic rule
  Bits cand = 0;
  for (std::size_t v = 0; v < n; ++v)
    if (weights[v] > 0.0) cand |= Bits{1} << v;
  s.search(cand, 0, 0.0);

  MwisResult r;
  r.mass = std::max(s.best, 0.0);
  for (Bits b = s.best_set; b; b &= b - 1) r.vertices.push_back(lowest(b));
  return r;
}

MwisResult mwis_heuristic(const std::vector<double>& weights, const std::vector<Edge>& edges) {
  const std::size_t n = weights.size();
  const auto a = adjacency(n, edges);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return weights[x] > weights[y]; });

  std::vector<char> in(n, 0);
  for (auto v : order) {
    if (weights[v] <= 0.0) continue;
    bool free = true;
    for (std::size_t u = 0; u < n && free; ++u) free = !(in[u] && a[u][v]);
    if (free) in[v] = 1;
  }
  // add v and evict its chosen neighbours whenever that gains weight
  for (bool improved = true; improved;) {
    improved = false;
    for (auto v : order) {
      if (in[v]) continue;
      double lost = 0.0;
      for (std::size_t u = 0; u < n; ++u)
        if (in[u] && a[u][v]) lost += weights[u];
      if (weights[v] > lost + kImproveTol) {
        for (std::size_t u = 0; u < n; ++u)
          if (a[u][v]) in[u] = 0;
        in[v] = 1;
        improved = true;
      }
    }
  }
  MwisResult r;
  r.exact = false;
  for (std::size_t v = 0; v < n; ++v)
    if (in[v]) {
      r.vertices.push_back(v);
      r.mass += weights[v];
    }
  return r;
}

}  // namespace eqbox
