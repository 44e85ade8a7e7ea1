#include "eqbox/boxdist.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "eqbox/error.hpp"
#include "eqbox/parallel.hpp"

namespace eqbox {

namespace {

constexpr double kMassSnap = 1e-12;

double f_gamma(const MapPair& g, IndexPair p, IndexPair q, const MMSpace& x, const MMSpace& y) {
  return g.side == Side::X ? x.dist(g.perm(p.first), q.first) : y.dist(g.perm(p.second), q.second);
}

void check_map(const MapPair& g, const MMSpace& x, const MMSpace& y) {
  const std::size_t n = g.side == Side::X ? x.size() : y.size();
  if (g.perm.size() != n) throw Error(Errc::SizeMismatch, "map size differs from its space");
}

double one_minus(double m) {
  const double r = 1.0 - m;
  return std::abs(r) < kMassSnap ? 0.0 : std::max(r, 0.0);
}

}  // namespace

double d_S(const MapPair& g1, const MapPair& g2, const Relation& s, const MMSpace& x, const MMSpace& y) {
  check_map(g1, x, y);
  check_map(g2, x, y);
  if (s.n() != x.size() || s.m() != y.size()) throw Error(Errc::SizeMismatch, "relation shape differs from the spaces");
  const auto pts = s.pairs();
  double out = 0.0;
  for (auto p : pts)
    for (auto q : pts) out = std::max(out, std::abs(f_gamma(g1, p, q, x, y) - f_gamma(g2, p, q, x, y)));
  return out;
}

DPiCertificate d_pi(const MapPair& g1, const MapPair& g2, const Coupling& pi, const MMSpace& x,
                    const MMSpace& y, const DPiOptions& opts) {
  check_map(g1, x, y);
  check_map(g2, x, y);
  if (pi.rows() != x.size() || pi.cols() != y.size())
    throw Error(Errc::SizeMismatch, "coupling shape differs from the spaces");
  const auto pts = support(pi).pairs();
  const std::size_t k = pts.size();
  const bool exact = k <= std::min(opts.mwis_budget, kMaxExactMwis);
  if (!exact && !opts.heuristic)
    throw Error(Errc::TooLarge, "support of " + std::to_string(k) + " points exceeds the exact budget");

  std::vector<double> w(k);
  for (std::size_t p = 0; p < k; ++p) w[p] = pi(pts[p].first, pts[p].second);
  std::vector<double> viol(k * k);
  std::vector<double> levels{0.0};
  for (std::size_t p = 0; p < k; ++p)
    for (std::size_t q = 0; q < k; ++q) {
      viol[p * k + q] = std::abs(f_gamma(g1, pts[p], pts[q], x, y) - f_gamma(g2, pts[p], pts[q], x, y));
      levels.push_back(viol[p * k + q]);
    }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  // heaviest subset whose pairwise violations stay within eps
  auto best_at = [&](double eps) {
    std::vector<std::size_t> keep;
    for (std::size_t p = 0; p < k; ++p)
      if (viol[p * k + p] <= eps) keep.push_back(p);
    std::vector<double> kw;
    for (auto p : keep) kw.push_back(w[p]);
    std::vector<Edge> edges;
    for (std::size_t a = 0; a < keep.size(); ++a)
      for (std::size_t b = a + 1; b < keep.size(); ++b)
        if (std::max(viol[keep[a] * k + keep[b]], viol[keep[b] * k + keep[a]]) > eps) edges.emplace_back(a, b);
    MwisResult r = exact ? mwis(kw, edges, kMaxExactMwis) : mwis_heuristic(kw, edges);
    for (auto& v : r.vertices) v = keep[v];
    return r;
  };

  // 1 - M(eps) is nonincreasing, so the crossing with eps is found by
  // bisection. The heuristic M is only roughly monotone; the result is still a
  // feasible subset, hence an upper bound.
  std::size_t lo = 0, hi = levels.size() - 1;
  MwisResult chosen = best_at(levels[hi]);
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    MwisResult r = best_at(levels[mid]);
    if (one_minus(r.mass) <= levels[mid]) {
      hi = mid;
      chosen = std::move(r);
    } else {
      lo = mid + 1;
    }
  }
  if (hi > 0) {
    MwisResult before = best_at(levels[hi - 1]);
    if (one_minus(before.mass) < levels[hi]) chosen = std::move(before);
  }

  DPiCertificate cert;
  cert.exact = exact;
  cert.subset = Relation(x.size(), y.size());
  for (auto p : chosen.vertices) cert.subset.insert(pts[p].first, pts[p].second);
  cert.threshold = d_S(g1, g2, cert.subset, x, y);
  cert.value = std::max(one_minus(mass(pi, cert.subset)), cert.threshold);
  return cert;
}

BoxPiResult box_pi(const MMAction& a, const MMAction& b, const Coupling& pi, const DPiOptions& opts) {
  const std::size_t ng = a.order(), nh = b.order();
  BoxPiResult r;
  r.cols = nh;
  r.table.resize(ng * nh);
  parallel_for(ng * nh, [&](std::size_t k) {
    r.table[k] = d_pi(MapPair::on_x(a[k / nh]), MapPair::on_y(b[k % nh]), pi, a.space(), b.space(), opts);
  });
  double value = 0.0;
  for (std::size_t g = 0; g < ng; ++g) {
    double row = INFINITY;
    for (std::size_t h = 0; h < nh; ++h) row = std::min(row, r.at(g, h).value);
    value = std::max(value, row);
  }
  for (std::size_t h = 0; h < nh; ++h) {
    double col = INFINITY;
    for (std::size_t g = 0; g < ng; ++g) col = std::min(col, r.at(g, h).value);
    value = std::max(value, col);
  }
  for (const auto& c : r.table) r.exact = r.exact && c.exact;
  r.value = value;
  return r;
}

double box_pi_value(const MMAction& a, const MMAction& b, const Coupling& pi, const DPiOptions& opts,
                    double cutoff, bool* exact) {
  const std::size_t ng = a.order(), nh = b.order();
  std::vector<double> cache(ng * nh, -1.0);
  bool all_exact = true;
  auto val = [&](std::size_t g, std::size_t h) {
    double& c = cache[g * nh + h];
    if (c < 0.0) {
      const auto cert = d_pi(MapPair::on_x(a[g]), MapPair::on_y(b[h]), pi, a.space(), b.space(), opts);
      all_exact = all_exact && cert.exact;
      c = cert.value;
    }
    return c;
  };
  double value = 0.0;
  // a row (or column) whose minimum cannot exceed the running max is abandoned early
  auto sweep = [&](bool rows) {
    const std::size_t outer = rows ? ng : nh, inner = rows ? nh : ng;
    for (std::size_t i = 0; i < outer; ++i) {
      double m = INFINITY;
      for (std::size_t j = 0; j < inner && m > value; ++j) m = std::min(m, rows ? val(i, j) : val(j, i));
      value = std::max(value, m);
      if (value >= cutoff) return true;
    }
    return false;
  };
  if (!sweep(true)) sweep(false);
  if (exact) *exact = all_exact;
  return value;
}

Coupling northwest_corner(const std::vector<double>& muX, const std::vector<double>& muY,
                          const std::vector<std::size_t>& row_order, const std::vector<std::size_t>& col_order) {
  const std::size_t n = muX.size(), m = muY.size();
  Matrix plan(n, m);
  std::vector<double> r(muX), c(muY);
  std::size_t i = 0, j = 0;
  while (i < n && j < m) {
    const std::size_t ri = row_order[i], cj = col_order[j];
    const double t = std::min(r[ri], c[cj]);
    plan(ri, cj) += t;
    r[ri] -= t;
    c[cj] -= t;
    // advance whichever side is exhausted; on a tie the row goes first
    if (r[ri] <= c[cj] || j + 1 == m)
      ++i;
    else
      ++j;
  }
  return Coupling::checked(std::move(plan), muX, muY);
}

std::vector<std::size_t> min_cost_assignment(const Matrix& cost) {
  const std::size_t n = cost.rows();
  if (cost.cols() != n) throw Error(Errc::SizeMismatch, "assignment needs a square cost matrix");
  // potentials u (rows), v (columns); p[j] = row matched to column j, 1-based
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), INFINITY);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = INFINITY;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> match(n);
  for (std::size_t j = 1; j <= n; ++j) match[p[j] - 1] = j - 1;
  return match;
}

Coupling assignment_coupling(const Matrix& cost) {
  const auto match = min_cost_assignment(cost);
  const std::size_t n = match.size();
  return Coupling::from_permutation(Permutation(match), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

std::vector<Coupling> candidate_couplings(const std::vector<double>& muX, const std::vector<double>& muY,
                                          const SearchBudget& budget) {
  const std::size_t n = muX.size(), m = muY.size();
  std::vector<Coupling> out;
  std::mt19937_64 rng(budget.seed);

  const auto uniform = [](const std::vector<double>& mu) {
    return std::all_of(mu.begin(), mu.end(), [&](double v) { return std::abs(v - mu[0]) <= 1e-12; });
  };
  if (n == m && uniform(muX) && uniform(muY)) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    auto add = [&](const std::vector<std::size_t>& p) {
      Matrix plan(n, n);
      for (std::size_t i = 0; i < n; ++i) plan(i, p[i]) = muX[i];
      out.push_back(Coupling::checked(std::move(plan), muX, muY));
    };
    if (n <= budget.exhaustive_perm_limit) {
      do add(perm);
      while (std::next_permutation(perm.begin(), perm.end()));
    } else {
      add(perm);
      for (std::size_t t = 0; t < budget.random_perms; ++t) {
        std::shuffle(perm.begin(), perm.end(), rng);
        add(perm);
      }
    }
  }
  if (n * m <= budget.dpi.mwis_budget) out.push_back(Coupling::product(muX, muY));
  std::vector<std::size_t> ro(n), co(m);
  std::iota(ro.begin(), ro.end(), std::size_t{0});
  std::iota(co.begin(), co.end(), std::size_t{0});
  out.push_back(northwest_corner(muX, muY, ro, co));
  for (std::size_t t = 0; t < budget.random_vertices; ++t) {
    std::shuffle(ro.begin(), ro.end(), rng);
    std::shuffle(co.begin(), co.end(), rng);
    out.push_back(northwest_corner(muX, muY, ro, co));
  }
  return out;
}

SearchResult search_couplings(const std::vector<double>& muX, const std::vector<double>& muY,
                              const SearchBudget& budget, const CouplingObjective& objective,
                              const std::vector<Coupling>& extra) {
  SearchResult best;
  best.value = INFINITY;
  auto consider = [&](const Coupling& pi) {
    if (best.evaluations >= budget.max_evals) return false;
    ++best.evaluations;
    bool exact = true;
    const double v = objective(pi, best.value, &exact);
    if (v < best.value) {
      best.value = v;
      best.witness = pi;
      best.exact_inner = exact;
      return true;
    }
    return false;
  };
  for (const auto& pi : extra) consider(pi);
  for (const auto& pi : candidate_couplings(muX, muY, budget)) {
    consider(pi);
    if (best.value == 0.0) return best;
  }

  const std::size_t n = muX.size(), m = muY.size();
  for (std::size_t pass = 0; pass < budget.refine_passes && best.value > 0.0; ++pass) {
    bool improved = false;
    std::size_t moves = 0;
    const Coupling base = best.witness;
    for (std::size_t a = 0; a < n * m && !improved; ++a) {
      const std::size_t i = a / m, j = a % m;
      if (base(i, j) <= 0.0) continue;
      for (std::size_t b = a + 1; b < n * m && !improved; ++b) {
        const std::size_t k = b / m, l = b % m;
        if (k == i || l == j || base(k, l) <= 0.0) continue;
        if (++moves > budget.refine_moves) break;
        // move mass around the cycle (i,j) -> (i,l) -> (k,l) -> (k,j)
        Matrix plan = base.plan();
        const double t = std::min(plan(i, j), plan(k, l));
        plan(i, j) -= t;
        plan(k, l) -= t;
        plan(i, l) += t;
        plan(k, j) += t;
        if (plan(i, j) < 1e-15) plan(i, j) = 0.0;
        if (plan(k, l) < 1e-15) plan(k, l) = 0.0;
        improved = consider(Coupling::checked(std::move(plan), muX, muY));
        if (best.evaluations >= budget.max_evals) return best;
      }
    }
    if (!improved) break;
  }
  return best;
}

SearchResult box_upper(const MMAction& a, const MMAction& b, const SearchBudget& budget,
                       const std::vector<Coupling>& extra) {
  auto objective = [&](const Coupling& pi, double cutoff, bool* exact) {
    return box_pi_value(a, b, pi, budget.dpi, cutoff, exact);
  };
  SearchResult r = search_couplings(a.space().masses(), b.space().masses(), budget, objective, extra);
  // the search may stop a candidate early; report the witness's exact value
  bool exact = true;
  r.value = std::min(1.0, box_pi_value(a, b, r.witness, budget.dpi, INFINITY, &exact));
  r.exact_inner = exact;
  return r;
}

double grid_rounding_error(std::size_t n, std::size_t m, double grid) {
  return static_cast<double>(std::min(n * (m / 2), m * (n / 2))) * grid;
}

std::vector<Coupling> grid_couplings(const std::vector<double>& muX, const std::vector<double>& muY,
                                     double grid, std::size_t max_count) {
  if (!(grid > 0.0)) throw Error(Errc::InvalidArgument, "grid must be positive");
  auto units = [&](const std::vector<double>& mu, const char* which) {
    std::vector<long> u;
    for (std::size_t i = 0; i < mu.size(); ++i) {
      const double q = mu[i] / grid;
      if (std::abs(q - std::round(q)) > 1e-9)
        throw Error(Errc::GridIncompatible,
                    std::string(which) + " mass " + std::to_string(i) + " is not a multiple of the grid");
      u.push_back(std::lround(q));
    }
    return u;
  };
  std::vector<long> r = units(muX, "row"), c = units(muY, "column");
  const std::size_t n = r.size(), m = c.size();
  std::vector<long> cell(n * m, 0);
  std::vector<Coupling> out;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == n * m) {
      if (out.size() >= max_count) throw Error(Errc::TooLarge, "grid coupling count exceeds cap");
      Matrix plan(n, m);
      for (std::size_t t = 0; t < n * m; ++t) plan(t / m, t % m) = static_cast<double>(cell[t]) * grid;
      out.push_back(Coupling::checked(std::move(plan), muX, muY));
      return;
    }
    const std::size_t i = k / m, j = k % m;
    long lo = 0, hi = std::min(r[i], c[j]);
    if (j + 1 == m) {
      // last cell of a row takes what is left; in the last row it must also close the column
      if (r[i] > c[j] || (i + 1 == n && r[i] != c[j])) return;
      lo = hi = r[i];
    } else if (i + 1 == n) {
      if (c[j] > r[i]) return;
      lo = hi = c[j];
    }
    for (long v = lo; v <= hi; ++v) {
      cell[k] = v;
      r[i] -= v;
      c[j] -= v;
      self(self, k + 1);
      r[i] += v;
      c[j] += v;
    }
  };
  rec(rec, 0);
  return out;
}

OracleResult box_oracle(const MMAction& a, const MMAction& b, double grid, const DPiOptions& opts) {
  const std::size_t n = a.space().size(), m = b.space().size();
  if (n * m > 9) throw Error(Errc::TooLarge, "box oracle limited to n*m <= 9");
  const auto tables = grid_couplings(a.space().masses(), b.space().masses(), grid);
  OracleResult r;
  r.value = INFINITY;
  for (const auto& pi : tables) {
    ++r.evaluations;
    const double v = box_pi_value(a, b, pi, opts, r.value);
    if (v < r.value) {
      r.value = v;
      r.witness = pi;
    }
  }
  r.err = grid_rounding_error(n, m, grid);
  return r;
}

}  // namespace eqbox
