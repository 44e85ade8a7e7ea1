#include "eqbox/obsdist.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eqbox/error.hpp"

namespace eqbox {

namespace {

struct Cell {
  std::size_t i, j;
  double w;
};

std::vector<Cell> cells_of(const Coupling& pi) {
  std::vector<Cell> out;
  for (std::size_t i = 0; i < pi.rows(); ++i)
    for (std::size_t j = 0; j < pi.cols(); ++j)
      if (pi(i, j) > 0.0) out.push_back({i, j, pi(i, j)});
  return out;
}

// Ky Fan of a short gap list; same scan as ky_fan_gap without allocation.
double ky_fan_small(double* gap, double* w, std::size_t k) {
  for (std::size_t a = 1; a < k; ++a)
    for (std::size_t b = a; b > 0 && gap[b - 1] > gap[b]; --b) {
      std::swap(gap[b - 1], gap[b]);
      std::swap(w[b - 1], w[b]);
    }
  double tail = 0.0;
  for (std::size_t t = 0; t < k; ++t) tail += w[t];
  std::size_t t = 0;
  while (t < k && gap[t] <= 0.0) tail -= w[t++];
  double lo = 0.0;
  while (true) {
    const double hi = t < k ? gap[t] : INFINITY;
    const double cand = std::max(lo, std::max(tail, 0.0));
    if (cand < hi) return cand;
    lo = hi;
    while (t < k && gap[t] <= lo) tail -= w[t++];
  }
}

class RhoKernel {
 public:
  explicit RhoKernel(const Coupling& pi) : cells_(cells_of(pi)), gap_(cells_.size()), w_(cells_.size()) {}

  double operator()(const double* f, const double* fp, const Permutation& g, const Permutation& h) {
    const double a = term(f, fp, nullptr, nullptr);
    return std::max(a, term(f, fp, &g, &h));
  }

 private:
  double term(const double* f, const double* fp, const Permutation* g, const Permutation* h) {
    for (std::size_t c = 0; c < cells_.size(); ++c) {
      const std::size_t i = g ? (*g)(cells_[c].i) : cells_[c].i;
      const std::size_t j = h ? (*h)(cells_[c].j) : cells_[c].j;
      gap_[c] = std::abs(f[i] - fp[j]);
      w_[c] = cells_[c].w;
    }
    return ky_fan_small(gap_.data(), w_.data(), cells_.size());
  }

  std::vector<Cell> cells_;
  std::vector<double> gap_, w_;
};

double grid_range(double diam, double grid) { return std::ceil(diam / grid - 1e-9) * grid; }

struct Families {
  // sup over x_pinned, inf over y_free; then sup over y_pinned, inf over x_free
  std::vector<std::vector<double>> x_pinned, y_free, y_pinned, x_free;
  double slack = 0.0;
};

Families build_families(const MMSpace& x, const MMSpace& y, double grid) {
  if (x.size() > 4 || y.size() > 4) throw Error(Errc::TooLarge, "Lipschitz grid oracle limited to 4 points per side");
  if (!(grid > 0.0)) throw Error(Errc::InvalidArgument, "grid must be positive");
  if (grid < std::max(x.diameter(), y.diameter()) / 16.0 - 1e-12)
    throw Error(Errc::TooLarge, "Lipschitz grid finer than diam/16");
  Families fam;
  const double rx = grid_range(x.diameter(), grid), ry = grid_range(y.diameter(), grid);
  fam.x_pinned = lip_grid(x, grid, rx, true);
  fam.y_free = lip_grid(y, grid, rx, false);
  fam.y_pinned = lip_grid(y, grid, ry, true);
  fam.x_free = lip_grid(x, grid, ry, false);
  fam.slack = rho_slack(x, y, grid);
  return fam;
}

// Directed sup-inf in both directions; returns early with a value >= stop
// once the supremum reaches stop.
double rho_families(const Families& fam, RhoKernel& k, const Permutation& g, const Permutation& h, double stop) {
  double best = 0.0;
  for (const auto& f : fam.x_pinned) {
    double inner = INFINITY;
    for (const auto& fp : fam.y_free) {
      inner = std::min(inner, k(f.data(), fp.data(), g, h));
      if (inner <= best) break;
    }
    best = std::max(best, inner);
    if (best >= stop) return best;
  }
  for (const auto& fp : fam.y_pinned) {
    double inner = INFINITY;
    for (const auto& f : fam.x_free) {
      inner = std::min(inner, k(f.data(), fp.data(), g, h));
      if (inner <= best) break;
    }
    best = std::max(best, inner);
    if (best >= stop) return best;
  }
  return best;
}

// Hausdorff max-min over an ng x nh table whose entries are computed lazily by
// val(g, h, stop), which may return any number >= stop when the entry is >= stop.
template <class F>
double lazy_hausdorff(std::size_t ng, std::size_t nh, double cutoff, F&& val) {
  std::vector<double> v(ng * nh, -1.0);
  std::vector<char> exact(ng * nh, 0);
  double value = 0.0;
  auto get = [&](std::size_t g, std::size_t h, double stop) {
    const std::size_t k = g * nh + h;
    if (v[k] < 0.0 || (!exact[k] && v[k] < stop)) {
      v[k] = val(g, h, stop);
      exact[k] = v[k] < stop;
    }
    return v[k];
  };
  for (int pass = 0; pass < 2; ++pass) {
    const bool rows = pass == 0;
    const std::size_t outer = rows ? ng : nh, inner = rows ? nh : ng;
    for (std::size_t i = 0; i < outer; ++i) {
      double m = INFINITY;
      for (std::size_t j = 0; j < inner && m > value; ++j) m = std::min(m, rows ? get(i, j, m) : get(j, i, m));
      value = std::max(value, m);
      if (value >= cutoff) return value;
    }
  }
  return value;
}

DconcResult dconc_oracle_pi(const MMAction& a, const MMAction& b, const Coupling& pi, const Families& fam,
                            double cutoff) {
  RhoKernel kernel(pi);
  DconcResult r;
  r.value = lazy_hausdorff(a.order(), b.order(), cutoff, [&](std::size_t g, std::size_t h, double stop) {
    return rho_families(fam, kernel, a[g], b[h], stop);
  });
  r.slack = fam.slack;
  return r;
}

}  // namespace

double rho_pi_gh(const LipFunction& f, const LipFunction& fprime, const Permutation& g, const Permutation& h,
                 const Coupling& pi) {
  if (f.size() != pi.rows() || g.size() != pi.rows() || fprime.size() != pi.cols() || h.size() != pi.cols())
    throw Error(Errc::SpaceMismatch, "functions, maps and coupling disagree on space sizes");
  RhoKernel k(pi);
  return k(f.values().data(), fprime.values().data(), g, h);
}

LipFunction mcshane_extend(const LipFunction& f, const Relation& s, const MMSpace& y) {
  if (s.n() != f.size() || s.m() != y.size()) throw Error(Errc::SpaceMismatch, "relation shape differs from the spaces");
  const auto pairs = s.pairs();
  if (pairs.empty()) throw Error(Errc::EmptyRelation, "McShane extension over an empty relation");
  std::vector<double> out(y.size(), INFINITY);
  for (std::size_t q = 0; q < y.size(); ++q)
    for (auto [xp, yp] : pairs) out[q] = std::min(out[q], y.dist(q, yp) + f[xp]);
  return LipFunction::checked(y, std::move(out));
}

RhoUpper rho_pi_upper(const MMSpace& x, const MMSpace& y, const Permutation& g, const Permutation& h,
                      const Coupling& pi, const Relation& s, const Relation& s1, const Permutation& g1,
                      const Relation& s2, const Permutation& h2) {
  const auto id_x = Permutation::identity(x.size());
  const auto id_y = Permutation::identity(y.size());
  auto defect = [&](const Relation& r) { return std::max(0.0, 1.0 - mass(pi, r)); };
  RhoUpper out;
  out.eps = std::max({defect(s), defect(s1), defect(s2), d_S(MapPair::on_x(g), MapPair::on_y(h), s, x, y),
                      d_S(MapPair::on_x(g1), MapPair::on_y(id_y), s1, x, y),
                      d_S(MapPair::on_x(id_x), MapPair::on_y(h2), s2, x, y)});
  out.bound = std::min(1.0, 4.0 * out.eps);

  Relation fwd(x.size(), y.size()), back(x.size(), y.size());
  for (auto [i, j] : s.pairs()) {
    if (s1.contains(i, j)) fwd.insert(i, j);
    if (s2.contains(i, j)) back.insert(i, j);
  }
  if (!fwd.empty())
    for (std::size_t i = 0; i < x.size(); ++i) {
      const auto f = distance_function(x, i);
      out.probe = std::max(out.probe, rho_pi_gh(f, mcshane_extend(f, fwd, y), g, h, pi));
    }
  if (!back.empty()) {
    const auto inv = relation_inverse(back);
    for (std::size_t j = 0; j < y.size(); ++j) {
      const auto fp = distance_function(y, j);
      out.probe = std::max(out.probe, rho_pi_gh(mcshane_extend(fp, inv, x), fp, g, h, pi));
    }
  }
  return out;
}

std::vector<std::vector<double>> lip_grid(const MMSpace& space, double grid, double range, bool pin_first,
                                          std::size_t max_count) {
  if (!(grid > 0.0)) throw Error(Errc::InvalidArgument, "grid must be positive");
  const std::size_t n = space.size();
  const auto steps = static_cast<long>(std::floor(range / grid + 1e-9));
  std::vector<std::vector<double>> out;
  std::vector<double> f(n, 0.0);
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == n) {
      if (out.size() >= max_count) throw Error(Errc::TooLarge, "Lipschitz grid family exceeds cap");
      out.push_back(f);
      return;
    }
    for (long s = -steps; s <= steps; ++s) {
      if (k == 0 && pin_first && s != 0) continue;
      const double v = static_cast<double>(s) * grid;
      bool ok = true;
      for (std::size_t i = 0; i < k && ok; ++i) ok = std::abs(v - f[i]) <= space.dist(i, k) + 1e-9;
      if (!ok) continue;
      f[k] = v;
      self(self, k + 1);
    }
  };
  if (n > 0) rec(rec, 0);
  return out;
}

double rho_slack(const MMSpace& x, const MMSpace& y, double grid) {
  auto aligned = [&](const MMSpace& s) {
    for (double d : s.distances().data())
      if (std::abs(d / grid - std::round(d / grid)) > 1e-9) return false;
    return true;
  };
  if (aligned(x) && aligned(y)) return grid;
  return 2.0 * static_cast<double>(std::max(x.size(), y.size()) - 1) * grid;
}

RhoOracle rho_oracle(const MMSpace& x, const MMSpace& y, const Permutation& g, const Permutation& h,
                     const Coupling& pi, double grid) {
  if (pi.rows() != x.size() || pi.cols() != y.size() || g.size() != x.size() || h.size() != y.size())
    throw Error(Errc::SpaceMismatch, "maps and coupling disagree on space sizes");
  const Families fam = build_families(x, y, grid);
  RhoKernel k(pi);
  return {rho_families(fam, k, g, h, INFINITY), fam.slack};
}

DconcResult dconc_pi(const MMAction& a, const MMAction& b, const Coupling& pi, DconcMode mode,
                     const DconcOptions& opts, double cutoff) {
  const MMSpace& x = a.space();
  const MMSpace& y = b.space();
  if (mode == DconcMode::Oracle) return dconc_oracle_pi(a, b, pi, build_families(x, y, opts.grid), cutoff);

  const BoxPiResult table = box_pi(a, b, pi, opts.dpi);
  const std::size_t ng = a.order(), nh = b.order();
  // best (g1, id_Y) and (id_X, h2) certificates; identities sit at index 0
  std::size_t g1 = 0, h2 = 0;
  for (std::size_t g = 1; g < ng; ++g)
    if (table.at(g, 0).value < table.at(g1, 0).value) g1 = g;
  for (std::size_t h = 1; h < nh; ++h)
    if (table.at(0, h).value < table.at(0, h2).value) h2 = h;

  std::vector<RhoUpper> up(ng * nh);
  for (std::size_t g = 0; g < ng; ++g)
    for (std::size_t h = 0; h < nh; ++h)
      up[g * nh + h] = rho_pi_upper(x, y, a[g], b[h], pi, table.at(g, h).subset, table.at(g1, 0).subset, a[g1],
                                    table.at(0, h2).subset, b[h2]);
  auto haus = [&](auto pick) {
    return lazy_hausdorff(ng, nh, INFINITY, [&](std::size_t g, std::size_t h, double) { return pick(up[g * nh + h]); });
  };
  DconcResult r;
  r.value = haus([](const RhoUpper& u) { return u.bound; });
  r.probe = haus([](const RhoUpper& u) { return u.probe; });
  r.exact_inner = table.exact;
  return r;
}

SearchResult dconc_upper(const MMAction& a, const MMAction& b, const SearchBudget& budget) {
  DconcOptions opts;
  opts.dpi = budget.dpi;
  auto objective = [&](const Coupling& pi, double, bool* exact) {
    const auto r = dconc_pi(a, b, pi, DconcMode::Upper, opts);
    if (exact) *exact = r.exact_inner;
    return r.value;
  };
  return search_couplings(a.space().masses(), b.space().masses(), budget, objective);
}

DconcOracleResult dconc_oracle(const MMAction& a, const MMAction& b, double coupling_grid, double lip_grid_step,
                               std::size_t max_tables) {
  const MMSpace& x = a.space();
  const MMSpace& y = b.space();
  const Families fam = build_families(x, y, lip_grid_step);
  const auto tables = grid_couplings(x.masses(), y.masses(), coupling_grid, max_tables);
  DconcOracleResult r;
  r.value = INFINITY;
  for (const auto& pi : tables) {
    ++r.evaluations;
    const double v = dconc_oracle_pi(a, b, pi, fam, r.value).value;
    if (v < r.value) {
      r.value = v;
      r.witness = pi;
    }
  }
  r.lip_slack = fam.slack;
  r.err = grid_rounding_error(x.size(), y.size(), coupling_grid) + fam.slack;
  return r;
}

}  // namespace eqbox
