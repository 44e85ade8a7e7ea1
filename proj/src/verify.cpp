#include "eqbox/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "eqbox/boxdist.hpp"
#include "eqbox/coupling.hpp"
#include "eqbox/error.hpp"
#include "eqbox/experiments.hpp"
#include "eqbox/generators.hpp"
#include "eqbox/group.hpp"
#include "eqbox/mmspace.hpp"
#include "eqbox/obsdist.hpp"
#include "eqbox/report.hpp"

namespace eqbox {

namespace {

using Rng = std::mt19937_64;
using Dist = std::vector<std::vector<double>>;

constexpr double kTol = 1e-12;

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

std::vector<double> random_probs(Rng& rng, std::size_t n) {
  std::vector<double> w(n);
  double s = 0.0;
  for (auto& x : w) s += (x = uniform(rng, 0.05, 1.0));
  for (auto& x : w) x /= s;
  return w;
}

// rows scaled to the given marginal
Matrix random_plan(Rng& rng, const std::vector<double>& rows, std::size_t m) {
  Matrix p(rows.size(), m);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto w = random_probs(rng, m);
    for (std::size_t j = 0; j < m; ++j) p(i, j) = rows[i] * w[j];
  }
  return p;
}

Relation random_relation(Rng& rng, std::size_t n, std::size_t m) {
  Relation r(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (pick(rng, 0, 1)) r.insert(i, j);
  return r;
}

double max_diff(const Matrix& a, const Matrix& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

// random points on a quarter-grid in the plane; coincident points allowed
Matrix random_plane_metric(Rng& rng, std::size_t n) {
  std::vector<std::pair<double, double>> p(n);
  for (auto& q : p) q = {static_cast<double>(pick(rng, 0, 4)) / 4.0, static_cast<double>(pick(rng, 0, 4)) / 4.0};
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d(i, j) = std::hypot(p[i].first - p[j].first, p[i].second - p[j].second);
  return d;
}

// min_k (c_k + d(x_k, .)) is 1-Lipschitz for any metric d
std::vector<double> random_lipschitz(Rng& rng, const Matrix& d) {
  const std::size_t n = d.rows();
  std::vector<double> f(n, INFINITY);
  const std::size_t anchors = pick(rng, 1, n);
  for (std::size_t k = 0; k < anchors; ++k) {
    const std::size_t x = pick(rng, 0, n - 1);
    const double c = uniform(rng, -1.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) f[i] = std::min(f[i], c + d(x, i));
  }
  return f;
}

std::string num(double v) { return format_number(v); }

SuiteResult make(const std::string& name, int criterion) {
  SuiteResult r;
  r.name = name;
  r.criterion = criterion;
  return r;
}

void check(SuiteResult& r, bool ok) {
  ++r.cases;
  if (!ok) ++r.violations;
}

void finish(SuiteResult& r) { r.pass = r.violations == 0; }

// ---------------------------------------------------------------- instances

MMAction act(const Dist& d, const std::vector<std::vector<std::size_t>>& gens, const std::vector<double>& mass = {}) {
  return make_action(d, gens, mass);
}

// same space and action with point i renamed p(i)
MMAction relabel(const MMAction& a, const std::vector<std::size_t>& p) {
  const std::size_t n = a.space().size();
  Dist d(n, std::vector<double>(n));
  std::vector<double> mass(n);
  for (std::size_t i = 0; i < n; ++i) {
    mass[p[i]] = a.space().mass(i);
    for (std::size_t j = 0; j < n; ++j) d[p[i]][p[j]] = a.space().dist(i, j);
  }
  std::vector<std::vector<std::size_t>> gens;
  for (const auto& g : a.elements()) {
    std::vector<std::size_t> img(n);
    for (std::size_t i = 0; i < n; ++i) img[p[i]] = p[g(i)];
    gens.push_back(img);
  }
  return act(d, gens, mass);
}

const Dist kPoint{{0}};
Dist two(double t) { return {{0, t}, {t, 0}}; }
Dist three(double d01, double d02, double d12) { return {{0, d01, d02}, {d01, 0, d12}, {d02, d12, 0}}; }

const std::vector<std::size_t> kSwap{1, 0};

struct Named {
  std::string name;
  MMAction action;
};

// two- and three-point uniform instances with every admissible group
std::vector<Named> uniform_corpus() {
  std::vector<Named> c;
  for (double t : {1.0, 2.0}) {
    const std::string s = num(t);
    c.push_back({"two(" + s + ")", act(two(t), {})});
    c.push_back({"two(" + s + ")/Z2", act(two(t), {kSwap})});
  }
  const Dist eq = three(1, 1, 1);
  c.push_back({"equi", act(eq, {})});
  c.push_back({"equi/Z2", act(eq, {{1, 0, 2}})});
  c.push_back({"equi/Z3", act(eq, {{1, 2, 0}})});
  c.push_back({"equi/S3", act(eq, {{1, 0, 2}, {1, 2, 0}})});
  c.push_back({"iso112", act(three(1, 1, 2), {})});
  c.push_back({"iso112/Z2", act(three(1, 1, 2), {{0, 2, 1}})});
  c.push_back({"iso221", act(three(2, 2, 1), {})});
  c.push_back({"iso221/Z2", act(three(2, 2, 1), {{0, 2, 1}})});
  c.push_back({"scalene", act(three(1, 1.5, 2), {})});
  return c;
}

// masses in eighths, diameters at most 2
std::vector<Named> eighths_corpus() {
  return {
      {"point", act(kPoint, {})},
      {"two(1)", act(two(1), {})},
      {"two(1)/Z2", act(two(1), {kSwap})},
      {"two(2)", act(two(2), {})},
      {"two(1)[3/8]", act(two(1), {}, {0.375, 0.625})},
      {"equi[1/4,1/4,1/2]/Z2", act(three(1, 1, 1), {{1, 0, 2}}, {0.25, 0.25, 0.5})},
      {"iso211[3/8,3/8,1/4]/Z2", act(three(2, 1, 1), {{1, 0, 2}}, {0.375, 0.375, 0.25})},
      {"scalene[1/4,3/8,3/8]", act(three(1, 1.5, 2), {}, {0.25, 0.375, 0.375})},
  };
}

// ------------------------------------------------------------------ suites

SuiteResult suite_coupling(std::uint64_t seed) {
  auto r = make("coupling", 1);
  Rng rng(seed * 7919u + 1u);
  double worst_glue = 0.0, worst_assoc = 0.0, worst_mass = -INFINITY;
  for (int c = 0; c < 500; ++c) {
    Matrix s0(3, 3);
    const auto w = random_probs(rng, 9);
    for (std::size_t k = 0; k < 9; ++k) s0(k / 3, k % 3) = w[k];
    const Coupling sigma = Coupling::from_plan(s0);
    const Coupling tau = Coupling::from_plan(random_plan(rng, sigma.muY(), 3));
    const Coupling rho = Coupling::from_plan(random_plan(rng, tau.muY(), 3));
    const Glue g = glue(sigma, tau);
    const double dg = std::max(max_diff(g.project12(), sigma.plan()), max_diff(g.project23(), tau.plan()));
    worst_glue = std::max(worst_glue, dg);
    check(r, dg <= kTol);
    const double da = max_diff(compose_couplings(compose_couplings(sigma, tau), rho).plan(),
                               compose_couplings(sigma, compose_couplings(tau, rho)).plan());
    worst_assoc = std::max(worst_assoc, da);
    check(r, da <= kTol);
  }
  for (int c = 0; c < 500; ++c) {
    Matrix s0(3, 3);
    const auto w = random_probs(rng, 9);
    for (std::size_t k = 0; k < 9; ++k) s0(k / 3, k % 3) = w[k];
    const Coupling sigma = Coupling::from_plan(s0);
    const Coupling tau = Coupling::from_plan(random_plan(rng, sigma.muY(), 3));
    const Relation s = random_relation(rng, 3, 3), t = random_relation(rng, 3, 3);
    const Relation ts = relation_compose(s, t);
    const double lhs = mass(compose_couplings(sigma, tau), ts);
    double dom = 0.0;
    for (auto i : relation_dom(ts)) dom += sigma.muX()[i];
    const double rhs = mass(tau, t) + mass(sigma, s) - 1.0;
    worst_mass = std::max(worst_mass, rhs - lhs);
    check(r, rhs <= lhs + kTol && lhs <= dom + kTol);
  }
  r.details.push_back("glue marginal max deviation " + num(worst_glue));
  r.details.push_back("associativity max deviation " + num(worst_assoc));
  r.details.push_back("mass inequality max excess " + num(worst_mass));
  finish(r);
  return r;
}

SuiteResult suite_metric(std::uint64_t seed) {
  auto r = make("metric", 2);
  Rng rng(seed * 7919u + 2u);
  std::size_t kf_bad = 0, dp_bad = 0, dpi_bad = 0;
  for (int c = 0; c < 1000; ++c) {
    const std::size_t n = pick(rng, 1, 6);
    const auto mu = random_probs(rng, n);
    std::vector<double> f(n), g(n), h(n);
    for (std::size_t i = 0; i < n; ++i) {
      f[i] = static_cast<double>(pick(rng, 0, 8)) / 4.0 - 1.0;
      g[i] = static_cast<double>(pick(rng, 0, 8)) / 4.0 - 1.0;
      h[i] = static_cast<double>(pick(rng, 0, 8)) / 4.0 - 1.0;
    }
    const double fg = ky_fan(f, g, mu), gf = ky_fan(g, f, mu), gh = ky_fan(g, h, mu), fh = ky_fan(f, h, mu);
    const bool ok = fg == gf && fh <= fg + gh + 1e-10;
    if (!ok) ++kf_bad;
    check(r, ok);
  }
  for (int c = 0; c < 1000; ++c) {
    const std::size_t n = pick(rng, 1, 5);
    const Matrix d = random_plane_metric(rng, n);
    const auto a = random_probs(rng, n), b = random_probs(rng, n), e = random_probs(rng, n);
    const double ab = prokhorov(a, b, d), ba = prokhorov(b, a, d), be = prokhorov(b, e, d), ae = prokhorov(a, e, d);
    const bool ok = ab == ba && ae <= ab + be + 1e-10;
    if (!ok) ++dp_bad;
    check(r, ok);
  }
  // d^pi on maps of both spaces for a few couplings per corpus pair
  const auto corpus = uniform_corpus();
  std::size_t dpi_cases = 0;
  for (const auto& x : corpus)
    for (const auto& y : corpus) {
      const auto& mx = x.action.space().masses();
      const auto& my = y.action.space().masses();
      std::vector<Coupling> pis{Coupling::product(mx, my)};
      std::vector<std::size_t> ix(mx.size()), iy(my.size());
      for (std::size_t i = 0; i < ix.size(); ++i) ix[i] = i;
      for (std::size_t i = 0; i < iy.size(); ++i) iy[i] = i;
      pis.push_back(northwest_corner(mx, my, ix, iy));
      std::reverse(iy.begin(), iy.end());
      pis.push_back(northwest_corner(mx, my, ix, iy));
      std::vector<MapPair> maps;
      for (const auto& g : x.action.elements()) maps.push_back(MapPair::on_x(g));
      for (const auto& h : y.action.elements()) maps.push_back(MapPair::on_y(h));
      const std::size_t k = maps.size();
      for (const auto& pi : pis) {
        std::vector<double> t(k * k);
        for (std::size_t p = 0; p < k; ++p)
          for (std::size_t q = 0; q < k; ++q)
            t[p * k + q] = d_pi(maps[p], maps[q], pi, x.action.space(), y.action.space()).value;
        for (std::size_t p = 0; p < k; ++p) {
          ++dpi_cases;
          bool ok = t[p * k + p] == 0.0;
          for (std::size_t q = 0; q < k; ++q) {
            ok = ok && t[p * k + q] == t[q * k + p];
            for (std::size_t s = 0; s < k; ++s) ok = ok && t[p * k + s] <= t[p * k + q] + t[q * k + s] + kTol;
          }
          if (!ok) ++dpi_bad;
          check(r, ok);
        }
      }
    }
  r.details.push_back("ky_fan triples 1000, violations " + std::to_string(kf_bad));
  r.details.push_back("prokhorov triples 1000, violations " + std::to_string(dp_bad));
  r.details.push_back("d_pi base maps " + std::to_string(dpi_cases) + ", violations " + std::to_string(dpi_bad));
  finish(r);
  return r;
}

SuiteResult suite_lemma(std::uint64_t seed) {
  auto r = make("lemma", 3);
  Rng rng(seed * 7919u + 3u);
  std::size_t l1a = 0, l1b = 0, fg = 0, kp = 0;
  for (int c = 0; c < 1000; ++c) {
    const std::size_t n = pick(rng, 1, 8);
    const auto mu = random_probs(rng, n);
    std::vector<double> f(n), g(n);
    for (std::size_t i = 0; i < n; ++i) {
      f[i] = uniform(rng, -1.0, 1.0);
      g[i] = pick(rng, 0, 2) == 0 ? f[i] : uniform(rng, -1.0, 1.0);
    }
    double l1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) l1 += mu[i] * std::abs(f[i] - g[i]);
    const double kf = ky_fan(f, g, mu);
    const bool a = kf * kf <= l1 + kTol, b = l1 <= 3.0 * kf + kTol;
    if (!a) ++l1a;
    if (!b) ++l1b;
    check(r, a && b);
  }
  for (int c = 0; c < 1000; ++c) {
    const std::size_t n = pick(rng, 2, 6);
    Dist d(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = static_cast<double>(pick(rng, 1, 2));
    const MMAction aut = enumerate_aut(uniform_space(Matrix::from_rows(d)));
    const auto& sp = aut.space();
    const auto& g1 = aut[pick(rng, 0, aut.order() - 1)];
    const auto& g2 = aut[pick(rng, 0, aut.order() - 1)];
    const auto f1 = LipFunction::checked(sp, random_lipschitz(rng, sp.distances()));
    const auto f2 = LipFunction::checked(sp, random_lipschitz(rng, sp.distances()));
    const double lhs = ky_fan(f1.compose(g1).values(), f2.compose(g2).values(), sp.masses());
    const double rhs = ky_fan(f1.values(), f2.values(), sp.masses()) + ky_fan_map(g1, g2, sp);
    const bool ok = lhs <= rhs + kTol;
    if (!ok) ++fg;
    check(r, ok);
  }
  for (int c = 0; c < 1000; ++c) {
    const std::size_t n = pick(rng, 1, 6);
    const Matrix d = random_plane_metric(rng, n);
    const auto mu = random_probs(rng, n), nu = random_probs(rng, n);
    const auto f = random_lipschitz(rng, d), g = random_lipschitz(rng, d);
    const bool ok = std::abs(ky_fan(f, g, mu) - ky_fan(f, g, nu)) <= 2.0 * prokhorov(mu, nu, d) + kTol;
    if (!ok) ++kp;
    check(r, ok);
  }
  r.details.push_back("dKF^2 <= L1: 1000 cases, violations " + std::to_string(l1a));
  r.details.push_back("L1 <= 3 dKF (D = 1): 1000 cases, violations " + std::to_string(l1b));
  r.details.push_back("composition bound: 1000 cases, violations " + std::to_string(fg));
  r.details.push_back("Ky Fan vs 2 Prokhorov: 1000 cases, violations " + std::to_string(kp));
  finish(r);
  return r;
}

SuiteResult suite_cross(std::uint64_t) {
  auto r = make("cross", 4);
  constexpr double grid = 0.125, lip = 0.25;
  const auto corpus = eighths_corpus();
  std::size_t bad = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i)
    for (std::size_t j = i; j < corpus.size(); ++j) {
      const MMAction& a = corpus[i].action;
      const MMAction& b = corpus[j].action;
      const MMAction ta = trivial_action(a.space()), tb = trivial_action(b.space());
      const OracleResult eq = box_oracle(a, b, grid), plain = box_oracle(ta, tb, grid);
      const DconcOracleResult ceq = dconc_oracle(a, b, grid, lip), cplain = dconc_oracle(ta, tb, grid, lip);
      const bool box_ok = plain.value - plain.err <= 2.0 * eq.value + kTol;
      const bool dconc_box = ceq.value - ceq.err <= 4.0 * eq.value + kTol &&
                             cplain.value - cplain.err <= 4.0 * plain.value + kTol;
      const bool dconc_mono = cplain.value - cplain.err <= ceq.value + ceq.lip_slack + kTol;
      const bool unit = eq.value <= 1.0 + kTol && plain.value <= 1.0 + kTol;
      check(r, box_ok);
      check(r, dconc_box);
      check(r, dconc_mono);
      check(r, unit);
      if (!(box_ok && dconc_box && dconc_mono && unit)) ++bad;
      r.details.push_back(corpus[i].name + " vs " + corpus[j].name + ": box " + num(plain.value) + " eq " +
                          num(eq.value) + " (err " + num(eq.err) + "), dconc " + num(cplain.value) + " eq " +
                          num(ceq.value) + " (err " + num(ceq.err) + ")" + (box_ok && dconc_box && dconc_mono && unit ? "" : " VIOLATION"));
    }
  finish(r);
  return r;
}

struct NondegPair {
  Named a, b;
  bool iso = false;
};

SuiteResult suite_nondegeneracy(std::uint64_t) {
  auto r = make("nondegeneracy", 5);
  const MMAction t1 = act(two(1), {}), z2 = act(two(1), {kSwap}), t2 = act(two(2), {}), pt = act(kPoint, {});
  const MMAction e3 = act(three(1, 1, 1), {}), e3z3 = act(three(1, 1, 1), {{1, 2, 0}});
  const MMAction iso = act(three(1, 1, 2), {}), sc = act(three(1, 1.5, 2), {});
  const std::vector<std::size_t> rot{1, 2, 0};
  const std::vector<NondegPair> pairs{
      {{"two(1)", t1}, {"two(1) relabeled", relabel(t1, kSwap)}, true},
      {{"two(1)/Z2", z2}, {"two(1)/Z2 relabeled", relabel(z2, kSwap)}, true},
      {{"point", pt}, {"point", pt}, true},
      {{"equi/Z3", e3z3}, {"equi/Z3 relabeled", relabel(e3z3, {0, 2, 1})}, true},
      {{"iso112", iso}, {"iso112 relabeled", relabel(iso, rot)}, true},
      {{"scalene", sc}, {"scalene relabeled", relabel(sc, rot)}, true},
      {{"two(1)", t1}, {"two(2)", t2}, false},
      {{"two(1)/Z2", z2}, {"two(1)", t1}, false},
      {{"two(1)", t1}, {"point", pt}, false},
      {{"equi/Z3", e3z3}, {"equi", e3}, false},
      {{"equi", e3}, {"iso112", iso}, false},
      {{"iso112", iso}, {"scalene", sc}, false},
      {{"two(1)", t1}, {"equi", e3}, false},
  };
  for (const auto& p : pairs) {
    const std::size_t n = p.a.action.space().size(), m = p.b.action.space().size();
    // finest grids that keep each oracle call within seconds
    double box_grid = 1.0 / 48.0, conc_grid = 1.0 / 12.0, lip = 0.25;
    if (std::max(n, m) <= 2) {
      box_grid = 1.0 / 16.0;
      conc_grid = 1.0 / 64.0;
      lip = 0.125;
    } else if (std::min(n, m) <= 2) {
      conc_grid = 1.0 / 24.0;
      lip = 0.125;
    }
    const OracleResult box = box_oracle(p.a.action, p.b.action, box_grid);
    const DconcOracleResult dc = dconc_oracle(p.a.action, p.b.action, conc_grid, lip);
    const bool box_ok = p.iso ? box.value <= box.err + kTol : box.value > 2.0 * box.err;
    const bool dc_ok = p.iso ? dc.value <= dc.err + kTol : dc.value > 2.0 * dc.err;
    check(r, box_ok);
    check(r, dc_ok);
    r.details.push_back(std::string(p.iso ? "isomorphic " : "distinct ") + p.a.name + " vs " + p.b.name + ": box " +
                        num(box.value) + " (err " + num(box.err) + ")" + (box_ok ? "" : " VIOLATION") + ", dconc " +
                        num(dc.value) + " (err " + num(dc.err) + ")" + (dc_ok ? "" : " VIOLATION"));
  }
  finish(r);
  return r;
}

SuiteResult suite_pinned(std::uint64_t seed) {
  auto r = make("pinned", 6);
  const MMAction t1 = act(two(1), {}), t2 = act(two(2), {}), z2 = act(two(1), {kSwap});
  struct Case {
    std::string name;
    const MMAction& a;
    const MMAction& b;
    double expect;
  };
  SearchBudget budget;
  budget.seed = seed;
  for (const Case& c : {Case{"two(1) vs two(2)", t1, t2, 0.5}, Case{"two(1)/Z2 vs two(1)", z2, t1, 1.0}}) {
    const OracleResult o = box_oracle(c.a, c.b, 0.125);
    const SearchResult u = box_upper(c.a, c.b, budget);
    const bool ok = std::abs(o.value - c.expect) <= kTol && std::abs(u.value - c.expect) <= kTol && o.err <= 0.5;
    check(r, ok);
    r.details.push_back(c.name + ": oracle " + num(o.value) + " (err " + num(o.err) + "), upper " + num(u.value) +
                        ", expected " + num(c.expect) + (ok ? "" : " VIOLATION"));
  }
  finish(r);
  return r;
}

SuiteResult suite_quotient(std::uint64_t seed) {
  auto r = make("quotient", 7);
  QuotientOptions opts;
  opts.budget.seed = seed;
  opts.kappa = 0.1;
  std::vector<NamedAction> cycles;
  for (std::size_t n : {4u, 6u, 8u}) cycles.push_back({"cycle" + std::to_string(n), gen_cycle(n)});
  std::vector<NamedAction> chords;
  for (std::size_t n : {3u, 5u}) chords.push_back({"chord" + std::to_string(n), gen_cycle(n, CycleMetric::Chord)});
  const std::vector<NamedAction> constant(3, NamedAction{"cycle4", gen_cycle(4)});
  struct Seq {
    std::vector<NamedAction> seq;
    NamedAction target;
  };
  const std::vector<Seq> runs{{cycles, {"cycle8", gen_cycle(8)}},
                              {chords, {"chord6", gen_cycle(6, CycleMetric::Chord)}},
                              {constant, {"cycle4", gen_cycle(4)}}};
  for (const auto& run : runs) {
    const ExperimentReport rep = run_quotient_convergence(run.seq, run.target, opts);
    std::map<std::string, std::map<std::string, double>> by;
    for (const auto& row : rep.rows) by[row.instance][row.metric] = row.value;
    for (const auto& x : run.seq) {
      const auto& v = by[x.name];
      const bool order = v.at("box_quot") <= v.at("box_eq") + kTol;
      const bool margin = v.at("concquot_margin") >= -kTol;
      check(r, order);
      check(r, margin);
      r.details.push_back(x.name + " -> " + run.target.name + ": box_eq " + num(v.at("box_eq")) + " box_quot " +
                          num(v.at("box_quot")) + " margin " + num(v.at("concquot_margin")) +
                          (order && margin ? "" : " VIOLATION"));
    }
  }
  finish(r);
  return r;
}

std::string group_string(const std::vector<Permutation>& g) {
  std::string s = "{";
  for (std::size_t k = 0; k < g.size(); ++k) s += (k ? " " : "") + g[k].to_string();
  return s + "}";
}

SuiteResult suite_properness(std::uint64_t seed) {
  auto r = make("properness", 8);
  SearchBudget budget;
  budget.seed = seed;
  struct Probe {
    std::string name;
    std::vector<NamedAction> seq;
    MMAction limit;
    bool constant;
  };
  std::vector<Probe> probes;
  probes.push_back({"cycle4/Z4 constant", std::vector<NamedAction>(3, {"cycle4", gen_cycle(4)}), gen_cycle(4), true});
  std::vector<NamedAction> shrink;
  for (int n = 1; n <= 4; ++n)
    shrink.push_back({"two(1+2^-" + std::to_string(n) + ")/Z2", act(two(1.0 + std::ldexp(1.0, -n)), {kSwap})});
  probes.push_back({"two-point Z2", shrink, act(two(1), {kSwap}), false});
  const MMAction sc = act(three(1, 1.5, 2), {});
  probes.push_back({"scalene constant", std::vector<NamedAction>(3, {"scalene", sc}), sc, true});
  for (const auto& p : probes) {
    const PropernessResult res = run_properness_probe(p.seq, p.limit.space(), budget);
    bool ok = true;
    for (std::size_t k = 0; k < res.groups.size(); ++k) {
      ok = ok && res.groups[k] == p.limit.elements();
      if (p.constant) ok = ok && res.defects[k] == 0.0;
      if (k > 0) ok = ok && res.defects[k] <= res.defects[k - 1] + kTol;
    }
    check(r, ok);
    std::string defects;
    for (double d : res.defects) defects += (defects.empty() ? "" : " ") + num(d);
    r.details.push_back(p.name + ": group " + group_string(res.groups.back()) + ", defects " + defects +
                        (ok ? "" : " VIOLATION"));
  }
  finish(r);
  return r;
}

SuiteResult suite_lens(std::uint64_t) {
  auto r = make("lens", 9);
  LensExperimentConfig cfg;
  cfg.lens.js = {4};
  cfg.lens.K = 4;
  cfg.lens.truncation = 3;
  cfg.lens.n_of_j = {3};
  cfg.lens.a = {1.0, 0.5, 0.25};
  cfg.sample_counts = {2, 4, 8};
  cfg.seeds = {1, 2, 3};
  cfg.budget.dpi.heuristic = true;
  cfg.budget.random_perms = 8;
  cfg.budget.random_vertices = 4;
  const ExperimentReport rep = run_lens_experiment(cfg);
  for (const auto& row : rep.rows)
    if (row.metric == "box_eq") r.details.push_back(row.instance + ": box_eq " + num(row.value));
  std::size_t monotone = 0;
  bool below = true;
  for (const auto& t : lens_trend(rep, cfg)) {
    monotone += t.nonincreasing ? 1 : 0;
    below = below && t.quotient_below;
    r.details.push_back("seed " + std::to_string(t.seed) + ": nonincreasing " + (t.nonincreasing ? "yes" : "no") +
                        ", quotient below " + (t.quotient_below ? "yes" : "no"));
  }
  check(r, monotone >= 2);
  check(r, below);
  finish(r);
  return r;
}

using SuiteFn = std::function<SuiteResult(std::uint64_t)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"coupling", suite_coupling},     {"metric", suite_metric},       {"lemma", suite_lemma},
      {"cross", suite_cross},           {"nondegeneracy", suite_nondegeneracy},
      {"pinned", suite_pinned},         {"quotient", suite_quotient},   {"properness", suite_properness},
      {"lens", suite_lens},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, _] : registry()) n.push_back(k);
    return n;
  }();
  return names;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
  for (const auto& [k, fn] : registry())
    if (k == name) return fn(seed);
  throw Error(Errc::InvalidArgument, "unknown suite '" + name + "'");
}

std::vector<SuiteResult> run_suites(const std::string& name, std::uint64_t seed) {
  if (name != "all") return {run_suite(name, seed)};
  std::vector<SuiteResult> out;
  for (const auto& k : suite_names()) out.push_back(run_suite(k, seed));
  return out;
}

std::string render(const std::vector<SuiteResult>& results) {
  std::ostringstream os;
  for (const auto& s : results) {
    os << "suite " << s.name << " (criterion " << s.criterion << "): " << (s.pass ? "PASS" : "FAIL") << ", "
       << s.cases << " checks, " << s.violations << " violations\n";
    for (const auto& d : s.details) os << "  " << d << '\n';
  }
  return os.str();
}

}  // namespace eqbox
