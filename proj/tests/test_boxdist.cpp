#include <gtest/gtest.h>

#include <random>

#include "eqbox/boxdist.hpp"
#include "eqbox/error.hpp"
#include "eqbox/generators.hpp"
#include "eqbox/mwis.hpp"
#include "oracles.hpp"

using namespace eqbox;

namespace {

MMAction two(double d, bool z2 = false, std::vector<double> mass = {}) {
  return make_action({{0, d}, {d, 0}}, z2 ? std::vector<std::vector<std::size_t>>{{1, 0}}
                                          : std::vector<std::vector<std::size_t>>{},
                     mass);
}

const std::vector<double> kHalf{0.5, 0.5};

}  // namespace

TEST(Mwis, Examples) {
  const auto none = mwis({0.2, 0.3, 0.5}, {});
  EXPECT_EQ(none.vertices, (std::vector<std::size_t>{0, 1, 2}));
  const auto edge = mwis({0.6, 0.4}, {{0, 1}});
  EXPECT_EQ(edge.vertices, (std::vector<std::size_t>{0}));
  EXPECT_DOUBLE_EQ(edge.mass, 0.6);
  const auto c5 = mwis({1, 1, 1, 1, 1}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  EXPECT_EQ(c5.vertices, (std::vector<std::size_t>{0, 2}));
  EXPECT_DOUBLE_EQ(c5.mass, 2.0);
}

TEST(Mwis, MatchesSubsetEnumeration) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> size(1, 12), w(1, 4);
  for (int c = 0; c < 300; ++c) {
    const std::size_t n = size(rng);
    std::vector<double> weights(n);
    for (auto& x : weights) x = w(rng) / 4.0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (rng() % 3 == 0) edges.push_back({i, j});
    const auto got = mwis(weights, edges);
    const auto ref = oracle::mwis(weights, edges);
    EXPECT_NEAR(got.mass, ref.first, 1e-12) << "case " << c;
    EXPECT_EQ(got.vertices, ref.second) << "case " << c;
  }
}

TEST(Mwis, BudgetAndHeuristic) {
  std::vector<double> w(40, 1.0);
  EXPECT_THROW(mwis(w, {}, 30), Error);
  const auto h = mwis_heuristic(w, {{0, 1}});
  EXPECT_DOUBLE_EQ(h.mass, 39.0);
}

TEST(DS, Examples) {
  const MMSpace x = two(1).space(), y = two(2).space();
  const MapPair idx = MapPair::on_x(Permutation::identity(2)), idy = MapPair::on_y(Permutation::identity(2));
  EXPECT_EQ(d_S(idx, idy, Relation(2, 2), x, y), 0.0);
  EXPECT_EQ(d_S(idx, MapPair::on_y(Permutation::identity(2)), Relation::identity(2), x, x), 0.0);
  EXPECT_EQ(d_S(idx, idy, Relation::identity(2), x, y), 1.0);
}

TEST(DPi, Examples) {
  const MMSpace x = two(1).space(), y = two(2).space();
  const Coupling diag = Coupling::diagonal(kHalf);
  const MapPair idx = MapPair::on_x(Permutation::identity(2)), idy = MapPair::on_y(Permutation::identity(2));
  const auto same = d_pi(idx, idx, diag, x, y);
  EXPECT_EQ(same.value, 0.0);
  EXPECT_EQ(same.subset, Relation::identity(2));
  EXPECT_EQ(d_pi(idx, idy, diag, x, y).value, 0.5);
  EXPECT_EQ(d_pi(idx, MapPair::on_y(Permutation({1, 0})), diag, x, x).value, 1.0);
}

TEST(DPi, MatchesSubsetEnumeration) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> d(2, 4), w(1, 3);
  for (int c = 0; c < 300; ++c) {
    std::vector<std::vector<double>> dx{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}, dy{{0, 0}, {0, 0}};
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) dx[i][j] = dx[j][i] = d(rng) / 2.0;
    dy[0][1] = dy[1][0] = d(rng) / 2.0;
    const MMSpace x = validate_space(RawSpace{{}, dx, {1.0 / 3, 1.0 / 3, 1.0 / 3}});
    const MMSpace y = validate_space(RawSpace{{}, dy, kHalf});
    Matrix plan(3, 2);
    double s = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 2; ++j) s += (plan(i, j) = (rng() % 3 == 0) ? 0.0 : w(rng));
    if (s == 0.0) continue;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 2; ++j) plan(i, j) /= s;
    const Coupling pi = Coupling::from_plan(plan);
    const Permutation gx({1, 2, 0}), gy({1, 0});
    for (const auto& [a, b] : std::vector<std::pair<oracle::Map, oracle::Map>>{
             {{true, Permutation::identity(3)}, {false, Permutation::identity(2)}},
             {{true, gx}, {false, gy}},
             {{true, gx}, {true, Permutation::identity(3)}}}) {
      const MapPair ma{a.on_x ? Side::X : Side::Y, a.p}, mb{b.on_x ? Side::X : Side::Y, b.p};
      EXPECT_NEAR(d_pi(ma, mb, pi, x, y).value, oracle::d_pi(a, b, pi, x, y), 1e-12) << "case " << c;
    }
  }
}

TEST(DPi, CertificateIsConsistent) {
  const MMAction a = gen_cycle(4), b = gen_cycle(4, CycleMetric::Chord);
  const Coupling pi = Coupling::product(a.space().masses(), b.space().masses());
  const auto c = d_pi(MapPair::on_x(a[1]), MapPair::on_y(b[1]), pi, a.space(), b.space());
  EXPECT_NEAR(c.threshold, d_S(MapPair::on_x(a[1]), MapPair::on_y(b[1]), c.subset, a.space(), b.space()), 1e-15);
  EXPECT_NEAR(c.value, std::max(1.0 - mass(pi, c.subset), c.threshold), 1e-12);
  EXPECT_TRUE(c.exact);
}

TEST(DPi, TooLargeWithoutHeuristic) {
  const MMAction a = gen_cycle(8);
  const Coupling pi = Coupling::product(a.space().masses(), a.space().masses());
  const MapPair id = MapPair::on_x(a[0]);
  EXPECT_THROW(d_pi(id, id, pi, a.space(), a.space()), Error);
  DPiOptions opts;
  opts.heuristic = true;
  const auto c = d_pi(id, MapPair::on_y(a[0]), pi, a.space(), a.space(), opts);
  EXPECT_FALSE(c.exact);
  EXPECT_LE(c.value, 1.0);
}

TEST(BoxPi, Examples) {
  const MMAction z2 = two(1, true), t = two(1);
  const Coupling diag = Coupling::diagonal(kHalf);
  EXPECT_EQ(box_pi(z2, z2, diag).value, 0.0);
  EXPECT_EQ(box_pi(z2, t, diag).value, 1.0);
  const MMAction t2 = two(2);
  EXPECT_EQ(box_pi(t, t2, diag).value,
            d_pi(MapPair::on_x(Permutation::identity(2)), MapPair::on_y(Permutation::identity(2)), diag, t.space(),
                 t2.space())
                .value);
}

TEST(BoxPi, MatchesBruteForce) {
  std::mt19937_64 rng(43);
  const std::vector<MMAction> pool{two(1), two(1, true), two(2), two(2, true),
                                   make_action({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}, {{1, 2, 0}}),
                                   make_action({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}, {{2, 1, 0}})};
  for (const auto& a : pool)
    for (const auto& b : pool) {
      for (int c = 0; c < 3; ++c) {
        const std::size_t n = a.space().size(), m = b.space().size();
        std::vector<std::size_t> ro(n), co(m);
        std::iota(ro.begin(), ro.end(), 0);
        std::iota(co.begin(), co.end(), 0);
        std::shuffle(ro.begin(), ro.end(), rng);
        std::shuffle(co.begin(), co.end(), rng);
        const Coupling pi = northwest_corner(a.space().masses(), b.space().masses(), ro, co);
        EXPECT_NEAR(box_pi(a, b, pi).value, oracle::box_pi(a, b, pi), 1e-12);
        EXPECT_NEAR(box_pi_value(a, b, pi), oracle::box_pi(a, b, pi), 1e-12);
      }
    }
}

TEST(BoxUpper, Examples) {
  const MMAction c4 = gen_cycle(4);
  EXPECT_EQ(box_upper(c4, c4).value, 0.0);
  EXPECT_EQ(box_upper(two(1), two(2)).value, 0.5);
  EXPECT_EQ(box_upper(two(1, true), two(1)).value, 1.0);
}

TEST(BoxUpper, AtMostOneAndDeterministic) {
  const std::vector<MMAction> pool{gen_cycle(3), gen_cycle(4, CycleMetric::Chord), two(1, true),
                                   make_action({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}, {})};
  for (const auto& a : pool)
    for (const auto& b : pool) {
      const SearchResult r = box_upper(a, b);
      EXPECT_LE(r.value, 1.0);
      EXPECT_GE(r.value, 0.0);
      EXPECT_EQ(r.value, box_upper(a, b).value);
      EXPECT_NEAR(box_pi(a, b, r.witness).value, r.value, 1e-12);
    }
}

TEST(NorthwestCorner, IsAVertex) {
  const Coupling c = northwest_corner({0.5, 0.5}, {0.25, 0.75}, {0, 1}, {0, 1});
  EXPECT_EQ(c(0, 0), 0.25);
  EXPECT_EQ(c(0, 1), 0.25);
  EXPECT_EQ(c(1, 0), 0.0);
  EXPECT_EQ(c(1, 1), 0.5);
  EXPECT_EQ(support(c).size(), 3u);
}

TEST(Assignment, MatchesPermutationEnumeration) {
  std::mt19937_64 rng(44);
  std::uniform_int_distribution<int> v(0, 20);
  for (int c = 0; c < 100; ++c) {
    const std::size_t n = 1 + c % 6;
    Matrix cost(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) cost(i, j) = v(rng);
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    double best = INFINITY;
    do {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += cost(i, p[i]);
      best = std::min(best, s);
    } while (std::next_permutation(p.begin(), p.end()));
    const auto match = min_cost_assignment(cost);
    double got = 0.0;
    for (std::size_t i = 0; i < n; ++i) got += cost(i, match[i]);
    EXPECT_EQ(got, best);
  }
}

TEST(GridCouplings, CountsAndErrors) {
  EXPECT_EQ(grid_couplings(kHalf, kHalf, 0.125).size(), 5u);
  EXPECT_THROW(grid_couplings({1.0 / 3, 2.0 / 3}, kHalf, 0.125), Error);
  EXPECT_DOUBLE_EQ(grid_rounding_error(2, 2, 0.125), 0.25);
  EXPECT_DOUBLE_EQ(grid_rounding_error(3, 3, 1.0 / 48), 3.0 / 48);
}

TEST(BoxOracle, Examples) {
  const MMAction pt = make_action({{0}}, {});
  EXPECT_EQ(box_oracle(pt, pt, 0.125).value, 0.0);
  EXPECT_EQ(box_oracle(two(1), two(2), 0.125).value, 0.5);
  EXPECT_EQ(box_oracle(two(1, true), two(1), 0.125).value, 1.0);
}

TEST(BoxOracle, MatchesIndependentGridScan) {
  const std::vector<MMAction> pool{two(1), two(1, true), two(2), two(1, false, {0.25, 0.75}),
                                   two(0.5, false, {0.375, 0.625})};
  for (const auto& a : pool)
    for (const auto& b : pool) {
      double best = 1.0;
      for (const auto& pi : oracle::grid_couplings_2x2(a.space().masses(), b.space().masses(), 0.125))
        best = std::min(best, oracle::box_pi(a, b, pi));
      EXPECT_NEAR(box_oracle(a, b, 0.125).value, best, 1e-12);
    }
}

TEST(BoxOracle, UpperNeverBelowOracleMinusErr) {
  const std::vector<MMAction> pool{two(1), two(1, true), two(2), two(1, false, {0.25, 0.75})};
  for (const auto& a : pool)
    for (const auto& b : pool) {
      const OracleResult o = box_oracle(a, b, 0.125);
      EXPECT_GE(box_upper(a, b).value, o.value - o.err - 1e-12);
    }
}

TEST(BoxOracle, TooLarge) {
  EXPECT_THROW(box_oracle(gen_cycle(4), gen_cycle(4), 0.25), Error);
}

TEST(BoxProperties, PseudoMetricOnRandomCouplings) {
  std::mt19937_64 rng(45);
  const MMAction a = gen_cycle(3), b = make_action({{0, 1, 1.5}, {1, 0, 1}, {1.5, 1, 0}}, {});
  for (int c = 0; c < 50; ++c) {
    std::vector<std::size_t> ro{0, 1, 2}, co{0, 1, 2};
    std::shuffle(ro.begin(), ro.end(), rng);
    std::shuffle(co.begin(), co.end(), rng);
    const Coupling pi = northwest_corner(a.space().masses(), b.space().masses(), ro, co);
    std::vector<MapPair> maps;
    for (const auto& g : a.elements()) maps.push_back(MapPair::on_x(g));
    for (const auto& h : b.elements()) maps.push_back(MapPair::on_y(h));
    for (const auto& p : maps)
      for (const auto& q : maps) {
        const double pq = d_pi(p, q, pi, a.space(), b.space()).value;
        EXPECT_EQ(pq, d_pi(q, p, pi, a.space(), b.space()).value);
        for (const auto& r : maps)
          EXPECT_LE(d_pi(p, r, pi, a.space(), b.space()).value, pq + d_pi(q, r, pi, a.space(), b.space()).value + 1e-12);
      }
  }
}
