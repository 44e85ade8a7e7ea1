#include <gtest/gtest.h>

#include <random>

#include "eqbox/boxdist.hpp"
#include "eqbox/error.hpp"
#include "eqbox/generators.hpp"
#include "eqbox/obsdist.hpp"
#include "oracles.hpp"

using namespace eqbox;

namespace {

MMAction two(double d, bool z2 = false, std::vector<double> mass = {}) {
  return make_action({{0, d}, {d, 0}}, z2 ? std::vector<std::vector<std::size_t>>{{1, 0}}
                                          : std::vector<std::vector<std::size_t>>{},
                     mass);
}

const std::vector<double> kHalf{0.5, 0.5};
const Permutation kId2 = Permutation::identity(2), kSwap({1, 0});

}  // namespace

TEST(RhoPiGh, Examples) {
  const MMSpace x = two(1).space();
  const Coupling diag = Coupling::diagonal(kHalf);
  const LipFunction f = distance_function(x, 0), zero = LipFunction::checked(x, {0, 0});
  EXPECT_EQ(rho_pi_gh(f, f, kId2, kId2, diag), 0.0);
  EXPECT_EQ(rho_pi_gh(f, zero, kId2, kId2, diag), 0.5);
  // f o swap != f, so the second term now differs from the first
  EXPECT_EQ(rho_pi_gh(f, f, kSwap, kId2, diag), 1.0);
}

TEST(McShane, Examples) {
  const MMSpace x = two(1).space(), y = two(2).space();
  const LipFunction f = LipFunction::checked(x, {0.25, 1});
  EXPECT_EQ(mcshane_extend(f, Relation::identity(2), x).values(), f.values());
  const LipFunction g = LipFunction::checked(x, {0, 1});
  EXPECT_EQ(mcshane_extend(g, Relation::from_pairs(2, 2, {{0, 0}}), y).values(), (std::vector<double>{0, 2}));
  EXPECT_THROW(mcshane_extend(g, Relation(2, 2), y), Error);
}

TEST(McShane, AlwaysLipschitz) {
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<int> d(2, 4);
  for (int c = 0; c < 200; ++c) {
    std::vector<std::vector<double>> m(3, std::vector<double>(3, 0.0));
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) m[i][j] = m[j][i] = d(rng) / 2.0;
    const MMSpace x = uniform_space(Matrix::from_rows(m)), y = gen_cycle(4).space();
    std::vector<double> v(3);
    for (std::size_t i = 0; i < 3; ++i) v[i] = std::min(m[0][i], 1.0);
    Relation s(3, 4);
    s.insert(rng() % 3, rng() % 4);
    s.insert(rng() % 3, rng() % 4);
    const LipFunction e = mcshane_extend(LipFunction::checked(x, v), s, y);
    EXPECT_TRUE(is_one_lipschitz(y, e.values()));
  }
}

TEST(RhoOracle, Examples) {
  const MMSpace pt = two(1).space();
  const MMSpace one = make_action({{0}}, {}).space();
  const Coupling diag = Coupling::diagonal(kHalf);
  EXPECT_EQ(rho_oracle(one, one, Permutation::identity(1), Permutation::identity(1), Coupling::diagonal({1}), 0.125).value,
            0.0);
  EXPECT_EQ(rho_oracle(pt, pt, kId2, kId2, diag, 0.125).value, 0.0);
  // frozen from an unpinned full enumeration
  const RhoOracle r = rho_oracle(pt, pt, kId2, kSwap, diag, 0.125);
  EXPECT_EQ(r.value, 0.5);
  EXPECT_EQ(r.slack, 0.125);
  EXPECT_EQ(oracle::rho(pt, pt, kId2, kSwap, diag, 0.125, 12), 0.5);
}

TEST(RhoOracle, MatchesUnpinnedEnumeration) {
  const std::vector<MMAction> pool{two(1), two(0.5), two(1, false, {0.25, 0.75})};
  const std::vector<std::pair<Permutation, Permutation>> maps{{kId2, kId2}, {kSwap, kId2}, {kSwap, kSwap}};
  for (const auto& a : pool)
    for (const auto& b : pool)
      for (const auto& pi : oracle::grid_couplings_2x2(a.space().masses(), b.space().masses(), 0.25))
        for (const auto& [g, h] : maps) {
          const auto preserves = [](const MMSpace& s, const Permutation& p) { return s.mass(p(0)) == s.mass(0); };
          if (!preserves(a.space(), g) || !preserves(b.space(), h)) continue;
          const RhoOracle r = rho_oracle(a.space(), b.space(), g, h, pi, 0.125);
          const double ref = oracle::rho(a.space(), b.space(), g, h, pi, 0.125, 10);
          EXPECT_NEAR(r.value, ref, r.slack + 1e-12);
        }
}

TEST(RhoOracle, GuardsSize) {
  const MMSpace c5 = gen_cycle(5).space();
  const Permutation id = Permutation::identity(5);
  EXPECT_THROW(rho_oracle(c5, c5, id, id, Coupling::diagonal(c5.masses()), 0.125), Error);
  const MMSpace t = two(4).space();
  EXPECT_THROW(rho_oracle(t, t, kId2, kId2, Coupling::diagonal(kHalf), 0.125), Error);
}

TEST(RhoUpper, Examples) {
  const MMSpace x = two(1).space();
  const Coupling diag = Coupling::diagonal(kHalf);
  const Relation full = Relation::identity(2);
  EXPECT_EQ(rho_pi_upper(x, x, kId2, kId2, diag, full, full, kId2, full, kId2).bound, 0.0);
  const MMSpace y = two(2).space();
  const Relation single = Relation::from_pairs(2, 2, {{0, 0}});
  const RhoUpper u = rho_pi_upper(x, y, kId2, kId2, diag, single, single, kId2, single, kId2);
  EXPECT_EQ(u.eps, 0.5);
  EXPECT_EQ(u.bound, 1.0);
  EXPECT_LE(u.probe, u.bound);
}

TEST(RhoUpper, BoundsOracle) {
  const std::vector<MMAction> pool{two(1), two(0.5), two(1, false, {0.25, 0.75})};
  for (const auto& a : pool)
    for (const auto& b : pool)
      for (const auto& pi : oracle::grid_couplings_2x2(a.space().masses(), b.space().masses(), 0.25)) {
        const Relation s = support(pi);
        const RhoUpper u = rho_pi_upper(a.space(), b.space(), kId2, kId2, pi, s, s, kId2, s, kId2);
        const RhoOracle r = rho_oracle(a.space(), b.space(), kId2, kId2, pi, 0.125);
        EXPECT_GE(u.bound + r.slack + 1e-12, r.value);
      }
}

TEST(DconcPi, Examples) {
  const MMAction z2 = two(1, true), t = two(1), t2 = two(2);
  const Coupling diag = Coupling::diagonal(kHalf);
  EXPECT_EQ(dconc_pi(z2, z2, diag, DconcMode::Oracle).value, 0.0);
  EXPECT_EQ(dconc_pi(z2, z2, diag, DconcMode::Upper).value, 0.0);
  EXPECT_EQ(dconc_pi(t, t2, diag, DconcMode::Oracle).value,
            rho_oracle(t.space(), t2.space(), kId2, kId2, diag, 0.125).value);
  EXPECT_GE(dconc_pi(z2, t, diag, DconcMode::Oracle).value, 0.0);
}

TEST(DconcPi, UpperWithinFourBoxOnWitness) {
  const std::vector<MMAction> pool{two(1), two(1, true), two(2), gen_cycle(3), gen_cycle(4, CycleMetric::Chord)};
  for (const auto& a : pool)
    for (const auto& b : pool) {
      const SearchResult box = box_upper(a, b);
      const DconcResult d = dconc_pi(a, b, box.witness, DconcMode::Upper);
      EXPECT_LE(d.value, std::min(1.0, 4.0 * box.value) + 1e-12);
    }
}

TEST(DconcUpper, Examples) {
  const MMAction c4 = gen_cycle(4);
  EXPECT_EQ(dconc_upper(c4, c4).value, 0.0);
  const std::vector<MMAction> pool{two(1), two(1, true), two(2)};
  for (const auto& a : pool)
    for (const auto& b : pool) {
      const double eq = dconc_upper(a, b).value;
      EXPECT_LE(eq, std::min(1.0, 4.0 * box_upper(a, b).value) + 1e-12);
    }
}

TEST(DconcOracle, PlainBelowEquivariant) {
  const std::vector<MMAction> pool{two(1), two(1, true), two(2), two(1, false, {0.25, 0.75})};
  for (const auto& a : pool)
    for (const auto& b : pool) {
      const DconcOracleResult eq = dconc_oracle(a, b, 0.125, 0.125);
      const DconcOracleResult plain =
          dconc_oracle(trivial_action(a.space()), trivial_action(b.space()), 0.125, 0.125);
      EXPECT_LE(plain.value - plain.err, eq.value + eq.lip_slack + 1e-12);
      const OracleResult box = box_oracle(a, b, 0.125);
      EXPECT_LE(eq.value - eq.err, 4.0 * box.value + 1e-12);
    }
}

TEST(DconcOracle, KnownValues) {
  const DconcOracleResult r = dconc_oracle(two(1), two(2), 1.0 / 64, 0.125);
  EXPECT_EQ(r.value, 0.5);
  EXPECT_DOUBLE_EQ(r.err, 2.0 / 64 + 0.125);
  EXPECT_EQ(dconc_oracle(two(1, true), two(1), 1.0 / 64, 0.125).value, 0.5);
  EXPECT_EQ(dconc_oracle(two(1, true), two(1, true), 1.0 / 64, 0.125).value, 0.0);
}

TEST(LipGrid, PinnedAndCounts) {
  const MMSpace x = two(1).space();
  const auto pinned = lip_grid(x, 0.5, 1.0, true);
  for (const auto& f : pinned) EXPECT_EQ(f[0], 0.0);
  EXPECT_EQ(pinned.size(), 5u);
  EXPECT_EQ(lip_grid(x, 0.5, 1.0, false).size(), oracle::lip_family(x, 0.5, 2).size());
}
