#include <gtest/gtest.h>

#include <random>

#include "eqbox/error.hpp"
#include "eqbox/generators.hpp"
#include "eqbox/group.hpp"
#include "oracles.hpp"

using namespace eqbox;

namespace {

MMSpace equidistant(std::size_t n) {
  Matrix d(n, n, 1.0);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = 0.0;
  return uniform_space(d);
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return Errc::IoError;
}

}  // namespace

TEST(ValidateAction, Examples) {
  const MMSpace s = equidistant(2);
  EXPECT_TRUE(validate_action(s, {Permutation::identity(2)}).is_trivial());
  const MMAction z2 = validate_action(s, {Permutation({1, 0})});
  EXPECT_EQ(z2.order(), 2u);
  EXPECT_TRUE(z2[0].is_identity());
  const MMSpace skew = validate_space(RawSpace{{}, {{0, 1}, {1, 0}}, {0.6, 0.4}});
  EXPECT_EQ(code_of([&] { validate_action(skew, {Permutation({1, 0})}); }), Errc::NotMeasurePreserving);
  const MMSpace tri = uniform_space(Matrix::from_rows({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}));
  EXPECT_EQ(code_of([&] { validate_action(tri, {Permutation({1, 0, 2})}); }), Errc::NotIsometry);
  EXPECT_EQ(code_of([&] { validate_action(tri, {Permutation({0, 0, 2})}); }), Errc::NotPermutation);
}

TEST(GenerateGroup, Closure) {
  const auto g = generate_group({Permutation({1, 0, 2}), Permutation({1, 2, 0})}, 3);
  EXPECT_EQ(g.size(), 6u);
  EXPECT_TRUE(std::is_sorted(g.begin(), g.end()));
}

TEST(EnumerateAut, Examples) {
  EXPECT_EQ(enumerate_aut(equidistant(1)).order(), 1u);
  EXPECT_EQ(enumerate_aut(validate_space(RawSpace{{}, {{0, 1}, {1, 0}}, {0.6, 0.4}})).order(), 1u);
  for (std::size_t n = 1; n <= 5; ++n) EXPECT_EQ(enumerate_aut(equidistant(n)).order(), oracle::aut(equidistant(n)).size());
  EXPECT_EQ(enumerate_aut(equidistant(5)).order(), 120u);
}

TEST(EnumerateAut, MatchesPermutationListing) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> d(1, 2), size(2, 6), w(1, 2);
  for (int c = 0; c < 200; ++c) {
    const int n = size(rng);
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) m[i][j] = m[j][i] = d(rng);
    std::vector<double> mass(n);
    double s = 0.0;
    for (auto& x : mass) s += (x = w(rng));
    for (auto& x : mass) x /= s;
    const MMSpace sp = validate_space(RawSpace{{}, m, mass});
    EXPECT_EQ(enumerate_aut(sp).elements(), oracle::aut(sp)) << "case " << c;
  }
}

TEST(Quotient, Examples) {
  const MMAction triv = trivial_action(equidistant(3));
  const Quotient qt = quotient(triv);
  EXPECT_EQ(qt.space.size(), 3u);
  EXPECT_EQ(qt.orbit_of, (std::vector<std::size_t>{0, 1, 2}));

  const MMSpace sq = uniform_space(Matrix::from_rows({{0, 1, 2, 1}, {1, 0, 1, 2}, {2, 1, 0, 1}, {1, 2, 1, 0}}));
  const Quotient q = quotient(validate_action(sq, {Permutation({2, 3, 0, 1})}));
  ASSERT_EQ(q.space.size(), 2u);
  EXPECT_EQ(q.space.dist(0, 1), 1.0);
  EXPECT_EQ(q.space.mass(0), 0.5);
  EXPECT_EQ(q.orbits[0], (std::vector<std::size_t>{0, 2}));

  EXPECT_EQ(quotient(enumerate_aut(equidistant(4))).space.size(), 1u);
  EXPECT_EQ(quotient(gen_cycle(6)).space.size(), 1u);
}

TEST(ThickPart, Examples) {
  for (std::size_t n = 2; n <= 5; ++n) {
    const MMSpace s = equidistant(n);
    EXPECT_EQ(thick_part(s, 0.5, 0.0).size(), n);
    EXPECT_TRUE(thick_part(s, 0.5, 1.0 / static_cast<double>(n)).empty());
    EXPECT_EQ(thick_part(s, 0.5, 0.5 / static_cast<double>(n)).size(), n);
  }
  EXPECT_THROW(thick_part(equidistant(2), -1, 0.1), Error);
  EXPECT_THROW(thick_part(equidistant(2), 1, 1.0), Error);
}

TEST(ThickPart, MatchesBallMass) {
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<int> d(1, 3);
  for (int c = 0; c < 100; ++c) {
    std::vector<std::vector<double>> m(4, std::vector<double>(4, 0.0));
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) m[i][j] = m[j][i] = 1.0 + d(rng) / 4.0;
    const MMSpace s = uniform_space(Matrix::from_rows(m));
    const double r = d(rng) / 2.0, v = 0.3;
    std::vector<std::size_t> expect;
    for (std::size_t x = 0; x < 4; ++x) {
      double mass = 0.0;
      for (std::size_t y = 0; y < 4; ++y)
        if (m[x][y] <= r) mass += 0.25;
      if (mass > v) expect.push_back(x);
    }
    EXPECT_EQ(thick_part(s, r, v), expect);
  }
}

TEST(ChooseVEps, ThickPartCarriesMass) {
  const MMSpace s = uniform_space(Matrix::from_rows({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}));
  for (double eps : {0.1, 0.3, 0.6}) {
    const double v = choose_v_eps(s, eps);
    EXPECT_GT(subset_mass(s, thick_part(s, eps, v)), 1.0 - eps);
  }
  EXPECT_THROW(choose_v_eps(s, 0.0), Error);
}

TEST(ExtractLimitGroup, IdentityGraph) {
  const MMAction c4 = gen_cycle(4);
  const LimitGroup lg = extract_limit_group(c4, c4.space(), Relation::identity(4), 0.1);
  ASSERT_EQ(lg.matches.size(), 4u);
  for (const auto& m : lg.matches) {
    EXPECT_EQ(m.g, m.h);
    EXPECT_EQ(m.defect, 0.0);
    EXPECT_TRUE(m.within_eps);
  }
  EXPECT_EQ(lg.generated, c4.elements());
}

TEST(ExtractLimitGroup, TwoPointSwap) {
  const MMAction z2 = validate_action(equidistant(2), {Permutation({1, 0})});
  const LimitGroup lg = extract_limit_group(z2, z2.space(), Relation::identity(2), 0.1);
  EXPECT_EQ(lg.matches[1].h, Permutation({1, 0}));
  EXPECT_EQ(lg.matches[1].defect, 0.0);
}

TEST(ExtractLimitGroup, FullRelationTiesToFirstElement) {
  const MMAction z2 = validate_action(equidistant(2), {Permutation({1, 0})});
  const LimitGroup lg = extract_limit_group(z2, z2.space(), Relation::full(2, 2), 0.1);
  for (const auto& m : lg.matches) {
    EXPECT_EQ(m.defect, 1.0);
    EXPECT_TRUE(m.h.is_identity());
  }
  EXPECT_THROW(extract_limit_group(z2, z2.space(), Relation(2, 2), 0.1), Error);
  EXPECT_THROW(extract_limit_group(z2, z2.space(), Relation(3, 2), 0.1), Error);
}

TEST(ConjugateRelation, GraphOfConjugate) {
  const Permutation g({1, 2, 0}), s({2, 0, 1});
  const Relation r = conjugate_relation(g, Relation::graph(s));
  // S g S^{-1}
  EXPECT_EQ(r, Relation::graph(compose(s, compose(g, s.inverse()))));
}
