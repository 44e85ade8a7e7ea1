#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "eqbox/coupling.hpp"
#include "eqbox/mmspace.hpp"
#include "eqbox/permutation.hpp"

namespace eqbox {

/// Largest group order that closure and enumeration will materialize.
inline constexpr std::size_t kMaxGroupOrder = 500000;

/// A finite group of measure-preserving isometries of a space.
///
/// Elements are sorted lexicographically, so the identity is always first.
class MMAction {
 public:
  MMAction() = default;

  const MMSpace& space() const noexcept { return space_; }
  const std::vector<Permutation>& elements() const noexcept { return elements_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const Permutation& operator[](std::size_t k) const { return elements_[k]; }
  std::optional<std::size_t> index_of(const Permutation& p) const;
  bool is_trivial() const noexcept { return elements_.size() == 1; }

 private:
  friend MMAction validate_action(const MMSpace& space, const std::vector<Permutation>& generators);

  MMSpace space_;
  std::vector<Permutation> elements_;
};

/// Closure of `generators` under composition, sorted. Throws NotPermutation or TooLarge.
std::vector<Permutation> generate_group(const std::vector<Permutation>& generators, std::size_t n);

/// Generated group, with every element checked for isometry and measure
/// preservation. Throws NotPermutation, NotIsometry, NotMeasurePreserving, TooLarge.
MMAction validate_action(const MMSpace& space, const std::vector<Permutation>& generators);

MMAction trivial_action(const MMSpace& space);

/// Full automorphism group by backtracking. Throws TooLarge beyond `max_points`
/// points or kMaxGroupOrder elements.
MMAction enumerate_aut(const MMSpace& space, std::size_t max_points = 10);

struct Quotient {
  MMSpace space;
  /// orbit_of[x] = index of the orbit containing x.
  std::vector<std::size_t> orbit_of;
  /// Members of each orbit, ascending; orbits ordered by smallest member.
  std::vector<std::vector<std::size_t>> orbits;
};

Quotient quotient(const MMAction& action);

/// mu(B_r(x)) with the closed ball.
double ball_mass(const MMSpace& space, std::size_t x, double r);

/// {x : mu(B_r(x)) > v}. Throws InvalidArgument unless r >= 0 and 0 <= v < 1.
std::vector<std::size_t> thick_part(const MMSpace& space, double r, double v);

double subset_mass(const MMSpace& space, const std::vector<std::size_t>& subset);

/// Largest v from the ladder {mu(B_eps(y)) / 2} whose thick part Y(v, eps)
/// carries mass > 1 - eps. Throws InvalidArgument unless 0 < eps < 1.
double choose_v_eps(const MMSpace& y, double eps);

/// X_{n,eps} = X(v_eps / 2, 2 eps).
std::vector<std::size_t> thick_part_for_limit(const MMSpace& x, double eps, double v_eps);

struct LimitMatch {
  Permutation g;
  Permutation h;
  double defect = 0.0;
  bool within_eps = false;
};

struct LimitGroup {
  std::vector<LimitMatch> matches;
  /// Subgroup of Aut(Y) generated by the matched h.
  std::vector<Permutation> generated;
  double max_defect = 0.0;
};

/// The relation {(y, y') : (x, y) in S, (g x, y') in S}.
Relation conjugate_relation(const Permutation& g, const Relation& s);

/// For each g, the h in Aut(Y) minimizing max over rho(g) of d_Y(h y, y'),
/// ties to the lexicographically least h. Throws EmptyRelation, SizeMismatch.
LimitGroup extract_limit_group(const MMAction& gn, const MMSpace& y, const Relation& s, double eps);

}  // namespace eqbox
