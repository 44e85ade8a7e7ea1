#include "eqbox/group.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <string>

#include "eqbox/error.hpp"

namespace eqbox {

namespace {

std::string str(std::size_t i) { return std::to_string(i); }

void check_element(const MMSpace& space, const Permutation& g) {
  const std::size_t n = space.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(space.mass(g(i)) - space.mass(i)) > kAxiomTol)
      throw Error(Errc::NotMeasurePreserving, g.to_string() + " moves mass at point " + str(i));
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(space.dist(g(i), g(j)) - space.dist(i, j)) > kAxiomTol)
        throw Error(Errc::NotIsometry,
                    g.to_string() + " changes the distance between " + str(i) + " and " + str(j));
  }
}

}  // namespace

std::optional<std::size_t> MMAction::index_of(const Permutation& p) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
  if (it == elements_.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - elements_.begin());
}

std::vector<Permutation> generate_group(const std::vector<Permutation>& generators, std::size_t n) {
  for (const auto& g : generators)
    if (!is_bijection(g.images(), n))
      throw Error(Errc::NotPermutation, g.to_string() + " is not a permutation of " + str(n) + " points");
  std::set<Permutation> seen{Permutation::identity(n)};
  std::deque<Permutation> queue{Permutation::identity(n)};
  while (!queue.empty()) {
    const Permutation cur = queue.front();
    queue.pop_front();
    for (const auto& g : generators) {
      Permutation next = compose(g, cur);
      if (seen.insert(next).second) {
        if (seen.size() > kMaxGroupOrder) throw Error(Errc::TooLarge, "group order exceeds cap");
        queue.push_back(std::move(next));
      }
    }
  }
  // a finite set closed under composition is closed under inverses as well
  return {seen.begin(), seen.end()};
}

MMAction validate_action(const MMSpace& space, const std::vector<Permutation>& generators) {
  MMAction a;
  a.space_ = space;
  a.elements_ = generate_group(generators, space.size());
  for (const auto& g : a.elements_) check_element(space, g);
  return a;
}

MMAction trivial_action(const MMSpace& space) { return validate_action(space, {}); }

MMAction enumerate_aut(const MMSpace& space, std::size_t max_points) {
  const std::size_t n = space.size();
  if (n > max_points) throw Error(Errc::TooLarge, "automorphism search limited to " + str(max_points) + " points");
  std::vector<Permutation> found;
  std::vector<std::size_t> img(n);
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == n) {
      if (found.size() >= kMaxGroupOrder) throw Error(Errc::TooLarge, "automorphism group exceeds cap");
      found.emplace_back(img);
      return;
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c] || std::abs(space.mass(c) - space.mass(k)) > kAxiomTol) continue;
      bool ok = true;
      for (std::size_t i = 0; i < k && ok; ++i)
        ok = std::abs(space.dist(img[i], c) - space.dist(i, k)) <= kAxiomTol;
      if (!ok) continue;
      used[c] = 1;
      img[k] = c;
      self(self, k + 1);
      used[c] = 0;
    }
  };
  rec(rec, 0);
  // lexicographic by construction; the generated group is the same set
  return validate_action(space, found);
}

Quotient quotient(const MMAction& action) {
  const MMSpace& x = action.space();
  const std::size_t n = x.size();
  Quotient q;
  q.orbit_of.assign(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (q.orbit_of[i] != n) continue;
    std::vector<std::size_t> members;
    for (const auto& g : action.elements()) members.push_back(g(i));
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (auto m : members) q.orbit_of[m] = q.orbits.size();
    q.orbits.push_back(std::move(members));
  }
  const std::size_t k = q.orbits.size();
  RawSpace raw;
  raw.dist.assign(k, std::vector<double>(k, 0.0));
  raw.mass.assign(k, 0.0);
  for (std::size_t a = 0; a < k; ++a) {
    std::string label;
    for (auto m : q.orbits[a]) {
      raw.mass[a] += x.mass(m);
      label += (label.empty() ? "" : "|") + x.label(m);
    }
    raw.labels.push_back(std::move(label));
    for (std::size_t b = a + 1; b < k; ++b) {
      double d = INFINITY;
      for (auto u : q.orbits[a])
        for (auto v : q.orbits[b]) d = std::min(d, x.dist(u, v));
      raw.dist[a][b] = raw.dist[b][a] = d;
    }
  }
  q.space = validate_space(raw);
  return q;
}

double ball_mass(const MMSpace& space, std::size_t x, double r) {
  double m = 0.0;
  for (std::size_t y = 0; y < space.size(); ++y)
    if (space.dist(x, y) <= r + kAxiomTol) m += space.mass(y);
  return m;
}

std::vector<std::size_t> thick_part(const MMSpace& space, double r, double v) {
  if (!(r >= 0.0)) throw Error(Errc::InvalidArgument, "thick part radius must be nonnegative");
  if (!(v >= 0.0 && v < 1.0)) throw Error(Errc::InvalidArgument, "thick part threshold must lie in [0,1)");
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < space.size(); ++x)
    if (ball_mass(space, x, r) > v) out.push_back(x);
  return out;
}

double subset_mass(const MMSpace& space, const std::vector<std::size_t>& subset) {
  double m = 0.0;
  for (auto x : subset) m += space.mass(x);
  return m;
}

double choose_v_eps(const MMSpace& y, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error(Errc::InvalidArgument, "eps must lie in (0,1)");
  std::vector<double> ladder;
  for (std::size_t i = 0; i < y.size(); ++i) ladder.push_back(ball_mass(y, i, eps) / 2.0);
  std::sort(ladder.begin(), ladder.end(), std::greater<>());
  ladder.erase(std::unique(ladder.begin(), ladder.end()), ladder.end());
  for (double v : ladder)
    if (subset_mass(y, thick_part(y, eps, v)) > 1.0 - eps) return v;
  return ladder.back();  // unreachable: the smallest rung keeps every point
}

std::vector<std::size_t> thick_part_for_limit(const MMSpace& x, double eps, double v_eps) {
  return thick_part(x, 2.0 * eps, v_eps / 2.0);
}

Relation conjugate_relation(const Permutation& g, const Relation& s) {
  return relation_compose(relation_compose(relation_inverse(s), Relation::graph(g)), s);
}

LimitGroup extract_limit_group(const MMAction& gn, const MMSpace& y, const Relation& s, double eps) {
  if (s.n() != gn.space().size() || s.m() != y.size())
    throw Error(Errc::SizeMismatch, "relation shape differs from the spaces");
  if (s.empty()) throw Error(Errc::EmptyRelation, "limit extraction needs a nonempty relation");
  const MMAction aut = enumerate_aut(y);
  LimitGroup out;
  std::vector<Permutation> hs;
  for (const auto& g : gn.elements()) {
    const auto rho = conjugate_relation(g, s).pairs();
    LimitMatch best{g, aut[0], INFINITY, false};
    for (const auto& h : aut.elements()) {
      double defect = 0.0;
      for (auto [a, b] : rho) defect = std::max(defect, y.dist(h(a), b));
      if (defect < best.defect) {
        best.h = h;
        best.defect = defect;
      }
    }
    best.within_eps = best.defect <= eps;
    out.max_defect = std::max(out.max_defect, best.defect);
    hs.push_back(best.h);
    out.matches.push_back(std::move(best));
  }
  out.generated = generate_group(hs, y.size());
  return out;
}

}  // namespace eqbox
