#include "eqbox/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "eqbox/error.hpp"

namespace eqbox {

namespace {

void check_marginal(const std::vector<double>& got, const std::vector<double>& want, const char* which) {
  for (std::size_t i = 0; i < got.size(); ++i)
    if (std::abs(got[i] - want[i]) > kMarginalTol)
      throw Error(Errc::MarginalMismatch, std::string(which) + " marginal differs at index " + std::to_string(i));
}

}  // namespace

Coupling Coupling::checked(Matrix plan, std::vector<double> muX, std::vector<double> muY) {
  if (plan.rows() != muX.size() || plan.cols() != muY.size())
    throw Error(Errc::SizeMismatch, "plan shape does not match marginals");
  for (std::size_t i = 0; i < plan.rows(); ++i)
    for (std::size_t j = 0; j < plan.cols(); ++j)
      if (!(plan(i, j) >= 0.0))
        throw Error(Errc::NegativeEntry,
                    "plan[" + std::to_string(i) + "][" + std::to_string(j) + "] is negative");
  check_marginal(plan.row_sums(), muX, "row");
  check_marginal(plan.col_sums(), muY, "column");
  Coupling c;
  c.plan_ = std::move(plan);
  c.muX_ = std::move(muX);
  c.muY_ = std::move(muY);
  return c;
}

Coupling Coupling::from_plan(Matrix plan) {
  auto r = plan.row_sums();
  auto c = plan.col_sums();
  return checked(std::move(plan), std::move(r), std::move(c));
}

Coupling Coupling::diagonal(const std::vector<double>& mu) {
  Matrix p(mu.size(), mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) p(i, i) = mu[i];
  return checked(std::move(p), mu, mu);
}

Coupling Coupling::product(const std::vector<double>& muX, const std::vector<double>& muY) {
  Matrix p(muX.size(), muY.size());
  for (std::size_t i = 0; i < muX.size(); ++i)
    for (std::size_t j = 0; j < muY.size(); ++j) p(i, j) = muX[i] * muY[j];
  return checked(std::move(p), muX, muY);
}

Coupling Coupling::from_permutation(const Permutation& p, const std::vector<double>& mu) {
  if (p.size() != mu.size()) throw Error(Errc::SizeMismatch, "permutation size differs from measure");
  Matrix plan(mu.size(), mu.size());
  std::vector<double> muY(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    plan(i, p(i)) = mu[i];
    muY[p(i)] = mu[i];
  }
  return checked(std::move(plan), mu, std::move(muY));
}

Relation Relation::from_pairs(std::size_t n, std::size_t m, const std::vector<IndexPair>& pairs) {
  Relation r(n, m);
  for (auto [i, j] : pairs) {
    if (i >= n || j >= m)
      throw Error(Errc::SizeMismatch,
                  "pair (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
    r.insert(i, j);
  }
  return r;
}

Relation Relation::full(std::size_t n, std::size_t m) {
  Relation r(n, m);
  std::fill(r.mask_.begin(), r.mask_.end(), 1);
  return r;
}

Relation Relation::identity(std::size_t n) { return graph(Permutation::identity(n)); }

Relation Relation::graph(const Permutation& p) {
  Relation r(p.size(), p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r.insert(i, p(i));
  return r;
}

std::size_t Relation::size() const {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), 1));
}

std::vector<IndexPair> Relation::pairs() const {
  std::vector<IndexPair> out;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < m_; ++j)
      if (contains(i, j)) out.emplace_back(i, j);
  return out;
}

Relation support(const Coupling& pi, double threshold) {
  Relation r(pi.rows(), pi.cols());
  for (std::size_t i = 0; i < pi.rows(); ++i)
    for (std::size_t j = 0; j < pi.cols(); ++j)
      if (pi(i, j) > threshold) r.insert(i, j);
  return r;
}

double mass(const Coupling& pi, const Relation& s) {
  if (s.n() != pi.rows() || s.m() != pi.cols())
    throw Error(Errc::SizeMismatch, "relation shape differs from coupling");
  double total = 0.0;
  for (std::size_t i = 0; i < pi.rows(); ++i)
    for (std::size_t j = 0; j < pi.cols(); ++j)
      if (s.contains(i, j)) total += pi(i, j);
  return total;
}

Matrix Glue::project12() const {
  Matrix out(n_, m_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < m_; ++j)
      for (std::size_t l = 0; l < k_; ++l) out(i, j) += (*this)(i, j, l);
  return out;
}

Matrix Glue::project23() const {
  Matrix out(m_, k_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < m_; ++j)
      for (std::size_t l = 0; l < k_; ++l) out(j, l) += (*this)(i, j, l);
  return out;
}

Matrix Glue::project13() const {
  Matrix out(n_, k_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < m_; ++j)
      for (std::size_t l = 0; l < k_; ++l) out(i, l) += (*this)(i, j, l);
  return out;
}

Glue glue(const Coupling& sigma, const Coupling& tau) {
  if (sigma.cols() != tau.rows()) throw Error(Errc::MarginalMismatch, "middle spaces differ in size");
  check_marginal(sigma.muY(), tau.muX(), "shared");
  Glue t(sigma.rows(), sigma.cols(), tau.cols());
  const auto& muY = sigma.muY();
  for (std::size_t j = 0; j < sigma.cols(); ++j) {
    if (muY[j] == 0.0) continue;  // null fibre contributes nothing
    for (std::size_t i = 0; i < sigma.rows(); ++i) {
      const double s = sigma(i, j);
      if (s == 0.0) continue;
      for (std::size_t l = 0; l < tau.cols(); ++l) t(i, j, l) = s * tau(j, l) / muY[j];
    }
  }
  return t;
}

Coupling compose_couplings(const Coupling& sigma, const Coupling& tau) {
  return Coupling::checked(glue(sigma, tau).project13(), sigma.muX(), tau.muY());
}

Relation relation_compose(const Relation& s, const Relation& t) {
  if (s.m() != t.n()) throw Error(Errc::SizeMismatch, "relations do not share a middle space");
  Relation out(s.n(), t.m());
  for (std::size_t i = 0; i < s.n(); ++i)
    for (std::size_t j = 0; j < s.m(); ++j) {
      if (!s.contains(i, j)) continue;
      for (std::size_t k = 0; k < t.m(); ++k)
        if (t.contains(j, k)) out.insert(i, k);
    }
  return out;
}

Relation relation_inverse(const Relation& s) {
  Relation out(s.m(), s.n());
  for (auto [i, j] : s.pairs()) out.insert(j, i);
  return out;
}

std::vector<std::size_t> relation_dom(const Relation& s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < s.n(); ++i)
    for (std::size_t j = 0; j < s.m(); ++j)
      if (s.contains(i, j)) {
        out.push_back(i);
        break;
      }
  return out;
}

std::vector<std::size_t> relation_image(const Relation& s) { return relation_dom(relation_inverse(s)); }

double bipartite_max_flow(const std::vector<double>& a, const std::vector<double>& b,
                          const std::vector<char>& allowed) {
  // Dinic on source(0), left 1..n, right n+1..n+m, sink n+m+1.
  const std::size_t n = a.size(), m = b.size();
  const std::size_t V = n + m + 2, src = 0, snk = n + m + 1;
  struct Edge {
    std::size_t to;
    double cap;
  };
  std::vector<Edge> edges;
  std::vector<std::vector<std::size_t>> adj(V);
  auto add = [&](std::size_t u, std::size_t v, double c) {
    adj[u].push_back(edges.size());
    edges.push_back({v, c});
    adj[v].push_back(edges.size());
    edges.push_back({u, 0.0});
  };
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) add(src, 1 + i, a[i]);
  for (std::size_t j = 0; j < m; ++j) add(1 + n + j, snk, b[j]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (allowed[i * m + j]) add(1 + i, 1 + n + j, inf);

  constexpr double kFlowEps = 1e-15;
  std::vector<int> level(V);
  std::vector<std::size_t> it(V);
  auto bfs = [&] {
    std::fill(level.begin(), level.end(), -1);
    std::queue<std::size_t> q;
    level[src] = 0;
    q.push(src);
    while (!q.empty()) {
      const auto u = q.front();
      q.pop();
      for (auto e : adj[u])
        if (edges[e].cap > kFlowEps && level[edges[e].to] < 0) {
          level[edges[e].to] = level[u] + 1;
          q.push(edges[e].to);
        }
    }
    return level[snk] >= 0;
  };
  auto dfs = [&](auto&& self, std::size_t u, double pushed) -> double {
    if (u == snk) return pushed;
    for (auto& k = it[u]; k < adj[u].size(); ++k) {
      auto& e = edges[adj[u][k]];
      if (e.cap <= kFlowEps || level[e.to] != level[u] + 1) continue;
      const double got = self(self, e.to, std::min(pushed, e.cap));
      if (got > 0.0) {
        e.cap -= got;
        edges[adj[u][k] ^ 1].cap += got;
        return got;
      }
    }
    return 0.0;
  };
  double flow = 0.0;
  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    while (double f = dfs(dfs, src, inf)) flow += f;
  }
  return flow;
}

double prokhorov(const std::vector<double>& mu_in, const std::vector<double>& nu_in, const Matrix& d) {
  // canonical argument order makes the floating-point result exactly symmetric
  const bool swap = nu_in < mu_in;
  const auto& mu = swap ? nu_in : mu_in;
  const auto& nu = swap ? mu_in : nu_in;
  const std::size_t n = mu.size();
  if (nu.size() != n || d.rows() != n || d.cols() != n)
    throw Error(Errc::SizeMismatch, "measures and metric differ in size");
  std::vector<double> levels{0.0};
  for (double v : d.data()) levels.push_back(v);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  // E(eps) = least mass a coupling must put on {D > eps}; it is a step function
  // constant on [levels[t], levels[t+1]), so the optimum is min_t max(levels[t], E).
  double best = std::numeric_limits<double>::infinity();
  std::vector<char> allowed(n * n);
  for (double eps : levels) {
    if (eps >= best) break;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) allowed[i * n + j] = std::max(d(i, j), d(j, i)) <= eps;
    const double excess = std::max(0.0, 1.0 - bipartite_max_flow(mu, nu, allowed));
    best = std::min(best, std::max(eps, excess < kMarginalTol ? 0.0 : excess));
  }
  return best;
}

Matrix product_metric(const Matrix& dX, const Matrix& dY) {
  const std::size_t n = dX.rows(), m = dY.rows();
  Matrix out(n * m, n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < m; ++l)
          out(i * m + j, k * m + l) = std::hypot(dX(i, k), dY(j, l));
  return out;
}

}  // namespace eqbox
