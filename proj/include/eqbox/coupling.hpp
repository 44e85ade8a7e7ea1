#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "eqbox/matrix.hpp"
#include "eqbox/permutation.hpp"

namespace eqbox {

/// Marginal tolerance for couplings.
inline constexpr double kMarginalTol = 1e-10;

/// Transport plan between two finite probability vectors.
class Coupling {
 public:
  Coupling() = default;

  /// Throws SizeMismatch, NegativeEntry or MarginalMismatch.
  static Coupling checked(Matrix plan, std::vector<double> muX, std::vector<double> muY);
  /// Marginals read off the plan's row and column sums.
  static Coupling from_plan(Matrix plan);

  static Coupling diagonal(const std::vector<double>& mu);
  static Coupling product(const std::vector<double>& muX, const std::vector<double>& muY);
  /// Mass mu[i] on (i, p(i)). Requires mu to be p-invariant for the column marginal to match.
  static Coupling from_permutation(const Permutation& p, const std::vector<double>& mu);

  std::size_t rows() const noexcept { return plan_.rows(); }
  std::size_t cols() const noexcept { return plan_.cols(); }
  double operator()(std::size_t i, std::size_t j) const { return plan_(i, j); }
  const Matrix& plan() const noexcept { return plan_; }
  const std::vector<double>& muX() const noexcept { return muX_; }
  const std::vector<double>& muY() const noexcept { return muY_; }

 private:
  Matrix plan_;
  std::vector<double> muX_;
  std::vector<double> muY_;
};

using IndexPair = std::pair<std::size_t, std::size_t>;

/// Subset of {0..n-1} x {0..m-1}, stored as a dense mask.
class Relation {
 public:
  Relation() = default;
  Relation(std::size_t n, std::size_t m) : n_(n), m_(m), mask_(n * m, 0) {}

  /// Throws SizeMismatch on out-of-range pairs; duplicates collapse.
  static Relation from_pairs(std::size_t n, std::size_t m, const std::vector<IndexPair>& pairs);
  static Relation full(std::size_t n, std::size_t m);
  static Relation identity(std::size_t n);
  /// {(i, p(i))}.
  static Relation graph(const Permutation& p);

  std::size_t n() const noexcept { return n_; }
  std::size_t m() const noexcept { return m_; }
  bool contains(std::size_t i, std::size_t j) const { return mask_[i * m_ + j] != 0; }
  void insert(std::size_t i, std::size_t j) { mask_[i * m_ + j] = 1; }
  void erase(std::size_t i, std::size_t j) { mask_[i * m_ + j] = 0; }
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  /// Row-major order.
  std::vector<IndexPair> pairs() const;

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<char> mask_;
};

/// {(i,j) : plan(i,j) > threshold}.
Relation support(const Coupling& pi, double threshold = 0.0);

/// pi(S).
double mass(const Coupling& pi, const Relation& s);

/// Three-index measure t(i,j,k) = sigma(i,j) tau(j,k) / muY(j).
class Glue {
 public:
  Glue(std::size_t n, std::size_t m, std::size_t k) : n_(n), m_(m), k_(k), t_(n * m * k, 0.0) {}
  std::size_t n() const noexcept { return n_; }
  std::size_t m() const noexcept { return m_; }
  std::size_t k() const noexcept { return k_; }
  double& operator()(std::size_t i, std::size_t j, std::size_t l) { return t_[(i * m_ + j) * k_ + l]; }
  double operator()(std::size_t i, std::size_t j, std::size_t l) const {
    return t_[(i * m_ + j) * k_ + l];
  }
  Matrix project12() const;
  Matrix project23() const;
  Matrix project13() const;

 private:
  std::size_t n_, m_, k_;
  std::vector<double> t_;
};

/// Throws MarginalMismatch unless sigma's second marginal equals tau's first.
Glue glue(const Coupling& sigma, const Coupling& tau);
Coupling compose_couplings(const Coupling& sigma, const Coupling& tau);

/// {(i,k) : (i,j) in S, (j,k) in T}. Throws SizeMismatch.
Relation relation_compose(const Relation& s, const Relation& t);
Relation relation_inverse(const Relation& s);
std::vector<std::size_t> relation_dom(const Relation& s);
std::vector<std::size_t> relation_image(const Relation& s);

/// Prokhorov distance between mu and nu on the metric D, exact for finite
/// spaces via max-flow feasibility at every distinct distance value.
double prokhorov(const std::vector<double>& mu, const std::vector<double>& nu, const Matrix& d);

/// l2 product metric; the point (i,j) has index i * dY.rows() + j.
Matrix product_metric(const Matrix& dX, const Matrix& dY);

/// Max-flow value of a bipartite network: source -> i (cap a[i]), i -> j
/// (unbounded) where allowed(i,j), j -> sink (cap b[j]).
double bipartite_max_flow(const std::vector<double>& a, const std::vector<double>& b,
                          const std::vector<char>& allowed);

}  // namespace eqbox
