#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "eqbox/matrix.hpp"
#include "eqbox/permutation.hpp"

namespace eqbox {

/// Absolute tolerance for metric and measure axioms on input.
inline constexpr double kAxiomTol = 1e-12;

/// Unvalidated space data as it arrives from files or generators.
struct RawSpace {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> dist;
  std::vector<double> mass;
};

/// A finite metric measure space with full-support probability measure.
///
/// Instances only come out of `validate_space`, so every MMSpace satisfies the
/// metric axioms (distinct points) and has strictly positive masses summing to 1.
class MMSpace {
 public:
  MMSpace() = default;

  std::size_t size() const noexcept { return mass_.size(); }
  double dist(std::size_t i, std::size_t j) const { return dist_(i, j); }
  const Matrix& distances() const noexcept { return dist_; }
  double mass(std::size_t i) const { return mass_[i]; }
  const std::vector<double>& masses() const noexcept { return mass_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  double diameter() const noexcept { return diameter_; }

  bool is_uniform(double tol = 1e-12) const;

  RawSpace raw() const;

 private:
  friend MMSpace validate_space(const RawSpace& raw);

  std::vector<std::string> labels_;
  Matrix dist_;
  std::vector<double> mass_;
  double diameter_ = 0.0;
};

/// Checks every axiom and returns the validated space. Throws Error naming the
/// first violated axiom: SizeMismatch, InvalidDiagonal, NonSymmetric,
/// DuplicatePoint, TriangleViolation, ZeroMass, MassNotNormalized.
MMSpace validate_space(const RawSpace& raw);

/// Convenience overload; labels default to "0", "1", ...
MMSpace validate_space(const Matrix& dist, const std::vector<double>& mass,
                       std::vector<std::string> labels = {});

/// Uniform measure on the given distance matrix.
MMSpace uniform_space(const Matrix& dist, std::vector<std::string> labels = {});

/// A real function on a space's points that is 1-Lipschitz (tolerance kAxiomTol).
class LipFunction {
 public:
  LipFunction() = default;

  /// Throws Error(LengthMismatch) or Error(NotLipschitz).
  static LipFunction checked(const MMSpace& space, std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const noexcept { return values_; }

  /// f ∘ g. Stays 1-Lipschitz whenever g is an isometry.
  LipFunction compose(const Permutation& g) const;

 private:
  explicit LipFunction(std::vector<double> v) : values_(std::move(v)) {}
  std::vector<double> values_;
};

/// The function d(x_i, ·).
LipFunction distance_function(const MMSpace& space, std::size_t i);

bool is_one_lipschitz(const MMSpace& space, std::span<const double> values,
                      double tol = kAxiomTol);

/// Ky Fan distance between f and g under mu: the least eps >= 0 with
/// mu(|f - g| > eps) <= eps. Throws Error(LengthMismatch).
double ky_fan(std::span<const double> f, std::span<const double> g, std::span<const double> mu);

/// Ky Fan distance of a nonnegative gap vector from zero.
double ky_fan_gap(std::span<const double> gap, std::span<const double> mu);

/// Ky Fan distance between two self-maps: ky_fan of x -> d(g(x), h(x)).
double ky_fan_map(const Permutation& g, const Permutation& h, const MMSpace& space);

struct Atom {
  double value;
  double mass;
};

/// Pushforward of the space measure under f, atoms merged by value and sorted.
std::vector<Atom> pushforward(const MMSpace& space, std::span<const double> f);

/// Least length of a closed interval carrying mass >= 1 - kappa.
/// Throws Error(KappaOutOfRange) unless 0 < kappa < 1.
double partial_diameter(std::vector<Atom> atoms, double kappa);

/// Certified lower bound on the kappa-observable diameter from a finite family
/// of 1-Lipschitz probes (distance functions plus seeded McShane samples).
double obs_diam_lower(const MMSpace& space, double kappa, std::uint64_t seed = 0,
                      std::size_t random_probes = 64);

/// Brute-force grid oracle for the observable diameter. Enumerates all
/// 1-Lipschitz vectors with first coordinate 0 and values in grid multiples
/// within [-diam, diam]. Throws Error(TooLarge) for more than 5 points.
double obs_diam_oracle(const MMSpace& space, double kappa, double grid);

}  // namespace eqbox
