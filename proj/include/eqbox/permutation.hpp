#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace eqbox {

/// A bijection of {0, ..., n-1}, stored as its image list.
class Permutation {
 public:
  Permutation() = default;
  /// Takes the image list as given; use `is_bijection` or `checked` for untrusted input.
  explicit Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {}

  static Permutation identity(std::size_t n);
  /// Throws Error(NotPermutation) unless `images` is a bijection of {0..n-1}.
  static Permutation checked(std::vector<std::size_t> images, std::size_t n);

  std::size_t size() const noexcept { return images_.size(); }
  std::size_t operator()(std::size_t i) const { return images_[i]; }
  const std::vector<std::size_t>& images() const noexcept { return images_; }

  bool is_identity() const;
  Permutation inverse() const;

  std::string to_string() const;

  friend auto operator<=>(const Permutation&, const Permutation&) = default;
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> images_;
};

/// (a ∘ b)(i) = a(b(i)).
Permutation compose(const Permutation& a, const Permutation& b);

bool is_bijection(const std::vector<std::size_t>& images, std::size_t n);

}  // namespace eqbox
