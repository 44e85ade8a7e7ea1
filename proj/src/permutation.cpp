#include "eqbox/permutation.hpp"

#include <numeric>

#include "eqbox/error.hpp"

namespace eqbox {

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> images(n);
  std::iota(images.begin(), images.end(), std::size_t{0});
  return Permutation(std::move(images));
}

Permutation Permutation::checked(std::vector<std::size_t> images, std::size_t n) {
  if (!is_bijection(images, n))
    throw Error(Errc::NotPermutation, "not a bijection of {0.." + std::to_string(n) + "-1}");
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = i;
  return Permutation(std::move(inv));
}

std::string Permutation::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(images_[i]);
  }
  return out + "]";
}

Permutation compose(const Permutation& a, const Permutation& b) {
  std::vector<std::size_t> out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = a(b(i));
  return Permutation(std::move(out));
}

bool is_bijection(const std::vector<std::size_t>& images, std::size_t n) {
  if (images.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (std::size_t v : images) {
    if (v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

}  // namespace eqbox
