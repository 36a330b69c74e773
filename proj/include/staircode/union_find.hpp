#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace staircode {

/// Disjoint sets over [0, n) with path halving and union by size.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n = 0) { reset(n); }

  void reset(std::size_t n) {
    parent_.resize(n);
    std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
    size_.assign(n, 1);
    components_ = n;
  }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  /// Returns the root of the union; `merged` reports whether two sets were joined.
  std::uint32_t unite(std::uint32_t a, std::uint32_t b, bool* merged = nullptr) {
    a = find(a);
    b = find(b);
    if (a == b) {
      if (merged) *merged = false;
      return a;
    }
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --components_;
    if (merged) *merged = true;
    return a;
  }

  [[nodiscard]] std::size_t components() const { return components_; }
  [[nodiscard]] std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
  std::size_t components_ = 0;
};

}  // namespace staircode
