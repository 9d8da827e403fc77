#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace fuslim {

// Permutation of {0, ..., degree-1}, stored as its image vector. Text I/O uses
// 1-based cycle notation. Composition is right-handed throughout the library:
// x^(a.then(b)) = (x^a)^b.
class Perm {
 public:
  explicit Perm(int degree);              // identity
  explicit Perm(std::vector<int> images); // validated bijection

  int degree() const { return static_cast<int>(img_.size()); }
  int operator[](int x) const { return img_[x]; }
  const std::vector<int>& images() const { return img_; }

  Perm then(const Perm& b) const;  // apply *this first, then b
  Perm inverse() const;
  bool is_identity() const;
  long long order() const;

  // Sorted cycle lengths >= 2, e.g. (1 2)(3 4 5) -> {2, 3}.
  std::vector<int> cycle_type() const;

  auto operator<=>(const Perm&) const = default;

  // Parses 1-based disjoint-cycle notation, e.g. "(1 2 3)(4 5)"; whitespace
  // inside and between cycles is insignificant. "()" and "" denote identity.
  static Perm from_cycles(int degree, const std::string& text);
  std::string cycle_string() const;  // canonical 1-based form, "()" for identity

 private:
  std::vector<int> img_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const {
    std::size_t h = 1469598103934665603ull;
    for (int v : p.images()) {
      h ^= static_cast<std::size_t>(v);
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace fuslim
