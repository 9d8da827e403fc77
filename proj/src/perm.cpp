#include "fuslim/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "fuslim/errors.hpp"

namespace fuslim {

Perm::Perm(int degree) : img_(degree) {
  if (degree < 0) throw ValidationError("permutation degree must be nonnegative");
  std::iota(img_.begin(), img_.end(), 0);
}

Perm::Perm(std::vector<int> images) : img_(std::move(images)) {
  std::vector<char> seen(img_.size(), 0);
  for (int v : img_) {
    if (v < 0 || v >= static_cast<int>(img_.size()) || seen[v])
      throw ValidationError("permutation image vector is not a bijection");
    seen[v] = 1;
  }
}

Perm Perm::then(const Perm& b) const {
  if (degree() != b.degree()) throw ValidationError("permutation degree mismatch");
  std::vector<int> out(img_.size());
  for (std::size_t x = 0; x < img_.size(); ++x) out[x] = b.img_[img_[x]];
  return Perm(std::move(out));
}

Perm Perm::inverse() const {
  std::vector<int> out(img_.size());
  for (std::size_t x = 0; x < img_.size(); ++x) out[img_[x]] = static_cast<int>(x);
  return Perm(std::move(out));
}

bool Perm::is_identity() const {
  for (std::size_t x = 0; x < img_.size(); ++x)
    if (img_[x] != static_cast<int>(x)) return false;
  return true;
}

long long Perm::order() const {
  long long ord = 1;
  for (int len : cycle_type()) ord = std::lcm(ord, static_cast<long long>(len));
  return ord;
}

std::vector<int> Perm::cycle_type() const {
  std::vector<int> lens;
  std::vector<char> seen(img_.size(), 0);
  for (std::size_t x = 0; x < img_.size(); ++x) {
    if (seen[x]) continue;
    int len = 0;
    for (std::size_t y = x; !seen[y]; y = img_[y]) {
      seen[y] = 1;
      ++len;
    }
    if (len >= 2) lens.push_back(len);
  }
  std::sort(lens.begin(), lens.end());
  return lens;
}

Perm Perm::from_cycles(int degree, const std::string& text) {
  Perm result(degree);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw ValidationError("expected '(' in cycle notation: " + text);
    ++i;
    std::vector<int> cycle;
    skip_ws();
    while (i < text.size() && text[i] != ')') {
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw ValidationError("expected point number in cycle notation: " + text);
      int v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        ++i;
      }
      if (v < 1 || v > degree)
        throw ValidationError("cycle point out of range 1.." + std::to_string(degree) +
                              ": " + std::to_string(v));
      cycle.push_back(v - 1);
      skip_ws();
      if (i < text.size() && text[i] == ',') { ++i; skip_ws(); }
    }
    if (i >= text.size()) throw ValidationError("unterminated cycle: " + text);
    ++i;  // ')'
    std::vector<int> img = result.images();
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      int from = cycle[k];
      int to = cycle[(k + 1) % cycle.size()];
      if (img[from] != from)
        throw ValidationError("point repeated across cycles: " + std::to_string(from + 1));
      img[from] = to;
    }
    // A repeated point inside one cycle also collides here via the bijection check.
    result = Perm(std::move(img));
    skip_ws();
  }
  return result;
}

std::string Perm::cycle_string() const {
  std::ostringstream out;
  std::vector<char> seen(img_.size(), 0);
  bool any = false;
  for (std::size_t x = 0; x < img_.size(); ++x) {
    if (seen[x] || img_[x] == static_cast<int>(x)) continue;
    any = true;
    out << '(';
    bool first = true;
    for (std::size_t y = x; !seen[y]; y = img_[y]) {
      seen[y] = 1;
      if (!first) out << ' ';
      out << (y + 1);
      first = false;
    }
    out << ')';
  }
  if (!any) return "()";
  return out.str();
}

}  // namespace fuslim
