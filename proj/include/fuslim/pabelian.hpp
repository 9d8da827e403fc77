#pragma once

#include <functional>
#include <vector>

namespace fuslim {

// Finite abelian p-group in fixed coordinates: Z/p^{e_1} + ... + Z/p^{e_r},
// elements written additively as integer vectors reduced mod the orders.
struct PAbelianGroup {
  using Vec = std::vector<long long>;

  int prime = 0;
  std::vector<long long> orders;  // p-powers, non-increasing by construction

  int rank() const { return static_cast<int>(orders.size()); }
  long long order() const;
  Vec zero() const { return Vec(orders.size(), 0); }
  Vec reduce(Vec v) const;
  Vec add(const Vec& a, const Vec& b) const;
  Vec neg(const Vec& a) const;
  Vec sub(const Vec& a, const Vec& b) const;
  Vec scalar_mul(long long c, const Vec& a) const;
  bool is_zero(const Vec& a) const;
  long long elem_order(const Vec& a) const;  // least p-power k with k*a = 0

  // All elements in lexicographic order (so the list is sorted). Guarded
  // against accidentally huge modules.
  std::vector<Vec> all_elements() const;
};

// Subgroup of a PAbelianGroup, stored as its full sorted element list. These
// stay tiny here, so exact enumeration beats echelon-form bookkeeping over
// Z/p^e.
struct Submodule {
  PAbelianGroup module;
  std::vector<PAbelianGroup::Vec> elems;  // sorted, first entry is zero

  long long order() const { return static_cast<long long>(elems.size()); }
  bool contains(const PAbelianGroup::Vec& v) const;
  bool contains_submodule(const Submodule& other) const;
};

Submodule span_submodule(const PAbelianGroup& m,
                         const std::vector<PAbelianGroup::Vec>& gens);
Submodule full_submodule(const PAbelianGroup& m);
Submodule zero_submodule(const PAbelianGroup& m);

// Elements of order dividing p.
Submodule omega1(const PAbelianGroup& m);

// Coordinates for an abstract finite abelian p-group handed to us as an
// element list with an addition callback. Element ids are 0..n-1 with id 0 the
// identity; callers pass ids in their own canonical order, which makes the
// chosen basis deterministic.
struct CoordSystem {
  PAbelianGroup module;
  std::vector<PAbelianGroup::Vec> coords;  // id -> coordinate vector
  std::vector<int> basis_ids;              // ids of the basis elements
  int id_of(const PAbelianGroup::Vec& v) const;  // inverse lookup, -1 if absent
};

// Basis search: peel elements of maximal order with backtracking, so the
// invariant factors come out non-increasing and a basis is always found.
CoordSystem coordinatize(int n, const std::function<int(int, int)>& add, int prime);

// Basis of a submodule with the orders of the basis vectors, via the same
// peeling.
std::vector<std::pair<PAbelianGroup::Vec, long long>> submodule_basis(const Submodule& s);

}  // namespace fuslim
