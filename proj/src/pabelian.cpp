#include "fuslim/pabelian.hpp"

#include <algorithm>
#include <map>

#include "fuslim/errors.hpp"

namespace fuslim {

namespace {
constexpr long long kEnumerationCap = 1 << 20;
}

long long PAbelianGroup::order() const {
  long long n = 1;
  for (long long o : orders) {
    n *= o;
    if (n > kEnumerationCap)
      throw CapExceeded("abelian p-group too large to enumerate");
  }
  return n;
}

PAbelianGroup::Vec PAbelianGroup::reduce(Vec v) const {
  internal_check(v.size() == orders.size(), "coordinate rank mismatch");
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] %= orders[i];
    if (v[i] < 0) v[i] += orders[i];
  }
  return v;
}

PAbelianGroup::Vec PAbelianGroup::add(const Vec& a, const Vec& b) const {
  Vec out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return reduce(std::move(out));
}

PAbelianGroup::Vec PAbelianGroup::neg(const Vec& a) const {
  Vec out(a);
  for (long long& x : out) x = -x;
  return reduce(std::move(out));
}

PAbelianGroup::Vec PAbelianGroup::sub(const Vec& a, const Vec& b) const {
  return add(a, neg(b));
}

PAbelianGroup::Vec PAbelianGroup::scalar_mul(long long c, const Vec& a) const {
  Vec out(a);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = (c % orders[i]) * out[i];
  return reduce(std::move(out));
}

bool PAbelianGroup::is_zero(const Vec& a) const {
  for (long long x : a)
    if (x != 0) return false;
  return true;
}

long long PAbelianGroup::elem_order(const Vec& a) const {
  long long k = 1;
  Vec v = reduce(a);
  while (!is_zero(v)) {
    v = scalar_mul(prime, v);
    k *= prime;
  }
  return k;
}

std::vector<PAbelianGroup::Vec> PAbelianGroup::all_elements() const {
  long long n = order();
  std::vector<Vec> out;
  out.reserve(n);
  Vec cur = zero();
  out.push_back(cur);
  for (long long step = 1; step < n; ++step) {
    // mixed-radix increment on the last coordinate keeps lexicographic order
    int i = rank() - 1;
    while (i >= 0) {
      if (++cur[i] < orders[i]) break;
      cur[i] = 0;
      --i;
    }
    out.push_back(cur);
  }
  return out;
}

bool Submodule::contains(const PAbelianGroup::Vec& v) const {
  return std::binary_search(elems.begin(), elems.end(), v);
}

bool Submodule::contains_submodule(const Submodule& other) const {
  return std::includes(elems.begin(), elems.end(), other.elems.begin(),
                       other.elems.end());
}

Submodule span_submodule(const PAbelianGroup& m,
                         const std::vector<PAbelianGroup::Vec>& gens) {
  std::vector<PAbelianGroup::Vec> elems{m.zero()};
  std::vector<PAbelianGroup::Vec> frontier = elems;
  auto known = [&](const PAbelianGroup::Vec& v) {
    return std::find(elems.begin(), elems.end(), v) != elems.end();
  };
  while (!frontier.empty()) {
    std::vector<PAbelianGroup::Vec> next;
    for (const auto& v : frontier)
      for (const auto& g : gens) {
        PAbelianGroup::Vec w = m.add(v, m.reduce(g));
        if (!known(w)) {
          if (static_cast<long long>(elems.size()) >= kEnumerationCap)
            throw CapExceeded("submodule span too large to enumerate");
          elems.push_back(w);
          next.push_back(w);
        }
      }
    frontier = std::move(next);
  }
  std::sort(elems.begin(), elems.end());
  return Submodule{m, std::move(elems)};
}

Submodule full_submodule(const PAbelianGroup& m) {
  return Submodule{m, m.all_elements()};
}

Submodule zero_submodule(const PAbelianGroup& m) {
  return Submodule{m, {m.zero()}};
}

Submodule omega1(const PAbelianGroup& m) {
  std::vector<PAbelianGroup::Vec> elems;
  for (const auto& v : m.all_elements())
    if (m.is_zero(m.scalar_mul(m.prime, v))) elems.push_back(v);
  return Submodule{m, std::move(elems)};
}

int CoordSystem::id_of(const PAbelianGroup::Vec& v) const {
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i] == v) return static_cast<int>(i);
  return -1;
}

namespace {

// Orbit of 0 under adding members of `gens`, as a sorted id list.
std::vector<int> additive_span(int n, const std::function<int(int, int)>& add,
                               const std::vector<int>& gens) {
  std::vector<char> in(n, 0);
  in[0] = 1;
  std::vector<int> members{0};
  for (std::size_t k = 0; k < members.size(); ++k)
    for (int g : gens) {
      int next = add(members[k], g);
      if (!in[next]) {
        in[next] = 1;
        members.push_back(next);
      }
    }
  std::sort(members.begin(), members.end());
  return members;
}

bool extend_basis(int n, const std::function<int(int, int)>& add,
                  const std::vector<long long>& ord,
                  const std::vector<std::pair<long long, int>>& by_order,
                  std::vector<int>& basis, std::vector<int>& span,
                  long long max_order) {
  if (static_cast<int>(span.size()) == n) return true;
  for (const auto& [o, id] : by_order) {
    if (o > max_order || o < 2) continue;
    if (std::binary_search(span.begin(), span.end(), id)) continue;
    std::vector<int> gens = basis;
    gens.push_back(id);
    std::vector<int> bigger = additive_span(n, add, gens);
    // direct-sum condition: the span grows by exactly a factor of ord(id)
    if (static_cast<long long>(bigger.size()) !=
        static_cast<long long>(span.size()) * o)
      continue;
    basis.push_back(id);
    std::vector<int> saved = std::move(span);
    span = std::move(bigger);
    if (extend_basis(n, add, ord, by_order, basis, span, o)) return true;
    span = std::move(saved);
    basis.pop_back();
  }
  return false;
}

}  // namespace

CoordSystem coordinatize(int n, const std::function<int(int, int)>& add, int prime) {
  std::vector<long long> ord(n);
  for (int i = 0; i < n; ++i) {
    long long o = 1;
    int x = i;
    while (x != 0) {
      int y = x;
      for (int k = 1; k < prime; ++k) y = add(y, x);
      x = y;
      o *= prime;
    }
    ord[i] = o;
  }

  std::vector<std::pair<long long, int>> by_order;
  for (int i = 0; i < n; ++i) by_order.emplace_back(ord[i], i);
  std::sort(by_order.begin(), by_order.end(),
            [](const auto& a, const auto& b) {
              return a.first != b.first ? a.first > b.first : a.second < b.second;
            });

  std::vector<int> basis;
  std::vector<int> span{0};
  long long top = n > 1 ? by_order.front().first : 1;
  bool ok = extend_basis(n, add, ord, by_order, basis, span, top);
  internal_check(ok, "finite abelian p-group has no basis, which cannot happen");

  CoordSystem out;
  out.module.prime = prime;
  for (int b : basis) out.module.orders.push_back(ord[b]);
  out.basis_ids = basis;
  out.coords.assign(n, {});
  std::vector<char> seen(n, 0);
  // walk every coordinate combination and record which element it lands on
  std::vector<PAbelianGroup::Vec> combos = out.module.all_elements();
  for (const auto& c : combos) {
    int id = 0;
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (long long k = 0; k < c[i]; ++k) id = add(id, basis[i]);
    internal_check(!seen[id], "basis combinations collide");
    seen[id] = 1;
    out.coords[id] = c;
  }
  return out;
}

std::vector<std::pair<PAbelianGroup::Vec, long long>> submodule_basis(const Submodule& s) {
  const auto& elems = s.elems;
  auto add = [&](int i, int j) {
    PAbelianGroup::Vec v = s.module.add(elems[i], elems[j]);
    auto it = std::lower_bound(elems.begin(), elems.end(), v);
    internal_check(it != elems.end() && *it == v, "submodule not closed");
    return static_cast<int>(it - elems.begin());
  };
  CoordSystem cs = coordinatize(static_cast<int>(elems.size()), add, s.module.prime);
  std::vector<std::pair<PAbelianGroup::Vec, long long>> out;
  for (std::size_t i = 0; i < cs.basis_ids.size(); ++i)
    out.emplace_back(elems[cs.basis_ids[i]], cs.module.orders[i]);
  return out;
}

}  // namespace fuslim
