#include "fuslim/group.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_set>

#include "fuslim/errors.hpp"

namespace fuslim {

namespace {

long long p_part(long long n, int p) {
  long long pe = 1;
  while (n % p == 0) {
    n /= p;
    pe *= p;
  }
  return pe;
}

bool is_p_power(long long n, int p) {
  while (n % p == 0) n /= p;
  return n == 1;
}

void require_prime(int p) {
  if (!is_prime(p)) throw ValidationError("p = " + std::to_string(p) + " is not prime");
}

void require_same_parent(const Subgroup& a, const Subgroup& b) {
  if (a.parent != b.parent)
    throw ValidationError("subgroups belong to different parent groups");
}

}  // namespace

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; static_cast<long long>(d) * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

GroupPtr Group::generate(int degree, std::vector<Perm> gens, long long order_cap) {
  if (degree < 1) throw ValidationError("group degree must be at least 1");
  for (const Perm& g : gens)
    if (g.degree() != degree)
      throw ValidationError("generator degree does not match group degree");

  auto grp = std::shared_ptr<Group>(new Group());
  grp->degree_ = degree;
  grp->generators_ = gens;

  // Plain orbit of the identity under right multiplication by the generators.
  // The reachable set is a finite submonoid, hence a subgroup.
  std::unordered_map<Perm, int, PermHash> seen;
  std::vector<Perm> elems;
  elems.emplace_back(degree);
  seen.emplace(elems[0], 0);
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int a = queue.front();
    queue.pop_front();
    for (const Perm& g : gens) {
      Perm next = elems[a].then(g);
      if (seen.count(next)) continue;
      if (static_cast<long long>(elems.size()) >= order_cap)
        throw CapExceeded("group order exceeds cap " + std::to_string(order_cap));
      int idx = static_cast<int>(elems.size());
      seen.emplace(next, idx);
      elems.push_back(std::move(next));
      queue.push_back(idx);
    }
  }

  std::sort(elems.begin(), elems.end());
  grp->elements_ = std::move(elems);
  grp->index_.reserve(grp->elements_.size() * 2);
  for (int i = 0; i < static_cast<int>(grp->elements_.size()); ++i)
    grp->index_.emplace(grp->elements_[i], i);
  grp->inverse_.resize(grp->elements_.size());
  for (int i = 0; i < static_cast<int>(grp->elements_.size()); ++i) {
    auto it = grp->index_.find(grp->elements_[i].inverse());
    internal_check(it != grp->index_.end(), "inverse missing from enumerated group");
    grp->inverse_[i] = it->second;
  }
  return grp;
}

std::vector<int> Group::generator_indices() const {
  std::vector<int> out;
  out.reserve(generators_.size());
  for (const Perm& g : generators_) out.push_back(index_of(g));
  return out;
}

int Group::index_of(const Perm& p) const {
  auto it = index_.find(p);
  return it == index_.end() ? -1 : it->second;
}

int Group::mul(int a, int b) const {
  auto it = index_.find(elements_[a].then(elements_[b]));
  internal_check(it != index_.end(), "product fell outside enumerated group");
  return it->second;
}

int Group::inv(int a) const { return inverse_[a]; }

bool Subgroup::contains(int idx) const {
  return std::binary_search(elems.begin(), elems.end(), idx);
}

bool Subgroup::contains_subgroup(const Subgroup& other) const {
  return std::includes(elems.begin(), elems.end(), other.elems.begin(), other.elems.end());
}

Subgroup trivial_subgroup(const GroupPtr& g) { return Subgroup{g, {0}}; }

Subgroup full_subgroup(const GroupPtr& g) {
  std::vector<int> all(g->order());
  for (int i = 0; i < static_cast<int>(all.size()); ++i) all[i] = i;
  return Subgroup{g, std::move(all)};
}

Subgroup subgroup_closure(const GroupPtr& g, const std::vector<int>& gens) {
  std::vector<char> in(g->order(), 0);
  in[0] = 1;
  std::vector<int> members{0};
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int a = queue.front();
    queue.pop_front();
    for (int x : gens) {
      int next = g->mul(a, x);
      if (!in[next]) {
        in[next] = 1;
        members.push_back(next);
        queue.push_back(next);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return Subgroup{g, std::move(members)};
}

Subgroup conjugate_subgroup(const Subgroup& p, int g) {
  std::vector<int> out;
  out.reserve(p.elems.size());
  for (int x : p.elems) out.push_back(p.parent->conj(x, g));
  std::sort(out.begin(), out.end());
  return Subgroup{p.parent, std::move(out)};
}

std::vector<int> generating_set(const Subgroup& s) {
  std::vector<int> gens;
  long long closed = 1;
  for (int x : s.elems) {
    if (closed == s.order()) break;
    if (x == 0) continue;
    Subgroup so_far = subgroup_closure(s.parent, gens);
    if (so_far.contains(x)) continue;
    gens.push_back(x);
    closed = subgroup_closure(s.parent, gens).order();
  }
  return gens;
}

bool is_abelian(const Subgroup& s) {
  std::vector<int> gens = generating_set(s);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (s.parent->mul(gens[i], gens[j]) != s.parent->mul(gens[j], gens[i]))
        return false;
  return true;
}

bool is_pgroup(const Subgroup& s, int p) {
  require_prime(p);
  return is_p_power(s.order(), p);
}

bool is_elementary_abelian(const Subgroup& s, int p) {
  require_prime(p);
  if (!is_abelian(s)) return false;
  for (int x : s.elems)
    if (x != 0 && s.parent->elem_order(x) != p) return false;
  return true;
}

bool is_normal_in(const Subgroup& g, const Subgroup& k) {
  require_same_parent(g, k);
  if (!g.contains_subgroup(k)) return false;
  std::vector<int> ggens = generating_set(g);
  std::vector<int> kgens = generating_set(k);
  for (int h : ggens)
    for (int x : kgens)
      if (!k.contains(g.parent->conj(x, h))) return false;
  return true;
}

Subgroup join(const Subgroup& a, const Subgroup& b) {
  require_same_parent(a, b);
  std::vector<int> gens = generating_set(a);
  for (int x : generating_set(b)) gens.push_back(x);
  return subgroup_closure(a.parent, gens);
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  require_same_parent(a, b);
  std::vector<int> out;
  std::set_intersection(a.elems.begin(), a.elems.end(), b.elems.begin(),
                        b.elems.end(), std::back_inserter(out));
  return Subgroup{a.parent, std::move(out)};
}

std::vector<int> right_coset_reps(const Subgroup& g, const Subgroup& h) {
  require_same_parent(g, h);
  if (!g.contains_subgroup(h))
    throw ValidationError("coset reps requested for a non-subgroup");
  std::vector<char> seen(g.parent->order(), 0);
  std::vector<int> reps;
  for (int x : g.elems) {
    if (seen[x]) continue;
    reps.push_back(x);
    for (int u : h.elems) seen[g.parent->mul(u, x)] = 1;
  }
  return reps;
}

Subgroup normalizer(const Subgroup& g, const Subgroup& p) {
  require_same_parent(g, p);
  // P normalizes itself, so the normalizer is a union of right cosets of P and
  // one test per coset rep suffices.
  std::vector<int> pgens = generating_set(p);
  std::vector<char> seen(g.parent->order(), 0);
  std::vector<int> members;
  for (int x : g.elems) {
    if (seen[x]) continue;
    bool ok = true;
    for (int t : pgens)
      if (!p.contains(g.parent->conj(t, x))) {
        ok = false;
        break;
      }
    for (int u : p.elems) {
      int y = g.parent->mul(u, x);
      seen[y] = 1;
      if (ok) members.push_back(y);
    }
  }
  std::sort(members.begin(), members.end());
  return Subgroup{g.parent, std::move(members)};
}

Subgroup centralizer_elem(const Subgroup& g, int x) {
  std::vector<int> members;
  for (int h : g.elems)
    if (g.parent->mul(h, x) == g.parent->mul(x, h)) members.push_back(h);
  return Subgroup{g.parent, std::move(members)};
}

Subgroup centralizer(const Subgroup& g, const Subgroup& x) {
  require_same_parent(g, x);
  std::vector<int> xgens = generating_set(x);
  std::vector<int> members;
  for (int h : g.elems) {
    bool ok = true;
    for (int t : xgens)
      if (g.parent->mul(h, t) != g.parent->mul(t, h)) {
        ok = false;
        break;
      }
    if (ok) members.push_back(h);
  }
  return Subgroup{g.parent, std::move(members)};
}

Subgroup center(const Subgroup& g) { return centralizer(g, g); }

Subgroup sylow_subgroup(const Subgroup& g, int p) {
  require_prime(p);
  long long target = p_part(g.order(), p);
  Subgroup P = trivial_subgroup(g.parent);
  while (P.order() < target) {
    // P is normal in N = N_g(P) and p divides [N:P], so N holds a p-element
    // outside P; adjoining it keeps everything a p-group and grows the order.
    Subgroup N = normalizer(g, P);
    int found = -1;
    for (int x : N.elems) {
      if (P.contains(x)) continue;
      if (is_p_power(g.parent->elem_order(x), p)) {
        found = x;
        break;
      }
    }
    internal_check(found >= 0, "sylow climb found no p-element in normalizer");
    std::vector<int> gens = generating_set(P);
    gens.push_back(found);
    P = subgroup_closure(g.parent, gens);
    internal_check(is_p_power(P.order(), p), "sylow climb left the p-subgroups");
  }
  return P;
}

Subgroup p_core(const Subgroup& g, int p) {
  Subgroup P = sylow_subgroup(g, p);
  Subgroup core = P;
  Subgroup N = normalizer(g, P);
  for (int r : right_coset_reps(g, N)) {
    core = intersect(core, conjugate_subgroup(P, r));
    if (core.order() == 1) break;
  }
  return core;
}

std::vector<int> transporter(const Subgroup& g, const Subgroup& p, const Subgroup& q) {
  require_same_parent(g, p);
  require_same_parent(g, q);
  // {h : p^h <= q} is a union of right cosets of C_g(p).
  Subgroup C = centralizer(g, p);
  std::vector<int> pgens = generating_set(p);
  std::vector<int> out;
  for (int r : right_coset_reps(g, C)) {
    bool ok = true;
    for (int t : pgens)
      if (!q.contains(g.parent->conj(t, r))) {
        ok = false;
        break;
      }
    if (!ok) continue;
    for (int u : C.elems) out.push_back(g.parent->mul(u, r));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Subgroup> subgroups_of_pgroup(const Subgroup& s, std::size_t size_cap) {
  if (static_cast<std::size_t>(s.order()) > size_cap)
    throw CapExceeded("subgroup lattice requested for group of order " +
                      std::to_string(s.order()) + " (cap " +
                      std::to_string(size_cap) + ")");
  if (s.order() > 1) {
    int p = 2;
    while (s.order() % p != 0) ++p;
    if (!is_p_power(s.order(), p))
      throw ValidationError("subgroup lattice is only supported for p-groups");
  }

  std::unordered_set<Subgroup, SubgroupHash> known;
  std::vector<Subgroup> all;
  auto add = [&](Subgroup h) {
    if (known.insert(h).second) all.push_back(std::move(h));
  };
  for (int x : s.elems) add(subgroup_closure(s.parent, {x}));

  // Every subgroup is a join of cyclic ones, so closing under pairwise joins
  // reaches the whole lattice.
  std::size_t lo = 0;
  while (lo < all.size()) {
    std::size_t hi = all.size();
    for (std::size_t i = lo; i < hi; ++i)
      for (std::size_t j = 0; j < hi; ++j) {
        add(join(all[i], all[j]));
        if (all.size() > 200000)
          throw CapExceeded("subgroup lattice grew past 200000 subgroups");
      }
    lo = hi;
  }
  std::sort(all.begin(), all.end(), Subgroup::less);
  return all;
}

QuotientGroup quotient_group(const Subgroup& g, const Subgroup& k) {
  require_same_parent(g, k);
  if (!is_normal_in(g, k))
    throw ValidationError("quotient requested by a non-normal subgroup");

  const GroupPtr& par = g.parent;
  int m = static_cast<int>(g.order() / k.order());
  std::vector<int> coset_of(par->order(), -1);
  std::vector<int> coset_rep;
  for (int x : g.elems) {
    if (coset_of[x] >= 0) continue;
    int c = static_cast<int>(coset_rep.size());
    coset_rep.push_back(x);
    for (int u : k.elems) coset_of[par->mul(u, x)] = c;
  }
  internal_check(static_cast<int>(coset_rep.size()) == m, "coset count mismatch");

  auto image_perm = [&](int e) {
    std::vector<int> img(m);
    for (int c = 0; c < m; ++c) img[c] = coset_of[par->mul(coset_rep[c], e)];
    return Perm(std::move(img));
  };

  std::vector<Perm> qgens;
  for (int x : generating_set(g)) qgens.push_back(image_perm(x));
  QuotientGroup out;
  out.group = Group::generate(std::max(m, 1), qgens);
  internal_check(out.group->order() == m, "coset action has the wrong order");
  out.kernel = k;
  out.proj.assign(par->order(), -1);
  out.section.assign(m, -1);
  for (int x : g.elems) {
    int qi = out.group->index_of(image_perm(x));
    internal_check(qi >= 0, "element image missing from quotient");
    out.proj[x] = qi;
    if (out.section[qi] < 0) out.section[qi] = x;
  }
  return out;
}

GroupPtr parse_group(const std::string& text, long long order_cap) {
  std::istringstream in(text);
  std::string line;
  int degree = -1;
  std::vector<Perm> gens;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key) || key[0] == '#') continue;
    if (key == "degree") {
      if (degree >= 0) throw ValidationError("duplicate degree line");
      if (!(ls >> degree) || degree < 1)
        throw ValidationError("bad degree line: " + line);
    } else if (key == "gen") {
      if (degree < 0) throw ValidationError("gen line before degree line");
      std::string rest;
      std::getline(ls, rest);
      gens.push_back(Perm::from_cycles(degree, rest));
    } else {
      throw ValidationError("unknown directive in group file: " + key);
    }
  }
  if (degree < 0) throw ValidationError("group file has no degree line");
  return Group::generate(degree, std::move(gens), order_cap);
}

std::string format_group(const Group& g) {
  std::ostringstream out;
  out << "degree " << g.degree() << "\n";
  for (const Perm& p : g.generators()) out << "gen " << p.cycle_string() << "\n";
  return out.str();
}

}  // namespace fuslim
