#include "fuslim/offenders.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_set>
#include <utility>

#include "fuslim/errors.hpp"
#include "fuslim/perm.hpp"

namespace fuslim {

namespace {

long long offense(const Action& act, const Subgroup& a) {
  return a.order() * fixed_points(act, a).order();
}

void require_faithful(const Action& act) {
  if (!act.faithful)
    throw ValidationError("offender machinery needs a faithful action");
}

// Order-2 subgroups of s that are best offenders on the module. For order 2
// the best-offender condition degenerates to the offender inequality.
std::vector<Subgroup> order2_members(const Action& act, const Subgroup& s) {
  long long d = act.module.order();
  std::vector<Subgroup> out;
  for (int x : s.elems) {
    if (x == 0 || act.parent->elem_order(x) != 2) continue;
    Subgroup t{s.parent, {0, x}};
    if (2 * fixed_points(act, t).order() >= d) out.push_back(t);
  }
  return out;
}

Subgroup closure_of_members(const GroupPtr& g, const std::vector<Subgroup>& members) {
  std::vector<int> gens;
  for (const Subgroup& a : members)
    gens.insert(gens.end(), a.elems.begin(), a.elems.end());
  if (gens.empty()) return trivial_subgroup(g);
  return subgroup_closure(g, gens);
}

bool commute(const GroupPtr& g, int a, int b) {
  return g->mul(a, b) == g->mul(b, a);
}

// C_J(L) without materializing a centralizer of the whole parent: centralizing
// the generators of l is centralizing l, and the filtered set is a subgroup.
Subgroup centralizer_in(const Subgroup& j, const std::vector<int>& lgens) {
  Subgroup out{j.parent, {}};
  for (int x : j.elems) {
    bool ok = true;
    for (int l : lgens)
      if (!commute(j.parent, x, l)) {
        ok = false;
        break;
      }
    if (ok) out.elems.push_back(x);
  }
  return out;
}

bool trivial_meet(const Submodule& a, const Submodule& b) {
  std::size_t common = 0;
  std::size_t i = 0, k = 0;
  while (i < a.elems.size() && k < b.elems.size()) {
    if (a.elems[i] == b.elems[k]) {
      ++common;
      ++i;
      ++k;
    } else if (a.elems[i] < b.elems[k]) {
      ++i;
    } else {
      ++k;
    }
  }
  return common == 1;  // the zero vector only
}

bool centralizes_module(const Action& act, const std::vector<int>& gens,
                        const Submodule& w) {
  for (const auto& v : w.elems)
    for (int g : gens)
      if (!act.fixes(v, g)) return false;
  return true;
}

bool invariant_under(const Action& act, const std::vector<int>& gens,
                     const Submodule& w) {
  for (const auto& v : w.elems)
    for (int g : gens)
      if (!w.contains(act.apply(v, g))) return false;
  return true;
}

// Index-2 submodules of c: kernels of the nonzero additive maps to Z/2, i.e.
// hyperplane preimages over c modulo doubles. Enumerated in mask order on a
// fixed basis, then sorted by element list for a stable report order.
std::vector<Submodule> index2_submodules(const PAbelianGroup& m, const Submodule& c) {
  std::vector<Submodule> out;
  if (c.order() <= 1) return out;
  auto basis = submodule_basis(c);
  int k = static_cast<int>(basis.size());
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    int pivot = -1;
    for (int i = 0; i < k; ++i)
      if (mask >> i & 1u) {
        pivot = i;
        break;
      }
    std::vector<PAbelianGroup::Vec> gens;
    for (int i = 0; i < k; ++i) {
      gens.push_back(m.scalar_mul(2, basis[i].first));
      if (!(mask >> i & 1u))
        gens.push_back(basis[i].first);
      else if (i != pivot)
        gens.push_back(m.add(basis[i].first, basis[pivot].first));
    }
    Submodule x = span_submodule(m, gens);
    internal_check(2 * x.order() == c.order(),
                   "hyperplane enumeration produced a wrong index");
    out.push_back(std::move(x));
  }
  std::sort(out.begin(), out.end(),
            [](const Submodule& a, const Submodule& b) { return a.elems < b.elems; });
  return out;
}

void check_invariant_collection(const Action& act, const std::vector<Subgroup>& coll) {
  std::unordered_set<Subgroup, SubgroupHash> set(coll.begin(), coll.end());
  std::vector<int> gens = generating_set(act.actors);
  for (const Subgroup& a : coll) {
    if (!act.actors.contains_subgroup(a))
      throw ValidationError("collection member lies outside the acting group");
    for (int g : gens)
      if (!set.count(conjugate_subgroup(a, g)))
        throw ValidationError("collection is not closed under conjugation");
  }
}

long long factorial(int m) {
  long long f = 1;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

}  // namespace

std::vector<OffenderReport> best_offenders(const Action& act) {
  require_faithful(act);
  long long d = act.module.order();
  Subgroup s = sylow_subgroup(act.actors, act.module.prime);
  std::vector<Subgroup> lattice = subgroups_of_pgroup(s);
  std::vector<long long> value(lattice.size(), 0);
  for (std::size_t i = 0; i < lattice.size(); ++i)
    value[i] = is_abelian(lattice[i]) ? offense(act, lattice[i]) : -1;

  // Best offenders inside the fixed Sylow subgroup, then the closure under
  // conjugation; best-ness is conjugation invariant, so this is all of them.
  std::unordered_set<Subgroup, SubgroupHash> all;
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    if (lattice[i].order() == 1 || value[i] < 0) continue;
    bool best = true;
    for (std::size_t k = 0; k < lattice.size() && best; ++k)
      if (value[k] > value[i] && lattice[i].contains_subgroup(lattice[k])) best = false;
    if (!best || value[i] < d) continue;
    for (int x : act.actors.elems) all.insert(conjugate_subgroup(lattice[i], x));
  }
  std::vector<Subgroup> members(all.begin(), all.end());
  std::sort(members.begin(), members.end(), Subgroup::less);

  // Solitary and semisolitary membership, both closed under conjugation from
  // the witnesses relative to the fixed Sylow subgroup.
  std::unordered_set<Subgroup, SubgroupHash> sol, semi;
  if (act.module.prime == 2) {
    for (const Subgroup& t : order2_members(act, s)) {
      if (is_solitary(act, t, s))
        for (int x : act.actors.elems) sol.insert(conjugate_subgroup(t, x));
      if (is_semisolitary(act, t, s))
        for (int x : act.actors.elems) semi.insert(conjugate_subgroup(t, x));
    }
  }

  std::vector<OffenderReport> out;
  out.reserve(members.size());
  for (const Subgroup& a : members) {
    OffenderReport r;
    r.subgroup = a;
    r.size = a.order();
    r.fixed_size = fixed_points(act, a).order();
    long long v = r.size * r.fixed_size;
    long long c = std::gcd(v, d);
    r.defect_num = v / c;
    r.defect_den = d / c;
    r.best = true;
    r.over = v > d;
    r.quadratic = is_quadratic(act, a);
    r.solitary = sol.count(a) > 0;
    r.semisolitary = semi.count(a) > 0;
    out.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    bool minimal = true;
    for (std::size_t k = 0; k < out.size() && minimal; ++k)
      if (out[k].size < out[i].size &&
          out[i].subgroup.contains_subgroup(out[k].subgroup))
        minimal = false;
    out[i].minimal = minimal;
  }
  return out;
}

Subgroup replacement(const Action& act, const Subgroup& a) {
  require_faithful(act);
  long long d = act.module.order();
  if (a.order() == 1) throw ValidationError("offender must be nontrivial");
  if (!act.actors.contains_subgroup(a))
    throw ValidationError("offender lies outside the acting group");
  if (!is_pgroup(a, act.module.prime) || !is_abelian(a))
    throw ValidationError("offender must be an abelian p-subgroup");
  long long target = offense(act, a);
  if (target < d) throw ValidationError("subgroup is not an offender");

  std::vector<Subgroup> lattice = subgroups_of_pgroup(a);
  std::vector<Subgroup> qualifying;
  for (const Subgroup& b : lattice)
    if (b.order() > 1 && offense(act, b) >= target) qualifying.push_back(b);
  // lattice is sorted by (order, elements), so the first inclusion-minimal
  // entry is the deterministic choice
  const Subgroup* pick = nullptr;
  for (const Subgroup& b : qualifying) {
    bool minimal = true;
    for (const Subgroup& c : qualifying) {
      if (c.order() < b.order() && b.contains_subgroup(c)) {
        minimal = false;
        break;
      }
    }
    if (minimal) {
      pick = &b;
      break;
    }
  }
  internal_check(pick != nullptr, "an offender always contains itself as a witness");

  long long best = offense(act, *pick);
  for (const Subgroup& c : subgroups_of_pgroup(*pick))
    internal_check(offense(act, c) <= best, "replacement witness is not a best offender");
  internal_check(is_quadratic(act, *pick), "replacement witness is not quadratic");
  return *pick;
}

Subgroup thompson_subgroup(const Action& act, const std::vector<Subgroup>& coll,
                           const Subgroup& h) {
  check_invariant_collection(act, coll);
  std::vector<Subgroup> inside;
  for (const Subgroup& a : coll)
    if (h.contains_subgroup(a)) inside.push_back(a);
  return closure_of_members(act.parent, inside);
}

Subgroup thompson_subgroup_preimage(const Action& act,
                                    const std::vector<Subgroup>& coll,
                                    const Subgroup& h) {
  check_invariant_collection(act, coll);
  for (const Subgroup& a : coll)
    if (!a.contains_subgroup(act.kernel))
      throw ValidationError("preimage collection member does not contain the kernel");
  Subgroup hc = join(h, act.kernel);
  std::vector<Subgroup> inside;
  for (const Subgroup& a : coll)
    if (hc.contains_subgroup(a)) inside.push_back(a);
  Subgroup top = inside.empty() ? act.kernel : closure_of_members(act.parent, inside);
  // top is the full preimage of the image-side Thompson subgroup, so cutting
  // it down to h is exactly the preimage taken inside h
  return intersect(h, top);
}

std::optional<SolitaryWitness> is_solitary(const Action& act, const Subgroup& t,
                                           const Subgroup& s) {
  require_faithful(act);
  if (act.module.prime != 2)
    throw ValidationError("solitarity is defined for actions on 2-groups");
  if (!act.actors.contains_subgroup(s) || !is_pgroup(s, 2) ||
      (act.actors.order() / s.order()) % 2 == 0)
    throw ValidationError("reference subgroup is not a Sylow 2-subgroup");
  long long d = act.module.order();
  if (t.order() != 2 || !s.contains_subgroup(t) ||
      2 * fixed_points(act, t).order() < d)
    throw ValidationError("subgroup is not an order-2 best offender inside the Sylow subgroup");

  const GroupPtr& g = act.parent;
  std::vector<Subgroup> a2 = order2_members(act, s);
  Subgroup j = closure_of_members(g, a2);
  std::vector<Subgroup> others;
  for (const Subgroup& a : a2)
    if (!(a == t)) others.push_back(a);
  Subgroup rest = closure_of_members(g, others);

  int tg = t.elems[1];
  std::unordered_set<int> seen;
  std::vector<int> cls;
  for (int x : act.actors.elems) {
    int u = g->conj(tg, x);
    if (seen.insert(u).second) cls.push_back(u);
  }
  std::sort(cls.begin(), cls.end());

  for (int u : cls) {
    if (g->elem_order(g->mul(tg, u)) != 3) continue;
    Subgroup l = subgroup_closure(g, {tg, u});
    if (l.order() != 6 || is_abelian(l)) continue;
    Subgroup cjl = centralizer_in(j, {tg, u});
    if (!(cjl == rest)) continue;
    if (cjl.contains(tg) || 2 * cjl.order() != j.order()) continue;
    if (!(join(t, cjl) == j)) continue;
    Submodule wd = commutator_series(act, l, 1);
    Submodule cd = fixed_points(act, l);
    if (wd.order() * cd.order() != d || !trivial_meet(wd, cd)) continue;
    if (!centralizes_module(act, generating_set(cjl), wd)) continue;
    return SolitaryWitness{t, l, j, cjl};
  }
  return std::nullopt;
}

std::optional<SemisolitaryWitness> is_semisolitary(const Action& act,
                                                   const Subgroup& t,
                                                   const Subgroup& s0) {
  require_faithful(act);
  if (act.module.prime != 2)
    throw ValidationError("semisolitarity is defined for actions on 2-groups");
  if (!act.actors.contains_subgroup(s0) || !is_pgroup(s0, 2))
    throw ValidationError("reference subgroup is not a 2-subgroup of the acting group");
  long long d = act.module.order();
  if (t.order() != 2 || !s0.contains_subgroup(t) ||
      2 * fixed_points(act, t).order() < d)
    throw ValidationError("subgroup is not an order-2 best offender inside the reference subgroup");

  const GroupPtr& g = act.parent;
  std::vector<Subgroup> a2 = order2_members(act, s0);
  Subgroup j0 = closure_of_members(g, a2);
  std::vector<Subgroup> others;
  for (const Subgroup& a : a2)
    if (!(a == t)) others.push_back(a);
  Subgroup rest = closure_of_members(g, others);

  // the direct split of the generated subgroup does not involve the module
  int tg = t.elems[1];
  if (rest.contains(tg) || 2 * rest.order() != j0.order()) return std::nullopt;
  for (int y : generating_set(rest))
    if (!commute(g, tg, y)) return std::nullopt;
  if (!(join(t, rest) == j0)) return std::nullopt;

  std::vector<int> j0gens = generating_set(j0);
  std::vector<int> restgens = generating_set(rest);

  Submodule zt = commutator_series(act, t, 1);
  internal_check(zt.order() == 2, "an order-2 best offender moves the module by order 2");
  const PAbelianGroup::Vec z = zt.elems[1];

  std::vector<Submodule> wcands;
  std::unordered_set<std::size_t> wseen;
  for (const auto& w : omega1(act.module).elems) {
    if (act.module.is_zero(w) || w == z) continue;
    Submodule cand = span_submodule(act.module, {z, w});
    if (cand.order() != 4) continue;
    std::size_t hash = 0;
    for (const auto& e : cand.elems)
      for (long long c : e) hash = hash * 1315423911u + static_cast<std::size_t>(c) + 1;
    if (!wseen.insert(hash).second) continue;
    if (!centralizes_module(act, restgens, cand)) continue;
    if (!invariant_under(act, j0gens, cand)) continue;
    wcands.push_back(std::move(cand));
  }

  Submodule c = fixed_points(act, t);
  std::vector<Submodule> xcands;
  for (Submodule& x : index2_submodules(act.module, c))
    if (invariant_under(act, j0gens, x)) xcands.push_back(std::move(x));

  for (const Submodule& w : wcands)
    for (const Submodule& x : xcands) {
      if (w.order() * x.order() != d || !trivial_meet(w, x)) continue;
      return SemisolitaryWitness{w, x};
    }
  return std::nullopt;
}

std::vector<Subgroup> solitary_subgroups(const Action& act) {
  require_faithful(act);
  if (act.module.prime != 2)
    throw ValidationError("solitarity is defined for actions on 2-groups");
  Subgroup s = sylow_subgroup(act.actors, 2);
  std::unordered_set<Subgroup, SubgroupHash> out;
  for (const Subgroup& t : order2_members(act, s))
    if (is_solitary(act, t, s))
      for (int x : act.actors.elems) out.insert(conjugate_subgroup(t, x));
  std::vector<Subgroup> res(out.begin(), out.end());
  std::sort(res.begin(), res.end(), Subgroup::less);
  return res;
}

std::optional<Decomposition> solitary_decomposition(const Action& act) {
  require_faithful(act);
  if (act.module.prime != 2)
    throw ValidationError("solitary decomposition is a p = 2 construction");
  const GroupPtr& g = act.parent;
  if (p_core(act.actors, 2).order() != 1)
    throw ValidationError("acting group has a nontrivial normal 2-subgroup");
  std::vector<Subgroup> ts = solitary_subgroups(act);
  if (!(closure_of_members(g, ts) == act.actors))
    throw ValidationError("acting group is not generated by its solitary offenders");

  int n = static_cast<int>(ts.size());
  std::vector<PAbelianGroup::Vec> z(n);
  for (int i = 0; i < n; ++i) {
    Submodule zi = commutator_series(act, ts[i], 1);
    internal_check(zi.order() == 2, "solitary subgroups move the module by order 2");
    z[i] = zi.elems[1];
  }
  // union-find over "noncommuting or equal module support"
  std::vector<int> root(n);
  for (int i = 0; i < n; ++i) root[i] = i;
  std::function<int(int)> find = [&](int i) {
    return root[i] == i ? i : root[i] = find(root[i]);
  };
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k)
      if (!commute(g, ts[i].elems[1], ts[k].elems[1]) || z[i] == z[k])
        root[find(i)] = find(k);

  std::vector<std::vector<int>> blocks(n);
  for (int i = 0; i < n; ++i) blocks[find(i)].push_back(i);

  Decomposition out;
  out.residue = fixed_points(act, act.actors);
  for (const auto& block : blocks) {
    if (block.empty()) continue;
    long long k = static_cast<long long>(block.size());
    int m = 1;
    while (static_cast<long long>(m) * (m - 1) / 2 < k) ++m;
    internal_check(static_cast<long long>(m) * (m - 1) / 2 == k && m % 2 == 1 && m >= 3,
                   "solitary block does not have a transposition-class size");
    std::vector<Subgroup> members;
    for (int i : block) members.push_back(ts[i]);
    Subgroup e = closure_of_members(g, members);
    internal_check(e.order() == factorial(m), "solitary block does not generate a symmetric group");
    for (std::size_t i = 0; i < block.size(); ++i)
      for (std::size_t kk = i + 1; kk < block.size(); ++kk) {
        long long o = g->elem_order(g->mul(ts[block[i]].elems[1], ts[block[kk]].elems[1]));
        internal_check(o == 2 || o == 3, "solitary block does not multiply like transpositions");
      }
    Submodule v = commutator_series(act, e, 1);
    internal_check(v.order() == (1LL << (m - 1)), "block support is not a natural module");
    for (const auto& vec : v.elems)
      internal_check(act.module.elem_order(vec) <= 2, "block support is not elementary abelian");
    std::vector<int> egens = generating_set(e);
    int fixed_all = 0;
    for (const auto& vec : v.elems) {
      bool fix = true;
      for (int x : egens)
        if (!act.fixes(vec, x)) {
          fix = false;
          break;
        }
      if (fix) ++fixed_all;
    }
    internal_check(fixed_all == 1, "block support has fixed points under its factor");
    for (int i : block) {
      long long fixed_t = 0;
      for (const auto& vec : v.elems)
        if (act.fixes(vec, ts[i].elems[1])) ++fixed_t;
      internal_check(2 * fixed_t == v.order(),
                     "solitary subgroup is not a transvection on its block support");
    }
    out.factors.push_back({std::move(e), m, std::move(v)});
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const Decomposition::Factor& a, const Decomposition::Factor& b) {
              return Subgroup::less(a.e, b.e);
            });

  // internal direct product of the factors, in the group and in the module
  Subgroup running = trivial_subgroup(g);
  long long gorder = 1;
  for (const auto& f : out.factors) {
    internal_check(intersect(running, f.e).order() == 1,
                   "factors overlap inside the acting group");
    for (int a : generating_set(running))
      for (int b : generating_set(f.e))
        internal_check(commute(g, a, b), "factors do not commute");
    running = join(running, f.e);
    gorder *= f.e.order();
  }
  internal_check(running == act.actors && gorder == act.actors.order(),
                 "factors do not decompose the acting group");

  std::vector<PAbelianGroup::Vec> span;
  long long dorder = out.residue.order();
  for (const auto& f : out.factors) {
    dorder *= f.v.order();
    span.insert(span.end(), f.v.elems.begin(), f.v.elems.end());
    for (const auto& f2 : out.factors)
      if (!(&f2 == &f))
        internal_check(centralizes_module(act, generating_set(f2.e), f.v),
                       "block supports are not independent across factors");
  }
  span.insert(span.end(), out.residue.elems.begin(), out.residue.elems.end());
  internal_check(span_submodule(act.module, span).order() == act.module.order() &&
                     dorder == act.module.order(),
                 "block supports and fixed points do not decompose the module");
  return out;
}

Action natural_module_action(int m) {
  if (m < 3 || m % 2 == 0)
    throw ValidationError("natural module degree must be odd and at least 3");
  std::vector<int> cycle(m);
  for (int i = 0; i < m; ++i) cycle[i] = (i + 1) % m;
  Perm swap = Perm::from_cycles(m, "(1 2)");
  Perm rot{cycle};
  GroupPtr g = Group::generate(m, {swap, rot});

  PAbelianGroup mod{2, std::vector<long long>(m - 1, 2)};
  // basis vector i is the pair {i, i+1}; the image of a pair {a, b} with
  // a < b telescopes to the sum of the basis pairs from a to b-1
  auto mat_for = [&](const Perm& s) {
    int r = m - 1;
    Mat out(r * r, 0);
    for (int i = 0; i < r; ++i) {
      int a = s[i], b = s[i + 1];
      if (a > b) std::swap(a, b);
      for (int j = a; j < b; ++j) out[i * r + j] = 1;
    }
    return out;
  };
  std::vector<std::pair<int, Mat>> gens = {{g->index_of(swap), mat_for(swap)},
                                           {g->index_of(rot), mat_for(rot)}};
  return action_from_matrices(full_subgroup(g), mod, gens);
}

}  // namespace fuslim
