#include "fuslim/action.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "fuslim/errors.hpp"

namespace fuslim {

namespace {

int position_in(const std::vector<int>& sorted, int value) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), value);
  if (it == sorted.end() || *it != value) return -1;
  return static_cast<int>(it - sorted.begin());
}

void check_entry_congruences(const PAbelianGroup& m, const Mat& a) {
  int r = m.rank();
  if (static_cast<int>(a.size()) != r * r)
    throw ValidationError("matrix has wrong shape for the module rank");
  // row i must have order dividing p^{e_i}: p^{e_i} * a_ij = 0 mod p^{e_j}
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if ((m.orders[i] * a[i * r + j]) % m.orders[j] != 0)
        throw ValidationError("matrix entry breaks the cyclic-order congruence");
}

}  // namespace

Mat identity_mat(int rank) {
  Mat m(rank * rank, 0);
  for (int i = 0; i < rank; ++i) m[i * rank + i] = 1;
  return m;
}

Mat mat_mul(const PAbelianGroup& m, const Mat& a, const Mat& b) {
  int r = m.rank();
  Mat out(r * r, 0);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < r; ++k) {
      long long aik = a[i * r + k];
      if (aik == 0) continue;
      for (int j = 0; j < r; ++j)
        out[i * r + j] = (out[i * r + j] + aik * b[k * r + j]) % m.orders[j];
    }
  return out;
}

PAbelianGroup::Vec vec_mat(const PAbelianGroup& m, const PAbelianGroup::Vec& v,
                           const Mat& a) {
  int r = m.rank();
  PAbelianGroup::Vec out(r, 0);
  for (int i = 0; i < r; ++i) {
    if (v[i] == 0) continue;
    for (int j = 0; j < r; ++j)
      out[j] = (out[j] + v[i] * a[i * r + j]) % m.orders[j];
  }
  return out;
}

const Mat& Action::mat_of(int elem_idx) const {
  int pos = position_in(actors.elems, elem_idx);
  internal_check(pos >= 0, "element does not belong to the acting subgroup");
  return mats[pos];
}

PAbelianGroup::Vec Action::apply(const PAbelianGroup::Vec& v, int elem_idx) const {
  return vec_mat(module, module.reduce(v), mat_of(elem_idx));
}

bool Action::fixes(const PAbelianGroup::Vec& v, int elem_idx) const {
  return apply(v, elem_idx) == module.reduce(v);
}

Action action_from_matrices(const Subgroup& actors, PAbelianGroup module,
                            const std::vector<std::pair<int, Mat>>& gen_mats) {
  for (const auto& [idx, mat] : gen_mats) {
    if (!actors.contains(idx))
      throw ValidationError("matrix given for an element outside the acting group");
    check_entry_congruences(module, mat);
  }

  Action a;
  a.parent = actors.parent;
  a.actors = actors;
  a.module = std::move(module);

  int n = static_cast<int>(actors.elems.size());
  int r = a.module.rank();
  a.mats.assign(n, {});
  std::vector<char> have(n, 0);
  a.mats[0] = identity_mat(r);
  have[0] = 1;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int pos = queue.front();
    queue.pop_front();
    for (const auto& [gidx, gmat] : gen_mats) {
      int next = a.parent->mul(actors.elems[pos], gidx);
      int npos = position_in(actors.elems, next);
      if (npos < 0)
        throw ValidationError("matrix generators do not generate the acting group");
      if (have[npos]) continue;
      a.mats[npos] = mat_mul(a.module, a.mats[pos], gmat);
      have[npos] = 1;
      queue.push_back(npos);
    }
  }
  for (int pos = 0; pos < n; ++pos)
    if (!have[pos])
      throw ValidationError("matrix generators do not generate the acting group");

  // homomorphism check off the spanning tree, which also forces invertibility
  for (int pos = 0; pos < n; ++pos)
    for (const auto& [gidx, gmat] : gen_mats) {
      int npos = position_in(actors.elems, a.parent->mul(actors.elems[pos], gidx));
      if (a.mats[npos] != mat_mul(a.module, a.mats[pos], gmat))
        throw ValidationError("matrices do not satisfy the group relations");
    }

  Mat id = identity_mat(r);
  std::vector<int> ker;
  for (int pos = 0; pos < n; ++pos)
    if (a.mats[pos] == id) ker.push_back(actors.elems[pos]);
  a.kernel = Subgroup{a.parent, std::move(ker)};
  a.faithful = a.kernel.order() == 1;
  return a;
}

PAbelianGroup::Vec InternalAction::to_vec(int elem_idx) const {
  int pos = position_in(dsub.elems, elem_idx);
  internal_check(pos >= 0, "element is not in the module subgroup");
  return vec_of[pos];
}

int InternalAction::to_elem(const PAbelianGroup::Vec& v) const {
  PAbelianGroup::Vec w = act.module.reduce(v);
  for (std::size_t i = 0; i < vec_of.size(); ++i)
    if (vec_of[i] == w) return dsub.elems[i];
  throw ValidationError("coordinate vector outside the module");
}

Submodule InternalAction::to_submodule(const Subgroup& sub) const {
  if (!dsub.contains_subgroup(sub))
    throw ValidationError("subgroup is not contained in the module subgroup");
  std::vector<PAbelianGroup::Vec> elems;
  for (int x : sub.elems) elems.push_back(to_vec(x));
  std::sort(elems.begin(), elems.end());
  return Submodule{act.module, std::move(elems)};
}

Subgroup InternalAction::to_subgroup(const Submodule& sub) const {
  std::vector<int> elems;
  for (const auto& v : sub.elems) elems.push_back(to_elem(v));
  std::sort(elems.begin(), elems.end());
  return Subgroup{dsub.parent, std::move(elems)};
}

InternalAction internal_action(const Subgroup& gamma, const Subgroup& d) {
  if (gamma.parent != d.parent)
    throw ValidationError("acting group and module subgroup have different parents");
  if (!gamma.contains_subgroup(d))
    throw ValidationError("module subgroup is not contained in the acting group");
  if (!is_abelian(d)) throw ValidationError("module subgroup is not abelian");
  if (!is_normal_in(gamma, d))
    throw ValidationError("module subgroup is not normal in the acting group");
  if (d.order() == 1)
    throw ValidationError("module subgroup is trivial, no prime can be inferred");
  int p = 2;
  while (d.order() % p != 0) ++p;
  if (!is_pgroup(d, p)) throw ValidationError("module subgroup is not a p-group");

  const GroupPtr& par = gamma.parent;
  auto add = [&](int i, int j) {
    int prod = par->mul(d.elems[i], d.elems[j]);
    int pos = position_in(d.elems, prod);
    internal_check(pos >= 0, "module subgroup not closed");
    return pos;
  };
  CoordSystem cs = coordinatize(static_cast<int>(d.elems.size()), add, p);

  std::vector<std::pair<int, Mat>> gen_mats;
  int r = cs.module.rank();
  for (int g : generating_set(gamma)) {
    Mat m(r * r);
    for (int i = 0; i < r; ++i) {
      int img = par->conj(d.elems[cs.basis_ids[i]], g);
      int pos = position_in(d.elems, img);
      if (pos < 0)
        throw ValidationError("module subgroup is not invariant under conjugation");
      for (int j = 0; j < r; ++j) m[i * r + j] = cs.coords[pos][j];
    }
    gen_mats.emplace_back(g, std::move(m));
  }

  InternalAction out;
  out.act = action_from_matrices(gamma, cs.module, gen_mats);
  out.dsub = d;
  out.vec_of = cs.coords;
  return out;
}

Submodule fixed_points(const Action& a, const Subgroup& h) {
  if (!a.actors.contains_subgroup(h))
    throw ValidationError("fixed points requested for a non-subgroup of the actors");
  std::vector<int> gens = generating_set(h);
  std::vector<PAbelianGroup::Vec> fixed;
  for (const auto& v : a.module.all_elements()) {
    bool ok = true;
    for (int g : gens)
      if (!a.fixes(v, g)) {
        ok = false;
        break;
      }
    if (ok) fixed.push_back(v);
  }
  return Submodule{a.module, std::move(fixed)};
}

Submodule commutator_series(const Action& a, const Subgroup& h, int depth) {
  if (depth < 1) throw ValidationError("commutator depth must be at least 1");
  if (!a.actors.contains_subgroup(h))
    throw ValidationError("commutator requested for a non-subgroup of the actors");
  Submodule w = full_submodule(a.module);
  for (int k = 0; k < depth; ++k) {
    std::vector<PAbelianGroup::Vec> gens;
    for (const auto& v : w.elems)
      for (int g : h.elems) {
        PAbelianGroup::Vec c = a.module.sub(a.apply(v, g), v);
        if (!a.module.is_zero(c)) gens.push_back(c);
      }
    w = span_submodule(a.module, gens);
  }
  return w;
}

bool is_quadratic(const Action& a, const Subgroup& h) {
  return commutator_series(a, h, 2).order() == 1 &&
         commutator_series(a, h, 1).order() > 1;
}

PAbelianGroup::Vec norm_map_with_reps(const Action& a, const std::vector<int>& reps,
                                      const PAbelianGroup::Vec& v) {
  PAbelianGroup::Vec out = a.module.zero();
  for (int r : reps) out = a.module.add(out, a.apply(v, r));
  return out;
}

PAbelianGroup::Vec norm_map(const Action& a, const Subgroup& h,
                            const PAbelianGroup::Vec& v) {
  if (!a.actors.contains_subgroup(h))
    throw ValidationError("norm map requested for a non-subgroup of the actors");
  for (int g : generating_set(h))
    if (!a.fixes(v, g))
      throw ValidationError("norm map argument is not fixed by the subgroup");
  PAbelianGroup::Vec out = norm_map_with_reps(a, right_coset_reps(a.actors, h), v);
  for (int g : generating_set(a.actors))
    internal_check(a.fixes(out, g), "norm image is not fixed by the full group");
  return out;
}

bool norm_map_is_trivial(const Action& a, const Subgroup& h) {
  std::vector<int> reps = right_coset_reps(a.actors, h);
  for (const auto& v : fixed_points(a, h).elems)
    if (!a.module.is_zero(norm_map_with_reps(a, reps, v))) return false;
  return true;
}

bool norm_map_is_trivial_on(const Action& a, const Subgroup& h, const Submodule& v) {
  std::vector<int> reps = right_coset_reps(a.actors, h);
  std::vector<int> gens = generating_set(h);
  for (const auto& w : v.elems) {
    bool fixed = true;
    for (int g : gens)
      if (!a.fixes(w, g)) {
        fixed = false;
        break;
      }
    if (fixed && !a.module.is_zero(norm_map_with_reps(a, reps, w))) return false;
  }
  return true;
}

bool is_transversal(const Subgroup& g, const std::vector<int>& x,
                    const std::vector<int>& y) {
  if (static_cast<long long>(x.size()) * static_cast<long long>(y.size()) !=
      g.order())
    return false;
  std::vector<char> hit(g.parent->order(), 0);
  for (int a : x)
    for (int b : y) {
      int prod = g.parent->mul(a, b);
      if (!g.contains(prod) || hit[prod]) return false;
      hit[prod] = 1;
    }
  return true;
}

namespace {

bool extend_transversal(const Subgroup& g, const std::vector<int>& x,
                        std::vector<char>& covered, long long covered_count,
                        std::vector<int>& y) {
  if (covered_count == g.order()) return true;
  int u = -1;
  for (int e : g.elems)
    if (!covered[e]) {
      u = e;
      break;
    }
  // any y covering u satisfies x*y = u for some x, so candidates are x^{-1}u
  std::vector<int> candidates;
  for (int a : x) candidates.push_back(g.parent->mul(g.parent->inv(a), u));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  for (int c : candidates) {
    if (!g.contains(c)) continue;
    std::vector<int> translate;
    bool clash = false;
    for (int a : x) {
      int prod = g.parent->mul(a, c);
      if (!g.contains(prod) || covered[prod]) {
        clash = true;
        break;
      }
      translate.push_back(prod);
    }
    if (clash) continue;
    std::sort(translate.begin(), translate.end());
    if (std::adjacent_find(translate.begin(), translate.end()) != translate.end())
      continue;
    for (int t : translate) covered[t] = 1;
    y.push_back(c);
    if (extend_transversal(g, x, covered, covered_count + translate.size(), y))
      return true;
    y.pop_back();
    for (int t : translate) covered[t] = 0;
  }
  return false;
}

}  // namespace

Transversal find_transversal(const Subgroup& g, const std::vector<int>& x) {
  if (x.empty()) throw ValidationError("transversal base set is empty");
  for (int a : x)
    if (!g.contains(a))
      throw ValidationError("transversal base set leaves the ambient group");
  if (g.order() % static_cast<long long>(x.size()) != 0)
    throw ValidationError("base set size does not divide the group order");
  std::vector<char> covered(g.parent->order(), 0);
  std::vector<int> y;
  if (!extend_transversal(g, x, covered, 0, y))
    throw ValidationError("base set admits no transversal");
  std::sort(y.begin(), y.end());
  Transversal t{x, y};
  internal_check(is_transversal(g, t.base_set, t.reps),
                 "constructed transversal fails the bijectivity check");
  return t;
}

PAbelianGroup::Vec norm_map_transversal(const Action& a, const Transversal& t,
                                        const PAbelianGroup::Vec& v) {
  if (!is_transversal(a.actors, t.base_set, t.reps))
    throw ValidationError("transversal fails the bijectivity check");
  for (int e : t.base_set)
    if (!a.fixes(v, e))
      throw ValidationError("norm argument is not fixed by the base set");
  PAbelianGroup::Vec out = norm_map_with_reps(a, t.reps, v);
  for (int g : generating_set(a.actors))
    internal_check(a.fixes(out, g), "transversal norm image is not group-fixed");
  return out;
}

Action restrict_action(const Action& a, const Subgroup& h) {
  if (!a.actors.contains_subgroup(h))
    throw ValidationError("restriction requested for a non-subgroup of the actors");
  Action out;
  out.parent = a.parent;
  out.actors = h;
  out.module = a.module;
  out.mats.reserve(h.elems.size());
  std::vector<int> ker;
  Mat id = identity_mat(a.module.rank());
  for (int e : h.elems) {
    out.mats.push_back(a.mat_of(e));
    if (out.mats.back() == id) ker.push_back(e);
  }
  out.kernel = Subgroup{a.parent, std::move(ker)};
  out.faithful = out.kernel.order() == 1;
  return out;
}

bool is_invariant(const Action& a, const Submodule& w) {
  for (int g : generating_set(a.actors))
    for (const auto& v : w.elems)
      if (!w.contains(a.apply(v, g))) return false;
  return true;
}

Action subaction(const Action& a, const Submodule& w) {
  if (!is_invariant(a, w))
    throw ValidationError("submodule is not invariant under the action");
  auto add = [&](int i, int j) {
    PAbelianGroup::Vec v = a.module.add(w.elems[i], w.elems[j]);
    auto it = std::lower_bound(w.elems.begin(), w.elems.end(), v);
    internal_check(it != w.elems.end() && *it == v, "submodule not closed");
    return static_cast<int>(it - w.elems.begin());
  };
  CoordSystem cs = coordinatize(static_cast<int>(w.elems.size()), add, a.module.prime);

  int r = cs.module.rank();
  std::vector<std::pair<int, Mat>> gen_mats;
  for (int g : generating_set(a.actors)) {
    Mat m(r * r);
    for (int i = 0; i < r; ++i) {
      PAbelianGroup::Vec img = a.apply(w.elems[cs.basis_ids[i]], g);
      auto it = std::lower_bound(w.elems.begin(), w.elems.end(), img);
      internal_check(it != w.elems.end() && *it == img, "invariance lost");
      const auto& c = cs.coords[it - w.elems.begin()];
      for (int j = 0; j < r; ++j) m[i * r + j] = c[j];
    }
    gen_mats.emplace_back(g, std::move(m));
  }
  return action_from_matrices(a.actors, cs.module, gen_mats);
}

Action quotient_module_action(const Action& a, const Submodule& w) {
  if (!is_invariant(a, w))
    throw ValidationError("submodule is not invariant under the action");
  // label cosets by their lexicographically least member
  std::map<PAbelianGroup::Vec, int> coset_of;
  std::vector<PAbelianGroup::Vec> rep;
  for (const auto& v : a.module.all_elements()) {
    if (coset_of.count(v)) continue;
    int c = static_cast<int>(rep.size());
    rep.push_back(v);
    for (const auto& u : w.elems) coset_of[a.module.add(v, u)] = c;
  }
  auto add = [&](int i, int j) { return coset_of.at(a.module.add(rep[i], rep[j])); };
  CoordSystem cs = coordinatize(static_cast<int>(rep.size()), add, a.module.prime);

  int r = cs.module.rank();
  std::vector<std::pair<int, Mat>> gen_mats;
  for (int g : generating_set(a.actors)) {
    Mat m(r * r);
    for (int i = 0; i < r; ++i) {
      const auto& c = cs.coords[coset_of.at(a.apply(rep[cs.basis_ids[i]], g))];
      for (int j = 0; j < r; ++j) m[i * r + j] = c[j];
    }
    gen_mats.emplace_back(g, std::move(m));
  }
  return action_from_matrices(a.actors, cs.module, gen_mats);
}

Action matrix_action(int prime, const std::vector<long long>& orders,
                     const std::vector<Mat>& gens, long long order_cap) {
  PAbelianGroup module{prime, orders};
  if (module.order() > order_cap)
    throw CapExceeded("module too large to realize as a permutation domain");
  std::vector<PAbelianGroup::Vec> points = module.all_elements();
  auto point_id = [&](const PAbelianGroup::Vec& v) {
    auto it = std::lower_bound(points.begin(), points.end(), v);
    internal_check(it != points.end() && *it == v, "module point lookup failed");
    return static_cast<int>(it - points.begin());
  };

  int degree = static_cast<int>(points.size());
  std::vector<Perm> perms;
  for (const auto& m : gens) {
    std::vector<int> image(degree);
    std::vector<bool> hit(degree, false);
    for (int i = 0; i < degree; ++i) {
      int j = point_id(vec_mat(module, points[i], m));
      image[i] = j;
      if (hit[j]) throw ValidationError("matrix is not invertible on the module");
      hit[j] = true;
    }
    perms.push_back(Perm(std::move(image)));
  }

  GroupPtr g = Group::generate(degree, perms, order_cap);
  Subgroup full = full_subgroup(g);
  std::vector<std::pair<int, Mat>> gen_mats;
  for (size_t i = 0; i < gens.size(); ++i)
    gen_mats.emplace_back(g->index_of(perms[i]), gens[i]);
  Action out = action_from_matrices(full, module, gen_mats);
  internal_check(out.faithful, "matrix action must be faithful");
  return out;
}

Submodule invariant_span(const Action& a, const PAbelianGroup::Vec& v) {
  // close the additive span of the orbit of v
  std::vector<int> gens = generating_set(a.actors);
  std::set<PAbelianGroup::Vec> orbit{v};
  std::vector<PAbelianGroup::Vec> frontier{v};
  while (!frontier.empty()) {
    std::vector<PAbelianGroup::Vec> next;
    for (const auto& u : frontier)
      for (int g : gens) {
        PAbelianGroup::Vec w = a.apply(u, g);
        if (orbit.insert(w).second) next.push_back(w);
      }
    frontier = std::move(next);
  }
  std::vector<PAbelianGroup::Vec> seed(orbit.begin(), orbit.end());
  return span_submodule(a.module, seed);
}

Submodule minimal_invariant_submodule(const Action& a) {
  if (a.module.order() == 1)
    throw ValidationError("trivial module has no nontrivial invariant submodule");
  // the invariant span of any element of a minimal invariant submodule is the
  // submodule itself, so the smallest single-element span is minimal
  Submodule best = zero_submodule(a.module);
  for (const auto& v : a.module.all_elements()) {
    if (a.module.is_zero(v)) continue;
    Submodule s = invariant_span(a, v);
    if (best.elems.size() <= 1 || s.elems.size() < best.elems.size()) best = std::move(s);
    if (best.elems.size() == static_cast<size_t>(a.module.prime)) break;  // can't do better
  }
  return best;
}

std::vector<Action> composition_factors(const Action& a) {
  std::vector<Action> factors;
  Action cur = a;
  while (cur.module.order() > 1) {
    Submodule m = minimal_invariant_submodule(cur);
    factors.push_back(subaction(cur, m));
    if (m.elems.size() == static_cast<size_t>(cur.module.order())) break;
    cur = quotient_module_action(cur, m);
  }
  return factors;
}

Action parse_action(const std::string& text, const GroupPtr& g) {
  std::istringstream in(text);
  std::string line;
  int prime = -1;
  std::vector<long long> orders;
  std::vector<Mat> mats;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key) || key[0] == '#') continue;
    if (key == "prime") {
      if (!(ls >> prime) || !is_prime(prime))
        throw ValidationError("bad prime line: " + line);
    } else if (key == "orders") {
      long long o;
      while (ls >> o) orders.push_back(o);
      if (orders.empty()) throw ValidationError("empty orders line");
    } else if (key == "mat") {
      Mat m;
      long long v;
      while (ls >> v) m.push_back(v);
      mats.push_back(std::move(m));
    } else {
      throw ValidationError("unknown directive in module file: " + key);
    }
  }
  if (prime < 0) throw ValidationError("module file has no prime line");
  if (orders.empty()) throw ValidationError("module file has no orders line");
  for (long long o : orders) {
    long long t = o;
    while (t % prime == 0) t /= prime;
    if (t != 1 || o < 2)
      throw ValidationError("module order is not a power of the prime");
  }
  if (mats.size() != g->generators().size())
    throw ValidationError("module file must give one matrix per group generator");

  PAbelianGroup module{prime, orders};
  Subgroup full = full_subgroup(g);
  std::vector<std::pair<int, Mat>> gen_mats;
  for (std::size_t i = 0; i < mats.size(); ++i) {
    Mat reduced(mats[i].size());
    if (static_cast<int>(mats[i].size()) != module.rank() * module.rank())
      throw ValidationError("matrix has wrong number of entries");
    for (int r = 0; r < module.rank(); ++r) {
      for (int c = 0; c < module.rank(); ++c) {
        long long v = mats[i][r * module.rank() + c] % orders[c];
        if (v < 0) v += orders[c];
        reduced[r * module.rank() + c] = v;
      }
    }
    gen_mats.emplace_back(g->index_of(g->generators()[i]), std::move(reduced));
  }
  return action_from_matrices(full, module, gen_mats);
}

std::string format_action(const Action& a) {
  std::ostringstream out;
  out << "prime " << a.module.prime << "\n";
  out << "orders";
  for (long long o : a.module.orders) out << " " << o;
  out << "\n";
  for (const Perm& g : a.parent->generators()) {
    out << "mat";
    for (long long v : a.mat_of(a.parent->index_of(g))) out << " " << v;
    out << "\n";
  }
  return out.str();
}

}  // namespace fuslim
