#include "fuslim/limits.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <set>
#include <string>
#include <utility>

#include "fuslim/action.hpp"
#include "fuslim/errors.hpp"

namespace fuslim {

namespace {

// enumeration caps for the element-by-element exactness checks
constexpr long long kEnumGuard = 4096;

long long positive_mod(long long v, long long m) {
  long long r = v % m;
  return r < 0 ? r + m : r;
}

bool member_of(const std::vector<Subgroup>& sorted, const Subgroup& s) {
  return std::binary_search(sorted.begin(), sorted.end(), s, Subgroup::less);
}

// least image list in the Inn(target)-orbit of a conjugation map, i.e. over
// all postcompositions with inner automorphisms of the target
std::vector<int> canonical_image(const Group& g, const Subgroup& target,
                                 const std::vector<int>& image) {
  std::vector<int> best = image;
  std::vector<int> cur(image.size());
  for (int t : target.elems) {
    for (std::size_t i = 0; i < image.size(); ++i) cur[i] = g.conj(image[i], t);
    if (cur < best) best = cur;
  }
  return best;
}

// rows = coordinates in Z(src) of the preimages of dst's center basis. The
// target's center lies inside the image because images of centrics are
// centric, and preimages of central elements are central.
std::vector<std::vector<long long>> pullback_matrix(const CenterFunctor& fun, const FHom& raw,
                                                    int src, int dst) {
  const std::vector<int>& zsrc = fun.centers[src].elems;
  std::vector<std::vector<long long>> rows;
  for (int bid : fun.coords[dst].basis_ids) {
    int z = fun.centers[dst].elems[bid];
    int pos = -1;
    for (std::size_t i = 0; i < raw.image.size(); ++i)
      if (raw.image[i] == z) {
        pos = static_cast<int>(i);
        break;
      }
    internal_check(pos >= 0, "center of the target misses the image");
    int zp = raw.dom[pos];
    auto it = std::lower_bound(zsrc.begin(), zsrc.end(), zp);
    internal_check(it != zsrc.end() && *it == zp, "pulled back center escapes the source center");
    rows.push_back(fun.coords[src].coords[it - zsrc.begin()]);
  }
  return rows;
}

bool is_zero_vec(const std::vector<long long>& v) {
  return std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; });
}

// all coordinate tuples of a finite abelian group given as invariant factors
std::vector<std::vector<long long>> all_tuples(const std::vector<long long>& factors) {
  long long total = 1;
  for (long long f : factors) {
    total *= f;
    if (total > kEnumGuard) throw CapExceeded("group too large to enumerate element by element");
  }
  std::vector<std::vector<long long>> out;
  out.reserve(static_cast<std::size_t>(total));
  std::vector<long long> cur(factors.size(), 0);
  out.push_back(cur);
  while (true) {
    int i = static_cast<int>(factors.size()) - 1;
    while (i >= 0) {
      if (++cur[i] < factors[i]) break;
      cur[i] = 0;
      --i;
    }
    if (i < 0) break;
    out.push_back(cur);
  }
  return out;
}

// representative cocycle of the class with the given coordinates
Cochain rep_of(const CochainComplex& cx, const CohomologyResult& res,
               const std::vector<long long>& tuple) {
  internal_check(tuple.size() == res.witnesses.size(), "tuple length mismatch");
  Cochain t = zero_cochain(cx, res.k);
  for (std::size_t i = 0; i < tuple.size(); ++i)
    for (std::size_t j = 0; j < t.v.size(); ++j) t.v[j] += tuple[i] * res.witnesses[i].v[j];
  for (std::size_t j = 0; j < t.v.size(); ++j)
    t.v[j] = positive_mod(t.v[j], cx.orders[res.k][j]);
  return t;
}

}  // namespace

int OrbitCategory::object_index(const Subgroup& p) const {
  auto it = std::lower_bound(objects.begin(), objects.end(), p, Subgroup::less);
  if (it == objects.end() || !(*it == p)) return -1;
  return static_cast<int>(it - objects.begin());
}

int OrbitCategory::class_of(int src, int dst, const FHom& raw) const {
  if (src < 0 || dst < 0) return -1;
  const Subgroup& p = objects[src];
  std::vector<int> image;
  image.reserve(p.elems.size());
  for (int x : p.elems) {
    int y = raw.apply(x);
    if (y < 0) return -1;
    image.push_back(y);
  }
  std::vector<int> canon = canonical_image(*fsys->group(), objects[dst], image);
  for (int m : hom[src][dst])
    if (mors[m].rep.image == canon) return m;
  return -1;
}

int OrbitCategory::compose(int a, int b) const {
  int total = static_cast<int>(mors.size());
  internal_check(a >= 0 && a < total && b >= 0 && b < total, "morphism id out of range");
  int c = comp[a][b];
  internal_check(c >= 0, "morphisms are not composable");
  return c;
}

OrbitCategory build_orbit_category(const FusionSystem& f, const std::vector<Subgroup>& collection,
                                   bool skeletal) {
  const Group& g = *f.group();
  std::vector<Subgroup> coll = collection;
  std::sort(coll.begin(), coll.end(), Subgroup::less);
  coll.erase(std::unique(coll.begin(), coll.end()), coll.end());
  for (const Subgroup& p : coll) {
    if (p.parent != f.group()) throw ValidationError("collection member from a different group");
    if (!f.sylow().contains_subgroup(p)) throw ValidationError("collection member not inside S");
    if (!f.is_centric(p)) throw ValidationError("orbit category members must be centric");
  }
  for (const Subgroup& p : coll)
    for (const Subgroup& q : f.f_class(p))
      if (!member_of(coll, q)) throw ValidationError("collection is not closed under fusion");

  OrbitCategory cat;
  cat.fsys = &f;
  cat.skeletal = skeletal;
  if (skeletal) {
    for (const FClass& fc : f_classes(f, coll)) cat.objects.push_back(fc.rep);
    std::sort(cat.objects.begin(), cat.objects.end(), Subgroup::less);
  } else {
    cat.objects = coll;
  }

  int n = static_cast<int>(cat.objects.size());
  cat.hom.assign(n, std::vector<std::vector<int>>(n));
  cat.identity_of.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    std::vector<int> idcanon = canonical_image(g, cat.objects[i], cat.objects[i].elems);
    for (int j = 0; j < n; ++j) {
      const std::vector<FHom>& homs = f.hom_set(cat.objects[i], cat.objects[j]);
      // orbits of Inn(target) acting by postcomposition, keyed by least image
      std::map<std::vector<int>, std::vector<int>> orbit;
      for (std::size_t h = 0; h < homs.size(); ++h)
        orbit[canonical_image(g, cat.objects[j], homs[h].image)].push_back(static_cast<int>(h));
      std::size_t covered = 0;
      for (const auto& [canon, block] : orbit) {
        MorClass mc;
        mc.src = i;
        mc.dst = j;
        mc.rep.dom = cat.objects[i].elems;
        mc.rep.image = canon;
        mc.rep.witness = -1;
        for (int h : block)
          if (homs[h].image == canon) mc.rep.witness = homs[h].witness;
        internal_check(mc.rep.witness >= 0, "least class member missing from the hom set");
        mc.identity = (i == j && canon == idcanon);
        cat.hom[i][j].push_back(static_cast<int>(cat.mors.size()));
        cat.mors.push_back(std::move(mc));
        covered += block.size();
      }
      internal_check(covered == homs.size(), "classes do not partition the hom set");
    }
  }
  for (int i = 0; i < n; ++i) {
    int found = -1;
    for (int m : cat.hom[i][i])
      if (cat.mors[m].identity) {
        internal_check(found < 0, "duplicate identity class");
        found = m;
      }
    internal_check(found >= 0, "missing identity class");
    cat.identity_of[i] = found;
  }

  int total = static_cast<int>(cat.mors.size());
  cat.comp.assign(total, std::vector<int>(total, -1));
  for (int a = 0; a < total; ++a) {
    const MorClass& ma = cat.mors[a];
    for (int b = 0; b < total; ++b) {
      const MorClass& mb = cat.mors[b];
      if (ma.dst != mb.src) continue;
      FHom raw;
      raw.dom = ma.rep.dom;
      raw.witness = g.mul(ma.rep.witness, mb.rep.witness);
      raw.image.reserve(raw.dom.size());
      for (int x : ma.rep.image) {
        int y = mb.rep.apply(x);
        internal_check(y >= 0, "composite leaves the representative domain");
        raw.image.push_back(y);
      }
      int cid = cat.class_of(ma.src, mb.dst, raw);
      internal_check(cid >= 0, "composite class missing from the hom set");
      cat.comp[a][b] = cid;
    }
  }
  for (int a = 0; a < total; ++a) {
    const MorClass& ma = cat.mors[a];
    internal_check(cat.comp[cat.identity_of[ma.src]][a] == a, "left unit law fails");
    internal_check(cat.comp[a][cat.identity_of[ma.dst]] == a, "right unit law fails");
  }
  for (int a = 0; a < total; ++a)
    for (int b = 0; b < total; ++b) {
      if (cat.comp[a][b] < 0) continue;
      for (int c = 0; c < total; ++c) {
        if (cat.comp[b][c] < 0) continue;
        internal_check(cat.comp[cat.comp[a][b]][c] == cat.comp[a][cat.comp[b][c]],
                       "composition is not associative");
      }
    }
  return cat;
}

std::vector<Subgroup> upward_closure(const FusionSystem& f, const std::vector<Subgroup>& r) {
  for (const Subgroup& p : r)
    if (!f.is_centric(p)) throw ValidationError("upward closure starts from centric subgroups");
  std::vector<Subgroup> out;
  for (const Subgroup& q : f.centric_collection())
    for (const Subgroup& p : r)
      if (q.contains_subgroup(p)) {
        out.push_back(q);
        break;
      }
  return out;
}

int CenterFunctor::rank_of(int obj) const { return coords[obj].module.rank(); }

const std::vector<long long>& CenterFunctor::orders_of(int obj) const {
  return coords[obj].module.orders;
}

std::vector<long long> CenterFunctor::apply(int m, const std::vector<long long>& z) const {
  const MorClass& mc = cat->mors[m];
  const std::vector<long long>& po = orders_of(mc.src);
  std::vector<long long> out(po.size(), 0);
  if (!in_r[mc.src] || !in_r[mc.dst]) return out;
  internal_check(static_cast<int>(z.size()) == rank_of(mc.dst), "value length mismatch");
  for (std::size_t j = 0; j < z.size(); ++j)
    for (std::size_t l = 0; l < out.size(); ++l) out[l] += z[j] * act[m][j][l];
  for (std::size_t l = 0; l < out.size(); ++l) out[l] = positive_mod(out[l], po[l]);
  return out;
}

CenterFunctor center_functor(const OrbitCategory& cat, const std::vector<Subgroup>& r) {
  const FusionSystem& f = *cat.fsys;
  const Group& g = *f.group();
  Interval iv = validate_interval(f, r);
  if (!iv.is_interval || !iv.f_invariant)
    throw ValidationError("center functor needs an F-invariant interval");

  CenterFunctor fun;
  fun.cat = &cat;
  fun.members = iv.members;
  // every fusion class of the interval must be represented among the objects
  for (const FClass& fc : f_classes(f, fun.members)) {
    if (cat.skeletal) {
      if (cat.object_index(fc.rep) < 0)
        throw ValidationError("interval class missing from the category objects");
    } else {
      for (const Subgroup& m : fc.members)
        if (cat.object_index(m) < 0)
          throw ValidationError("interval member missing from the category objects");
    }
  }

  int n = static_cast<int>(cat.objects.size());
  fun.in_r.resize(n);
  for (int i = 0; i < n; ++i) fun.in_r[i] = member_of(fun.members, cat.objects[i]) ? 1 : 0;
  for (int i = 0; i < n; ++i) fun.centers.push_back(center(cat.objects[i]));
  fun.coords.resize(n);
  for (int i = 0; i < n; ++i) {
    if (!fun.in_r[i]) continue;
    const std::vector<int>& zel = fun.centers[i].elems;
    auto add = [&g, &zel](int a, int b) {
      int prod = g.mul(zel[a], zel[b]);
      auto it = std::lower_bound(zel.begin(), zel.end(), prod);
      return static_cast<int>(it - zel.begin());
    };
    fun.coords[i] = coordinatize(static_cast<int>(zel.size()), add, f.prime());
  }

  fun.act.resize(cat.mors.size());
  for (std::size_t m = 0; m < cat.mors.size(); ++m) {
    const MorClass& mc = cat.mors[m];
    if (!fun.in_r[mc.src] || !fun.in_r[mc.dst]) continue;
    fun.act[m] = pullback_matrix(fun, mc.rep, mc.src, mc.dst);
  }

  // the pullback may not depend on which representative of the class we use
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!fun.in_r[i] || !fun.in_r[j]) continue;
      for (const FHom& h : f.hom_set(cat.objects[i], cat.objects[j])) {
        int m = cat.class_of(i, j, h);
        internal_check(m >= 0, "hom set member escapes its class");
        internal_check(pullback_matrix(fun, h, i, j) == fun.act[m],
                       "center pullback depends on the representative");
      }
    }

  // contravariant functoriality over the whole composition table; the middle
  // object of a factorization with both ends in the interval is forced into
  // the interval, which is what makes the cutoff functor well defined
  int total = static_cast<int>(cat.mors.size());
  for (int a = 0; a < total; ++a)
    for (int b = 0; b < total; ++b) {
      if (cat.comp[a][b] < 0) continue;
      const MorClass& ma = cat.mors[a];
      const MorClass& mb = cat.mors[b];
      if (!fun.in_r[ma.src] || !fun.in_r[mb.dst]) continue;
      internal_check(fun.in_r[ma.dst], "interval skips the middle of a factorization");
      const auto& fab = fun.act[cat.comp[a][b]];
      const auto& fa = fun.act[a];
      const auto& fb = fun.act[b];
      const std::vector<long long>& po = fun.orders_of(ma.src);
      int rt = fun.rank_of(mb.dst), rq = fun.rank_of(ma.dst), rp = fun.rank_of(ma.src);
      for (int row = 0; row < rt; ++row)
        for (int col = 0; col < rp; ++col) {
          long long s = 0;
          for (int u = 0; u < rq; ++u) s += fb[row][u] * fa[u][col];
          internal_check(positive_mod(s - fab[row][col], po[col]) == 0,
                         "center functor fails composition");
        }
    }
  return fun;
}

int CochainComplex::chain_index(int k, int src, const std::vector<int>& mors) const {
  if (k < 0 || k >= static_cast<int>(lookup.size())) return -1;
  const auto& table = lookup[k];
  auto it = (k == 0) ? table.find(std::vector<int>{src}) : table.find(mors);
  if (it == table.end()) return -1;
  if (k > 0 && cat->mors[mors[0]].src != src) return -1;
  return it->second;
}

CochainComplex build_cochain_complex(const OrbitCategory& cat, const CenterFunctor& fun,
                                     int degree_cap, long long cochain_cap) {
  if (degree_cap < 0) throw ValidationError("degree cap must be nonnegative");
  internal_check(fun.cat == &cat, "functor built over a different category");

  CochainComplex c;
  c.cat = &cat;
  c.fun = &fun;
  c.degree_cap = degree_cap;
  int n = static_cast<int>(cat.objects.size());
  c.chains.resize(degree_cap + 2);
  c.lookup.resize(degree_cap + 2);
  for (int i = 0; i < n; ++i) {
    if (!fun.in_r[i]) continue;
    c.lookup[0][{i}] = static_cast<int>(c.chains[0].size());
    c.chains[0].push_back(BarChain{i, {}});
  }
  // extend by non-identity classes out of the current tail; sources stay in
  // the interval, tails roam the whole category
  for (int k = 0; k <= degree_cap; ++k)
    for (const BarChain& ch : c.chains[k]) {
      int tail = ch.mors.empty() ? ch.src : cat.mors[ch.mors.back()].dst;
      for (int j = 0; j < n; ++j)
        for (int m : cat.hom[tail][j]) {
          if (cat.mors[m].identity) continue;
          BarChain nc;
          nc.src = ch.src;
          nc.mors = ch.mors;
          nc.mors.push_back(m);
          c.lookup[k + 1][nc.mors] = static_cast<int>(c.chains[k + 1].size());
          c.chains[k + 1].push_back(std::move(nc));
        }
    }

  c.offsets.resize(degree_cap + 2);
  c.orders.resize(degree_cap + 2);
  for (int k = 0; k <= degree_cap + 1; ++k) {
    long long off = 0;
    for (const BarChain& ch : c.chains[k]) {
      c.offsets[k].push_back(static_cast<int>(off));
      for (long long o : fun.orders_of(ch.src)) c.orders[k].push_back(o);
      off += fun.rank_of(ch.src);
      if (off > cochain_cap)
        throw CapExceeded("cochain coordinates exceed the cap at degree " + std::to_string(k));
      internal_check(off <= std::numeric_limits<int>::max(), "cochain offset overflow");
    }
  }

  c.diff.resize(degree_cap + 1);
  for (int k = 0; k <= degree_cap; ++k) {
    BigMat& d = c.diff[k];
    d.assign(c.orders[k].size(), std::vector<BigInt>(c.orders[k + 1].size(), 0));
    for (std::size_t cc = 0; cc < c.chains[k + 1].size(); ++cc) {
      const BarChain& ch = c.chains[k + 1][cc];
      int col0 = c.offsets[k + 1][cc];
      int rsrc = fun.rank_of(ch.src);
      const std::vector<int>& ms = ch.mors;
      int len = static_cast<int>(ms.size());
      // front face shortens the tuple and twists through the first entry; it
      // only contributes while the shortened source stays in the interval
      int mid = cat.mors[ms[0]].dst;
      if (fun.in_r[mid]) {
        std::vector<int> sub(ms.begin() + 1, ms.end());
        int fi = c.chain_index(k, mid, sub);
        internal_check(fi >= 0, "front face missing from the chain list");
        const auto& tw = fun.act[ms[0]];
        int rmid = fun.rank_of(mid);
        for (int j = 0; j < rmid; ++j)
          for (int l = 0; l < rsrc; ++l)
            if (tw[j][l] != 0) d[c.offsets[k][fi] + j][col0 + l] += tw[j][l];
      }
      // inner faces compose consecutive entries; identity composites drop out
      // of the normalized complex
      int sign = -1;
      for (int i = 1; i <= len - 1; ++i) {
        int comp = cat.compose(ms[i - 1], ms[i]);
        if (!cat.mors[comp].identity) {
          std::vector<int> sub;
          sub.reserve(ms.size() - 1);
          sub.insert(sub.end(), ms.begin(), ms.begin() + (i - 1));
          sub.push_back(comp);
          sub.insert(sub.end(), ms.begin() + i + 1, ms.end());
          int fi = c.chain_index(k, ch.src, sub);
          internal_check(fi >= 0, "inner face missing from the chain list");
          for (int j = 0; j < rsrc; ++j) d[c.offsets[k][fi] + j][col0 + j] += sign;
        }
        sign = -sign;
      }
      // back face drops the last entry
      std::vector<int> sub(ms.begin(), ms.end() - 1);
      int fi = c.chain_index(k, ch.src, sub);
      internal_check(fi >= 0, "back face missing from the chain list");
      for (int j = 0; j < rsrc; ++j) d[c.offsets[k][fi] + j][col0 + j] += sign;
    }
  }

  // the coboundary squares to zero modulo the coordinate orders
  for (int k = 0; k + 1 <= degree_cap; ++k) {
    const BigMat& d1 = c.diff[k];
    const BigMat& d2 = c.diff[k + 1];
    std::size_t n2 = c.orders[k + 2].size();
    std::vector<std::vector<std::pair<int, const BigInt*>>> nz(d2.size());
    for (std::size_t r = 0; r < d2.size(); ++r)
      for (std::size_t col = 0; col < n2; ++col)
        if (d2[r][col] != 0) nz[r].emplace_back(static_cast<int>(col), &d2[r][col]);
    std::vector<BigInt> acc(n2, 0);
    std::vector<int> touched;
    for (std::size_t r = 0; r < d1.size(); ++r) {
      for (std::size_t mid = 0; mid < d1[r].size(); ++mid) {
        const BigInt& a = d1[r][mid];
        if (a == 0) continue;
        for (const auto& [col, b] : nz[mid]) {
          if (acc[col] == 0) touched.push_back(col);
          acc[col] += a * (*b);
        }
      }
      for (int col : touched) {
        internal_check(acc[col] % c.orders[k + 2][col] == 0,
                       "coboundary squared misses the order lattice");
        acc[col] = 0;
      }
      touched.clear();
    }
  }
  return c;
}

Cochain zero_cochain(const CochainComplex& c, int degree) {
  if (degree < 0 || degree > c.degree_cap + 1) throw ValidationError("degree out of range");
  return Cochain{degree, std::vector<long long>(c.orders[degree].size(), 0)};
}

Cochain coboundary(const CochainComplex& c, const Cochain& t) {
  if (t.degree < 0 || t.degree > c.degree_cap)
    throw ValidationError("no differential at this degree");
  if (static_cast<long long>(t.v.size()) != c.dim(t.degree))
    throw ValidationError("cochain length mismatch");
  const BigMat& d = c.diff[t.degree];
  const std::vector<long long>& po = c.orders[t.degree + 1];
  std::vector<BigInt> acc(po.size(), 0);
  for (std::size_t r = 0; r < t.v.size(); ++r) {
    if (t.v[r] == 0) continue;
    for (std::size_t col = 0; col < acc.size(); ++col)
      if (d[r][col] != 0) acc[col] += d[r][col] * t.v[r];
  }
  std::vector<long long> out(po.size(), 0);
  for (std::size_t col = 0; col < acc.size(); ++col) {
    BigInt s = acc[col] % po[col];
    if (s < 0) s += po[col];
    out[col] = s.convert_to<long long>();
  }
  return Cochain{t.degree + 1, std::move(out)};
}

bool is_cocycle(const CochainComplex& c, const Cochain& t) {
  return is_zero_vec(coboundary(c, t).v);
}

std::vector<long long> cochain_value(const CochainComplex& c, const Cochain& t, int src,
                                     const std::vector<int>& mors) {
  if (static_cast<int>(mors.size()) != t.degree)
    throw ValidationError("tuple length does not match the degree");
  if (static_cast<long long>(t.v.size()) != c.dim(t.degree))
    throw ValidationError("cochain length mismatch");
  std::vector<long long> out(c.fun->rank_of(src), 0);
  int idx = c.chain_index(t.degree, src, mors);
  if (idx < 0) return out;
  int off = c.offsets[t.degree][idx];
  const std::vector<long long>& po = c.fun->orders_of(src);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = positive_mod(t.v[off + j], po[j]);
  return out;
}

long long CohomologyResult::order() const {
  long long o = 1;
  for (long long d : invariant_factors) o *= d;
  return o;
}

std::vector<long long> CohomologyResult::classify(const Cochain& t) const {
  if (t.degree != k) throw ValidationError("cocycle degree mismatch");
  if (invariant_factors.empty()) return {};
  internal_check(t.v.size() == degree_orders.size(), "cochain length mismatch");
  std::vector<BigInt> v(t.v.size());
  for (std::size_t j = 0; j < t.v.size(); ++j) v[j] = positive_mod(t.v[j], degree_orders[j]);
  auto sol = ksolver->solve(v);
  if (!sol) throw ValidationError("not a cocycle of this group");
  std::vector<long long> out;
  for (std::size_t u = 0; u < factor_cols.size(); ++u) {
    BigInt s = 0;
    for (std::size_t j = 0; j < sol->size(); ++j) s += (*sol)[j] * tmat[j][factor_cols[u]];
    s %= invariant_factors[u];
    if (s < 0) s += invariant_factors[u];
    out.push_back(s.convert_to<long long>());
  }
  return out;
}

CohomologyResult higher_limit(const CochainComplex& c, int k) {
  if (k < 0 || k > c.degree_cap) throw ValidationError("degree out of range for this complex");
  CohomologyResult res;
  res.k = k;
  for (int d = 0; d <= k + 1; ++d) res.cochain_dims.push_back(c.dim(d));
  res.degree_orders = c.orders[k];
  long long nk = c.dim(k);
  long long nk1 = c.dim(k + 1);
  if (nk == 0) return res;

  // cocycle lattice: project {(t, y) : t * diff + y * diag(orders) = 0} to t.
  // The projection is a basis because the second block is determined by the
  // first, and the lattice has full rank since it contains diag(orders).
  if (nk1 == 0) {
    res.kbasis = bigmat_identity(static_cast<int>(nk));
  } else {
    BigMat stacked = c.diff[k];
    for (long long j = 0; j < nk1; ++j) {
      std::vector<BigInt> row(nk1, 0);
      row[j] = c.orders[k + 1][j];
      stacked.push_back(std::move(row));
    }
    BigMat full = kernel_basis(stacked);
    for (const auto& row : full)
      res.kbasis.emplace_back(row.begin(), row.begin() + nk);
  }
  internal_check(static_cast<long long>(res.kbasis.size()) == nk,
                 "cocycle lattice has the wrong rank");
  res.ksolver = std::make_shared<LeftSolver>(res.kbasis);

  // relations: coboundaries from below plus the coordinate orders, rewritten
  // in cocycle coordinates
  BigMat rel;
  auto push_relation = [&](const std::vector<BigInt>& row) {
    auto sol = res.ksolver->solve(row);
    internal_check(sol.has_value(), "relation outside the cocycle lattice");
    rel.push_back(*sol);
  };
  if (k > 0)
    for (const auto& row : c.diff[k - 1]) push_relation(row);
  for (long long j = 0; j < nk; ++j) {
    std::vector<BigInt> row(nk, 0);
    row[j] = c.orders[k][j];
    push_relation(row);
  }
  SmithResult sf = smith_normal_form(rel, kNeedT | kNeedTinv);
  internal_check(sf.rank == static_cast<int>(nk), "limit group is not finite");
  res.tmat = sf.t;
  for (int i = 0; i < sf.rank; ++i) {
    BigInt di = sf.d[i][i];
    if (di < 0) di = -di;
    if (di == 1) continue;
    res.factor_cols.push_back(i);
    res.invariant_factors.push_back(di.convert_to<long long>());
    std::vector<long long> w(nk, 0);
    for (long long j = 0; j < nk; ++j) {
      BigInt s = 0;
      for (long long u = 0; u < nk; ++u) s += sf.tinv[i][u] * res.kbasis[u][j];
      s %= c.orders[k][j];
      if (s < 0) s += c.orders[k][j];
      w[j] = s.convert_to<long long>();
    }
    res.witnesses.push_back(Cochain{k, std::move(w)});
  }

  // verify the witnesses honestly: cocycles, not coboundaries, of the claimed
  // order, and classified as the unit of their own factor
  if (!res.witnesses.empty()) {
    BigMat bound;
    if (k > 0) bound = c.diff[k - 1];
    for (long long j = 0; j < nk; ++j) {
      std::vector<BigInt> row(nk, 0);
      row[j] = c.orders[k][j];
      bound.push_back(std::move(row));
    }
    LeftSolver bsolver(std::move(bound));
    for (std::size_t w = 0; w < res.witnesses.size(); ++w) {
      const Cochain& t = res.witnesses[w];
      internal_check(is_cocycle(c, t), "witness is not a cocycle");
      std::vector<BigInt> v(t.v.begin(), t.v.end());
      internal_check(!bsolver.solve(v).has_value(), "witness class is trivial");
      std::vector<BigInt> nv(v);
      for (auto& x : nv) x *= res.invariant_factors[w];
      internal_check(bsolver.solve(nv).has_value(), "witness order exceeds its factor");
      std::vector<long long> cls = res.classify(t);
      for (std::size_t u = 0; u < cls.size(); ++u)
        internal_check(cls[u] == (u == w ? 1 : 0), "witness classifies off its own factor");
    }
  }
  return res;
}

CohomologyResult higher_limit(const FusionSystem& f, const std::vector<Subgroup>& r, int k,
                              bool skeletal, long long cochain_cap) {
  if (k < 0) throw ValidationError("degree must be nonnegative");
  std::vector<Subgroup> up = upward_closure(f, r);
  OrbitCategory cat = build_orbit_category(f, up, skeletal);
  CenterFunctor fun = center_functor(cat, r);
  CochainComplex c = build_cochain_complex(cat, fun, k, cochain_cap);
  return higher_limit(c, k);
}

Cochain inclusion_normalize(const CochainComplex& c, const Cochain& t) {
  const OrbitCategory& cat = *c.cat;
  const CenterFunctor& fun = *c.fun;
  const FusionSystem& f = *cat.fsys;
  if (t.degree != 1) throw ValidationError("only 1-cochains are inclusion normalized");
  if (static_cast<long long>(t.v.size()) != c.dim(1))
    throw ValidationError("cochain length mismatch");
  if (!is_cocycle(c, t)) throw ValidationError("inclusion normalization needs a cocycle");
  int si = cat.object_index(f.sylow());
  if (si < 0 || !fun.in_r[si]) throw ValidationError("the interval must contain S");

  // u(P) = value of t on the class of the inclusion P -> S; adding du clears
  // every inclusion class, by the cocycle identity on P -> Q -> S
  std::vector<long long> u(c.orders[0].size(), 0);
  for (std::size_t ci = 0; ci < c.chains[0].size(); ++ci) {
    int obj = c.chains[0][ci].src;
    if (obj == si) continue;
    FHom incl;
    incl.dom = cat.objects[obj].elems;
    incl.image = incl.dom;
    incl.witness = 0;
    int m = cat.class_of(obj, si, incl);
    internal_check(m >= 0, "inclusion class missing from the category");
    std::vector<long long> val = cochain_value(c, t, obj, {m});
    for (std::size_t j = 0; j < val.size(); ++j) u[c.offsets[0][ci] + j] = val[j];
  }
  Cochain du = coboundary(c, Cochain{0, std::move(u)});
  Cochain out{1, std::vector<long long>(t.v.size(), 0)};
  for (std::size_t j = 0; j < t.v.size(); ++j)
    out.v[j] = positive_mod(t.v[j] + du.v[j], c.orders[1][j]);

  // check the result is blind to every inclusion between interval objects
  int n = static_cast<int>(cat.objects.size());
  for (int i = 0; i < n; ++i) {
    if (!fun.in_r[i]) continue;
    for (int j = 0; j < n; ++j) {
      if (i == j || !cat.objects[j].contains_subgroup(cat.objects[i])) continue;
      internal_check(fun.in_r[j], "interval not closed upward between members");
      FHom incl;
      incl.dom = cat.objects[i].elems;
      incl.image = incl.dom;
      incl.witness = 0;
      int m = cat.class_of(i, j, incl);
      internal_check(m >= 0, "inclusion class missing from the category");
      internal_check(is_zero_vec(cochain_value(c, out, i, {m})),
                     "inclusion normalization failed");
    }
  }
  return out;
}

Locality locality(const FusionSystem& f, const std::vector<Subgroup>& q) {
  Interval iv = validate_interval(f, q);
  Locality loc;
  loc.members = iv.members;
  const Group& g = *f.group();
  int n = static_cast<int>(g.order());
  for (int e = 0; e < n; ++e) {
    for (const Subgroup& p : loc.members) {
      if (member_of(loc.members, conjugate_subgroup(p, e))) {
        loc.gamma_star.push_back(e);
        break;
      }
    }
  }
  return loc;
}

Submodule fixed_points_of_set(const Action& a, const std::vector<int>& elems) {
  std::vector<PAbelianGroup::Vec> fixed;
  for (const PAbelianGroup::Vec& v : a.module.all_elements()) {
    bool ok = true;
    for (int e : elems)
      if (!a.fixes(v, e)) {
        ok = false;
        break;
      }
    if (ok) fixed.push_back(v);
  }
  return Submodule{a.module, std::move(fixed)};
}

Submodule fixed_points_on_locality(const GeneralSetup& setup, const Locality& loc) {
  return fixed_points_of_set(setup.act.act, loc.gamma_star);
}

int RigidMap::apply(int g) const {
  auto it = std::lower_bound(loc.gamma_star.begin(), loc.gamma_star.end(), g);
  if (it == loc.gamma_star.end() || *it != g)
    throw ValidationError("element outside the locality");
  return image[it - loc.gamma_star.begin()];
}

RigidMap rigid_map(const CochainComplex& c, const Cochain& t) {
  const OrbitCategory& cat = *c.cat;
  const CenterFunctor& fun = *c.fun;
  const FusionSystem& f = *cat.fsys;
  const Group& g = *f.group();
  if (t.degree != 1) throw ValidationError("rigid maps come from 1-cochains");
  if (!is_cocycle(c, t)) throw ValidationError("rigid maps need a cocycle");
  Interval iv = validate_interval(f, fun.members);
  if (!iv.contains_sylow || !iv.overgroup_closed)
    throw ValidationError("rigid maps need an overgroup closed interval containing S");
  int si = cat.object_index(f.sylow());
  internal_check(si >= 0, "S missing from the category");
  // the construction reads values on classes of conjugation maps, which only
  // make sense when t ignores how objects sit inside each other
  int n = static_cast<int>(cat.objects.size());
  for (int i = 0; i < n; ++i) {
    if (!fun.in_r[i] || i == si) continue;
    FHom incl;
    incl.dom = cat.objects[i].elems;
    incl.image = incl.dom;
    incl.witness = 0;
    int m = cat.class_of(i, si, incl);
    internal_check(m >= 0, "inclusion class missing from the category");
    if (!is_zero_vec(cochain_value(c, t, i, {m})))
      throw ValidationError("cocycle is not inclusion normalized");
  }

  RigidMap tau;
  tau.loc = locality(f, fun.members);
  for (int e : tau.loc.gamma_star) {
    // the largest chunk of S moved back into S by e contains a member, so it
    // is an interval member and must be an object
    std::vector<int> dom;
    for (int x : f.sylow().elems)
      if (f.sylow().contains(g.conj(x, e))) dom.push_back(x);
    Subgroup pg{f.group(), dom};
    int pi = cat.object_index(pg);
    if (pi < 0)
      throw ValidationError(
          "S cap S^g is not an object; build the category with skeletal = false");
    internal_check(fun.in_r[pi], "locality produced a subgroup outside the interval");
    FHom raw;
    raw.dom = dom;
    raw.witness = e;
    raw.image.reserve(dom.size());
    for (int x : dom) raw.image.push_back(g.conj(x, e));
    int m = cat.class_of(pi, si, raw);
    internal_check(m >= 0, "conjugation map escapes the hom set");
    std::vector<long long> val = cochain_value(c, t, pi, {m});
    int zid = fun.coords[pi].id_of(val);
    internal_check(zid >= 0, "cocycle value outside its coordinate system");
    int z = fun.centers[pi].elems[zid];
    tau.image.push_back(g.mul(z, e));
  }

  std::vector<int> sorted_img = tau.image;
  std::sort(sorted_img.begin(), sorted_img.end());
  sorted_img.erase(std::unique(sorted_img.begin(), sorted_img.end()), sorted_img.end());
  internal_check(sorted_img == tau.loc.gamma_star, "rigid map is not a bijection");
  for (int x : f.sylow().elems) internal_check(tau.apply(x) == x, "rigid map moves S");
  return tau;
}

bool rigid_map_multiplicative(const CochainComplex& c, const RigidMap& tau, int max_len) {
  const FusionSystem& f = *c.cat->fsys;
  const Group& g = *f.group();
  if (max_len < 2) return true;
  const std::vector<int>& gs = tau.loc.gamma_star;
  const std::vector<Subgroup>& mem = tau.loc.members;
  if (mem.size() > 64) throw CapExceeded("admissibility masks support at most 64 members");
  int n = static_cast<int>(g.order());
  // bit q of mask[e]: conjugation by e keeps member q inside the collection
  std::vector<std::uint64_t> mask(n, 0);
  for (int e = 0; e < n; ++e)
    for (std::size_t q = 0; q < mem.size(); ++q)
      if (member_of(mem, conjugate_subgroup(mem[q], e))) mask[e] |= 1ull << q;
  std::vector<int> tab(n, -1);
  for (std::size_t i = 0; i < gs.size(); ++i) tab[gs[i]] = tau.image[i];

  // a chain is admissible when one member survives under all partial products
  for (int a : gs) {
    for (int b : gs) {
      int ab = g.mul(a, b);
      std::uint64_t m2 = mask[a] & mask[ab];
      if (m2 == 0) continue;
      if (tab[ab] != g.mul(tab[a], tab[b])) return false;
      if (max_len < 3) continue;
      for (int e : gs) {
        int abe = g.mul(ab, e);
        if ((m2 & mask[abe]) == 0) continue;
        if (tab[abe] != g.mul(g.mul(tab[a], tab[b]), tab[e])) return false;
      }
    }
  }
  return true;
}

int local_conjugator(const CochainComplex& c, const RigidMap& tau, const Subgroup& q) {
  const FusionSystem& f = *c.cat->fsys;
  const Group& g = *f.group();
  if (!member_of(tau.loc.members, q))
    throw ValidationError("subgroup is not a member of the collection");
  if (!f.is_fully_normalized(q))
    throw ValidationError("local conjugators are searched at fully normalized members");
  Subgroup ngq = normalizer(full_subgroup(f.group()), q);
  for (int e : ngq.elems)
    internal_check(std::binary_search(tau.loc.gamma_star.begin(), tau.loc.gamma_star.end(), e),
                   "normalizer escapes the locality");
  Subgroup znsq = center(f.normalizer_in_sylow(q));
  for (int z : znsq.elems) {
    bool ok = true;
    for (int e : ngq.elems)
      if (tau.apply(e) != g.conj(e, z)) {
        ok = false;
        break;
      }
    if (ok) return z;
  }
  throw InternalCheckError("no local conjugator at a fully normalized member");
}

namespace {

LesReport verify_les_impl(const FusionSystem& f, std::vector<Subgroup> qcoll,
                          std::vector<Subgroup> rcoll, int k_max, long long cochain_cap,
                          const GeneralSetup* setup) {
  if (k_max < 1) throw ValidationError("the exact sequence needs k_max >= 1");
  Interval qiv = validate_interval(f, std::move(qcoll));
  Interval riv = validate_interval(f, std::move(rcoll));
  if (!qiv.is_interval || !qiv.f_invariant)
    throw ValidationError("q must be an F-invariant interval");
  if (!riv.is_interval || !riv.f_invariant)
    throw ValidationError("r must be an F-invariant interval");
  for (const Subgroup& p : qiv.members)
    if (member_of(riv.members, p)) throw ValidationError("the intervals overlap");
  std::vector<Subgroup> uni = qiv.members;
  uni.insert(uni.end(), riv.members.begin(), riv.members.end());
  Interval uiv = validate_interval(f, std::move(uni));
  if (!uiv.is_interval || !uiv.f_invariant)
    throw ValidationError("the union is not an F-invariant interval");
  for (const Subgroup& qm : qiv.members)
    for (const Subgroup& rm : riv.members)
      if (rm.contains_subgroup(qm))
        throw ValidationError("a member of q lies inside a member of r");

  // one category over the union's upward closure carries all three functors
  std::vector<Subgroup> up = upward_closure(f, uiv.members);
  OrbitCategory cat = build_orbit_category(f, up, true);
  CenterFunctor fr = center_functor(cat, riv.members);
  CenterFunctor fu = center_functor(cat, uiv.members);
  CenterFunctor fq = center_functor(cat, qiv.members);
  for (std::size_t i = 0; i < cat.objects.size(); ++i) {
    if (fr.in_r[i]) {
      internal_check(fr.coords[i].basis_ids == fu.coords[i].basis_ids &&
                         fr.coords[i].module.orders == fu.coords[i].module.orders,
                     "coordinate systems diverge between functors");
    }
    if (fq.in_r[i]) {
      internal_check(fq.coords[i].basis_ids == fu.coords[i].basis_ids &&
                         fq.coords[i].module.orders == fu.coords[i].module.orders,
                     "coordinate systems diverge between functors");
    }
  }
  CochainComplex cr = build_cochain_complex(cat, fr, k_max, cochain_cap);
  CochainComplex cu = build_cochain_complex(cat, fu, k_max, cochain_cap);
  CochainComplex cq = build_cochain_complex(cat, fq, k_max, cochain_cap);

  LesReport rep;
  std::vector<CohomologyResult> lr, lu, lq;
  for (int k = 0; k <= k_max; ++k) {
    lr.push_back(higher_limit(cr, k));
    lu.push_back(higher_limit(cu, k));
    lq.push_back(higher_limit(cq, k));
    rep.orders_r.push_back(lr.back().order());
    rep.orders_union.push_back(lu.back().order());
    rep.orders_q.push_back(lq.back().order());
  }

  // extension by zero into the union, restriction onto the q part, and the
  // connecting map through the union differential
  auto iota = [&](int k, const Cochain& t) {
    Cochain out = zero_cochain(cu, k);
    for (std::size_t ci = 0; ci < cr.chains[k].size(); ++ci) {
      const BarChain& ch = cr.chains[k][ci];
      int ui = cu.chain_index(k, ch.src, ch.mors);
      internal_check(ui >= 0, "r-chain missing from the union complex");
      int rank = fr.rank_of(ch.src);
      for (int j = 0; j < rank; ++j)
        out.v[cu.offsets[k][ui] + j] = t.v[cr.offsets[k][ci] + j];
    }
    return out;
  };
  auto proj = [&](int k, const Cochain& t) {
    Cochain out = zero_cochain(cq, k);
    for (std::size_t ci = 0; ci < cq.chains[k].size(); ++ci) {
      const BarChain& ch = cq.chains[k][ci];
      int ui = cu.chain_index(k, ch.src, ch.mors);
      internal_check(ui >= 0, "q-chain missing from the union complex");
      int rank = fq.rank_of(ch.src);
      for (int j = 0; j < rank; ++j)
        out.v[cq.offsets[k][ci] + j] = t.v[cu.offsets[k][ui] + j];
    }
    return out;
  };
  auto connecting = [&](int k, const Cochain& t) {
    internal_check(is_cocycle(cq, t), "connecting map fed a non-cocycle");
    Cochain lift = zero_cochain(cu, k);
    for (std::size_t ci = 0; ci < cq.chains[k].size(); ++ci) {
      const BarChain& ch = cq.chains[k][ci];
      int ui = cu.chain_index(k, ch.src, ch.mors);
      internal_check(ui >= 0, "q-chain missing from the union complex");
      int rank = fq.rank_of(ch.src);
      for (int j = 0; j < rank; ++j)
        lift.v[cu.offsets[k][ui] + j] = t.v[cq.offsets[k][ci] + j];
    }
    Cochain du = coboundary(cu, lift);
    Cochain out = zero_cochain(cr, k + 1);
    for (std::size_t ci = 0; ci < cu.chains[k + 1].size(); ++ci) {
      const BarChain& ch = cu.chains[k + 1][ci];
      int rank = fu.rank_of(ch.src);
      int ri = cr.chain_index(k + 1, ch.src, ch.mors);
      if (ri >= 0) {
        for (int j = 0; j < rank; ++j)
          out.v[cr.offsets[k + 1][ri] + j] = du.v[cu.offsets[k + 1][ci] + j];
      } else {
        for (int j = 0; j < rank; ++j)
          internal_check(du.v[cu.offsets[k + 1][ci] + j] == 0,
                         "connecting image leaks outside r");
      }
    }
    internal_check(is_cocycle(cr, out), "connecting image is not a cocycle");
    return out;
  };

  // both transfers commute with the differentials
  for (int k = 0; k < k_max; ++k) {
    for (long long u = 0; u < cr.dim(k); ++u) {
      Cochain e = zero_cochain(cr, k);
      e.v[u] = 1;
      internal_check(iota(k + 1, coboundary(cr, e)).v == coboundary(cu, iota(k, e)).v,
                     "zero extension is not a chain map");
    }
    for (long long u = 0; u < cu.dim(k); ++u) {
      Cochain e = zero_cochain(cu, k);
      e.v[u] = 1;
      internal_check(proj(k + 1, coboundary(cu, e)).v == coboundary(cq, proj(k, e)).v,
                     "restriction is not a chain map");
    }
  }

  struct Node {
    std::string label;
    const CohomologyResult* grp;
  };
  std::vector<Node> nodes;
  std::vector<std::function<std::vector<long long>(const std::vector<long long>&)>> maps;
  for (int k = 0; k <= k_max; ++k) {
    nodes.push_back({"L^" + std::to_string(k) + "(R)", &lr[k]});
    nodes.push_back({"L^" + std::to_string(k) + "(Q+R)", &lu[k]});
    nodes.push_back({"L^" + std::to_string(k) + "(Q)", &lq[k]});
    maps.push_back([&, k](const std::vector<long long>& tup) {
      return lu[k].classify(iota(k, rep_of(cr, lr[k], tup)));
    });
    maps.push_back([&, k](const std::vector<long long>& tup) {
      return lq[k].classify(proj(k, rep_of(cu, lu[k], tup)));
    });
    if (k < k_max)
      maps.push_back([&, k](const std::vector<long long>& tup) {
        return lr[k + 1].classify(connecting(k, rep_of(cq, lq[k], tup)));
      });
  }

  // element-by-element exactness: at each node with maps on both sides, the
  // incoming image must equal the outgoing kernel; the sequence starts at 0
  std::set<std::vector<long long>> incoming;
  incoming.insert(std::vector<long long>(nodes[0].grp->invariant_factors.size(), 0));
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    std::set<std::vector<long long>> kernel, image_out;
    for (const auto& tup : all_tuples(nodes[i].grp->invariant_factors)) {
      std::vector<long long> img = maps[i](tup);
      image_out.insert(img);
      if (is_zero_vec(img)) kernel.insert(tup);
    }
    LesNode nd;
    nd.at = nodes[i].label;
    nd.image_order = static_cast<long long>(incoming.size());
    nd.kernel_order = static_cast<long long>(kernel.size());
    nd.exact = (incoming == kernel);
    rep.exact = rep.exact && nd.exact;
    rep.nodes.push_back(nd);
    incoming = std::move(image_out);
  }

  if (setup != nullptr) {
    std::vector<Subgroup> above = interval_above(f, setup->y);
    std::sort(above.begin(), above.end(), Subgroup::less);
    if (uiv.members != above)
      throw ValidationError("the union must be the full interval above Y");
    // past the connecting window the q and r limits match with a degree shift
    for (int k = 2; k <= k_max; ++k) {
      rep.shift_checked = true;
      if (rep.orders_q[k - 1] != rep.orders_r[k]) rep.shift_ok = false;
    }
    // fixed points on the locality of q extend the ambient fixed points by
    // the first limit over r
    if (qiv.contains_sylow) {
      rep.ses_checked = true;
      Locality loc = locality(f, qiv.members);
      rep.cd_gamma = fixed_points(setup->act.act, full_subgroup(setup->gamma)).order();
      rep.cd_gamma_star = fixed_points_on_locality(*setup, loc).order();
      rep.ses_ok = (rep.cd_gamma_star == rep.cd_gamma * rep.orders_r[1]);
    }
  }
  return rep;
}

}  // namespace

LesReport verify_les(const FusionSystem& f, const std::vector<Subgroup>& qcoll,
                     const std::vector<Subgroup>& rcoll, int k_max, long long cochain_cap) {
  return verify_les_impl(f, qcoll, rcoll, k_max, cochain_cap, nullptr);
}

LesReport verify_les(const GeneralSetup& setup, const std::vector<Subgroup>& qcoll,
                     const std::vector<Subgroup>& rcoll, int k_max, long long cochain_cap) {
  FusionSystem f(setup.gamma, setup.sylow);
  return verify_les_impl(f, qcoll, rcoll, k_max, cochain_cap, &setup);
}

bool restriction_injectivity_check(const GeneralSetup& setup, const Subgroup& gamma0,
                                   const std::vector<Subgroup>& qcoll, long long cochain_cap) {
  const GroupPtr& big = setup.gamma;
  FusionSystem f(big, setup.sylow);
  Interval qiv = validate_interval(f, qcoll);
  if (!qiv.is_interval || !qiv.f_invariant || !qiv.contains_sylow)
    throw ValidationError("q must be an F-invariant interval containing S");
  if (!is_normal_in(full_subgroup(big), gamma0))
    throw ValidationError("gamma0 must be normal in gamma");
  if (!gamma0.contains_subgroup(setup.y)) throw ValidationError("gamma0 must contain Y");
  for (const Subgroup& qm : qiv.members)
    if (!member_of(qiv.members, intersect(qm, gamma0)))
      throw ValidationError("q is not closed under meeting gamma0");

  // gamma0 regenerated as a standalone group; indices translate monotonically
  // because both element lists are sorted the same way
  std::vector<Perm> gens;
  for (int idx : generating_set(gamma0)) gens.push_back(big->elem(idx));
  GroupPtr g0 = Group::generate(big->degree(), gens);
  internal_check(g0->order() == gamma0.order(), "regenerated subgroup has the wrong order");
  std::vector<int> to_big(g0->order());
  for (int i = 0; i < static_cast<int>(g0->order()); ++i) {
    to_big[i] = big->index_of(g0->elem(i));
    internal_check(to_big[i] >= 0, "regenerated element missing upstairs");
    if (i > 0) internal_check(to_big[i] > to_big[i - 1], "element order not preserved");
  }
  auto down_sub = [&](const Subgroup& s) {
    std::vector<int> e;
    e.reserve(s.elems.size());
    for (int x : s.elems) {
      int d = g0->index_of(big->elem(x));
      internal_check(d >= 0, "subgroup escapes gamma0");
      e.push_back(d);
    }
    std::sort(e.begin(), e.end());
    return Subgroup{g0, e};
  };
  auto up_sub = [&](const Subgroup& s) {
    std::vector<int> e;
    e.reserve(s.elems.size());
    for (int x : s.elems) e.push_back(to_big[x]);
    std::sort(e.begin(), e.end());
    return Subgroup{big, e};
  };

  Subgroup s0_in_big = intersect(setup.sylow, gamma0);
  internal_check((gamma0.order() / s0_in_big.order()) % f.prime() != 0,
                 "S meet gamma0 is not Sylow in gamma0");
  FusionSystem f0(g0, down_sub(s0_in_big));
  std::vector<Subgroup> q0;
  for (const Subgroup& qm : qiv.members)
    if (gamma0.contains_subgroup(qm)) q0.push_back(down_sub(qm));
  std::sort(q0.begin(), q0.end(), Subgroup::less);

  // full categories on both sides so chains correspond entry by entry
  OrbitCategory catf = build_orbit_category(f, qiv.members, false);
  CenterFunctor ff = center_functor(catf, qiv.members);
  CochainComplex cf = build_cochain_complex(catf, ff, 2, cochain_cap);
  CohomologyResult l1 = higher_limit(cf, 1);

  OrbitCategory cat0 = build_orbit_category(f0, upward_closure(f0, q0), false);
  CenterFunctor f0fun = center_functor(cat0, q0);
  CochainComplex c0 = build_cochain_complex(cat0, f0fun, 2, cochain_cap);
  CohomologyResult l10 = higher_limit(c0, 1);

  // per-degree table: downstairs chain -> upstairs chain
  std::vector<std::vector<int>> table(3);
  for (int k = 0; k <= 2; ++k)
    for (const BarChain& ch : c0.chains[k]) {
      int isrc = catf.object_index(up_sub(cat0.objects[ch.src]));
      internal_check(isrc >= 0, "downstairs object missing upstairs");
      internal_check(f0fun.coords[ch.src].basis_ids == ff.coords[isrc].basis_ids &&
                         f0fun.coords[ch.src].module.orders == ff.coords[isrc].module.orders,
                     "coordinate systems diverge across the restriction");
      std::vector<int> msf;
      for (int m : ch.mors) {
        const MorClass& mc = cat0.mors[m];
        int si = catf.object_index(up_sub(cat0.objects[mc.src]));
        int di = catf.object_index(up_sub(cat0.objects[mc.dst]));
        internal_check(si >= 0 && di >= 0, "downstairs object missing upstairs");
        FHom raw;
        raw.dom.reserve(mc.rep.dom.size());
        raw.image.reserve(mc.rep.image.size());
        for (int x : mc.rep.dom) raw.dom.push_back(to_big[x]);
        for (int x : mc.rep.image) raw.image.push_back(to_big[x]);
        raw.witness = to_big[mc.rep.witness];
        int mf = catf.class_of(si, di, raw);
        internal_check(mf >= 0, "downstairs class missing upstairs");
        internal_check(!catf.mors[mf].identity, "non-identity class collapses upstairs");
        msf.push_back(mf);
      }
      int fidx = cf.chain_index(k, isrc, msf);
      internal_check(fidx >= 0, "translated chain missing upstairs");
      table[k].push_back(fidx);
    }
  auto res_map = [&](int k, const Cochain& t) {
    Cochain out = zero_cochain(c0, k);
    for (std::size_t ci = 0; ci < c0.chains[k].size(); ++ci) {
      int rank = f0fun.rank_of(c0.chains[k][ci].src);
      for (int j = 0; j < rank; ++j)
        out.v[c0.offsets[k][ci] + j] = t.v[cf.offsets[k][table[k][ci]] + j];
    }
    return out;
  };
  for (int k = 0; k <= 1; ++k)
    for (long long u = 0; u < cf.dim(k); ++u) {
      Cochain e = zero_cochain(cf, k);
      e.v[u] = 1;
      internal_check(res_map(k + 1, coboundary(cf, e)).v == coboundary(c0, res_map(k, e)).v,
                     "restriction is not a chain map");
    }

  // restriction must kill no class but zero
  bool injective = true;
  for (const auto& tup : all_tuples(l1.invariant_factors)) {
    std::vector<long long> img = l10.classify(res_map(1, rep_of(cf, l1, tup)));
    if (is_zero_vec(img) && !is_zero_vec(tup)) injective = false;
  }
  return injective;
}

}  // namespace fuslim
