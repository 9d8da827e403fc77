#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "fuslim/errors.hpp"
#include "fuslim/group.hpp"

using namespace fuslim;

namespace {

GroupPtr make_group(int degree, std::initializer_list<const char*> cycles) {
  std::vector<Perm> gens;
  for (const char* c : cycles) gens.push_back(Perm::from_cycles(degree, c));
  return Group::generate(degree, gens);
}

GroupPtr sym(int n) {
  if (n == 1) return Group::generate(1, {});
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = (i + 1) % n;
  return Group::generate(n, {Perm::from_cycles(n, "(1 2)"), Perm(std::move(img))});
}

bool is_even(const Perm& p) {
  int transpositions = 0;
  for (int len : p.cycle_type()) transpositions += len - 1;
  return transpositions % 2 == 0;
}

// Slow reference normalizer: full element scan, no coset pruning.
Subgroup naive_normalizer(const Subgroup& g, const Subgroup& p) {
  std::vector<int> out;
  for (int h : g.elems) {
    Subgroup c = conjugate_subgroup(p, h);
    if (c.elems == p.elems) out.push_back(h);
  }
  return Subgroup{g.parent, out};
}

Subgroup naive_centralizer(const Subgroup& g, const Subgroup& x) {
  std::vector<int> out;
  for (int h : g.elems) {
    bool ok = true;
    for (int t : x.elems)
      if (g.parent->mul(h, t) != g.parent->mul(t, h)) ok = false;
    if (ok) out.push_back(h);
  }
  return Subgroup{g.parent, out};
}

std::vector<int> naive_transporter(const Subgroup& g, const Subgroup& p,
                                   const Subgroup& q) {
  std::vector<int> out;
  for (int h : g.elems) {
    bool ok = true;
    for (int t : p.elems)
      if (!q.contains(g.parent->conj(t, h))) ok = false;
    if (ok) out.push_back(h);
  }
  return out;
}

// Independent subgroup-lattice oracle via cyclic extension: every subgroup of
// a p-group sits above a normal maximal subgroup of index p, so level k+1 is
// reachable from level k by adjoining x in N_S(H) with x^p in H.
std::vector<Subgroup> cyclic_extension_subgroups(const Subgroup& s, int p) {
  std::set<std::vector<int>> known;
  std::vector<Subgroup> all;
  std::vector<Subgroup> level{trivial_subgroup(s.parent)};
  known.insert(level[0].elems);
  all.push_back(level[0]);
  while (!level.empty()) {
    std::vector<Subgroup> next;
    for (const Subgroup& h : level) {
      Subgroup n = normalizer(s, h);
      for (int x : n.elems) {
        if (h.contains(x)) continue;
        int xp = x;
        for (int i = 1; i < p; ++i) xp = s.parent->mul(xp, x);
        if (!h.contains(xp)) continue;
        std::vector<int> gens = h.elems;
        gens.push_back(x);
        Subgroup k = subgroup_closure(s.parent, gens);
        if (known.insert(k.elems).second) {
          next.push_back(k);
          all.push_back(k);
        }
      }
    }
    level = std::move(next);
  }
  return all;
}

}  // namespace

TEST_CASE("perm basics and cycle parsing") {
  Perm a = Perm::from_cycles(5, "(1 2 3)(4 5)");
  CHECK(a.cycle_string() == "(1 2 3)(4 5)");
  CHECK(a.order() == 6);
  CHECK(a.cycle_type() == std::vector<int>{2, 3});
  CHECK(a.then(a.inverse()).is_identity());

  // right-handed composition: apply left factor first
  Perm t12 = Perm::from_cycles(3, "(1 2)");
  Perm t23 = Perm::from_cycles(3, "(2 3)");
  CHECK(t12.then(t23)[0] == 2);  // 1 -> 2 -> 3

  CHECK(Perm::from_cycles(4, "()").is_identity());
  CHECK(Perm::from_cycles(4, "").is_identity());
  CHECK(Perm::from_cycles(6, "( 1 , 2 ) ( 3 4 )") ==
        Perm::from_cycles(6, "(1 2)(3 4)"));

  CHECK_THROWS_AS(Perm::from_cycles(3, "(1 4)"), ValidationError);
  CHECK_THROWS_AS(Perm::from_cycles(3, "(1 2"), ValidationError);
  CHECK_THROWS_AS(Perm::from_cycles(4, "(1 2)(2 3)"), ValidationError);
  CHECK_THROWS_AS(Perm(std::vector<int>{0, 0, 1}), ValidationError);
}

TEST_CASE("group enumeration and arithmetic") {
  GroupPtr s4 = make_group(4, {"(1 2)", "(1 2 3 4)"});
  CHECK(s4->order() == 24);

  GroupPtr triv = Group::generate(3, {});
  CHECK(triv->order() == 1);

  GroupPtr a6 = make_group(6, {"(1 2 3)", "(2 3 4 5 6)"});
  CHECK(a6->order() == 360);
  for (const Perm& p : a6->elements()) CHECK(is_even(p));

  // identity sits at index 0 of the sorted element list
  CHECK(s4->elem(0).is_identity());
  CHECK(std::is_sorted(s4->elements().begin(), s4->elements().end()));

  for (int a : {1, 5, 17})
    for (int b : {2, 9, 23}) {
      CHECK(s4->elem(s4->mul(a, b)) == s4->elem(a).then(s4->elem(b)));
      CHECK(s4->mul(a, s4->inv(a)) == 0);
    }

  CHECK(s4->index_of(Perm::from_cycles(4, "(1 2 3)")) >= 0);
  CHECK(a6->index_of(Perm::from_cycles(6, "(1 2)")) == -1);

  CHECK_THROWS_AS(Group::generate(8, {Perm::from_cycles(8, "(1 2)"),
                                      Perm::from_cycles(8, "(1 2 3 4 5 6 7 8)")},
                                  1000),
                  CapExceeded);
  CHECK_THROWS_AS(Group::generate(3, {Perm::from_cycles(4, "(1 2)")}), ValidationError);
}

TEST_CASE("sylow subgroups") {
  GroupPtr s4 = sym(4);
  Subgroup g = full_subgroup(s4);
  CHECK(sylow_subgroup(g, 2).order() == 8);
  CHECK(sylow_subgroup(g, 5).order() == 1);

  GroupPtr a6 = make_group(6, {"(1 2 3)", "(2 3 4 5 6)"});
  CHECK(sylow_subgroup(full_subgroup(a6), 2).order() == 8);

  // |G|/|S| is coprime to p, and S is a p-group
  for (int p : {2, 3, 5, 7}) {
    for (const GroupPtr& gp : {sym(5), a6, sym(4)}) {
      Subgroup full = full_subgroup(gp);
      Subgroup syl = sylow_subgroup(full, p);
      CHECK(is_pgroup(syl, p));
      CHECK((full.order() / syl.order()) % p != 0);
    }
  }
}

TEST_CASE("normalizer, centralizer, center against naive scans") {
  GroupPtr s4 = sym(4);
  Subgroup g = full_subgroup(s4);
  Subgroup v4 = subgroup_closure(
      s4, {s4->index_of(Perm::from_cycles(4, "(1 2)(3 4)")),
           s4->index_of(Perm::from_cycles(4, "(1 3)(2 4)"))});
  CHECK(v4.order() == 4);

  // V4 is abelian and normal in S4, so it centralizes itself and C_S4(V4) has
  // order 4
  Subgroup cent = centralizer(g, v4);
  CHECK(cent.elems == v4.elems);
  CHECK(cent.elems == naive_centralizer(g, v4).elems);

  Subgroup d8 = sylow_subgroup(g, 2);
  CHECK(center(d8).order() == 2);

  CHECK(normalizer(g, g).elems == g.elems);
  CHECK(normalizer(g, v4).elems == g.elems);  // V4 normal in S4
  CHECK(is_normal_in(g, v4));

  std::mt19937 rng(12345);
  GroupPtr a6 = make_group(6, {"(1 2 3)", "(2 3 4 5 6)"});
  Subgroup ga = full_subgroup(a6);
  for (int trial = 0; trial < 8; ++trial) {
    int x = static_cast<int>(rng() % a6->order());
    int y = static_cast<int>(rng() % a6->order());
    Subgroup h = subgroup_closure(a6, {x, y});
    CHECK(normalizer(ga, h).elems == naive_normalizer(ga, h).elems);
    CHECK(centralizer(ga, h).elems == naive_centralizer(ga, h).elems);
  }
}

TEST_CASE("transporter sets") {
  GroupPtr s4 = sym(4);
  Subgroup g = full_subgroup(s4);
  Subgroup v4 = subgroup_closure(
      s4, {s4->index_of(Perm::from_cycles(4, "(1 2)(3 4)")),
           s4->index_of(Perm::from_cycles(4, "(1 3)(2 4)"))});

  // normal subgroup transports to itself by everything
  CHECK(transporter(g, v4, v4) == g.elems);

  Subgroup p12 = subgroup_closure(s4, {s4->index_of(Perm::from_cycles(4, "(1 2)"))});
  Subgroup p34 = subgroup_closure(s4, {s4->index_of(Perm::from_cycles(4, "(3 4)"))});
  std::vector<int> t = transporter(g, p12, p34);
  CHECK(!t.empty());
  CHECK(std::binary_search(t.begin(), t.end(),
                           s4->index_of(Perm::from_cycles(4, "(1 3)(2 4)"))));
  CHECK(t == naive_transporter(g, p12, p34));

  // the two Klein four classes of A6 do not fuse
  GroupPtr a6 = make_group(6, {"(1 2 3)", "(2 3 4 5 6)"});
  Subgroup ga = full_subgroup(a6);
  Subgroup k1 = subgroup_closure(
      a6, {a6->index_of(Perm::from_cycles(6, "(1 2)(3 4)")),
           a6->index_of(Perm::from_cycles(6, "(1 3)(2 4)"))});
  Subgroup k2 = subgroup_closure(
      a6, {a6->index_of(Perm::from_cycles(6, "(1 2)(3 4)")),
           a6->index_of(Perm::from_cycles(6, "(1 2)(5 6)"))});
  CHECK(k1.order() == 4);
  CHECK(k2.order() == 4);
  CHECK(transporter(ga, k1, k2).empty());
  CHECK(transporter(ga, k2, k1).empty());

  // composition property on random triples
  std::mt19937 rng(777);
  for (int trial = 0; trial < 6; ++trial) {
    Subgroup p = subgroup_closure(s4, {static_cast<int>(rng() % 24)});
    Subgroup q = conjugate_subgroup(p, static_cast<int>(rng() % 24));
    Subgroup r = conjugate_subgroup(p, static_cast<int>(rng() % 24));
    std::vector<int> tpq = transporter(g, p, q);
    std::vector<int> tqr = transporter(g, q, r);
    std::vector<int> tpr = transporter(g, p, r);
    for (int x : tpq)
      for (int y : tqr)
        CHECK(std::binary_search(tpr.begin(), tpr.end(), s4->mul(x, y)));
  }
}

TEST_CASE("subgroup lattice of p-groups") {
  GroupPtr s4 = sym(4);
  Subgroup c2 = subgroup_closure(s4, {s4->index_of(Perm::from_cycles(4, "(1 2)"))});
  CHECK(subgroups_of_pgroup(c2).size() == 2);

  Subgroup v4 = subgroup_closure(
      s4, {s4->index_of(Perm::from_cycles(4, "(1 2)(3 4)")),
           s4->index_of(Perm::from_cycles(4, "(1 3)(2 4)"))});
  CHECK(subgroups_of_pgroup(v4).size() == 5);

  Subgroup d8 = sylow_subgroup(full_subgroup(s4), 2);
  std::vector<Subgroup> subs = subgroups_of_pgroup(d8);
  CHECK(subs.size() == 10);

  // deterministic order, pairwise distinct, closed
  CHECK(std::is_sorted(subs.begin(), subs.end(), Subgroup::less));
  for (std::size_t i = 0; i + 1 < subs.size(); ++i) CHECK(!(subs[i] == subs[i + 1]));
  for (const Subgroup& h : subs)
    for (int a : h.elems)
      for (int b : h.elems) CHECK(h.contains(s4->mul(a, b)));

  // cyclic-extension oracle at orders 8, 16, 32, 64
  CHECK(cyclic_extension_subgroups(d8, 2).size() == 10);

  GroupPtr d8c2 = make_group(6, {"(1 2)", "(3 4)", "(1 3)(2 4)", "(5 6)"});
  CHECK(d8c2->order() == 16);
  Subgroup full16 = full_subgroup(d8c2);
  CHECK(subgroups_of_pgroup(full16).size() ==
        cyclic_extension_subgroups(full16, 2).size());

  GroupPtr e32 = make_group(10, {"(1 2)", "(3 4)", "(5 6)", "(7 8)", "(9 10)"});
  CHECK(e32->order() == 32);
  Subgroup full32 = full_subgroup(e32);
  // elementary abelian 2^5: Gaussian binomial column sums give 374 subspaces
  CHECK(subgroups_of_pgroup(full32).size() == 374);
  CHECK(cyclic_extension_subgroups(full32, 2).size() == 374);

  // semidihedral-type group of order 64: a^b = a^15 on a 32-cycle
  {
    std::vector<int> conj_img(32);
    for (int i = 0; i < 32; ++i) conj_img[i] = (15 * i) % 32;
    std::vector<int> rot_img(32);
    for (int i = 0; i < 32; ++i) rot_img[i] = (i + 1) % 32;
    GroupPtr sd64 = Group::generate(32, {Perm(rot_img), Perm(conj_img)});
    CHECK(sd64->order() == 64);
    Subgroup full64 = full_subgroup(sd64);
    CHECK(subgroups_of_pgroup(full64).size() ==
          cyclic_extension_subgroups(full64, 2).size());
  }

  Subgroup s3 = subgroup_closure(s4, {s4->index_of(Perm::from_cycles(4, "(1 2)")),
                                      s4->index_of(Perm::from_cycles(4, "(1 2 3)"))});
  CHECK_THROWS_AS(subgroups_of_pgroup(s3), ValidationError);
  CHECK_THROWS_AS(subgroups_of_pgroup(full_subgroup(e32), 16), CapExceeded);
}

TEST_CASE("coset representatives") {
  GroupPtr s4 = sym(4);
  Subgroup g = full_subgroup(s4);
  Subgroup d8 = sylow_subgroup(g, 2);
  std::vector<int> reps = right_coset_reps(g, d8);
  CHECK(reps.size() == 3);
  CHECK(reps[0] == 0);
  std::set<int> covered;
  for (int r : reps)
    for (int u : d8.elems) covered.insert(s4->mul(u, r));
  CHECK(covered.size() == 24);
}

TEST_CASE("quotient groups") {
  GroupPtr s4 = sym(4);
  Subgroup g = full_subgroup(s4);
  Subgroup v4 = subgroup_closure(
      s4, {s4->index_of(Perm::from_cycles(4, "(1 2)(3 4)")),
           s4->index_of(Perm::from_cycles(4, "(1 3)(2 4)"))});

  QuotientGroup q = quotient_group(g, v4);
  CHECK(q.group->order() == 6);
  CHECK_FALSE(is_abelian(full_subgroup(q.group)));  // so it is S3

  // projection is a homomorphism, section splits it
  for (int a : {0, 3, 11, 17})
    for (int b : {1, 7, 20}) {
      CHECK(q.proj[s4->mul(a, b)] == q.group->mul(q.proj[a], q.proj[b]));
    }
  for (int c = 0; c < 6; ++c) CHECK(q.proj[q.section[c]] == c);

  QuotientGroup qq = quotient_group(g, g);
  CHECK(qq.group->order() == 1);

  QuotientGroup qi = quotient_group(g, trivial_subgroup(s4));
  CHECK(qi.group->order() == 24);
  for (int a : {2, 9})
    for (int b : {5, 13})
      CHECK(qi.proj[s4->mul(a, b)] == qi.group->mul(qi.proj[a], qi.proj[b]));

  Subgroup d8 = sylow_subgroup(g, 2);
  CHECK_THROWS_AS(quotient_group(g, d8), ValidationError);
}

TEST_CASE("p-core") {
  GroupPtr s4 = sym(4);
  Subgroup g = full_subgroup(s4);
  Subgroup core2 = p_core(g, 2);
  CHECK(core2.order() == 4);
  CHECK(is_normal_in(g, core2));

  GroupPtr a6 = make_group(6, {"(1 2 3)", "(2 3 4 5 6)"});
  CHECK(p_core(full_subgroup(a6), 2).order() == 1);

  Subgroup d8 = sylow_subgroup(g, 2);
  CHECK(p_core(d8, 2).elems == d8.elems);
}

TEST_CASE("odd symmetric groups are generated by two normalizers") {
  // G = S_{2n+1}, R1 = <(1 2),(3 4),...,(2n-1 2n)>, R2 drops the last factor;
  // N_G(R1) and N_G(R2) together generate G
  for (int n : {2, 3}) {
    GroupPtr g = sym(2 * n + 1);
    Subgroup full = full_subgroup(g);
    std::vector<int> r1gens, r2gens;
    for (int i = 1; i <= n; ++i) {
      std::string c = "(" + std::to_string(2 * i - 1) + " " + std::to_string(2 * i) + ")";
      int idx = g->index_of(Perm::from_cycles(2 * n + 1, c));
      r1gens.push_back(idx);
      if (i <= n - 1) r2gens.push_back(idx);
    }
    Subgroup r1 = subgroup_closure(g, r1gens);
    Subgroup r2 = subgroup_closure(g, r2gens);
    Subgroup h = join(normalizer(full, r1), normalizer(full, r2));
    CHECK(h.order() == g->order());
  }
}

TEST_CASE("group file parsing and formatting") {
  const char* text =
      "# symmetric group on four points\n"
      "degree 4\n"
      "gen (1 2)\n"
      "gen (1 2 3 4)\n";
  GroupPtr g = parse_group(text);
  CHECK(g->order() == 24);
  CHECK(g->degree() == 4);

  GroupPtr round = parse_group(format_group(*g));
  CHECK(round->order() == 24);
  CHECK(round->degree() == 4);

  CHECK_THROWS_AS(parse_group("gen (1 2)\ndegree 4\n"), ValidationError);
  CHECK_THROWS_AS(parse_group("degree 4\ngen (1 5)\n"), ValidationError);
  CHECK_THROWS_AS(parse_group("degree 4\norder 24\n"), ValidationError);
  CHECK_THROWS_AS(parse_group("degree 4\ndegree 4\n"), ValidationError);
  CHECK_THROWS_AS(parse_group(""), ValidationError);
}

TEST_CASE("misc subgroup predicates") {
  GroupPtr s4 = sym(4);
  Subgroup g = full_subgroup(s4);
  Subgroup v4 = p_core(g, 2);
  CHECK(is_elementary_abelian(v4, 2));
  CHECK(!is_elementary_abelian(sylow_subgroup(g, 2), 2));
  CHECK(is_abelian(v4));
  CHECK(!is_abelian(g));
  CHECK(is_pgroup(v4, 2));
  CHECK(!is_pgroup(g, 2));

  // generating_set really generates, on random subgroups
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 10; ++trial) {
    Subgroup h = subgroup_closure(
        s4, {static_cast<int>(rng() % 24), static_cast<int>(rng() % 24)});
    Subgroup back = subgroup_closure(s4, generating_set(h));
    CHECK(back.elems == h.elems);
  }

  Subgroup a4 = intersect(g, g);
  CHECK(a4.elems == g.elems);
}
