// Fusion systems on a Sylow subgroup: hom sets, conjugacy classes, centric
// subgroups, intervals, setups, conjugacy functors, conjugation families,
// and the norm-based control checks.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "fuslim/action.hpp"
#include "fuslim/errors.hpp"
#include "fuslim/fusion.hpp"
#include "fuslim/group.hpp"

using namespace fuslim;

namespace {

GroupPtr s4_group() {
  return Group::generate(4, {Perm::from_cycles(4, "(1 2)"), Perm::from_cycles(4, "(1 2 3 4)")});
}

GroupPtr a6_group() {
  return Group::generate(6, {Perm::from_cycles(6, "(1 2 3)"), Perm::from_cycles(6, "(2 3 4 5 6)")});
}

Subgroup sub_of(const GroupPtr& g, const std::vector<std::string>& cycles) {
  std::vector<int> ids;
  for (const auto& c : cycles) {
    int idx = g->index_of(Perm::from_cycles(g->degree(), c));
    REQUIRE(idx >= 0);
    ids.push_back(idx);
  }
  return subgroup_closure(g, ids);
}

// SL2(3) acting on its defining module (Z/3)^2.
Action sl23_action() {
  Mat a = {0, 2, 1, 0};  // order 4
  Mat b = {1, 1, 0, 1};  // transvection
  return matrix_action(3, {3, 3}, {a, b});
}

// S3 = GL2(2) on its natural module (Z/2)^2.
Action s3_matrix_action() {
  Mat t = {1, 0, 1, 1};
  Mat c = {0, 1, 1, 1};
  return matrix_action(2, {2, 2}, {t, c});
}

}  // namespace

TEST_CASE("hom sets are conjugation maps up to graph equality") {
  GroupPtr g = s4_group();
  Subgroup s = sylow_subgroup(full_subgroup(g), 2);
  FusionSystem f(g, s);
  CHECK(f.prime() == 2);

  // Aut of the Sylow group itself: S4 has a self-normalizing Sylow 2, so only
  // inner maps arise, and modding by the center leaves 4 of them.
  const auto& auts = f.aut_set(s);
  CHECK(auts.size() == 4);
  for (const auto& h : auts) {
    CHECK(h.dom == s.elems);
    std::vector<int> im = h.image;
    std::sort(im.begin(), im.end());
    CHECK(im == s.elems);  // automorphisms permute the subgroup
  }

  // Restriction consistency: restricting any endomorphism of S to a smaller
  // subgroup lands in the corresponding hom set.
  for (const auto& p : f.all_subgroups()) {
    for (const auto& h : auts) {
      std::vector<int> image;
      for (int x : p.elems) image.push_back(h.apply(x));
      FHom restricted{p.elems, image, h.witness};
      const auto& homs = f.hom_set(p, s);
      CHECK(std::find(homs.begin(), homs.end(), restricted) != homs.end());
    }
  }

  // Identity map is always present.
  for (const auto& p : f.all_subgroups()) {
    FHom ident{p.elems, p.elems, 0};
    const auto& homs = f.hom_set(p, p);
    CHECK(std::find(homs.begin(), homs.end(), ident) != homs.end());
  }

  CHECK_THROWS_AS(FusionSystem(g, trivial_subgroup(g)), ValidationError);
  CHECK_THROWS_AS(FusionSystem(g, sub_of(g, {"(1 2 3)", "(1 2)"})), ValidationError);
}

TEST_CASE("the two Klein four classes of A6 do not fuse") {
  GroupPtr g = a6_group();
  Subgroup s = sylow_subgroup(full_subgroup(g), 2);
  FusionSystem f(g, s);
  REQUIRE(s.order() == 8);

  // locate the two elementary abelian fours inside S
  std::vector<Subgroup> kleins;
  for (const auto& p : f.all_subgroups())
    if (p.order() == 4 && is_elementary_abelian(p, 2)) kleins.push_back(p);
  REQUIRE(kleins.size() == 2);

  CHECK(f.hom_set(kleins[0], kleins[1]).empty());
  CHECK(f.hom_set(kleins[1], kleins[0]).empty());
  CHECK_FALSE(f.f_conjugate(kleins[0], kleins[1]));

  // each has full automizer S3 = all 6 automorphisms
  CHECK(f.aut_set(kleins[0]).size() == 6);
  CHECK(f.aut_set(kleins[1]).size() == 6);

  // and each is alone in its class within S
  CHECK(f.f_class(kleins[0]).size() == 1);
  CHECK(f.f_class(kleins[1]).size() == 1);
}

TEST_CASE("fully normalized and centric detection") {
  GroupPtr g4 = s4_group();
  FusionSystem f4(g4, sylow_subgroup(full_subgroup(g4), 2));
  const Subgroup& s4s = f4.sylow();

  CHECK(f4.is_fully_normalized(s4s));
  CHECK(f4.is_centric(s4s));

  // the three double-transposition subgroups fuse; only the one central in
  // this Sylow group is fully normalized
  Subgroup v4n = p_core(full_subgroup(g4), 2);
  Subgroup central = center(s4s);
  int edge_elem = 0;
  for (int x : v4n.elems)
    if (x != 0 && !central.contains(x)) edge_elem = x;
  Subgroup edge = subgroup_closure(g4, {edge_elem});
  CHECK(f4.f_conjugate(edge, central));
  CHECK(f4.f_class(edge).size() == 3);
  CHECK_FALSE(f4.is_fully_normalized(edge));
  CHECK(f4.is_fully_normalized(central));
  CHECK_FALSE(f4.is_centric(central));  // C_S(Z(S)) = S

  // S4 centric collection: both Klein fours, the cyclic four, and S itself
  std::vector<Subgroup> centrics = f4.centric_collection();
  CHECK(centrics.size() == 4);
  for (const auto& p : centrics) CHECK(p.order() >= 4);
  std::vector<FClass> classes = f_classes(f4, centrics);
  CHECK(classes.size() == 4);
  for (const auto& c : classes) {
    CHECK(f4.is_fully_normalized(c.rep));
    CHECK(c.members.size() == 1);
  }

  GroupPtr g6 = a6_group();
  FusionSystem f6(g6, sylow_subgroup(full_subgroup(g6), 2));
  Subgroup zs = center(f6.sylow());
  REQUIRE(zs.order() == 2);
  CHECK_FALSE(f6.is_centric(zs));
  CHECK(f6.is_fully_normalized(zs));

  std::vector<Subgroup> c6 = f6.centric_collection();
  CHECK(c6.size() == 4);  // S, both Klein fours, the cyclic four
  std::vector<FClass> cl6 = f_classes(f6, c6);
  CHECK(cl6.size() == 4);
  long long orders_seen = 0;
  for (const auto& c : cl6) orders_seen += c.rep.order();
  CHECK(orders_seen == 8 + 4 + 4 + 4);
}

TEST_CASE("interval flags") {
  GroupPtr g = s4_group();
  FusionSystem f(g, sylow_subgroup(full_subgroup(g), 2));
  Subgroup v4 = p_core(full_subgroup(g), 2);

  std::vector<Subgroup> above = interval_above(f, v4);
  CHECK(above.size() == 2);  // V4 and S
  Interval iv = validate_interval(f, above);
  CHECK(iv.is_interval);
  CHECK(iv.f_invariant);
  CHECK(iv.contains_sylow);
  CHECK(iv.overgroup_closed);

  Interval solo = validate_interval(f, {f.sylow()});
  CHECK(solo.is_interval);
  CHECK(solo.contains_sylow);
  CHECK(solo.overgroup_closed);
  CHECK(solo.f_invariant);

  // gap between the trivial group and S
  Interval gap = validate_interval(f, {trivial_subgroup(g), f.sylow()});
  CHECK_FALSE(gap.is_interval);
  CHECK(gap.contains_sylow);
  CHECK_FALSE(gap.overgroup_closed);

  // a single non-normal member: interval, and alone in its class within S,
  // so still invariant under fusion
  Subgroup diag;
  for (const auto& p : f.all_subgroups())
    if (p.order() == 4 && is_elementary_abelian(p, 2) && !(p == v4)) diag = p;
  REQUIRE(diag.order() == 4);
  Interval one = validate_interval(f, {diag});
  CHECK(one.is_interval);
  CHECK(one.f_invariant);
  CHECK_FALSE(one.overgroup_closed);
  CHECK_FALSE(one.contains_sylow);

  // fusion-open: a non-central double-transposition subgroup without its
  // central fusion partner
  Subgroup central = center(f.sylow());
  int edge_elem = 0;
  for (int x : v4.elems)
    if (x != 0 && !central.contains(x)) edge_elem = x;
  Interval open_set = validate_interval(f, {subgroup_closure(g, {edge_elem})});
  CHECK_FALSE(open_set.f_invariant);
}

TEST_CASE("general setups validate and classify") {
  GroupPtr g = s4_group();
  Subgroup v4 = p_core(full_subgroup(g), 2);
  GeneralSetup setup = make_setup(g, 2, v4);
  CHECK(setup.prime == 2);
  CHECK(setup.y == v4);
  CHECK(setup.zy == v4);  // V4 abelian
  CHECK(setup.reduced);
  CHECK(setup.act.act.module.order() == 4);
  CHECK(setup.sylow.order() == 8);

  // non-normal Y candidates
  CHECK_THROWS_AS(make_setup(g, 2, sub_of(g, {"(1 2)(3 4)"})), ValidationError);
  CHECK_THROWS_AS(make_setup(g, 2, sub_of(g, {"(1 2)"})), ValidationError);
  // wrong prime for Y
  CHECK_THROWS_AS(make_setup(g, 3, v4), ValidationError);
  CHECK_THROWS_AS(make_setup(g, 4, v4), ValidationError);
  // normal Y whose centralizer sticks out
  GroupPtr twolines = Group::generate(4, {Perm::from_cycles(4, "(1 2)"), Perm::from_cycles(4, "(3 4)")});
  REQUIRE(twolines->order() == 4);
  CHECK_THROWS_AS(make_setup(twolines, 2, sub_of(twolines, {"(1 2)"})), ValidationError);

  // the whole Sylow group as its own ambient group
  GroupPtr d8 = Group::generate(4, {Perm::from_cycles(4, "(1 2 3 4)"), Perm::from_cycles(4, "(1 3)")});
  REQUIRE(d8->order() == 8);
  GeneralSetup tower = make_setup(d8, 2, full_subgroup(d8));
  CHECK(tower.zy.order() == 2);
  CHECK(tower.reduced);

  // descriptor roundtrip
  std::string text = format_setup(setup);
  GeneralSetup back = parse_setup(text);
  CHECK(back.prime == setup.prime);
  CHECK(back.y.elems == setup.y.elems);
  CHECK(back.reduced == setup.reduced);
  CHECK(back.gamma->order() == 24);

  CHECK_THROWS_AS(parse_setup("degree 4\ngen (1 2)\n"), ValidationError);  // no prime, no Y
  CHECK_THROWS_AS(parse_setup("degree 4\ngen (1 2 3 4)\ngen (1 2)\nprime 2\nY (1 2 3)\n"),
                  ValidationError);  // Y generator outside the group
}

TEST_CASE("conjugacy functors, iterates, and well placed subgroups") {
  GroupPtr g = s4_group();
  FusionSystem f(g, sylow_subgroup(full_subgroup(g), 2));

  ConjugacyFunctor ident = identity_functor(f);
  std::vector<Subgroup> wp = well_placed(f, ident);
  std::vector<Subgroup> fn;
  for (const auto& p : f.all_subgroups())
    if (f.is_fully_normalized(p)) fn.push_back(p);
  CHECK(wp == fn);

  // a Thompson-style functor: join of the elementary abelian subgroups of
  // maximal order
  auto jfun = [&](const Subgroup& p) {
    std::vector<Subgroup> subs = subgroups_of_pgroup(p);
    long long best = 1;
    for (const auto& q : subs)
      if (is_elementary_abelian(q, 2)) best = std::max(best, q.order());
    Subgroup out = trivial_subgroup(g);
    for (const auto& q : subs)
      if (q.order() == best && is_elementary_abelian(q, 2)) out = join(out, q);
    return out;
  };
  ConjugacyFunctor jf(f, "elemjoin", jfun);

  const Subgroup& s = f.sylow();
  Subgroup ws = jf(s);
  for (const auto& p : f.all_subgroups()) {
    // containment of normalizers
    Subgroup np = normalizer(s, p);
    Subgroup nwp = normalizer(s, jf(p));
    CHECK(nwp.contains_subgroup(np));
    // fixed point characterizations
    bool stable = jf(normalizer(s, jf(p))) == jf(p);
    CHECK(stable == (jf(p) == ws));
    bool selfnorm = normalizer(s, jf(p)) == p;
    CHECK(selfnorm == (p == s));
    // iterates stabilize and start at p
    std::vector<Subgroup> iter = functor_iterates(f, jf, p);
    CHECK(iter.front() == p);
    CHECK(jf(normalizer(s, iter.back())) == iter.back());
  }

  std::vector<Subgroup> wpj = well_placed(f, jf);
  CHECK(std::find(wpj.begin(), wpj.end(), s) != wpj.end());
  for (const auto& p : wpj) CHECK(f.is_fully_normalized(p));

  // axiom violations are rejected
  CHECK_THROWS_AS(ConjugacyFunctor(f, "trivial", [&](const Subgroup&) {
                    return trivial_subgroup(g);
                  }),
                  ValidationError);
  Subgroup v4 = sub_of(g, {"(1 2)(3 4)", "(1 3)(2 4)"});
  CHECK_THROWS_AS(ConjugacyFunctor(f, "constant", [&](const Subgroup&) { return v4; }),
                  ValidationError);
}

TEST_CASE("conjugation families by morphism saturation") {
  GroupPtr g4 = s4_group();
  FusionSystem f4(g4, sylow_subgroup(full_subgroup(g4), 2));

  CHECK(is_conjugation_family(f4, f4.all_subgroups()));
  CHECK(is_conjugation_family(f4, well_placed(f4, identity_functor(f4))));
  // S alone cannot fuse an edge double transposition to the central one
  CHECK_FALSE(is_conjugation_family(f4, {f4.sylow()}));
  CHECK_FALSE(is_conjugation_family(f4, {}));

  GroupPtr g6 = a6_group();
  FusionSystem f6(g6, sylow_subgroup(full_subgroup(g6), 2));
  CHECK_FALSE(is_conjugation_family(f6, {}));
  CHECK(is_conjugation_family(f6, well_placed(f6, identity_functor(f6))));
}

TEST_CASE("burnside fusion inside a weakly closed abelian subgroup") {
  GroupPtr g = a6_group();
  Subgroup s = sylow_subgroup(full_subgroup(g), 2);
  FusionSystem f(g, s);

  std::vector<Subgroup> kleins;
  for (const auto& p : f.all_subgroups())
    if (p.order() == 4 && is_elementary_abelian(p, 2)) kleins.push_back(p);
  REQUIRE(kleins.size() == 2);
  const Subgroup& j = kleins[0];
  CHECK(is_weakly_closed(f, j));

  // order-2 subgroups of J are all conjugate in A6; fuse them in N(J)
  std::vector<Subgroup> twos;
  for (int x : j.elems)
    if (x != 0) twos.push_back(subgroup_closure(g, {x}));
  REQUIRE(twos.size() == 3);
  Subgroup nj = normalizer(full_subgroup(g), j);
  for (const auto& x : twos)
    for (const auto& y : twos) {
      int n = burnside_fuse(f, j, x, y);
      CHECK(nj.contains(n));
      std::vector<int> im;
      for (int e : x.elems) im.push_back(g->conj(e, n));
      std::sort(im.begin(), im.end());
      CHECK(im == y.elems);
    }

  // identity case
  CHECK(burnside_fuse(f, j, twos[0], twos[0]) >= 0);

  // a non weakly closed subgroup is rejected: a transposition subgroup of S
  // fuses to its partner inside S, and the center of S fuses into the normal
  // Klein four
  GroupPtr g4 = s4_group();
  FusionSystem f4(g4, sylow_subgroup(full_subgroup(g4), 2));
  Subgroup refl;
  for (const auto& p : f4.all_subgroups())
    if (p.order() == 2 && g4->elem(p.elems[1]).cycle_type() == std::vector<int>{2}) refl = p;
  REQUIRE(refl.order() == 2);
  CHECK_FALSE(is_weakly_closed(f4, refl));
  CHECK_THROWS_AS(burnside_fuse(f4, refl, refl, refl), ValidationError);
  CHECK_FALSE(is_weakly_closed(f4, center(f4.sylow())));

  // the normal Klein four is weakly closed
  CHECK(is_weakly_closed(f4, p_core(full_subgroup(g4), 2)));
}

TEST_CASE("normalizer images commute with reduction") {
  GroupPtr g = s4_group();
  Subgroup v4 = p_core(full_subgroup(g), 2);
  GeneralSetup setup = make_setup(g, 2, v4);

  CHECK(normalizer_image_check(setup, setup.sylow));
  CHECK(normalizer_image_check(setup, v4));

  // C_S(D) = V4 is not inside the cyclic four
  Subgroup c4;
  for (const auto& p : subgroups_of_pgroup(setup.sylow))
    if (p.order() == 4 && !is_elementary_abelian(p, 2)) c4 = p;
  REQUIRE(c4.order() == 4);
  CHECK_THROWS_AS(normalizer_image_check(setup, c4), ValidationError);
}

TEST_CASE("composition factors of module actions") {
  // irreducible natural module
  GroupPtr g = s4_group();
  Subgroup v4 = sub_of(g, {"(1 2)(3 4)", "(1 3)(2 4)"});
  InternalAction ia = internal_action(full_subgroup(g), v4);
  std::vector<Action> factors = composition_factors(ia.act);
  REQUIRE(factors.size() == 1);
  CHECK(factors[0].module.order() == 4);

  // trivial action on Z/4 refines in two steps
  GroupPtr c2 = Group::generate(2, {Perm::from_cycles(2, "(1 2)")});
  Action triv = action_from_matrices(full_subgroup(c2), PAbelianGroup{2, {4}},
                                     {{c2->index_of(Perm::from_cycles(2, "(1 2)")), {1}}});
  factors = composition_factors(triv);
  REQUIRE(factors.size() == 2);
  CHECK(factors[0].module.order() == 2);
  CHECK(factors[1].module.order() == 2);

  // SL2(3) defining module is irreducible
  factors = composition_factors(sl23_action());
  REQUIRE(factors.size() == 1);
  CHECK(factors[0].module.order() == 9);

  // natural S3 module plus a trivial line: socle first, then the natural part
  Mat t = {1, 0, 0, 1, 1, 0, 0, 0, 1};
  Mat c = {0, 1, 0, 1, 1, 0, 0, 0, 1};
  Action mixed = matrix_action(2, {2, 2, 2}, {t, c});
  factors = composition_factors(mixed);
  REQUIRE(factors.size() == 2);
  CHECK(factors[0].module.order() == 2);
  CHECK(factors[1].module.order() == 4);
}

TEST_CASE("norm control: positive instance and negative control") {
  // SL2(3) on its defining module at p = 3
  Action act = sl23_action();
  REQUIRE(act.actors.order() == 24);
  Subgroup s3 = sylow_subgroup(act.actors, 3);
  REQUIRE(s3.order() == 3);
  NormControlReport rep = norm_control(act, s3, {s3});
  CHECK(rep.weakly_closed);
  CHECK(rep.condition);
  CHECK(rep.conclusion);
  CHECK(rep.factors_checked == 1);
  CHECK(rep.j == s3);

  // socle variant with H = N_G(J) of order 6
  Subgroup h = normalizer(act.actors, s3);
  REQUIRE(h.order() == 6);
  NormControlReport2 rep2 = norm_control_socle(act, s3, {s3}, h);
  CHECK(rep2.weakly_closed);
  CHECK(rep2.memberwise_condition);
  CHECK(rep2.generated_condition);
  CHECK(rep2.conclusion);

  // negative control: S3 on its natural module fails the norm condition and
  // indeed has uncontrolled fixed points
  Action nat = s3_matrix_action();
  Subgroup s2 = sylow_subgroup(nat.actors, 2);
  REQUIRE(s2.order() == 2);
  NormControlReport bad = norm_control(nat, s2, {s2});
  CHECK(bad.weakly_closed);
  CHECK_FALSE(bad.condition);
  CHECK_FALSE(bad.conclusion);

  // validation
  CHECK_THROWS_AS(norm_control(act, s3, {}), ValidationError);
  CHECK_THROWS_AS(norm_control(act, s3, {full_subgroup(act.parent)}), ValidationError);
  CHECK_THROWS_AS(norm_control_socle(act, s3, {s3}, s3), ValidationError);
}
