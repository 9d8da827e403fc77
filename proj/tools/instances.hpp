// Canned example groups and module actions shared by the command line verify
// suites, the data file generator, and the acceptance harness. Everything
// here is small and rebuilt from scratch on each call.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fuslim/action.hpp"
#include "fuslim/errors.hpp"
#include "fuslim/fusion.hpp"
#include "fuslim/group.hpp"
#include "fuslim/offenders.hpp"
#include "fuslim/pabelian.hpp"
#include "fuslim/perm.hpp"

namespace canned {

using namespace fuslim;

inline GroupPtr make_group(int degree, const std::vector<std::string>& cycles) {
  std::vector<Perm> gens;
  for (const std::string& c : cycles) gens.push_back(Perm::from_cycles(degree, c));
  return Group::generate(degree, std::move(gens));
}

inline Subgroup sub_of(const GroupPtr& g, const std::vector<std::string>& cycles) {
  std::vector<int> gens;
  for (const std::string& c : cycles) {
    int idx = g->index_of(Perm::from_cycles(g->degree(), c));
    internal_check(idx >= 0, "canned generator outside its group");
    gens.push_back(idx);
  }
  return subgroup_closure(g, gens);
}

inline GroupPtr s4_group() { return make_group(4, {"(1 2)", "(1 2 3 4)"}); }

inline GroupPtr a6_group() { return make_group(6, {"(1 2 3 4 5)", "(4 5 6)"}); }

inline GeneralSetup s4_setup() {
  GroupPtr g = s4_group();
  return make_setup(g, 2, sub_of(g, {"(1 2)(3 4)", "(1 3)(2 4)"}));
}

// permutation of the nine points of the plane over F3 given by v -> m v + t,
// with the point (x, y) encoded as x + 3 y and m listed row by row
inline Perm affine3(int m0, int m1, int m2, int m3, int t0, int t1) {
  std::vector<int> img(9);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      int nx = (m0 * x + m1 * y + t0) % 3;
      int ny = (m2 * x + m3 * y + t1) % 3;
      img[x + 3 * y] = nx + 3 * ny;
    }
  return Perm(img);
}

// 3^2 : C6 with C6 = <-T> for the unipotent T = [[1 1] [0 1]]; the Sylow
// 3-subgroup is extraspecial of order 27 and Y does not contain it
inline GroupPtr affine54_group() {
  return Group::generate(9, {affine3(1, 0, 0, 1, 1, 0), affine3(1, 0, 0, 1, 0, 1),
                             affine3(2, 2, 0, 2, 0, 0)});
}

inline GeneralSetup affine54_setup() {
  GroupPtr g = affine54_group();
  std::vector<int> gens = {g->index_of(affine3(1, 0, 0, 1, 1, 0)),
                           g->index_of(affine3(1, 0, 0, 1, 0, 1))};
  return make_setup(g, 3, subgroup_closure(g, gens));
}

// matrix of a degree-m permutation on the even-size subsets of {1..m} over
// the basis {i, i+1}: the image of {a, b} telescopes to a sum of such pairs
inline Mat subsets_mat(const Perm& s) {
  int r = s.degree() - 1;
  Mat out(r * r, 0);
  for (int i = 0; i < r; ++i) {
    int a = s[i], b = s[i + 1];
    if (a > b) std::swap(a, b);
    for (int j = a; j < b; ++j) out[i * r + j] = 1;
  }
  return out;
}

// the even-subsets module of a permutation group, faithful from degree 3 on
inline Action subsets_action(const GroupPtr& g) {
  int r = g->degree() - 1;
  PAbelianGroup mod{2, std::vector<long long>(r, 2)};
  std::vector<std::pair<int, Mat>> gens;
  for (const Perm& p : g->generators())
    gens.emplace_back(g->index_of(p), subsets_mat(p));
  return action_from_matrices(full_subgroup(g), mod, gens);
}

// S6 on its 4-dimensional module: the even-subsets module modulo the
// invariant vector {1,...,6} = b1 + b3 + b5
inline Action s6_quotient() {
  Action big = subsets_action(make_group(6, {"(1 2)", "(1 2 3 4 5 6)"}));
  return quotient_module_action(big, span_submodule(big.module, {{1, 0, 1, 0, 1}}));
}

// the three elementary transvections I+E12, I+E23, I+E31 on row vectors of
// F2^3 generate all of GL3(F2), order 168
inline Action transvection_group() {
  Mat x12{1, 1, 0, 0, 1, 0, 0, 0, 1};
  Mat x23{1, 0, 0, 0, 1, 1, 0, 0, 1};
  Mat x31{1, 0, 0, 0, 1, 0, 1, 0, 1};
  return matrix_action(2, {2, 2, 2}, {x12, x23, x31});
}

inline Mat embed_block(const Mat& block, int at, int rank, int brank) {
  Mat out(rank * rank, 0);
  for (int i = 0; i < rank; ++i) out[i * rank + i] = 1;
  for (int i = 0; i < brank; ++i)
    for (int j = 0; j < brank; ++j) out[(at + i) * rank + (at + j)] = block[i * brank + j];
  return out;
}

// S3 x S5 on the direct sum of the two natural modules, as one permutation
// group of degree 8
inline Action s3xs5_natural() {
  GroupPtr g = make_group(8, {"(1 2)", "(1 2 3)", "(4 5)", "(4 5 6 7 8)"});
  PAbelianGroup mod{2, {2, 2, 2, 2, 2, 2}};
  Mat m12{1, 0, 1, 1};
  Mat m123{0, 1, 1, 1};
  Mat m45{1, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};
  Mat m45678{0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 1, 1, 1};
  auto idx = [&](const char* c) { return g->index_of(Perm::from_cycles(8, c)); };
  std::vector<std::pair<int, Mat>> gens = {
      {idx("(1 2)"), embed_block(m12, 0, 6, 2)},
      {idx("(1 2 3)"), embed_block(m123, 0, 6, 2)},
      {idx("(4 5)"), embed_block(m45, 2, 6, 4)},
      {idx("(4 5 6 7 8)"), embed_block(m45678, 2, 6, 4)}};
  return action_from_matrices(full_subgroup(g), mod, gens);
}

// dihedral group <swap(e1,e2), swap(e3,e4), block swap> inside GL4(F2)
inline Action d8_swaps() {
  Mat t1{0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};
  Mat t2{1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0};
  Mat sigma{0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0};
  return matrix_action(2, {2, 2, 2, 2}, {t1, t2, sigma});
}

inline Action c2_swap() { return matrix_action(2, {2, 2}, {Mat{0, 1, 1, 0}}); }

// SL2(3) = <S, T> for S of order 4 and the unipotent T, on its natural
// module F3^2; the classical quadratic example at p = 3
inline Action sl23_natural() {
  return matrix_action(3, {3, 3}, {Mat{0, 2, 1, 0}, Mat{1, 1, 0, 1}});
}

inline Action gl23_natural() {
  return matrix_action(3, {3, 3}, {Mat{0, 2, 1, 0}, Mat{1, 1, 0, 1}, Mat{2, 0, 0, 1}});
}

// SL2(3) on natural + trivial line
inline Action sl23_plus_trivial() {
  Mat s{0, 2, 0, 1, 0, 0, 0, 0, 1};
  Mat t{1, 1, 0, 0, 1, 0, 0, 0, 1};
  return matrix_action(3, {3, 3, 3}, {s, t});
}

// SL2(3) x SL2(3), each factor on its own copy of the natural module
inline Action sl23_times_sl23() {
  Mat s1 = embed_block(Mat{0, 2, 1, 0}, 0, 4, 2);
  Mat t1 = embed_block(Mat{1, 1, 0, 1}, 0, 4, 2);
  Mat s2 = embed_block(Mat{0, 2, 1, 0}, 2, 4, 2);
  Mat t2 = embed_block(Mat{1, 1, 0, 1}, 2, 4, 2);
  return matrix_action(3, {3, 3, 3, 3}, {s1, t1, s2, t2});
}

inline Action sl25_natural() {
  return matrix_action(5, {5, 5}, {Mat{0, 4, 1, 0}, Mat{1, 1, 0, 1}});
}

// SL2(9) on F9^2 written over F3 with basis e1, i e1, e2, i e2 for i^2 = -1;
// generated by the two unipotents [[1 1][0 1]], [[1 i][0 1]] and the Weyl
// element [[0 -1][1 0]]
inline Action sl29_natural() {
  Mat t1{1, 0, 0, 0, 0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 1};
  Mat ti{1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 1, 0, 2, 0, 0, 1};
  Mat s{0, 0, 1, 0, 0, 0, 0, 1, 2, 0, 0, 0, 0, 2, 0, 0};
  return matrix_action(3, {3, 3, 3, 3}, {t1, ti, s});
}

// SL2(4) on F4^2 written over F2 with basis e1, w e1, e2, w e2 for a cube
// root of unity w; generated by the unipotent T, the torus diag(w, w^2), and
// the Weyl reflection
inline Action sl24_natural() {
  Mat t{1, 0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 0, 0, 1};
  Mat h{0, 1, 0, 0, 1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 1, 0};
  Mat s{0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0};
  return matrix_action(2, {2, 2, 2, 2}, {t, h, s});
}

// GL2(4): SL2(4) extended by the scalar w
inline Action gl24_natural() {
  Mat t{1, 0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 0, 0, 1};
  Mat h{0, 1, 0, 0, 1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 1, 0};
  Mat s{0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0};
  Mat w{0, 1, 0, 0, 1, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 1};
  return matrix_action(2, {2, 2, 2, 2}, {t, h, s, w});
}

// one norm-argument test case: an action, a collection of abelian
// p-subgroups of a fixed Sylow subgroup, and whether the norm vanishing
// condition is expected to hold
struct NormInstance {
  std::string name;
  Action act;
  Subgroup sylow;
  std::vector<Subgroup> collection;
  bool positive = true;
};

// collection of all best offenders inside the given Sylow subgroup that are
// minimal under inclusion among them
inline std::vector<Subgroup> minimal_offenders_in(const Action& act, const Subgroup& s) {
  std::vector<Subgroup> out;
  for (const OffenderReport& r : best_offenders(act))
    if (r.minimal && s.contains_subgroup(r.subgroup)) out.push_back(r.subgroup);
  return out;
}

// collection of the over-offenders inside the given Sylow subgroup
inline std::vector<Subgroup> over_offenders_in(const Action& act, const Subgroup& s) {
  std::vector<Subgroup> out;
  for (const OffenderReport& r : best_offenders(act))
    if (r.over && s.contains_subgroup(r.subgroup)) out.push_back(r.subgroup);
  return out;
}

inline NormInstance norm_instance(std::string name, Action act, bool over,
                                  bool positive = true) {
  Subgroup s = sylow_subgroup(act.actors, act.module.prime);
  std::vector<Subgroup> coll =
      over ? over_offenders_in(act, s) : minimal_offenders_in(act, s);
  return NormInstance{std::move(name), std::move(act), std::move(s), std::move(coll),
                      positive};
}

// the (G, D) library for the norm-argument suite; the last entry is the
// negative control where neither the condition nor the conclusion holds
inline std::vector<NormInstance> norm_library() {
  std::vector<NormInstance> out;
  out.push_back(norm_instance("sl2(3) natural", sl23_natural(), false));
  out.push_back(norm_instance("gl2(3) natural", gl23_natural(), false));
  out.push_back(norm_instance("sl2(3) natural + trivial", sl23_plus_trivial(), false));
  out.push_back(norm_instance("sl2(3) x sl2(3)", sl23_times_sl23(), false));
  out.push_back(norm_instance("sl2(5) natural", sl25_natural(), false));
  out.push_back(norm_instance("sl2(4) natural", sl24_natural(), false));
  out.push_back(norm_instance("gl2(4) natural", gl24_natural(), false));
  // at p = 2 the transposition style minimal offenders violate the norm
  // condition (they are the solitary ones), so this one uses the
  // over-offenders, the common axis Kleins
  out.push_back(norm_instance("gl3(2) natural", transvection_group(), true));
  out.push_back(norm_instance("sl2(9) natural", sl29_natural(), false));
  out.push_back(norm_instance("s6 quotient", s6_quotient(), true));
  out.push_back(norm_instance("s3 natural control", natural_module_action(3), false,
                              /*positive=*/false));
  return out;
}

}  // namespace canned
