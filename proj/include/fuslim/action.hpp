#pragma once

#include <string>
#include <vector>

#include "fuslim/group.hpp"
#include "fuslim/pabelian.hpp"

namespace fuslim {

// rank x rank integer matrix, row-major; row i is the image of basis vector i,
// entries reduced mod the order of their column.
using Mat = std::vector<long long>;

// Right action of a subgroup on an abelian p-group: one matrix per acting
// element, so apply(v, gh) = apply(apply(v, g), h) with row-vector convention.
struct Action {
  GroupPtr parent;
  Subgroup actors;
  PAbelianGroup module;
  std::vector<Mat> mats;  // aligned with actors.elems
  Subgroup kernel;        // elements acting as the identity matrix
  bool faithful = false;

  const Mat& mat_of(int elem_idx) const;
  PAbelianGroup::Vec apply(const PAbelianGroup::Vec& v, int elem_idx) const;
  bool fixes(const PAbelianGroup::Vec& v, int elem_idx) const;
};

Mat identity_mat(int rank);
Mat mat_mul(const PAbelianGroup& m, const Mat& a, const Mat& b);
PAbelianGroup::Vec vec_mat(const PAbelianGroup& m, const PAbelianGroup::Vec& v,
                           const Mat& a);

// Builds the action from matrices for a generating set of `actors` (as parent
// element indices). Checks the per-matrix congruence conditions and that the
// assignment extends to a group homomorphism on all of `actors`.
Action action_from_matrices(const Subgroup& actors, PAbelianGroup module,
                            const std::vector<std::pair<int, Mat>>& gen_mats);

// Conjugation action of gamma on an abelian normal p-subgroup d, with d
// coordinatized by a computed basis.
struct InternalAction {
  Action act;
  Subgroup dsub;                                // d inside the parent group
  std::vector<PAbelianGroup::Vec> vec_of;       // position in dsub.elems -> coords
  PAbelianGroup::Vec to_vec(int elem_idx) const;
  int to_elem(const PAbelianGroup::Vec& v) const;  // parent element index
  Submodule to_submodule(const Subgroup& sub) const;  // subgroup of d -> coords
  Subgroup to_subgroup(const Submodule& sub) const;
};
InternalAction internal_action(const Subgroup& gamma, const Subgroup& d);

// {v : v fixed by every element of h}, h <= actors.
Submodule fixed_points(const Action& a, const Subgroup& h);

// Iterated commutator [D, A, ..., A] with `depth` copies of A.
Submodule commutator_series(const Action& a, const Subgroup& h, int depth);

// [V,A,A] = 0 but [V,A] != 0.
bool is_quadratic(const Action& a, const Subgroup& h);

// Norm map C_V(H) -> C_V(actors): sum of v over right coset representatives.
PAbelianGroup::Vec norm_map(const Action& a, const Subgroup& h,
                            const PAbelianGroup::Vec& v);
PAbelianGroup::Vec norm_map_with_reps(const Action& a, const std::vector<int>& reps,
                                      const PAbelianGroup::Vec& v);
// True iff the norm map is constantly zero on C_V(H).
bool norm_map_is_trivial(const Action& a, const Subgroup& h);
// Same, but restricted to the H-fixed points of a submodule V.
bool norm_map_is_trivial_on(const Action& a, const Subgroup& h, const Submodule& v);

// Y is a transversal to the subset X when the product map X x Y -> G is a
// bijection.
struct Transversal {
  std::vector<int> base_set;  // X
  std::vector<int> reps;      // Y
};
bool is_transversal(const Subgroup& g, const std::vector<int>& x,
                    const std::vector<int>& y);
// Finds a transversal by exact-cover backtracking over translates X*y;
// deterministic, throws if none exists.
Transversal find_transversal(const Subgroup& g, const std::vector<int>& x);
PAbelianGroup::Vec norm_map_transversal(const Action& a, const Transversal& t,
                                        const PAbelianGroup::Vec& v);

// Restriction of the action to a subgroup of the actors, and module-level
// constructions for an invariant submodule w: the action on w itself and on
// the quotient module/w (cosets labeled by lexicographically least reps).
Action restrict_action(const Action& a, const Subgroup& h);
bool is_invariant(const Action& a, const Submodule& w);
Action subaction(const Action& a, const Submodule& w);
Action quotient_module_action(const Action& a, const Submodule& w);

// Smallest invariant submodule generated by a single module element, and the
// minimal nontrivial invariant submodule (ties broken by element order).
Submodule invariant_span(const Action& a, const PAbelianGroup::Vec& v);
Submodule minimal_invariant_submodule(const Action& a);

// Composition factors of the module under the action, top of the chain last.
// Each factor is returned as an action of the same actors on the factor
// module; factors of a p-group module are elementary abelian.
std::vector<Action> composition_factors(const Action& a);

// Realizes the group generated by invertible matrices as a permutation group
// on the points of the module (degree = module order, points numbered by the
// lexicographic element order) acting by those same matrices. The result is
// faithful by construction.
Action matrix_action(int prime, const std::vector<long long>& orders,
                     const std::vector<Mat>& gens,
                     long long order_cap = kDefaultOrderCap);

// Module file format: `prime <p>`, `orders <o1> ... <or>`, then one
// `mat <r*r entries row-major>` line per generator of g.
Action parse_action(const std::string& text, const GroupPtr& g);
std::string format_action(const Action& a);

}  // namespace fuslim
