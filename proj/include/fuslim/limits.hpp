#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fuslim/fusion.hpp"
#include "fuslim/pabelian.hpp"
#include "fuslim/smith.hpp"

namespace fuslim {

inline constexpr long long kDefaultCochainCap = 1000000;
inline constexpr int kDefaultDegreeCap = 3;

// A morphism class [phi] = phi * Inn(dst) of the orbit category between
// object indices src and dst. rep is the member of the class with the
// lexicographically least image list; identity marks the class of the
// identity automorphism.
struct MorClass {
  int src = 0;
  int dst = 0;
  FHom rep;
  bool identity = false;
};

// Orbit category of an F-invariant collection of centrics. Objects are the
// fully normalized class representatives (or every member when skeletal is
// false); morphisms are the conjugation maps mod inner automorphisms of the
// target. The composition table is built eagerly and checked associative.
struct OrbitCategory {
  const FusionSystem* fsys = nullptr;
  bool skeletal = true;
  std::vector<Subgroup> objects;                   // sorted
  std::vector<MorClass> mors;                      // grouped by (src, dst)
  std::vector<std::vector<std::vector<int>>> hom;  // hom[i][j] = ids into mors
  std::vector<int> identity_of;                    // object -> identity class id
  std::vector<std::vector<int>> comp;              // comp[a][b], -1 not composable

  int object_index(const Subgroup& p) const;  // -1 when absent
  // class id of a raw conjugation map between the given objects, -1 if the
  // map is not in the hom set
  int class_of(int src, int dst, const FHom& raw) const;
  int compose(int a, int b) const;  // id of "a then b"
};

OrbitCategory build_orbit_category(const FusionSystem& f,
                                   const std::vector<Subgroup>& collection,
                                   bool skeletal = true);

// Centric subgroups of S containing some member of r. Composable tuples
// starting inside r never leave this collection, so limits over r can be
// computed on a category with these objects.
std::vector<Subgroup> upward_closure(const FusionSystem& f,
                                     const std::vector<Subgroup>& r);

// The center functor cut off outside an F-invariant interval r: value(P) is
// Z(P) in fixed coordinates for P in r and trivial otherwise; a morphism
// class P -> Q pulls Z(Q) back into Z(P) through the inverse of any
// representative. Representative independence and functoriality over the
// whole composition table are checked on construction.
struct CenterFunctor {
  const OrbitCategory* cat = nullptr;
  std::vector<Subgroup> members;    // the interval, sorted
  std::vector<char> in_r;           // per object: does its class meet r
  std::vector<Subgroup> centers;    // Z(P) per object
  std::vector<CoordSystem> coords;  // coordinates on Z(P); unset when not in r
  // act[m]: rows = coordinates in Z(src) of the pulled-back basis of Z(dst);
  // empty unless both ends lie in r
  std::vector<std::vector<std::vector<long long>>> act;

  int rank_of(int obj) const;
  const std::vector<long long>& orders_of(int obj) const;
  // coordinates of the pullback of z in Z(dst) along morphism class m
  std::vector<long long> apply(int m, const std::vector<long long>& z) const;
};

CenterFunctor center_functor(const OrbitCategory& cat, const std::vector<Subgroup>& r);

// One composable tuple of non-identity morphism classes; a degree-0 tuple is
// a bare object. src is the source object of the whole tuple.
struct BarChain {
  int src = 0;
  std::vector<int> mors;
};

// Normalized bar cochain complex of a center functor. Coordinates appear only
// for tuples whose source class lies in the interval; diff[k] is an integer
// lift of the coboundary C^k -> C^{k+1}, acting on coordinate row vectors
// from the right. d of d vanishing mod the coordinate orders is checked for
// every degree on construction.
struct CochainComplex {
  const OrbitCategory* cat = nullptr;
  const CenterFunctor* fun = nullptr;
  int degree_cap = 0;
  std::vector<std::vector<BarChain>> chains;   // degree 0..degree_cap+1
  std::vector<std::vector<int>> offsets;       // per degree: tuple -> first coord
  std::vector<std::vector<long long>> orders;  // per degree: coordinate orders
  std::vector<BigMat> diff;                    // degrees 0..degree_cap
  // tuple -> position in chains[k]; keyed by {src} in degree 0, by the morphism
  // list above
  std::vector<std::map<std::vector<int>, int>> lookup;

  long long dim(int k) const { return static_cast<long long>(orders[k].size()); }
  // index of a tuple, -1 when it carries no coordinates (source outside the
  // interval, or an identity entry)
  int chain_index(int k, int src, const std::vector<int>& mors) const;
};

CochainComplex build_cochain_complex(const OrbitCategory& cat, const CenterFunctor& fun,
                                     int degree_cap = kDefaultDegreeCap,
                                     long long cochain_cap = kDefaultCochainCap);

// A cochain in coordinates, reduced mod the orders of its degree.
struct Cochain {
  int degree = 0;
  std::vector<long long> v;
};

Cochain zero_cochain(const CochainComplex& c, int degree);
Cochain coboundary(const CochainComplex& c, const Cochain& t);
bool is_cocycle(const CochainComplex& c, const Cochain& t);
// value block of t on one tuple; zeros when the tuple carries no coordinates
std::vector<long long> cochain_value(const CochainComplex& c, const Cochain& t,
                                     int src, const std::vector<int>& mors);

// ker(d_k)/im(d_{k-1}) as an explicit finite abelian group: invariant factors
// with witness cocycles, plus enough of the reduction to classify an
// arbitrary cocycle into the cyclic factors.
struct CohomologyResult {
  int k = 0;
  std::vector<long long> invariant_factors;  // divisibility chain, each > 1
  std::vector<Cochain> witnesses;            // one representative per factor
  std::vector<long long> cochain_dims;       // dims of C^0 .. C^{k+1}

  long long order() const;
  // coordinates of the class of a cocycle in the cyclic factors
  std::vector<long long> classify(const Cochain& t) const;

  // reduction internals backing classify()
  BigMat kbasis;  // rows span the cocycle lattice
  BigMat tmat;    // column transform from the relation lattice's normal form
  std::vector<int> factor_cols;
  std::vector<long long> degree_orders;
  std::shared_ptr<const LeftSolver> ksolver;
};

CohomologyResult higher_limit(const CochainComplex& c, int k);
// builds the category on the upward closure of r and computes there
CohomologyResult higher_limit(const FusionSystem& f, const std::vector<Subgroup>& r,
                              int k, bool skeletal = true,
                              long long cochain_cap = kDefaultCochainCap);

// Shifts the 1-cocycle t by the coboundary of u(P) = t([incl P -> S]). The
// result is cohomologous to t and vanishes on every inclusion class. Requires
// S's class to lie in the functor's interval.
Cochain inclusion_normalize(const CochainComplex& c, const Cochain& t);

// Elements conjugating some member of the collection q back into q. Contains
// S and is closed under inversion when S is a member.
struct Locality {
  std::vector<int> gamma_star;    // sorted ambient element ids
  std::vector<Subgroup> members;  // the collection, sorted
};
Locality locality(const FusionSystem& f, const std::vector<Subgroup>& q);

// fixed points of the whole element set on the module of the action
Submodule fixed_points_of_set(const Action& a, const std::vector<int>& elems);
Submodule fixed_points_on_locality(const GeneralSetup& setup, const Locality& loc);

// The bijection g -> t([c_g]) g of gamma_star attached to an inclusion
// normalized 1-cocycle t over an overgroup-closed interval containing S.
// Requires every S cap S^g to be an object, so build the category with
// skeletal = false unless every class in the collection is a singleton.
struct RigidMap {
  Locality loc;
  std::vector<int> image;  // aligned with loc.gamma_star
  int apply(int g) const;  // ambient element id -> ambient element id
};
RigidMap rigid_map(const CochainComplex& c, const Cochain& t);

// multiplicativity of tau over admissible chains of length <= max_len: chains
// g_1, ..., g_n where some member Q keeps all partial products inside the
// collection. False return pinpoints a broken cocycle, not bad input.
bool rigid_map_multiplicative(const CochainComplex& c, const RigidMap& tau, int max_len = 3);

// Exhaustive search for z in Z(N_S(q)) with tau = conjugation by z on
// N_gamma(q), for a fully normalized member q. Such z exists whenever tau
// comes from a cocycle, so failure to find one throws.
int local_conjugator(const CochainComplex& c, const RigidMap& tau, const Subgroup& q);

// One exactness node of the long exact sequence of a complementary pair.
struct LesNode {
  std::string at;           // label like "L^1(R)"
  long long image_order;    // order of the image of the incoming map
  long long kernel_order;   // order of the kernel of the outgoing map
  bool exact;               // image set equals kernel set
};

// Verdict for the long exact sequence of an interval split (q, r): q and r
// disjoint F-invariant intervals, union an interval, no q-member inside an
// r-member. Exactness is checked on enumerated elements at every node whose
// neighbor maps live within degree k_max.
struct LesReport {
  std::vector<long long> orders_r, orders_union, orders_q;  // |L^k| by degree
  std::vector<LesNode> nodes;
  bool exact = true;
  // shift iso |L^{k-1}(Q)| = |L^k(R)|, checked at k = k_max when the union is
  // the full overgroup interval of a setup
  bool shift_checked = false;
  bool shift_ok = true;
  // short exact sequence 1 -> C_D(gamma) -> C_D(gamma*) -> L^1(F;r) -> 1,
  // checked when a setup is supplied and S lies in q
  bool ses_checked = false;
  bool ses_ok = true;
  long long cd_gamma = 0, cd_gamma_star = 0;
};

LesReport verify_les(const FusionSystem& f, const std::vector<Subgroup>& qcoll,
                     const std::vector<Subgroup>& rcoll, int k_max,
                     long long cochain_cap = kDefaultCochainCap);
// same, plus the shift and fixed-point checks available for a setup whose
// overgroup interval is the union
LesReport verify_les(const GeneralSetup& setup, const std::vector<Subgroup>& qcoll,
                     const std::vector<Subgroup>& rcoll, int k_max,
                     long long cochain_cap = kDefaultCochainCap);

// True iff restriction L^1(F;q) -> L^1(F_0;q_0) is injective, for gamma0
// normal in gamma containing y, q an F-invariant interval with S in q closed
// under meeting gamma0, and q_0 the members inside gamma0. A false return
// signals a bug, not a property of the input.
bool restriction_injectivity_check(const GeneralSetup& setup, const Subgroup& gamma0,
                                   const std::vector<Subgroup>& qcoll,
                                   long long cochain_cap = kDefaultCochainCap);

}  // namespace fuslim
