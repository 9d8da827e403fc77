#pragma once

#include <optional>
#include <vector>

#include "fuslim/action.hpp"
#include "fuslim/group.hpp"
#include "fuslim/pabelian.hpp"

namespace fuslim {

// One nontrivial best offender A on the module D: an abelian p-subgroup with
// |A||C_D(A)| >= |B||C_D(B)| for every B <= A. The defect |A||C_D(A)| / |D|
// is kept as an exact reduced fraction; it is >= 1 for offenders and > 1
// exactly for the over-offenders.
struct OffenderReport {
  Subgroup subgroup;
  long long size = 0;        // |A|
  long long fixed_size = 0;  // |C_D(A)|
  long long defect_num = 1;  // |A||C_D(A)| / |D| in lowest terms
  long long defect_den = 1;
  bool best = false;
  bool over = false;       // strict inequality against |D|
  bool minimal = false;    // minimal under inclusion among best offenders
  bool quadratic = false;  // [D,A,A] = 1
  // Order-2 members at p = 2 only; both are relative to some Sylow 2-subgroup.
  bool solitary = false;
  bool semisolitary = false;
};

// Certificate that T is solitary relative to the Sylow 2-subgroup S: an
// overgroup L of T isomorphic to S3 such that, with J generated by the
// order-2 best offenders inside S,
//   (S1) |L| = 6 and L is nonabelian,
//   (S2) J = T x C_J(L) with C_J(L) generated by the other members, and
//   (S3) D = [D,L] x C_D(L) with C_J(L) centralizing [D,L].
struct SolitaryWitness {
  Subgroup t;
  Subgroup l;
  Subgroup j;
  Subgroup complement;  // C_J(L)
};

// Certificate that T is semisolitary relative to a 2-subgroup S0: a splitting
// D = W x X, both factors invariant under the order-2 best offenders in S0,
// with W elementary abelian of order 4, T centralizing X, and the members
// other than T centralizing W.
struct SemisolitaryWitness {
  Submodule w;
  Submodule x;
};

// Internal direct factorization produced when a group is generated by its
// solitary offenders: G = E_1 x ... x E_r with E_i symmetric of odd degree
// m_i acting on V_i = [D,E_i] as on its natural module, and
// D = V_1 x ... x V_r x C_D(G).
struct Decomposition {
  struct Factor {
    Subgroup e;
    int m = 0;
    Submodule v;
  };
  std::vector<Factor> factors;
  Submodule residue;  // C_D(G)
};

// All nontrivial best offenders of the acting group on the module, fully
// flagged, sorted by (order, elements). Requires a faithful action.
std::vector<OffenderReport> best_offenders(const Action& act);

// Smallest witness inside a nontrivial offender a: a nontrivial b <= a,
// minimal under inclusion subject to |b||C_D(b)| >= |a||C_D(a)|. The result
// is checked to be a quadratic best offender before it is returned.
Subgroup replacement(const Action& act, const Subgroup& a);

// J_coll(h): the subgroup generated by the members of coll lying inside h.
// The collection must be closed under conjugation by the acting group.
Subgroup thompson_subgroup(const Action& act, const std::vector<Subgroup>& coll,
                           const Subgroup& h);

// Preimage form for a non-faithful action: coll holds preimages (each
// containing the kernel) of subgroups of the quotient, h is any subgroup of
// the parent, and the result is the preimage in h of J_coll applied to the
// image of h.
Subgroup thompson_subgroup_preimage(const Action& act,
                                    const std::vector<Subgroup>& coll,
                                    const Subgroup& h);

// Searches for a solitarity certificate for t relative to the Sylow
// 2-subgroup s. Candidate overgroups L = <t, u> run over the conjugates u of
// the involution generating t with t*u of order 3, in element order, so the
// returned witness is deterministic. t must be an order-2 best offender
// inside s.
std::optional<SolitaryWitness> is_solitary(const Action& act, const Subgroup& t,
                                           const Subgroup& s);

// Searches for a semisolitarity certificate for t relative to the 2-subgroup
// s0: W runs over the elementary abelian order-4 submodules containing
// [D,t], X over the index-2 submodules of C_D(t), both in element order.
std::optional<SemisolitaryWitness> is_semisolitary(const Action& act,
                                                   const Subgroup& t,
                                                   const Subgroup& s0);

// All subgroups solitary relative to some Sylow 2-subgroup: the conjugation
// closure of the witnesses found relative to one fixed Sylow subgroup.
std::vector<Subgroup> solitary_subgroups(const Action& act);

// Factorizes a faithful action of a group generated by its solitary
// offenders (with no nontrivial normal 2-subgroup) into symmetric groups of
// odd degree on natural modules. Blocks are the transitive closure of
// "noncommuting or equal module support" on the solitary subgroups; every
// claimed invariant is verified before returning. The preconditions raise
// ValidationError with distinct messages; an engaged result is returned for
// every input that passes them.
std::optional<Decomposition> solitary_decomposition(const Action& act);

// The symmetric group of odd degree m >= 3 acting on the even-size subsets
// of {1..m} under symmetric difference, written over the basis {i, i+1}.
Action natural_module_action(int m);

}  // namespace fuslim
