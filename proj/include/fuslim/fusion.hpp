#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fuslim/action.hpp"
#include "fuslim/group.hpp"

namespace fuslim {

// A homomorphism between subgroups of S induced by conjugation in the ambient
// group. dom lists the domain's element ids (sorted); image[i] is the id of
// the conjugate of dom[i]; witness is one ambient element realizing the map.
struct FHom {
  std::vector<int> dom;
  std::vector<int> image;
  int witness = 0;

  int apply(int elem_idx) const;  // -1 if elem_idx is not in dom
  bool operator==(const FHom& o) const { return dom == o.dom && image == o.image; }
};

// The conjugation fusion system on a Sylow p-subgroup S of gamma. Hom sets,
// conjugacy classes and the subgroup list are cached; the caches are not
// thread safe, give each thread its own instance.
class FusionSystem {
 public:
  FusionSystem(GroupPtr gamma, Subgroup sylow);

  const GroupPtr& group() const { return gamma_; }
  const Subgroup& sylow() const { return sylow_; }
  int prime() const { return prime_; }

  // all conjugation maps p -> q, deduplicated by graph, sorted by image list
  const std::vector<FHom>& hom_set(const Subgroup& p, const Subgroup& q) const;
  const std::vector<FHom>& aut_set(const Subgroup& p) const { return hom_set(p, p); }

  // subgroups of S conjugate to p (within S), sorted by Subgroup::less
  const std::vector<Subgroup>& f_class(const Subgroup& p) const;
  bool f_conjugate(const Subgroup& p, const Subgroup& q) const;

  Subgroup normalizer_in_sylow(const Subgroup& p) const;
  Subgroup centralizer_in_sylow(const Subgroup& p) const;

  // |N_S(p)| maximal over the class of p / C_S(q) <= q over the class of p
  bool is_fully_normalized(const Subgroup& p) const;
  bool is_centric(const Subgroup& p) const;

  const std::vector<Subgroup>& all_subgroups() const;  // every subgroup of S
  std::vector<Subgroup> centric_collection() const;

 private:
  GroupPtr gamma_;
  Subgroup sylow_;
  int prime_;
  mutable std::map<std::pair<std::vector<int>, std::vector<int>>, std::vector<FHom>> hom_cache_;
  mutable std::map<std::vector<int>, std::vector<Subgroup>> class_cache_;
  mutable std::vector<Subgroup> subgroup_cache_;
};

// A conjugacy class with its chosen representative: maximal |N_S(rep)|, ties
// broken by the deterministic subgroup order.
struct FClass {
  Subgroup rep;
  std::vector<Subgroup> members;
};
std::vector<FClass> f_classes(const FusionSystem& f, const std::vector<Subgroup>& collection);

// A set of subgroups of S with its poset-theoretic flags. Flags are
// informational; nothing is rejected.
struct Interval {
  std::vector<Subgroup> members;  // sorted by Subgroup::less
  bool is_interval = false;       // P1 <= P <= P2 with P1, P2 members => P member
  bool f_invariant = false;       // closed under fusion within S
  bool contains_sylow = false;
  bool overgroup_closed = false;  // member <= Q <= S => Q member
};
Interval validate_interval(const FusionSystem& f, std::vector<Subgroup> members);

// all subgroups of S containing y
std::vector<Subgroup> interval_above(const FusionSystem& f, const Subgroup& y);

// A triple (gamma, S, Y) with S Sylow, Y a normal p-subgroup containing its
// own ambient centralizer, together with the conjugation action on D = Z(Y).
// Reduced means Y = C_S(D) and the quotient gamma/C_gamma(D) has trivial
// p-core.
struct GeneralSetup {
  GroupPtr gamma;
  int prime = 0;
  Subgroup sylow;
  Subgroup y;
  Subgroup zy;  // Z(Y) inside gamma
  InternalAction act;
  bool reduced = false;
};
GeneralSetup make_setup(const GroupPtr& gamma, int p, const Subgroup& y);

// The overgroups of Y in S whose images modulo C(Z(Y)) contain no nontrivial
// offender on Z(Y). Containing an offender survives passage to overgroups,
// so the result is downward closed among the overgroups of Y and forms an
// F-invariant interval (checked before returning).
std::vector<Subgroup> offender_interval(const GeneralSetup& setup, const FusionSystem& f);

// Setup descriptor: the group file contents plus `prime <p>` and
// `Y <generator list>` lines, e.g. `Y (1 2)(3 4), (1 3)(2 4)`.
GeneralSetup parse_setup(const std::string& text, long long order_cap = kDefaultOrderCap);
std::string format_setup(const GeneralSetup& setup);

// A subgroup-valued map W on the subgroups of S with W(P) <= P, W(P)
// nontrivial for nontrivial P, and W(P^g) = W(P)^g whenever both P and P^g
// lie in S. The table is materialized and the axioms checked on construction.
class ConjugacyFunctor {
 public:
  ConjugacyFunctor(const FusionSystem& f, std::string name,
                   const std::function<Subgroup(const Subgroup&)>& w);

  const std::string& name() const { return name_; }
  const Subgroup& operator()(const Subgroup& p) const;

 private:
  std::string name_;
  std::map<std::vector<int>, Subgroup> table_;
};

ConjugacyFunctor identity_functor(const FusionSystem& f);

// Iterates W_1(P) = P, W_{i+1}(P) = W(N_S(W_i(P))) until they stabilize.
std::vector<Subgroup> functor_iterates(const FusionSystem& f, const ConjugacyFunctor& w,
                                       const Subgroup& p);

// P is well placed when every iterate is fully normalized. Checks that every
// subgroup of S is conjugate to a well placed one before returning.
std::vector<Subgroup> well_placed(const FusionSystem& f, const ConjugacyFunctor& w);

// true iff every conjugation map between subgroups of S is a composite of
// restrictions of automorphisms of members of c; computed by saturating the
// finite morphism universe
bool is_conjugation_family(const FusionSystem& f, const std::vector<Subgroup>& c);

// j^g <= S implies j^g = j, over all of gamma
bool is_weakly_closed(const FusionSystem& f, const Subgroup& j);

// For abelian j weakly closed in S and x, y <= j conjugate in gamma, returns
// an element of N_gamma(j) conjugating x to y.
int burnside_fuse(const FusionSystem& f, const Subgroup& j, const Subgroup& x,
                  const Subgroup& y);

// Confirms that reduction mod C_gamma(D) commutes with taking normalizers of
// q >= C_S(D): the image of N_gamma(q) must equal the normalizer of the image
// of q. A false return signals a bug, not a property of the input.
bool normalizer_image_check(const GeneralSetup& setup, const Subgroup& q);

// Verdict of a norm-based control-of-fixed-points check. The conclusion
// C_D(H) = C_D(G) is evaluated independently of the hypotheses so that the
// implication itself is testable.
struct NormControlReport {
  bool weakly_closed = false;
  bool condition = false;       // the norm vanishing condition
  bool conclusion = false;      // C_D(H) == C_D(G)
  int factors_checked = 0;      // composition factors inspected (chain variant)
  Subgroup j;                   // <A>
  Subgroup h;                   // the controlled subgroup (N_G(J) or given H)
};

// Chain variant: requires, for every A in the collection, every Sylow
// conjugate S^g not containing A, and every composition factor V of the
// module, that the norm from A cap S^g to A vanishes on V. Conclusion
// compares fixed points of N_G(J) and G.
NormControlReport norm_control(const Action& act, const Subgroup& sylow,
                               const std::vector<Subgroup>& collection);

// Socle variant: for abelian D and H >= N_G(J), requires the norm from
// A cap H^g to A (and from J cap H^g to J, recorded separately in
// `condition`) to vanish on Omega_1(D) whenever the top group is not inside
// H^g. Conclusion compares fixed points of H and G.
struct NormControlReport2 {
  bool weakly_closed = false;
  bool memberwise_condition = false;  // over A in the collection
  bool generated_condition = false;   // over J itself (weaker hypothesis)
  bool conclusion = false;
  Subgroup j;
  Subgroup h;
};
NormControlReport2 norm_control_socle(const Action& act, const Subgroup& sylow,
                                      const std::vector<Subgroup>& collection,
                                      const Subgroup& h);

}  // namespace fuslim
