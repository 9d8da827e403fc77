#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fuslim/perm.hpp"

namespace fuslim {

inline constexpr long long kDefaultOrderCap = 1000000;
inline constexpr std::size_t kDefaultLatticeCap = 512;

class Group;
using GroupPtr = std::shared_ptr<const Group>;

// A fully enumerated finite permutation group. Elements are stored sorted
// lexicographically by image vector, so index 0 is always the identity and all
// derived orderings are deterministic. Element handles are indices into
// elements().
class Group {
 public:
  static GroupPtr generate(int degree, std::vector<Perm> gens,
                           long long order_cap = kDefaultOrderCap);

  int degree() const { return degree_; }
  long long order() const { return static_cast<long long>(elements_.size()); }
  const std::vector<Perm>& elements() const { return elements_; }
  const Perm& elem(int i) const { return elements_[i]; }
  const std::vector<Perm>& generators() const { return generators_; }
  std::vector<int> generator_indices() const;

  int index_of(const Perm& p) const;  // -1 if not a member
  int mul(int a, int b) const;        // index of elem(a).then(elem(b))
  int inv(int a) const;
  int conj(int a, int g) const { return mul(mul(inv(g), a), g); }  // a^g
  long long elem_order(int a) const { return elements_[a].order(); }

 private:
  Group() = default;
  int degree_ = 0;
  std::vector<Perm> elements_;
  std::vector<Perm> generators_;
  std::unordered_map<Perm, int, PermHash> index_;
  std::vector<int> inverse_;
};

// Subgroup of a Group: sorted vector of element indices. Value type; two
// subgroups compare equal iff they share a parent and have the same elements.
struct Subgroup {
  GroupPtr parent;
  std::vector<int> elems;  // sorted, always contains 0 (identity)

  long long order() const { return static_cast<long long>(elems.size()); }
  bool contains(int idx) const;
  bool contains_subgroup(const Subgroup& other) const;
  bool operator==(const Subgroup& o) const {
    return parent == o.parent && elems == o.elems;
  }
  // Deterministic global order: by order, then lexicographic index sequence.
  static bool less(const Subgroup& a, const Subgroup& b) {
    if (a.elems.size() != b.elems.size()) return a.elems.size() < b.elems.size();
    return a.elems < b.elems;
  }
};

struct SubgroupHash {
  std::size_t operator()(const Subgroup& s) const {
    std::size_t h = 1469598103934665603ull;
    for (int v : s.elems) {
      h ^= static_cast<std::size_t>(v);
      h *= 1099511628211ull;
    }
    return h;
  }
};

Subgroup trivial_subgroup(const GroupPtr& g);
Subgroup full_subgroup(const GroupPtr& g);
Subgroup subgroup_closure(const GroupPtr& g, const std::vector<int>& gens);
Subgroup conjugate_subgroup(const Subgroup& p, int g);

// Greedy small generating set: scan elements in order, keep those that enlarge
// the closure. Deterministic.
std::vector<int> generating_set(const Subgroup& s);

bool is_abelian(const Subgroup& s);
bool is_pgroup(const Subgroup& s, int p);
bool is_elementary_abelian(const Subgroup& s, int p);
bool is_normal_in(const Subgroup& g, const Subgroup& k);  // k normal in g

Subgroup join(const Subgroup& a, const Subgroup& b);        // <a, b>
Subgroup intersect(const Subgroup& a, const Subgroup& b);

// All operations below require p prime and operate inside the ambient subgroup
// g (every argument must share g's parent Group).
Subgroup sylow_subgroup(const Subgroup& g, int p);
Subgroup normalizer(const Subgroup& g, const Subgroup& p);
Subgroup centralizer(const Subgroup& g, const Subgroup& x);
Subgroup centralizer_elem(const Subgroup& g, int x);
Subgroup center(const Subgroup& g);
Subgroup p_core(const Subgroup& g, int p);  // O_p(g): intersection of Sylow p-subgroups

// {h in g : p^h <= q}, sorted element indices (may be empty).
std::vector<int> transporter(const Subgroup& g, const Subgroup& p, const Subgroup& q);

// Minimal representative (by element index) of each right coset h\g, sorted.
std::vector<int> right_coset_reps(const Subgroup& g, const Subgroup& h);

// Every subgroup of a p-group s, sorted by Subgroup::less. Join-closure of the
// cyclic subgroups; |s| is capped (default 512) and the result count guarded.
std::vector<Subgroup> subgroups_of_pgroup(const Subgroup& s,
                                          std::size_t size_cap = kDefaultLatticeCap);

// Quotient g/k for k normal in g, realized by the right-coset action (faithful
// and transitive). proj maps parent element indices to quotient element
// indices; section picks the minimal coset representative.
struct QuotientGroup {
  GroupPtr group;                // the quotient as a permutation group on cosets
  Subgroup kernel;
  std::vector<int> proj;         // parent elem idx -> quotient elem idx
  std::vector<int> section;      // quotient elem idx -> parent elem idx (min rep)
};
QuotientGroup quotient_group(const Subgroup& g, const Subgroup& k);

bool is_prime(int p);

// Group file format: "degree <n>" then one "gen <cycles>" line per generator.
GroupPtr parse_group(const std::string& text, long long order_cap = kDefaultOrderCap);
std::string format_group(const Group& g);

}  // namespace fuslim
