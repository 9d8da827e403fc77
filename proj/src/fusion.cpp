#include "fuslim/fusion.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "fuslim/errors.hpp"

namespace fuslim {

namespace {

// elements of `sub` as a sorted image list under conjugation by g
std::vector<int> conj_elems(const Subgroup& sub, int g) {
  const Group& gr = *sub.parent;
  std::vector<int> out;
  out.reserve(sub.elems.size());
  for (int x : sub.elems) out.push_back(gr.conj(x, g));
  std::sort(out.begin(), out.end());
  return out;
}

int smallest_prime_factor(long long n) {
  for (long long p = 2; p * p <= n; ++p)
    if (n % p == 0) return static_cast<int>(p);
  return static_cast<int>(n);
}

// distinct conjugates of `base` under the whole of `g`, each with one witness
std::vector<std::pair<Subgroup, int>> distinct_conjugates(const Subgroup& g,
                                                          const Subgroup& base) {
  std::set<std::vector<int>> seen;
  std::vector<std::pair<Subgroup, int>> out;
  for (int t : g.elems) {
    std::vector<int> im = conj_elems(base, t);
    if (seen.insert(im).second)
      out.push_back({Subgroup{base.parent, std::move(im)}, t});
  }
  return out;
}

bool weakly_closed_in(const Subgroup& g, const Subgroup& sylow, const Subgroup& j) {
  for (int t : g.elems) {
    std::vector<int> im = conj_elems(j, t);
    bool inside = std::includes(sylow.elems.begin(), sylow.elems.end(), im.begin(), im.end());
    if (inside && im != j.elems) return false;
  }
  return true;
}

}  // namespace

int FHom::apply(int elem_idx) const {
  auto it = std::lower_bound(dom.begin(), dom.end(), elem_idx);
  if (it == dom.end() || *it != elem_idx) return -1;
  return image[it - dom.begin()];
}

FusionSystem::FusionSystem(GroupPtr gamma, Subgroup sylow)
    : gamma_(std::move(gamma)), sylow_(std::move(sylow)) {
  if (sylow_.parent != gamma_)
    throw ValidationError("Sylow subgroup does not live in the given group");
  if (sylow_.order() <= 1)
    throw ValidationError("fusion system needs a nontrivial Sylow subgroup");
  prime_ = smallest_prime_factor(sylow_.order());
  if (!is_pgroup(sylow_, prime_))
    throw ValidationError("claimed Sylow subgroup is not a p-group");
  if ((gamma_->order() / sylow_.order()) % prime_ == 0)
    throw ValidationError("subgroup is not Sylow: index divisible by p");
}

const std::vector<FHom>& FusionSystem::hom_set(const Subgroup& p, const Subgroup& q) const {
  if (!sylow_.contains_subgroup(p) || !sylow_.contains_subgroup(q))
    throw ValidationError("hom_set arguments must be subgroups of the Sylow group");
  auto key = std::make_pair(p.elems, q.elems);
  auto it = hom_cache_.find(key);
  if (it != hom_cache_.end()) return it->second;

  std::map<std::vector<int>, int> graphs;  // image list -> first witness
  for (int t : transporter(full_subgroup(gamma_), p, q)) {
    std::vector<int> image;
    image.reserve(p.elems.size());
    for (int x : p.elems) image.push_back(gamma_->conj(x, t));
    graphs.emplace(std::move(image), t);
  }
  std::vector<FHom> homs;
  homs.reserve(graphs.size());
  for (const auto& [image, witness] : graphs) homs.push_back(FHom{p.elems, image, witness});
  return hom_cache_.emplace(std::move(key), std::move(homs)).first->second;
}

const std::vector<Subgroup>& FusionSystem::f_class(const Subgroup& p) const {
  if (!sylow_.contains_subgroup(p))
    throw ValidationError("f_class argument must be a subgroup of the Sylow group");
  auto it = class_cache_.find(p.elems);
  if (it != class_cache_.end()) return it->second;

  std::set<std::vector<int>> seen;
  for (int t = 0; t < static_cast<int>(gamma_->order()); ++t) {
    std::vector<int> im = conj_elems(p, t);
    if (std::includes(sylow_.elems.begin(), sylow_.elems.end(), im.begin(), im.end()))
      seen.insert(std::move(im));
  }
  std::vector<Subgroup> cls;
  cls.reserve(seen.size());
  for (const auto& elems : seen) cls.push_back(Subgroup{gamma_, elems});
  std::sort(cls.begin(), cls.end(), Subgroup::less);
  return class_cache_.emplace(p.elems, std::move(cls)).first->second;
}

bool FusionSystem::f_conjugate(const Subgroup& p, const Subgroup& q) const {
  if (p.order() != q.order()) return false;
  const auto& cls = f_class(p);
  return std::find(cls.begin(), cls.end(), q) != cls.end();
}

Subgroup FusionSystem::normalizer_in_sylow(const Subgroup& p) const {
  return normalizer(sylow_, p);
}

Subgroup FusionSystem::centralizer_in_sylow(const Subgroup& p) const {
  return centralizer(sylow_, p);
}

bool FusionSystem::is_fully_normalized(const Subgroup& p) const {
  long long n = normalizer_in_sylow(p).order();
  for (const auto& q : f_class(p))
    if (normalizer_in_sylow(q).order() > n) return false;
  return true;
}

bool FusionSystem::is_centric(const Subgroup& p) const {
  for (const auto& q : f_class(p))
    if (!q.contains_subgroup(centralizer_in_sylow(q))) return false;
  return true;
}

const std::vector<Subgroup>& FusionSystem::all_subgroups() const {
  if (subgroup_cache_.empty()) subgroup_cache_ = subgroups_of_pgroup(sylow_);
  return subgroup_cache_;
}

std::vector<Subgroup> FusionSystem::centric_collection() const {
  std::vector<Subgroup> out;
  for (const auto& p : all_subgroups())
    if (is_centric(p)) out.push_back(p);
  return out;
}

std::vector<FClass> f_classes(const FusionSystem& f, const std::vector<Subgroup>& collection) {
  std::set<std::vector<int>> assigned;
  std::vector<FClass> out;
  for (const auto& p : collection) {
    if (assigned.count(p.elems)) continue;
    const auto& cls = f.f_class(p);
    std::set<std::vector<int>> in_class;
    for (const auto& q : cls) in_class.insert(q.elems);

    FClass fc;
    long long best = -1;
    for (const auto& q : cls) {
      long long n = f.normalizer_in_sylow(q).order();
      if (n > best) {
        best = n;
        fc.rep = q;
      }
    }
    for (const auto& q : collection)
      if (in_class.count(q.elems) && assigned.insert(q.elems).second)
        fc.members.push_back(q);
    std::sort(fc.members.begin(), fc.members.end(), Subgroup::less);
    out.push_back(std::move(fc));
  }
  std::sort(out.begin(), out.end(),
            [](const FClass& a, const FClass& b) { return Subgroup::less(a.rep, b.rep); });
  return out;
}

Interval validate_interval(const FusionSystem& f, std::vector<Subgroup> members) {
  for (const auto& m : members)
    if (!f.sylow().contains_subgroup(m))
      throw ValidationError("interval members must be subgroups of the Sylow group");
  std::sort(members.begin(), members.end(), Subgroup::less);
  members.erase(std::unique(members.begin(), members.end()), members.end());

  Interval out;
  out.members = std::move(members);
  auto is_member = [&](const Subgroup& p) {
    return std::binary_search(out.members.begin(), out.members.end(), p, Subgroup::less);
  };

  out.contains_sylow = is_member(f.sylow());

  out.is_interval = true;
  for (const auto& p : f.all_subgroups()) {
    if (is_member(p)) continue;
    bool below = false, above = false;
    for (const auto& m : out.members) {
      if (p.contains_subgroup(m)) below = true;
      if (m.contains_subgroup(p)) above = true;
      if (below && above) break;
    }
    if (below && above) {
      out.is_interval = false;
      break;
    }
  }

  out.overgroup_closed = true;
  for (const auto& m : out.members) {
    for (const auto& q : f.all_subgroups())
      if (q.contains_subgroup(m) && !is_member(q)) {
        out.overgroup_closed = false;
        break;
      }
    if (!out.overgroup_closed) break;
  }

  out.f_invariant = true;
  for (const auto& m : out.members) {
    for (const auto& q : f.f_class(m))
      if (!is_member(q)) {
        out.f_invariant = false;
        break;
      }
    if (!out.f_invariant) break;
  }
  return out;
}

std::vector<Subgroup> interval_above(const FusionSystem& f, const Subgroup& y) {
  if (!f.sylow().contains_subgroup(y))
    throw ValidationError("interval base must be a subgroup of the Sylow group");
  std::vector<Subgroup> out;
  for (const auto& p : f.all_subgroups())
    if (p.contains_subgroup(y)) out.push_back(p);
  return out;
}

GeneralSetup make_setup(const GroupPtr& gamma, int p, const Subgroup& y) {
  if (!is_prime(p)) throw ValidationError("setup prime must be prime");
  if (y.parent != gamma) throw ValidationError("Y does not live in the given group");
  Subgroup full = full_subgroup(gamma);
  if (!is_pgroup(y, p)) throw ValidationError("Y is not a p-group");
  if (y.order() <= 1) throw ValidationError("Y must be nontrivial");
  if (!is_normal_in(full, y)) throw ValidationError("Y is not normal");
  Subgroup cy = centralizer(full, y);
  if (!y.contains_subgroup(cy))
    throw ValidationError("the centralizer of Y must lie inside Y");

  GeneralSetup setup;
  setup.gamma = gamma;
  setup.prime = p;
  setup.sylow = sylow_subgroup(full, p);
  setup.y = y;
  setup.zy = intersect(cy, y);
  setup.act = internal_action(full, setup.zy);

  Subgroup cd = centralizer(full, setup.zy);
  Subgroup cs = intersect(setup.sylow, cd);
  bool same_y = cs == y;
  QuotientGroup q = quotient_group(full, cd);
  bool trivial_core = p_core(full_subgroup(q.group), p).order() == 1;
  setup.reduced = same_y && trivial_core;
  return setup;
}

std::vector<Subgroup> offender_interval(const GeneralSetup& setup, const FusionSystem& f) {
  const Action& act = setup.act.act;
  const Subgroup& kernel = act.kernel;
  const GroupPtr& g = setup.gamma;
  long long dorder = act.module.order();
  std::vector<Subgroup> out;
  for (const Subgroup& q : interval_above(f, setup.y)) {
    bool offends = false;
    for (const Subgroup& b : subgroups_of_pgroup(q)) {
      long long imord = b.order() / intersect(b, kernel).order();
      if (imord == 1) continue;
      // the image of b is abelian iff the generators commute mod the kernel
      std::vector<int> gens = generating_set(b);
      bool abelian_image = true;
      for (std::size_t i = 0; i + 1 < gens.size() && abelian_image; ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
          int xy = g->mul(gens[i], gens[j]);
          int yx = g->mul(gens[j], gens[i]);
          if (!kernel.contains(g->mul(g->inv(yx), xy))) {
            abelian_image = false;
            break;
          }
        }
      if (!abelian_image) continue;
      if (imord * fixed_points(act, b).order() >= dorder) {
        offends = true;
        break;
      }
    }
    if (!offends) out.push_back(q);
  }
  std::sort(out.begin(), out.end(), Subgroup::less);
  Interval iv = validate_interval(f, out);
  internal_check(iv.is_interval && iv.f_invariant,
                 "offender-free overgroups do not form an F-invariant interval");
  return out;
}

GeneralSetup parse_setup(const std::string& text, long long order_cap) {
  std::istringstream in(text);
  std::string line;
  std::string group_text;
  std::vector<std::string> ygens;
  int prime = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key) || key[0] == '#') continue;
    if (key == "prime") {
      if (prime != 0) throw ValidationError("duplicate prime line in setup");
      if (!(ls >> prime) || prime < 2) throw ValidationError("bad prime line in setup");
    } else if (key == "Y") {
      std::string rest;
      std::getline(ls, rest);
      ygens.push_back(rest);
    } else {
      group_text += line;
      group_text += '\n';
    }
  }
  if (prime == 0) throw ValidationError("setup is missing a prime line");
  if (ygens.empty()) throw ValidationError("setup is missing Y generator lines");
  GroupPtr g = parse_group(group_text, order_cap);
  std::vector<int> gen_ids;
  for (const auto& s : ygens) {
    Perm p = Perm::from_cycles(g->degree(), s);
    int idx = g->index_of(p);
    if (idx < 0) throw ValidationError("Y generator is not an element of the group");
    gen_ids.push_back(idx);
  }
  return make_setup(g, prime, subgroup_closure(g, gen_ids));
}

std::string format_setup(const GeneralSetup& setup) {
  std::ostringstream out;
  out << format_group(*setup.gamma);
  out << "prime " << setup.prime << "\n";
  for (int g : generating_set(setup.y))
    out << "Y " << setup.gamma->elem(g).cycle_string() << "\n";
  return out.str();
}

ConjugacyFunctor::ConjugacyFunctor(const FusionSystem& f, std::string name,
                                   const std::function<Subgroup(const Subgroup&)>& w)
    : name_(std::move(name)) {
  const GroupPtr& gamma = f.group();
  for (const auto& p : f.all_subgroups()) {
    Subgroup value = w(p);
    if (!p.contains_subgroup(value))
      throw ValidationError("conjugacy functor value must lie inside its argument");
    if (p.order() > 1 && value.order() <= 1)
      throw ValidationError("conjugacy functor value must be nontrivial");
    table_.emplace(p.elems, std::move(value));
  }
  // equivariance wherever both the subgroup and its conjugate sit in S
  const Subgroup& s = f.sylow();
  for (const auto& p : f.all_subgroups()) {
    const Subgroup& wp = table_.at(p.elems);
    for (int t = 0; t < static_cast<int>(gamma->order()); ++t) {
      std::vector<int> im = conj_elems(p, t);
      if (!std::includes(s.elems.begin(), s.elems.end(), im.begin(), im.end())) continue;
      if (conj_elems(wp, t) != table_.at(im).elems)
        throw ValidationError("conjugacy functor is not conjugation equivariant");
    }
  }
}

const Subgroup& ConjugacyFunctor::operator()(const Subgroup& p) const {
  auto it = table_.find(p.elems);
  if (it == table_.end())
    throw ValidationError("conjugacy functor applied outside the Sylow group");
  return it->second;
}

ConjugacyFunctor identity_functor(const FusionSystem& f) {
  return ConjugacyFunctor(f, "identity", [](const Subgroup& p) { return p; });
}

std::vector<Subgroup> functor_iterates(const FusionSystem& f, const ConjugacyFunctor& w,
                                       const Subgroup& p) {
  std::vector<Subgroup> out{p};
  for (long long i = 0; i <= f.sylow().order(); ++i) {
    Subgroup next = w(normalizer(f.sylow(), out.back()));
    if (next == out.back()) return out;
    out.push_back(std::move(next));
  }
  internal_check(false, "conjugacy functor iterates failed to stabilize");
  return out;
}

std::vector<Subgroup> well_placed(const FusionSystem& f, const ConjugacyFunctor& w) {
  std::vector<Subgroup> placed;
  for (const auto& p : f.all_subgroups()) {
    bool ok = true;
    for (const auto& it : functor_iterates(f, w, p))
      if (!f.is_fully_normalized(it)) {
        ok = false;
        break;
      }
    if (ok) placed.push_back(p);
  }
  // every subgroup must have a well placed conjugate; a miss is a bug
  for (const auto& p : f.all_subgroups()) {
    bool found = false;
    for (const auto& q : f.f_class(p))
      if (std::find(placed.begin(), placed.end(), q) != placed.end()) {
        found = true;
        break;
      }
    internal_check(found, "subgroup with no well placed conjugate");
  }
  return placed;
}

bool is_conjugation_family(const FusionSystem& f, const std::vector<Subgroup>& c) {
  using Morph = std::pair<std::vector<int>, std::vector<int>>;  // (dom, image)

  // the full morphism universe: conjugation maps between subgroups of S
  std::set<Morph> universe;
  const GroupPtr& gamma = f.group();
  const Subgroup& s = f.sylow();
  for (const auto& p : f.all_subgroups())
    for (int t = 0; t < static_cast<int>(gamma->order()); ++t) {
      std::vector<int> image;
      image.reserve(p.elems.size());
      for (int x : p.elems) image.push_back(gamma->conj(x, t));
      std::vector<int> sorted = image;
      std::sort(sorted.begin(), sorted.end());
      if (std::includes(s.elems.begin(), s.elems.end(), sorted.begin(), sorted.end()))
        universe.insert({p.elems, std::move(image)});
    }

  // seeds: automorphisms of members of c, restricted to each subgroup
  std::vector<Morph> seeds;
  std::set<Morph> seen;
  for (const auto& t : c) {
    if (!s.contains_subgroup(t))
      throw ValidationError("conjugation family candidates must be subgroups of the Sylow group");
    for (const auto& aut : f.aut_set(t))
      for (const auto& p : f.all_subgroups()) {
        if (!t.contains_subgroup(p)) continue;
        std::vector<int> image;
        image.reserve(p.elems.size());
        for (int x : p.elems) image.push_back(aut.apply(x));
        Morph m{p.elems, std::move(image)};
        if (seen.insert(m).second) seeds.push_back(std::move(m));
      }
  }

  // saturate under composition with seeds
  std::set<Morph> closure(seeds.begin(), seeds.end());
  std::vector<Morph> frontier(seeds.begin(), seeds.end());
  while (!frontier.empty()) {
    std::vector<Morph> next;
    for (const auto& phi : frontier) {
      std::vector<int> image_sorted = phi.second;
      std::sort(image_sorted.begin(), image_sorted.end());
      for (const auto& sigma : seeds) {
        if (!std::includes(sigma.first.begin(), sigma.first.end(), image_sorted.begin(),
                           image_sorted.end()))
          continue;
        std::vector<int> composed;
        composed.reserve(phi.second.size());
        for (int x : phi.second) {
          auto it = std::lower_bound(sigma.first.begin(), sigma.first.end(), x);
          composed.push_back(sigma.second[it - sigma.first.begin()]);
        }
        Morph m{phi.first, std::move(composed)};
        if (closure.insert(m).second) next.push_back(std::move(m));
      }
    }
    frontier = std::move(next);
  }

  for (const auto& m : universe)
    if (!closure.count(m)) return false;
  return true;
}

bool is_weakly_closed(const FusionSystem& f, const Subgroup& j) {
  if (!f.sylow().contains_subgroup(j))
    throw ValidationError("weak closure test needs a subgroup of the Sylow group");
  return weakly_closed_in(full_subgroup(f.group()), f.sylow(), j);
}

int burnside_fuse(const FusionSystem& f, const Subgroup& j, const Subgroup& x,
                  const Subgroup& y) {
  if (!is_abelian(j)) throw ValidationError("fusing subgroup must be abelian");
  if (!is_weakly_closed(f, j))
    throw ValidationError("fusing subgroup must be weakly closed");
  if (!j.contains_subgroup(x) || !j.contains_subgroup(y))
    throw ValidationError("both subgroups must lie inside the weakly closed one");
  const GroupPtr& gamma = f.group();
  bool conjugate = false;
  for (int t = 0; t < static_cast<int>(gamma->order()) && !conjugate; ++t)
    conjugate = conj_elems(x, t) == y.elems;
  if (!conjugate) throw ValidationError("subgroups are not conjugate in the group");
  for (int n : normalizer(full_subgroup(gamma), j).elems)
    if (conj_elems(x, n) == y.elems) return n;
  internal_check(false, "conjugate subgroups of a weakly closed abelian group "
                        "must fuse in its normalizer");
  return -1;
}

bool normalizer_image_check(const GeneralSetup& setup, const Subgroup& q) {
  Subgroup full = full_subgroup(setup.gamma);
  Subgroup cd = centralizer(full, setup.zy);
  if (!setup.sylow.contains_subgroup(q))
    throw ValidationError("normalizer image check needs a subgroup of S");
  if (!q.contains_subgroup(intersect(setup.sylow, cd)))
    throw ValidationError("normalizer image check needs C_S(D) inside the subgroup");

  QuotientGroup quot = quotient_group(full, cd);
  auto project = [&](const Subgroup& sub) {
    std::vector<int> elems;
    elems.reserve(sub.elems.size());
    for (int x : sub.elems) elems.push_back(quot.proj[x]);
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    return Subgroup{quot.group, std::move(elems)};
  };
  Subgroup image_norm = project(normalizer(full, q));
  Subgroup norm_image = normalizer(full_subgroup(quot.group), project(q));
  return image_norm == norm_image;
}

NormControlReport norm_control(const Action& act, const Subgroup& sylow,
                               const std::vector<Subgroup>& collection) {
  if (collection.empty()) throw ValidationError("norm control needs a nonempty collection");
  if (!act.actors.contains_subgroup(sylow))
    throw ValidationError("Sylow subgroup must lie in the acting group");
  if (!is_pgroup(sylow, act.module.prime))
    throw ValidationError("Sylow subgroup does not match the module prime");
  if ((act.actors.order() / sylow.order()) % act.module.prime == 0)
    throw ValidationError("subgroup is not Sylow in the acting group");

  NormControlReport report;
  report.j = collection.front();
  for (const auto& a : collection) {
    if (!sylow.contains_subgroup(a))
      throw ValidationError("collection members must be subgroups of the Sylow group");
    report.j = join(report.j, a);
  }
  report.weakly_closed = weakly_closed_in(act.actors, sylow, report.j);
  report.h = normalizer(act.actors, report.j);

  std::vector<Action> factors = composition_factors(act);
  report.factors_checked = static_cast<int>(factors.size());
  report.condition = true;
  std::vector<std::pair<Subgroup, int>> sylow_conjugates =
      distinct_conjugates(act.actors, sylow);
  for (const auto& factor : factors) {
    for (const auto& a : collection) {
      Action on_a = restrict_action(factor, a);
      for (const auto& [sg, witness] : sylow_conjugates) {
        (void)witness;
        if (sg.contains_subgroup(a)) continue;
        if (!norm_map_is_trivial(on_a, intersect(a, sg))) {
          report.condition = false;
          break;
        }
      }
      if (!report.condition) break;
    }
    if (!report.condition) break;
  }

  report.conclusion =
      fixed_points(act, report.h).elems == fixed_points(act, act.actors).elems;
  return report;
}

NormControlReport2 norm_control_socle(const Action& act, const Subgroup& sylow,
                                      const std::vector<Subgroup>& collection,
                                      const Subgroup& h) {
  if (collection.empty()) throw ValidationError("norm control needs a nonempty collection");
  if (!act.actors.contains_subgroup(sylow) || !act.actors.contains_subgroup(h))
    throw ValidationError("Sylow subgroup and H must lie in the acting group");
  if (!is_pgroup(sylow, act.module.prime))
    throw ValidationError("Sylow subgroup does not match the module prime");
  if ((act.actors.order() / sylow.order()) % act.module.prime == 0)
    throw ValidationError("subgroup is not Sylow in the acting group");

  NormControlReport2 report;
  report.j = collection.front();
  for (const auto& a : collection) {
    if (!sylow.contains_subgroup(a))
      throw ValidationError("collection members must be subgroups of the Sylow group");
    report.j = join(report.j, a);
  }
  if (!h.contains_subgroup(normalizer(act.actors, report.j)))
    throw ValidationError("H must contain the normalizer of the generated subgroup");
  report.h = h;
  report.weakly_closed = weakly_closed_in(act.actors, sylow, report.j);

  Submodule socle = omega1(act.module);
  std::vector<std::pair<Subgroup, int>> h_conjugates = distinct_conjugates(act.actors, h);

  report.memberwise_condition = true;
  for (const auto& a : collection) {
    Action on_a = restrict_action(act, a);
    for (const auto& [hg, witness] : h_conjugates) {
      (void)witness;
      if (hg.contains_subgroup(a)) continue;
      if (!norm_map_is_trivial_on(on_a, intersect(a, hg), socle)) {
        report.memberwise_condition = false;
        break;
      }
    }
    if (!report.memberwise_condition) break;
  }

  report.generated_condition = true;
  Action on_j = restrict_action(act, report.j);
  for (const auto& [hg, witness] : h_conjugates) {
    (void)witness;
    if (hg.contains_subgroup(report.j)) continue;
    if (!norm_map_is_trivial_on(on_j, intersect(report.j, hg), socle)) {
      report.generated_condition = false;
      break;
    }
  }

  report.conclusion =
      fixed_points(act, h).elems == fixed_points(act, act.actors).elems;
  return report;
}

}  // namespace fuslim
