#include "transiso/subgroup.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "iso_search.hpp"
#include "transiso/error.hpp"

namespace transiso {

struct Subgroup::CoreCache {
  std::once_flag once;
  ElementSet core;
};

Subgroup::Subgroup(const Group& parent, ElementSet elements)
    : parent_(&parent), elements_(std::move(elements)), core_(std::make_shared<CoreCache>()) {
  if (elements_.universe() != parent.order()) throw InvalidArgument("subgroup: element set has wrong universe");
  if (!elements_.contains(0)) throw InvalidArgument("subgroup: identity missing");
  order_ = elements_.count();
  generators_ = generating_set(parent, elements_);
  if (closure(parent, generators_) != elements_) throw InvalidArgument("subgroup: set is not closed");
  normal_ = true;
  for (Element s : parent.generators()) {
    for (Element h : generators_) {
      if (!elements_.contains(parent.mul(parent.mul(parent.inverse(s), h), s))) {
        normal_ = false;
        break;
      }
    }
    if (!normal_) break;
  }
}

Subgroup Subgroup::generated_by(const Group& parent, std::span<const Element> generators) {
  for (Element g : generators)
    if (g >= parent.order()) throw InvalidArgument("subgroup generator out of range");
  return Subgroup(parent, closure(parent, generators));
}

Subgroup Subgroup::trivial(const Group& parent) {
  ElementSet s(parent.order());
  s.insert(0);
  return Subgroup(parent, std::move(s));
}

Subgroup Subgroup::whole(const Group& parent) { return Subgroup(parent, parent.full_set()); }

const ElementSet& Subgroup::core_elements() const {
  std::call_once(core_->once, [this] {
    const Group& g = *parent_;
    ElementSet acc = elements_;
    for (Element x = 0; x < g.order() && acc.count() > 1; ++x) {
      ElementSet conj(g.order());
      elements_.for_each([&](Element h) { conj.insert(g.mul(g.mul(g.inverse(x), h), x)); });
      acc &= conj;
    }
    core_->core = std::move(acc);
  });
  return core_->core;
}

bool subgroup_less(const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  return a.elements() < b.elements();
}

std::vector<std::size_t> SubgroupLattice::maximal() const {
  std::vector<std::size_t> out;
  const std::size_t n = parent->order();
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i].order() == n) continue;
    bool maximal = true;
    for (std::size_t j = 0; j < all.size() && maximal; ++j) {
      if (all[j].order() <= all[i].order() || all[j].order() == n) continue;
      if (all[j].order() % all[i].order() != 0) continue;
      if (all[i].elements().is_subset_of(all[j].elements())) maximal = false;
    }
    if (maximal) out.push_back(i);
  }
  return out;
}

namespace {

struct Node {
  ElementSet set;
  std::vector<Element> gens;
};

// <U, x>, abandoning the closure once it grows past `limit`.
std::optional<ElementSet> bounded_join(const Group& g, const Node& u, Element x, std::size_t limit) {
  ElementSet seen = u.set;
  std::vector<Element> list = u.set.elements();
  std::size_t count = list.size();
  auto add = [&](Element y) {
    if (!seen.contains(y)) {
      seen.insert(y);
      list.push_back(y);
      ++count;
    }
  };
  add(x);
  for (std::size_t k = 0; k < list.size(); ++k) {
    for (Element s : u.gens) add(g.mul(list[k], s));
    add(g.mul(list[k], x));
    if (count > limit) return std::nullopt;
  }
  return seen;
}

bool is_prime_power(std::uint64_t n) { return n == 1 || prime_power_base(n) != 0; }

// All subgroups whose order divides `bound`.
std::vector<Node> subgroups_dividing(const Group& g, std::size_t bound) {
  std::vector<Node> seeds;
  std::unordered_set<ElementSet, ElementSetHash> seen;
  for (Element x = 1; x < g.order(); ++x) {
    const std::uint32_t o = g.element_order(x);
    if (bound % o != 0 || !is_prime_power(o)) continue;
    Element gen[] = {x};
    ElementSet c = closure(g, gen);
    if (seen.insert(c).second) seeds.push_back({std::move(c), {x}});
  }
  std::vector<Node> out;
  Node trivial{ElementSet(g.order()), {}};
  trivial.set.insert(0);
  seen.insert(trivial.set);
  out.push_back(trivial);
  for (auto& s : seeds) out.push_back(s);
  for (std::size_t k = 1; k < out.size(); ++k) {
    for (const Node& seed : seeds) {
      const Element x = seed.gens.front();
      if (out[k].set.contains(x)) continue;
      auto joined = bounded_join(g, out[k], x, bound);
      if (!joined) continue;
      const std::size_t order = joined->count();
      if (bound % order != 0) continue;
      if (!seen.insert(*joined).second) continue;
      Node node{std::move(*joined), out[k].gens};
      node.gens.push_back(x);
      out.push_back(std::move(node));
    }
  }
  return out;
}

struct CosetMap {
  std::vector<std::uint32_t> coset_of;
  std::vector<Element> reps;
};

CosetMap coset_map(const Group& g, const Subgroup& n) {
  CosetMap m;
  constexpr std::uint32_t kNone = ~0u;
  m.coset_of.assign(g.order(), kNone);
  for (Element x = 0; x < g.order(); ++x) {
    if (m.coset_of[x] != kNone) continue;
    const auto k = static_cast<std::uint32_t>(m.reps.size());
    m.reps.push_back(x);
    n.elements().for_each([&](Element h) { m.coset_of[g.mul(h, x)] = k; });
  }
  return m;
}

Group quotient_table(const Group& g, const CosetMap& m) {
  const std::size_t q = m.reps.size();
  std::vector<Element> t(q * q);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) t[i * q + j] = m.coset_of[g.mul(m.reps[i], m.reps[j])];
  return Group(std::move(t));
}

std::vector<std::uint64_t> automorphism_keys(const Group& g) {
  std::vector<std::uint64_t> keys(g.order());
  for (Element x = 0; x < g.order(); ++x) {
    std::uint64_t c = 0;
    for (Element y = 0; y < g.order(); ++y)
      if (g.mul(x, y) == g.mul(y, x)) ++c;
    keys[x] = (static_cast<std::uint64_t>(g.element_order(x)) << 32) | c;
  }
  return keys;
}

}  // namespace

std::vector<Subgroup> subgroups_of_order(const Group& g, std::size_t d) {
  if (d == 0 || g.order() % d != 0) {
    std::ostringstream os;
    os << d << " does not divide |G| = " << g.order();
    throw InvalidArgument(os.str());
  }
  std::vector<Subgroup> out;
  if (d == 1) {
    out.push_back(Subgroup::trivial(g));
    return out;
  }
  if (d == g.order()) {
    out.push_back(Subgroup::whole(g));
    return out;
  }
  for (auto& node : subgroups_dividing(g, d))
    if (node.set.count() == d) out.emplace_back(g, std::move(node.set));
  std::sort(out.begin(), out.end(), subgroup_less);
  return out;
}

SubgroupLattice all_subgroups(const Group& g, std::size_t lattice_max) {
  if (g.order() > lattice_max) {
    std::ostringstream os;
    os << "full subgroup lattice requested for |G| = " << g.order() << " above the lattice maximum "
       << lattice_max;
    throw OrderLimitExceeded(os.str());
  }
  SubgroupLattice lat;
  lat.parent = &g;
  for (auto& node : subgroups_dividing(g, g.order())) lat.all.emplace_back(g, std::move(node.set));
  std::sort(lat.all.begin(), lat.all.end(), subgroup_less);
  for (std::size_t i = 0; i < lat.all.size(); ++i) lat.by_order[lat.all[i].order()].push_back(i);
  return lat;
}

bool is_normal(const Subgroup& h) { return h.is_normal(); }

Subgroup core(const Subgroup& h) { return Subgroup(h.parent(), h.core_elements()); }

std::vector<Subgroup> conjugates(const Subgroup& h) {
  const Group& g = h.parent();
  std::unordered_set<ElementSet, ElementSetHash> seen;
  std::vector<Subgroup> out;
  for (Element x = 0; x < g.order(); ++x) {
    ElementSet conj(g.order());
    h.elements().for_each([&](Element e) { conj.insert(g.mul(g.mul(g.inverse(x), e), x)); });
    if (seen.insert(conj).second) out.emplace_back(g, std::move(conj));
  }
  std::sort(out.begin(), out.end(), subgroup_less);
  return out;
}

Subgroup normalizer(const Subgroup& h) {
  const Group& g = h.parent();
  ElementSet out(g.order());
  for (Element x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (Element e : h.generators())
      if (!h.contains(g.mul(g.mul(g.inverse(x), e), x))) {
        ok = false;
        break;
      }
    if (ok) out.insert(x);
  }
  return Subgroup(g, std::move(out));
}

Group quotient(const Group& g, const Subgroup& n) {
  if (&n.parent() != &g && !(n.parent() == g)) throw InvalidArgument("quotient: subgroup of another group");
  if (!n.is_normal()) throw InvalidArgument("quotient: subgroup is not normal");
  return quotient_table(g, coset_map(g, n));
}

std::vector<Subgroup> pgroup_maximal_subgroups(const Group& g) {
  const auto p = static_cast<std::uint32_t>(prime_power_base(g.order()));
  if (g.order() == 1) return {};
  if (p == 0) throw InvalidArgument("pgroup_maximal_subgroups: group is not a p-group");
  // N = G' G^p; G/N is elementary abelian.
  ElementSet nset = commutator_subgroup(g);
  std::vector<Element> ngens = generating_set(g, nset);
  for (Element x = 0; x < g.order(); ++x) {
    Element y = 0;
    for (std::uint32_t k = 0; k < p; ++k) y = g.mul(y, x);
    if (!nset.contains(y)) {
      nset = closure(g, nset, ngens, y);
      ngens.push_back(y);
    }
  }
  const Subgroup n(g, nset);
  const CosetMap cm = coset_map(g, n);
  const Group v = quotient_table(g, cm);
  const auto& basis = v.generators();
  const std::size_t rank = basis.size();
  // coordinates of each element of V in the greedy basis
  std::vector<std::vector<std::uint32_t>> coords(v.order());
  std::vector<std::uint32_t> c(rank, 0);
  std::size_t total = 1;
  for (std::size_t i = 0; i < rank; ++i) total *= p;
  if (total != v.order()) throw InternalError("Frattini quotient is not elementary abelian");
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t r = code;
    Element e = 0;
    for (std::size_t i = 0; i < rank; ++i) {
      c[i] = static_cast<std::uint32_t>(r % p);
      r /= p;
      for (std::uint32_t k = 0; k < c[i]; ++k) e = v.mul(e, basis[i]);
    }
    coords[e] = c;
  }
  std::vector<Subgroup> out;
  std::vector<std::uint32_t> f(rank, 0);
  for (std::size_t code = 1; code < total; ++code) {
    std::size_t r = code;
    for (std::size_t i = 0; i < rank; ++i) {
      f[i] = static_cast<std::uint32_t>(r % p);
      r /= p;
    }
    auto lead = std::find_if(f.begin(), f.end(), [](std::uint32_t a) { return a != 0; });
    if (*lead != 1) continue;  // one functional per hyperplane
    ElementSet m(g.order());
    for (Element x = 0; x < g.order(); ++x) {
      const auto& cx = coords[cm.coset_of[x]];
      std::uint64_t dot = 0;
      for (std::size_t i = 0; i < rank; ++i) dot += static_cast<std::uint64_t>(f[i]) * cx[i];
      if (dot % p == 0) m.insert(x);
    }
    out.emplace_back(g, std::move(m));
  }
  std::sort(out.begin(), out.end(), subgroup_less);
  return out;
}

std::vector<Subgroup> maximal_subgroups(const Group& g, std::size_t lattice_max) {
  if (prime_power_base(g.order()) != 0) return pgroup_maximal_subgroups(g);
  SubgroupLattice lat = all_subgroups(g, lattice_max);
  std::vector<Subgroup> out;
  for (std::size_t i : lat.maximal()) out.push_back(lat.all[i]);
  return out;
}

Subgroup frattini_from_lattice(const Group& g, std::size_t lattice_max) {
  SubgroupLattice lat = all_subgroups(g, lattice_max);
  ElementSet acc = g.full_set();
  for (std::size_t i : lat.maximal()) acc &= lat.all[i].elements();
  return Subgroup(g, std::move(acc));
}

Subgroup frattini(const Group& g, std::size_t lattice_max) {
  if (g.order() <= lattice_max) return frattini_from_lattice(g, lattice_max);
  if (prime_power_base(g.order()) == 0)
    throw OrderLimitExceeded("frattini: non-p-group above the lattice maximum");
  ElementSet acc = g.full_set();
  for (const auto& m : pgroup_maximal_subgroups(g)) acc &= m.elements();
  return Subgroup(g, std::move(acc));
}

bool product_is_whole(const Subgroup& h, const Subgroup& k) {
  const std::size_t inter = h.elements().intersection_count(k.elements());
  return h.order() * k.order() == h.parent().order() * inter;
}

bool is_automorphism_mapping(const Group& g, std::span<const Element> phi, const Subgroup& h1,
                             const Subgroup& h2) {
  detail::MagmaView v{g.order(), g.table()};
  if (!detail::preserves_table(v, v, phi)) return false;
  bool ok = true;
  h1.elements().for_each([&](Element x) { ok = ok && h2.contains(phi[x]); });
  return ok && h1.order() == h2.order();
}

std::optional<std::vector<Element>> find_automorphism_mapping(const Group& g, const Subgroup& h1,
                                                              const Subgroup& h2) {
  if (h1.order() != h2.order()) return std::nullopt;
  const std::size_t n = g.order();
  if (h1 == h2) {
    std::vector<Element> id(n);
    std::iota(id.begin(), id.end(), 0u);
    return id;
  }
  // inner automorphisms x -> c^-1 x c
  for (Element c = 0; c < n; ++c) {
    bool ok = true;
    for (Element h : h1.generators())
      if (!h2.contains(g.mul(g.mul(g.inverse(c), h), c))) {
        ok = false;
        break;
      }
    if (!ok) continue;
    std::vector<Element> phi(n);
    for (Element x = 0; x < n; ++x) phi[x] = g.mul(g.mul(g.inverse(c), x), c);
    return phi;
  }
  if (h1.is_normal() != h2.is_normal()) return std::nullopt;

  const auto keys = automorphism_keys(g);
  {
    std::vector<std::uint64_t> a, b;
    h1.elements().for_each([&](Element x) { a.push_back(keys[x]); });
    h2.elements().for_each([&](Element x) { b.push_back(keys[x]); });
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }
  std::map<std::uint64_t, std::size_t> freq;
  for (auto k : keys) ++freq[k];
  auto rarer = [&](Element x, Element y) {
    if (freq[keys[x]] != freq[keys[y]]) return freq[keys[x]] < freq[keys[y]];
    return g.element_order(x) > g.element_order(y);
  };
  std::vector<Element> inside = h1.elements().elements();
  std::stable_sort(inside.begin(), inside.end(), rarer);
  std::vector<Element> priority = generating_set(g, h1.elements(), inside);
  std::vector<Element> rest(n);
  std::iota(rest.begin(), rest.end(), 0u);
  std::stable_sort(rest.begin(), rest.end(), rarer);
  priority.insert(priority.end(), rest.begin(), rest.end());

  detail::IsoProblem p;
  p.from = detail::MagmaView{n, g.table()};
  p.to = p.from;
  p.mode = detail::ClosureMode::RightGenerators;
  p.generators = detail::greedy_generators(p.from, priority, p.mode);
  p.admissible = [&](Element x, Element y) {
    return keys[x] == keys[y] && h1.contains(x) == h2.contains(y);
  };
  for (Element x : p.generators) {
    std::vector<Element> cand;
    for (Element y = 0; y < n; ++y)
      if (p.admissible(x, y)) cand.push_back(y);
    p.candidates.push_back(std::move(cand));
  }
  auto phi = detail::find_isomorphism(p);
  if (!phi) return std::nullopt;
  if (!is_automorphism_mapping(g, *phi, h1, h2)) throw InternalError("automorphism post-check failed");
  return phi;
}

std::vector<Subgroup> semidirect_complements(const Group& g, const Subgroup& h, std::size_t lattice_max) {
  (void)lattice_max;
  const std::size_t target = g.order() / h.order();
  std::vector<Subgroup> candidates;
  const std::uint64_t p = prime_power_base(g.order());
  if (p != 0 && h.order() == p) {
    candidates = pgroup_maximal_subgroups(g);
  } else {
    for (auto& k : subgroups_of_order(g, target))
      if (k.is_normal()) candidates.push_back(std::move(k));
  }
  std::vector<Subgroup> out;
  for (auto& k : candidates)
    if (k.order() == target && k.elements().intersection_count(h.elements()) == 1) out.push_back(std::move(k));
  return out;
}

std::optional<Subgroup> semidirect_complement(const Group& g, const Subgroup& h, std::size_t lattice_max) {
  auto all = semidirect_complements(g, h, lattice_max);
  if (all.empty()) return std::nullopt;
  return all.front();
}

std::vector<Subgroup> complements(const Group& g, const Subgroup& h) {
  std::vector<Subgroup> out;
  for (auto& k : subgroups_of_order(g, g.order() / h.order()))
    if (k.elements().intersection_count(h.elements()) == 1) out.push_back(std::move(k));
  return out;
}

Group as_group(const Subgroup& h) {
  const Group& g = h.parent();
  std::vector<Element> elems = h.elements().elements();
  std::vector<Element> local(g.order(), 0);
  for (std::size_t i = 0; i < elems.size(); ++i) local[elems[i]] = static_cast<Element>(i);
  const std::size_t m = elems.size();
  std::vector<Element> t(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) t[i * m + j] = local[g.mul(elems[i], elems[j])];
  return Group(std::move(t));
}

bool is_cyclic(const Group& g) {
  for (Element x = 0; x < g.order(); ++x)
    if (g.element_order(x) == g.order()) return true;
  return false;
}

}  // namespace transiso
