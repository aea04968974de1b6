#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "transiso/element_set.hpp"
#include "transiso/group.hpp"

namespace transiso {

inline constexpr std::size_t kDefaultLatticeMax = 400;

/// A subgroup of a parent Group, stored as a bitset over the parent's
/// elements. The parent must outlive the Subgroup.
class Subgroup {
 public:
  Subgroup() = default;
  /// `elements` must already be a subgroup; throws InvalidArgument otherwise.
  Subgroup(const Group& parent, ElementSet elements);

  /// Subgroup generated by `generators`.
  static Subgroup generated_by(const Group& parent, std::span<const Element> generators);
  static Subgroup trivial(const Group& parent);
  static Subgroup whole(const Group& parent);

  const Group& parent() const { return *parent_; }
  const ElementSet& elements() const { return elements_; }
  std::size_t order() const { return order_; }
  std::size_t index() const { return parent_->order() / order_; }
  bool contains(Element e) const { return elements_.contains(e); }
  const std::vector<Element>& generators() const { return generators_; }
  bool is_normal() const { return normal_; }
  bool is_trivial() const { return order_ == 1; }
  bool is_whole() const { return order_ == parent_->order(); }

  /// Intersection of all conjugates; computed once and cached.
  const ElementSet& core_elements() const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.elements_ == b.elements_; }

 private:
  const Group* parent_ = nullptr;
  ElementSet elements_;
  std::size_t order_ = 0;
  std::vector<Element> generators_;
  bool normal_ = false;
  struct CoreCache;
  std::shared_ptr<CoreCache> core_;
};

/// Orders subgroups by (order, element list).
bool subgroup_less(const Subgroup& a, const Subgroup& b);

struct SubgroupLattice {
  const Group* parent = nullptr;
  std::vector<Subgroup> all;                               // sorted by subgroup_less
  std::map<std::size_t, std::vector<std::size_t>> by_order;  // order -> indices into `all`

  std::vector<std::size_t> maximal() const;
};

/// All subgroups of order d, sorted by subgroup_less. Grows joins of cyclic
/// subgroups, keeping only intermediate subgroups whose order divides d.
std::vector<Subgroup> subgroups_of_order(const Group& g, std::size_t d);

/// Every subgroup of g; throws OrderLimitExceeded above `lattice_max`.
SubgroupLattice all_subgroups(const Group& g, std::size_t lattice_max = kDefaultLatticeMax);

bool is_normal(const Subgroup& h);
Subgroup core(const Subgroup& h);
std::vector<Subgroup> conjugates(const Subgroup& h);
Subgroup normalizer(const Subgroup& h);

/// Quotient by a normal subgroup. Cosets are numbered by their smallest
/// element, so the identity coset is 0. Throws InvalidArgument if n is not
/// normal.
Group quotient(const Group& g, const Subgroup& n);

/// Subgroups of index p that contain G'G^p, obtained as preimages of the
/// hyperplanes of the elementary abelian quotient. Requires g to be a p-group.
std::vector<Subgroup> pgroup_maximal_subgroups(const Group& g);

/// Maximal subgroups: via the lattice when |G| <= lattice_max, via index-p
/// hyperplanes for p-groups otherwise.
std::vector<Subgroup> maximal_subgroups(const Group& g, std::size_t lattice_max = kDefaultLatticeMax);

/// Intersection of all maximal subgroups (whole group for the trivial group).
Subgroup frattini(const Group& g, std::size_t lattice_max = kDefaultLatticeMax);
/// Frattini subgroup from the full lattice only; throws above lattice_max.
Subgroup frattini_from_lattice(const Group& g, std::size_t lattice_max = kDefaultLatticeMax);

/// HK = G, tested via |H||K| / |H n K| = |G|.
bool product_is_whole(const Subgroup& h, const Subgroup& k);

/// An automorphism phi of G with phi(H1) = H2, if one exists. Inner
/// automorphisms are tried first. Returned as the image array phi[x].
std::optional<std::vector<Element>> find_automorphism_mapping(const Group& g, const Subgroup& h1,
                                                              const Subgroup& h2);

/// True iff phi is an automorphism of g mapping h1 onto h2.
bool is_automorphism_mapping(const Group& g, std::span<const Element> phi, const Subgroup& h1,
                             const Subgroup& h2);

/// Normal subgroups K with H n K = 1 and HK = G.
std::vector<Subgroup> semidirect_complements(const Group& g, const Subgroup& h,
                                             std::size_t lattice_max = kDefaultLatticeMax);
std::optional<Subgroup> semidirect_complement(const Group& g, const Subgroup& h,
                                              std::size_t lattice_max = kDefaultLatticeMax);

/// Subgroups K (not necessarily normal) with H n K = 1 and |H||K| = |G|.
std::vector<Subgroup> complements(const Group& g, const Subgroup& h);

/// Restriction of the parent table to a subgroup, re-indexed in increasing
/// element order (0 stays the identity).
Group as_group(const Subgroup& h);

bool is_cyclic(const Group& g);

}  // namespace transiso
