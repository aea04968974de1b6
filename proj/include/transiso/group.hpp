#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "transiso/element_set.hpp"

namespace transiso {

inline constexpr std::size_t kDefaultMaxOrder = 2000;

/// A finite group stored as its Cayley table.
///
/// Element 0 is always the identity. The table is row-major:
/// `table[i * n + j]` is the index of g_i * g_j. A Group is immutable after
/// construction and safe to share between threads.
class Group {
 public:
  Group() = default;

  /// Takes ownership of a row-major n*n table. Checks the shape, the identity
  /// at index 0 and the Latin-square property; associativity is checked
  /// separately by validate().
  Group(std::vector<Element> table, std::string label = {});

  std::size_t order() const { return n_; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  // Unchecked product.
  Element mul(Element a, Element b) const { return table_[a * n_ + b]; }
  Element inverse(Element a) const { return inverse_[a]; }
  std::uint32_t element_order(Element a) const { return orders_[a]; }

  std::span<const Element> table() const { return table_; }
  std::span<const Element> row(Element a) const {
    return std::span<const Element>(table_).subspan(a * n_, n_);
  }

  /// Small generating set, chosen greedily (largest element order first,
  /// ties by index).
  const std::vector<Element>& generators() const { return generators_; }

  ElementSet empty_set() const { return ElementSet(n_); }
  ElementSet full_set() const { return ElementSet::full(n_); }

  friend bool operator==(const Group& a, const Group& b) { return a.table_ == b.table_; }

 private:
  std::size_t n_ = 0;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
  std::vector<std::uint32_t> orders_;
  std::vector<Element> generators_;
  std::string label_;
};

enum class GroupKind {
  Cyclic,
  Dihedral,
  Symmetric,
  Alternating,
  Quaternion8,
  ExtraspecialExpP,
  ElementaryAbelian,
  DirectProduct,
  Cayley,
  Perm,
};

const char* to_string(GroupKind kind);

/// Declarative description of a group to construct.
///
/// Which fields are read depends on `kind`:
///   cyclic(n), dihedral(n) -> order 2n, symmetric(n), alternating(n),
///   quaternion8, extraspecial_exp_p(p), elementary_abelian(p, rank),
///   direct_product(factors), cayley(table), perm(degree, generators).
struct GroupSpec {
  GroupKind kind = GroupKind::Cyclic;
  std::uint32_t n = 1;
  std::uint32_t p = 0;
  std::uint32_t rank = 0;
  std::uint32_t degree = 0;
  std::vector<GroupSpec> factors;
  std::vector<std::vector<Element>> table;
  // Each generator lists the images of 0..degree-1.
  std::vector<std::vector<std::uint32_t>> generators;
  std::string label;

  static GroupSpec cyclic(std::uint32_t n);
  static GroupSpec dihedral(std::uint32_t n);
  static GroupSpec symmetric(std::uint32_t n);
  static GroupSpec alternating(std::uint32_t n);
  static GroupSpec quaternion8();
  static GroupSpec extraspecial_exp_p(std::uint32_t p);
  static GroupSpec elementary_abelian(std::uint32_t p, std::uint32_t rank);
  static GroupSpec direct_product(std::vector<GroupSpec> factors);
  static GroupSpec cayley(std::vector<std::vector<Element>> table);
  static GroupSpec perm(std::uint32_t degree, std::vector<std::vector<std::uint32_t>> generators);
};

struct BuildOptions {
  std::size_t max_order = kDefaultMaxOrder;
};

Group build(const GroupSpec& spec, const BuildOptions& options = {});

/// Checked product; throws InvalidArgument on out-of-range indices.
Element multiply(const Group& g, Element a, Element b);

/// Direct product A x B; the pair (a, b) has index a * |B| + b.
Group direct_product(const Group& a, const Group& b, std::size_t max_order = kDefaultMaxOrder);

/// Closure of permutations under composition. Product convention: x^(gh) =
/// (x^g)^h. Elements are numbered in BFS order from the identity, applying
/// generators in the given order.
Group permutation_closure(std::uint32_t degree,
                          const std::vector<std::vector<std::uint32_t>>& generators,
                          std::size_t max_order = kDefaultMaxOrder,
                          std::vector<std::vector<std::uint32_t>>* elements_out = nullptr);

/// Full check of the group axioms. Exhaustive over all triples up to
/// `exhaustive_limit`, otherwise over `samples` pseudo-random triples.
/// Returns an empty string when valid, otherwise a description of the first
/// violation.
std::string validate(const Group& g, std::size_t exhaustive_limit = 200, std::size_t samples = 200000);

bool is_abelian(const Group& g);
ElementSet center(const Group& g);
ElementSet commutator_subgroup(const Group& g);
ElementSet centralizer(const Group& g, Element x);

/// Subgroup generated by a set of elements.
ElementSet closure(const Group& g, std::span<const Element> generators);
/// Same, starting from an existing subgroup.
ElementSet closure(const Group& g, const ElementSet& start, std::span<const Element> start_generators,
                   Element extra);

/// Greedy generating set of a subgroup; elements of `prefer` are tried first.
std::vector<Element> generating_set(const Group& g, const ElementSet& subgroup,
                                    std::span<const Element> prefer = {});

/// True iff a multiplication-preserving bijection A -> B exists.
bool isomorphic(const Group& a, const Group& b);

/// Sorted multiset of element orders.
std::vector<std::uint32_t> order_statistics(const Group& g);

/// Prime factorisation helpers.
bool is_prime(std::uint64_t n);
/// If n = p^k with k >= 1, returns p; otherwise 0.
std::uint64_t prime_power_base(std::uint64_t n);
std::vector<std::size_t> divisors(std::size_t n);

}  // namespace transiso
