#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "transiso/group.hpp"
#include "transiso/subgroup.hpp"

namespace transiso {

inline constexpr std::uint64_t kDefaultBudget = 2'000'000;

/// Right cosets Hx of a subgroup. Cosets are numbered by their smallest
/// element, so coset 0 is H itself; each coset's elements are sorted.
struct CosetDecomposition {
  std::vector<std::vector<Element>> cosets;
  std::vector<std::uint32_t> coset_of;

  std::size_t index() const { return cosets.size(); }
};

CosetDecomposition coset_decomposition(const Subgroup& h);

/// A normalized right transversal: one representative per right coset,
/// `reps()[i]` lying in coset i, with `reps()[0] == 0`.
///
/// Holds a pointer to the subgroup, which must outlive it.
class Transversal {
 public:
  Transversal(const Subgroup& h, std::shared_ptr<const CosetDecomposition> cosets, std::vector<Element> reps);

  /// Validates an arbitrary element list (any order) as an NRT of h.
  static Transversal from_elements(const Subgroup& h, std::span<const Element> elements);

  const Subgroup& subgroup() const { return *h_; }
  const Group& parent() const { return h_->parent(); }
  const CosetDecomposition& cosets() const { return *cosets_; }
  std::span<const Element> reps() const { return reps_; }
  std::size_t size() const { return reps_.size(); }
  std::uint32_t coset_of(Element g) const { return cosets_->coset_of[g]; }

  // Used by the enumerator to step in place.
  void set_rep(std::size_t coset, Element e) { reps_[coset] = e; }

 private:
  const Subgroup* h_;
  std::shared_ptr<const CosetDecomposition> cosets_;
  std::vector<Element> reps_;
};

/// |H|^([G:H] - 1).
boost::multiprecision::cpp_int nrt_count(const Subgroup& h);

/// Streams every NRT of H exactly once in mixed-radix lexicographic order of
/// the per-coset choices (last coset varies fastest). The first NRT picks the
/// smallest element of every coset.
class NrtEnumerator {
 public:
  /// Throws BudgetExceeded when nrt_count(h) > budget.
  NrtEnumerator(const Subgroup& h, std::uint64_t budget = kDefaultBudget);

  // Advances to the next NRT; the first call yields the first one.
  bool next();
  const Transversal& current() const { return current_; }
  std::uint64_t total() const { return total_; }

 private:
  std::shared_ptr<const CosetDecomposition> cosets_;
  Transversal current_;
  std::vector<std::uint32_t> digits_;
  std::uint64_t total_ = 0;
  bool started_ = false;
  bool done_ = false;
};

struct LoopFingerprint {
  std::size_t size = 0;
  // Sorted per-element signatures: right-power order, cycle type of the right
  // translation, image size of the left translation.
  std::vector<std::vector<std::uint32_t>> elements;

  friend bool operator==(const LoopFingerprint&, const LoopFingerprint&) = default;
  friend auto operator<=>(const LoopFingerprint&, const LoopFingerprint&) = default;
};

/// A finite magma with two-sided identity 0 and bijective right translations.
/// `table[x * m + y]` is x o y.
struct RightLoop {
  std::size_t size = 0;
  std::vector<Element> table;

  Element mul(Element x, Element y) const { return table[x * size + y]; }
  friend bool operator==(const RightLoop&, const RightLoop&) = default;
};

/// Empty string if both right-loop axioms hold.
std::string validate_loop(const RightLoop& loop);

/// x o y = the representative of the coset H x y; elements are labelled by
/// coset index.
RightLoop induced_loop(const Transversal& s);

/// Least k >= 1 with x^k = 0, where x^1 = x and x^k = x^(k-1) o x.
std::uint32_t right_power_order(const RightLoop& loop, Element x);
LoopFingerprint fingerprint(const RightLoop& loop);

/// Associativity of the loop table.
bool is_group_loop(const RightLoop& loop);

std::optional<std::vector<Element>> find_loop_isomorphism(const RightLoop& a, const RightLoop& b);
bool loops_isomorphic(const RightLoop& a, const RightLoop& b);

/// <S>, the subgroup generated by the transversal.
Subgroup generated_subgroup(const Transversal& s);
/// H_S, generated by all x y (x o y)^-1 for x, y in S.
Subgroup h_sub_s(const Transversal& s);

/// chi_S(g): coset i -> coset of reps[i] * g, as a permutation of 0..m-1.
std::vector<std::uint32_t> chi_s(const Transversal& s, Element g);

/// G_S = chi_S(H_S) as a permutation group on the coset labels.
Group group_torsion(const Transversal& s);

enum class ClassSource {
  Enumerated,      // every NRT visited
  NormalQuotient,  // H normal: the single class G/H, no enumeration needed
  Sampled,         // budget exceeded; subgroup transversals only
};

const char* to_string(ClassSource source);

struct LoopClass {
  RightLoop loop;
  LoopFingerprint fingerprint;
  std::vector<Element> witness;  // NRT reps whose loop is `loop`
  std::uint64_t members = 0;     // NRTs seen in this class
};

struct LoopClassSet {
  Subgroup subgroup;
  std::vector<LoopClass> representatives;  // sorted by (fingerprint, table)
  bool exhaustive = false;
  ClassSource source = ClassSource::Enumerated;
  std::uint64_t nrts_examined = 0;
};

/// Isomorphism classes of loops induced by NRTs of H. Enumerates all NRTs when
/// nrt_count(h) <= budget. Otherwise a normal H yields the quotient class
/// (every NRT of a normal H induces G/H, so this is exhaustive), and a non-normal H is sampled
/// by NRTs inside subgroups K with HK = G (flagged non-exhaustive).
LoopClassSet loop_class_set(const Subgroup& h, std::uint64_t budget = kDefaultBudget);

/// Loop of the group itself, for comparing against quotient groups.
RightLoop group_as_loop(const Group& g);

}  // namespace transiso
