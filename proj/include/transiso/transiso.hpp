#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "transiso/group.hpp"
#include "transiso/rightloop.hpp"
#include "transiso/subgroup.hpp"

namespace transiso {

enum class Adjacency { Adjacent, NonAdjacent, Unknown };

// Which step of the decision cascade settled a pair.
enum class Rule {
  None,
  NormalQuotients,     // both normal: compare G/H1 and G/H2
  Automorphism,        // an automorphism maps H1 onto H2
  ComplementGroup,     // normal vs non-normal: a complement of one is isomorphic to the other quotient
  CorefreeGenerating,  // both corefree, NRTs of one always generate G, no automorphism
  ExhaustiveLoops,     // loop class sets of both subgroups compared in full
  SampledLoops,        // shared class found in a non-exhaustive sample
};

enum class Strategy { Auto, Exhaustive, Structural };

const char* to_string(Adjacency a);
const char* to_string(Rule r);
const char* to_string(Strategy s);

struct EdgeWitness {
  enum class Kind { None, Automorphism, Loops };
  Kind kind = Kind::None;
  std::vector<Element> automorphism;  // image array of an automorphism taking H1 to H2
  std::vector<Element> nrt1;          // NRT of H1 ...
  std::vector<Element> nrt2;          // ... and of H2 with isomorphic induced loops
};

struct EdgeDecision {
  Adjacency status = Adjacency::Unknown;
  Rule rule = Rule::None;
  EdgeWitness witness;
};

struct GraphOptions {
  std::uint64_t budget = kDefaultBudget;
  Strategy strategy = Strategy::Auto;
  unsigned workers = 1;
  std::size_t lattice_max = kDefaultLatticeMax;
};

/// Per-group caches shared by all pair decisions: maximal subgroups, quotient
/// groups and loop class sets. Safe to use from several threads.
class Analysis {
 public:
  Analysis(const Group& g, GraphOptions options = {});

  const Group& group() const { return *group_; }
  const GraphOptions& options() const { return options_; }

  /// Throws OrderLimitExceeded when neither the lattice nor the p-group route
  /// is available.
  const std::vector<Subgroup>& maximal_subgroups();
  /// No proper subgroup K has HK = G, i.e. every NRT of H generates G.
  bool all_nrts_generate(const Subgroup& h);
  const Group& quotient_of(const Subgroup& n);
  const LoopClassSet& class_set(const Subgroup& h);

 private:
  template <class T>
  struct Slot {
    std::once_flag once;
    std::optional<T> value;
  };
  template <class T>
  std::shared_ptr<Slot<T>> slot(std::map<std::vector<Element>, std::shared_ptr<Slot<T>>>& cache,
                                const Subgroup& h);

  const Group* group_;
  GraphOptions options_;
  std::mutex mutex_;
  std::once_flag maximal_once_;
  std::vector<Subgroup> maximal_;
  std::string maximal_error_;
  std::map<std::vector<Element>, std::shared_ptr<Slot<Group>>> quotients_;
  std::map<std::vector<Element>, std::shared_ptr<Slot<LoopClassSet>>> class_sets_;
  std::map<std::vector<Element>, std::shared_ptr<Slot<bool>>> generate_;
};

/// Decides whether two distinct subgroups of equal order are adjacent.
EdgeDecision adjacency(Analysis& analysis, const Subgroup& h1, const Subgroup& h2);
EdgeDecision adjacency(const Group& g, const Subgroup& h1, const Subgroup& h2, const GraphOptions& options = {});

bool all_nrts_generate(const Group& g, const Subgroup& h, std::size_t lattice_max = kDefaultLatticeMax);

struct TransisoGraph {
  const Group* group = nullptr;
  std::size_t d = 0;
  std::vector<Subgroup> vertices;
  // Upper triangle (i < j) in row-major order.
  std::vector<EdgeDecision> decisions;

  std::size_t pair_index(std::size_t i, std::size_t j) const;
  const EdgeDecision& edge(std::size_t i, std::size_t j) const { return decisions[pair_index(i, j)]; }
  Adjacency status(std::size_t i, std::size_t j) const { return edge(i, j).status; }
  bool has_unknown() const;
  std::size_t count(Adjacency a) const;
};

TransisoGraph build_graph(Analysis& analysis, std::size_t d);
TransisoGraph build_graph(const Group& g, std::size_t d, const GraphOptions& options = {});

/// Re-checks every witness and rule tag; returns a list of problems (empty
/// when sound).
std::vector<std::string> verify_graph(const TransisoGraph& graph);

enum class Verdict { Complete, NotComplete, Unknown };
const char* to_string(Verdict v);

struct CompletenessReport {
  std::size_t d = 0;
  Verdict verdict = Verdict::Unknown;
  std::size_t vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> non_edges;
  std::vector<std::pair<std::size_t, std::size_t>> unknown;
  std::map<Rule, std::size_t> rule_counts;
};

CompletenessReport completeness(const TransisoGraph& graph);
CompletenessReport is_complete(const Group& g, std::size_t d, const GraphOptions& options = {});
CompletenessReport is_complete(Analysis& analysis, std::size_t d);
std::map<std::size_t, CompletenessReport> complete_for_all_divisors(const Group& g, const GraphOptions& options = {});

/// For abelian G: every Sylow subgroup is cyclic or elementary abelian.
/// Throws InvalidArgument for non-abelian G.
bool abelian_sylow_criterion(const Group& g);

enum class CriterionVerdict { Complete, NotComplete, NotApplicable };
const char* to_string(CriterionVerdict v);

struct CriterionReport {
  CriterionVerdict verdict = CriterionVerdict::NotApplicable;
  std::string reason;
  std::optional<Subgroup> failing_h;
  std::optional<Subgroup> failing_l;
  // (H, K) with G = H x| K and K isomorphic to every G/L.
  std::vector<std::pair<Subgroup, Subgroup>> complements;
  std::size_t order_p_subgroups = 0;
  std::size_t central_order_p_subgroups = 0;
};

/// Completeness of the order-p transiso graph of a non-p-central p-group via
/// normal complements of the non-normal order-p subgroups. Throws
/// InvalidArgument unless |G| is a power of the prime p.
CriterionReport pgroup_gamma_p_criterion(const Group& g, std::uint64_t p);

struct ComplementCyclicReport {
  bool applicable = false;
  bool all_cyclic = false;
  std::string reason;
  std::optional<Subgroup> failing_h;
  std::vector<std::pair<Subgroup, Subgroup>> instances;
};

/// Checks the cyclic-complement property on an instance: if every non-normal
/// order-p H has a normal complement K whose order-p subgroups are all normal
/// in G and with K isomorphic to every G/L, then such K are cyclic.
ComplementCyclicReport verify_complement_cyclic_property(const Group& g, std::uint64_t p);

}  // namespace transiso
