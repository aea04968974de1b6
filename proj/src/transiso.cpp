#include "transiso/transiso.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include "transiso/error.hpp"

namespace transiso {

const char* to_string(Adjacency a) {
  switch (a) {
    case Adjacency::Adjacent: return "ADJACENT";
    case Adjacency::NonAdjacent: return "NON_ADJACENT";
    case Adjacency::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

const char* to_string(Rule r) {
  switch (r) {
    case Rule::None: return "none";
    case Rule::NormalQuotients: return "normal_quotients";
    case Rule::Automorphism: return "automorphism";
    case Rule::ComplementGroup: return "complement_group";
    case Rule::CorefreeGenerating: return "corefree_generating";
    case Rule::ExhaustiveLoops: return "exhaustive_loops";
    case Rule::SampledLoops: return "sampled_loops";
  }
  return "none";
}

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::Auto: return "auto";
    case Strategy::Exhaustive: return "exhaustive";
    case Strategy::Structural: return "structural";
  }
  return "auto";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Complete: return "COMPLETE";
    case Verdict::NotComplete: return "NOT_COMPLETE";
    case Verdict::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

const char* to_string(CriterionVerdict v) {
  switch (v) {
    case CriterionVerdict::Complete: return "COMPLETE";
    case CriterionVerdict::NotComplete: return "NOT_COMPLETE";
    case CriterionVerdict::NotApplicable: return "NOT_APPLICABLE";
  }
  return "NOT_APPLICABLE";
}

Analysis::Analysis(const Group& g, GraphOptions options) : group_(&g), options_(options) {
  if (options_.budget < 1) throw InvalidArgument("budget must be at least 1");
  if (options_.workers < 1) options_.workers = 1;
}

template <class T>
std::shared_ptr<Analysis::Slot<T>> Analysis::slot(std::map<std::vector<Element>, std::shared_ptr<Slot<T>>>& cache,
                                                  const Subgroup& h) {
  std::lock_guard<std::mutex> lock(mutex_);
  auto& s = cache[h.elements().elements()];
  if (!s) s = std::make_shared<Slot<T>>();
  return s;
}

const std::vector<Subgroup>& Analysis::maximal_subgroups() {
  std::call_once(maximal_once_, [this] {
    try {
      maximal_ = transiso::maximal_subgroups(*group_, options_.lattice_max);
    } catch (const OrderLimitExceeded& e) {
      maximal_error_ = e.what();
    }
  });
  if (!maximal_error_.empty()) throw OrderLimitExceeded(maximal_error_);
  return maximal_;
}

bool Analysis::all_nrts_generate(const Subgroup& h) {
  auto s = slot(generate_, h);
  const auto& maximal = maximal_subgroups();
  std::call_once(s->once, [&] {
    bool generate = true;
    for (const auto& m : maximal)
      if (product_is_whole(h, m)) {
        generate = false;
        break;
      }
    s->value = generate;
  });
  return *s->value;
}

const Group& Analysis::quotient_of(const Subgroup& n) {
  auto s = slot(quotients_, n);
  std::call_once(s->once, [&] { s->value = quotient(*group_, n); });
  return *s->value;
}

const LoopClassSet& Analysis::class_set(const Subgroup& h) {
  auto s = slot(class_sets_, h);
  std::call_once(s->once, [&] { s->value = loop_class_set(h, options_.budget); });
  return *s->value;
}

namespace {

std::vector<Element> first_nrt(const Subgroup& h) {
  const CosetDecomposition cd = coset_decomposition(h);
  std::vector<Element> reps;
  for (const auto& c : cd.cosets) reps.push_back(c.front());
  return reps;
}

RightLoop loop_of(const Subgroup& h, std::span<const Element> elements) {
  return induced_loop(Transversal::from_elements(h, elements));
}

EdgeDecision loops_witness(Rule rule, std::vector<Element> nrt1, std::vector<Element> nrt2) {
  EdgeDecision d;
  d.status = Adjacency::Adjacent;
  d.rule = rule;
  d.witness.kind = EdgeWitness::Kind::Loops;
  d.witness.nrt1 = std::move(nrt1);
  d.witness.nrt2 = std::move(nrt2);
  return d;
}

EdgeDecision verdict(Adjacency a, Rule r) {
  EdgeDecision d;
  d.status = a;
  d.rule = r;
  return d;
}

// Normal N against non-normal K: a complement of K is a group NRT of K; it
// witnesses adjacency when it is isomorphic to G/N.
std::optional<EdgeDecision> complement_precheck(Analysis& an, const Subgroup& normal, const Subgroup& other,
                                                bool normal_first) {
  const Group& q = an.quotient_of(normal);
  for (const auto& k : complements(an.group(), other)) {
    if (!isomorphic(as_group(k), q)) continue;
    std::vector<Element> kn = k.elements().elements();
    std::vector<Element> nn = first_nrt(normal);
    if (!loops_isomorphic(loop_of(normal, nn), loop_of(other, kn)))
      throw InternalError("complement precheck produced non-isomorphic loops");
    return normal_first ? loops_witness(Rule::ComplementGroup, std::move(nn), std::move(kn))
                        : loops_witness(Rule::ComplementGroup, std::move(kn), std::move(nn));
  }
  return std::nullopt;
}

std::optional<EdgeDecision> shared_class(const LoopClassSet& a, const LoopClassSet& b, Rule rule) {
  for (const auto& ca : a.representatives) {
    for (const auto& cb : b.representatives) {
      if (ca.fingerprint != cb.fingerprint) continue;
      if (loops_isomorphic(ca.loop, cb.loop)) return loops_witness(rule, ca.witness, cb.witness);
    }
  }
  return std::nullopt;
}

}  // namespace

EdgeDecision adjacency(Analysis& an, const Subgroup& h1, const Subgroup& h2) {
  const Group& g = an.group();
  if (h1.order() != h2.order()) throw InvalidArgument("adjacency: subgroups of different orders");
  if (&h1.parent() != &g || &h2.parent() != &g) throw InvalidArgument("adjacency: subgroups of another group");
  if (h1 == h2) throw InvalidArgument("adjacency: a vertex is not adjacent to itself");
  const Strategy strategy = an.options().strategy;

  if (strategy != Strategy::Exhaustive) {
    if (h1.is_normal() && h2.is_normal()) {
      if (!isomorphic(an.quotient_of(h1), an.quotient_of(h2))) return verdict(Adjacency::NonAdjacent, Rule::NormalQuotients);
      auto n1 = first_nrt(h1), n2 = first_nrt(h2);
      if (!loops_isomorphic(loop_of(h1, n1), loop_of(h2, n2)))
        throw InternalError("isomorphic quotients gave non-isomorphic loops");
      return loops_witness(Rule::NormalQuotients, std::move(n1), std::move(n2));
    }
    if (auto phi = find_automorphism_mapping(g, h1, h2)) {
      EdgeDecision d = verdict(Adjacency::Adjacent, Rule::Automorphism);
      d.witness.kind = EdgeWitness::Kind::Automorphism;
      d.witness.automorphism = std::move(*phi);
      return d;
    }
    if (h1.is_normal() != h2.is_normal()) {
      auto hit = h1.is_normal() ? complement_precheck(an, h1, h2, true) : complement_precheck(an, h2, h1, false);
      if (hit) return *hit;
    }
    if (h1.core_elements().count() == 1 && h2.core_elements().count() == 1) {
      try {
        if (an.all_nrts_generate(h1) || an.all_nrts_generate(h2))
          return verdict(Adjacency::NonAdjacent, Rule::CorefreeGenerating);
      } catch (const OrderLimitExceeded&) {
        // no maximal subgroups available; fall through
      }
    }
  }

  if (strategy != Strategy::Structural) {
    const LoopClassSet& a = an.class_set(h1);
    const LoopClassSet& b = an.class_set(h2);
    const bool full = a.exhaustive && b.exhaustive;
    if (auto hit = shared_class(a, b, full ? Rule::ExhaustiveLoops : Rule::SampledLoops)) return *hit;
    if (full) return verdict(Adjacency::NonAdjacent, Rule::ExhaustiveLoops);
  }
  return verdict(Adjacency::Unknown, Rule::None);
}

EdgeDecision adjacency(const Group& g, const Subgroup& h1, const Subgroup& h2, const GraphOptions& options) {
  Analysis an(g, options);
  return adjacency(an, h1, h2);
}

bool all_nrts_generate(const Group& g, const Subgroup& h, std::size_t lattice_max) {
  GraphOptions o;
  o.lattice_max = lattice_max;
  Analysis an(g, o);
  return an.all_nrts_generate(h);
}

std::size_t TransisoGraph::pair_index(std::size_t i, std::size_t j) const {
  if (i == j || i >= vertices.size() || j >= vertices.size()) throw InvalidArgument("bad vertex pair");
  if (i > j) std::swap(i, j);
  const std::size_t n = vertices.size();
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

bool TransisoGraph::has_unknown() const { return count(Adjacency::Unknown) > 0; }

std::size_t TransisoGraph::count(Adjacency a) const {
  return static_cast<std::size_t>(
      std::count_if(decisions.begin(), decisions.end(), [&](const EdgeDecision& d) { return d.status == a; }));
}

TransisoGraph build_graph(Analysis& an, std::size_t d) {
  const Group& g = an.group();
  TransisoGraph graph;
  graph.group = &g;
  graph.d = d;
  graph.vertices = subgroups_of_order(g, d);
  const std::size_t n = graph.vertices.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  graph.decisions.resize(pairs.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(an.options().workers, static_cast<unsigned>(pairs.size())));
  auto work = [&](unsigned w) {
    for (std::size_t k = w; k < pairs.size(); k += workers)
      graph.decisions[k] = adjacency(an, graph.vertices[pairs[k].first], graph.vertices[pairs[k].second]);
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w)
      threads.emplace_back([&, w] {
        try {
          work(w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& t : threads) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  return graph;
}

TransisoGraph build_graph(const Group& g, std::size_t d, const GraphOptions& options) {
  Analysis an(g, options);
  return build_graph(an, d);
}

std::vector<std::string> verify_graph(const TransisoGraph& graph) {
  std::vector<std::string> problems;
  const Group& g = *graph.group;
  const std::size_t n = graph.vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const EdgeDecision& e = graph.edge(i, j);
      std::ostringstream where;
      where << "edge (" << i << "," << j << "): ";
      const Subgroup& a = graph.vertices[i];
      const Subgroup& b = graph.vertices[j];
      if (e.status == Adjacency::Adjacent) {
        if (e.witness.kind == EdgeWitness::Kind::Automorphism) {
          if (!is_automorphism_mapping(g, e.witness.automorphism, a, b))
            problems.push_back(where.str() + "automorphism witness fails");
        } else if (e.witness.kind == EdgeWitness::Kind::Loops) {
          try {
            if (!loops_isomorphic(loop_of(a, e.witness.nrt1), loop_of(b, e.witness.nrt2)))
              problems.push_back(where.str() + "witness loops are not isomorphic");
          } catch (const Error& ex) {
            problems.push_back(where.str() + "invalid witness transversal: " + ex.what());
          }
        } else {
          problems.push_back(where.str() + "adjacent edge without witness");
        }
      } else if (e.status == Adjacency::NonAdjacent) {
        if (e.rule != Rule::NormalQuotients && e.rule != Rule::CorefreeGenerating && e.rule != Rule::ExhaustiveLoops)
          problems.push_back(where.str() + "non-adjacency without a proving rule");
      }
    }
  }
  return problems;
}

CompletenessReport completeness(const TransisoGraph& graph) {
  CompletenessReport r;
  r.d = graph.d;
  r.vertices = graph.vertices.size();
  const std::size_t n = graph.vertices.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& e = graph.edge(i, j);
      ++r.rule_counts[e.rule];
      if (e.status == Adjacency::NonAdjacent) r.non_edges.emplace_back(i, j);
      if (e.status == Adjacency::Unknown) r.unknown.emplace_back(i, j);
    }
  if (!r.non_edges.empty())
    r.verdict = Verdict::NotComplete;
  else if (!r.unknown.empty())
    r.verdict = Verdict::Unknown;
  else
    r.verdict = Verdict::Complete;
  return r;
}

CompletenessReport is_complete(Analysis& an, std::size_t d) { return completeness(build_graph(an, d)); }

CompletenessReport is_complete(const Group& g, std::size_t d, const GraphOptions& options) {
  Analysis an(g, options);
  return is_complete(an, d);
}

std::map<std::size_t, CompletenessReport> complete_for_all_divisors(const Group& g, const GraphOptions& options) {
  Analysis an(g, options);
  std::map<std::size_t, CompletenessReport> out;
  for (std::size_t d : divisors(g.order())) out.emplace(d, is_complete(an, d));
  return out;
}

bool abelian_sylow_criterion(const Group& g) {
  if (!is_abelian(g)) throw InvalidArgument("abelian_sylow_criterion: group is not abelian");
  std::size_t n = g.order();
  for (std::size_t p = 2; p <= n; ++p) {
    if (n % p != 0 || !is_prime(p)) continue;
    std::size_t sylow = 1;
    for (std::size_t m = g.order(); m % p == 0; m /= p) sylow *= p;
    bool cyclic = false, elementary = true;
    for (Element x = 0; x < g.order(); ++x) {
      const std::uint32_t o = g.element_order(x);
      if (o == 1 || prime_power_base(o) != p) continue;
      if (o == sylow) cyclic = true;
      if (o != p) elementary = false;
    }
    if (!cyclic && !elementary) return false;
  }
  return true;
}

namespace {

void require_pgroup(const Group& g, std::uint64_t p) {
  if (!is_prime(p) || prime_power_base(g.order()) != p) {
    std::ostringstream os;
    os << "criterion requires a p-group: |G| = " << g.order() << " is not a power of p = " << p;
    throw InvalidArgument(os.str());
  }
}

struct OrderPData {
  std::vector<Subgroup> central;
  std::vector<Subgroup> non_normal;
  std::size_t total = 0;
};

OrderPData order_p_subgroups(const Group& g, std::uint64_t p) {
  OrderPData d;
  const ElementSet z = center(g);
  for (auto& s : subgroups_of_order(g, p)) {
    ++d.total;
    if (s.elements().is_subset_of(z)) {
      d.central.push_back(std::move(s));
    } else {
      if (s.is_normal()) throw InternalError("normal order-p subgroup outside the center");
      d.non_normal.push_back(std::move(s));
    }
  }
  return d;
}

}  // namespace

CriterionReport pgroup_gamma_p_criterion(const Group& g, std::uint64_t p) {
  require_pgroup(g, p);
  CriterionReport r;
  if (is_abelian(g)) {
    r.reason = "group is abelian";
    return r;
  }
  OrderPData data = order_p_subgroups(g, p);
  r.order_p_subgroups = data.total;
  r.central_order_p_subgroups = data.central.size();
  if (data.non_normal.empty()) {
    r.reason = "group is p-central: every subgroup of order p is central";
    return r;
  }
  std::vector<Group> quotients;
  for (const auto& l : data.central) quotients.push_back(quotient(g, l));
  const std::vector<Subgroup> maximal = pgroup_maximal_subgroups(g);
  // Index of the first L with M not isomorphic to G/L, or -1 if none.
  std::vector<long> first_bad(maximal.size(), -1);
  for (std::size_t m = 0; m < maximal.size(); ++m) {
    const Group km = as_group(maximal[m]);
    for (std::size_t l = 0; l < quotients.size(); ++l)
      if (!isomorphic(km, quotients[l])) {
        first_bad[m] = static_cast<long>(l);
        break;
      }
  }
  for (const auto& h : data.non_normal) {
    std::optional<std::size_t> good, any;
    for (std::size_t m = 0; m < maximal.size(); ++m) {
      if (maximal[m].elements().intersection_count(h.elements()) != 1) continue;
      if (!any) any = m;
      if (first_bad[m] < 0) {
        good = m;
        break;
      }
    }
    if (!good) {
      r.verdict = CriterionVerdict::NotComplete;
      r.failing_h = h;
      if (any) {
        r.failing_l = data.central[static_cast<std::size_t>(first_bad[*any])];
        r.reason = "no normal complement of H is isomorphic to G/L for every central L of order p";
      } else {
        r.reason = "H has no normal complement";
      }
      r.complements.clear();
      return r;
    }
    r.complements.emplace_back(h, maximal[*good]);
  }
  r.verdict = CriterionVerdict::Complete;
  r.reason = "every non-normal H of order p has a normal complement isomorphic to every G/L";
  return r;
}

ComplementCyclicReport verify_complement_cyclic_property(const Group& g, std::uint64_t p) {
  require_pgroup(g, p);
  ComplementCyclicReport r;
  OrderPData data = order_p_subgroups(g, p);
  if (data.non_normal.empty()) {
    r.reason = "no non-normal subgroup of order p";
    return r;
  }
  std::vector<Group> quotients;
  for (const auto& l : data.central) quotients.push_back(quotient(g, l));
  for (const auto& h : data.non_normal) {
    bool found = false;
    for (auto& k : semidirect_complements(g, h)) {
      bool ok = true;
      for (const auto& s : subgroups_of_order(g, p))
        if (s.elements().is_subset_of(k.elements()) && !s.is_normal()) {
          ok = false;
          break;
        }
      if (!ok) continue;
      const Group kg = as_group(k);
      for (const auto& q : quotients)
        if (!isomorphic(kg, q)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      found = true;
      r.instances.emplace_back(h, std::move(k));
    }
    if (!found) {
      r.applicable = false;
      r.failing_h = h;
      r.instances.clear();
      r.reason = "hypotheses fail: some non-normal H has no admissible complement";
      return r;
    }
  }
  r.applicable = true;
  r.all_cyclic = std::all_of(r.instances.begin(), r.instances.end(),
                             [](const auto& hk) { return is_cyclic(as_group(hk.second)); });
  r.reason = r.all_cyclic ? "every admissible complement is cyclic" : "an admissible complement is not cyclic";
  return r;
}

}  // namespace transiso
