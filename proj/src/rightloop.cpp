#include "transiso/rightloop.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "iso_search.hpp"
#include "transiso/error.hpp"

namespace transiso {

namespace {

using Signature = std::vector<std::uint32_t>;

std::vector<Signature> element_signatures(const RightLoop& loop) {
  const std::size_t m = loop.size;
  std::vector<Signature> sig(m);
  std::vector<bool> seen(m);
  std::vector<bool> image(m);
  for (Element x = 0; x < m; ++x) {
    Signature s;
    s.push_back(right_power_order(loop, x));
    std::vector<std::uint32_t> cycles;
    std::fill(seen.begin(), seen.end(), false);
    for (Element y = 0; y < m; ++y) {
      if (seen[y]) continue;
      std::uint32_t len = 0;
      for (Element z = y; !seen[z]; z = loop.mul(z, x)) {
        seen[z] = true;
        ++len;
      }
      cycles.push_back(len);
    }
    std::sort(cycles.rbegin(), cycles.rend());
    s.push_back(static_cast<std::uint32_t>(cycles.size()));
    s.insert(s.end(), cycles.begin(), cycles.end());
    std::fill(image.begin(), image.end(), false);
    std::uint32_t img = 0;
    for (Element y = 0; y < m; ++y) {
      Element v = loop.mul(x, y);
      if (!image[v]) {
        image[v] = true;
        ++img;
      }
    }
    s.push_back(img);
    sig[x] = std::move(s);
  }
  return sig;
}

LoopFingerprint fingerprint_from(std::size_t m, std::vector<Signature> sig) {
  std::sort(sig.begin(), sig.end());
  return LoopFingerprint{m, std::move(sig)};
}

std::optional<std::vector<Element>> loop_iso(const RightLoop& a, const std::vector<Signature>& sa,
                                             const RightLoop& b, const std::vector<Signature>& sb) {
  if (a.size != b.size) return std::nullopt;
  const std::size_t m = a.size;
  std::map<Signature, std::uint32_t> ids;
  std::vector<std::uint32_t> ka(m), kb(m);
  for (Element x = 0; x < m; ++x) ka[x] = ids.emplace(sa[x], static_cast<std::uint32_t>(ids.size())).first->second;
  for (Element x = 0; x < m; ++x) {
    auto it = ids.find(sb[x]);
    if (it == ids.end()) return std::nullopt;
    kb[x] = it->second;
  }
  std::vector<std::size_t> freq_a(ids.size(), 0), freq_b(ids.size(), 0);
  for (Element x = 0; x < m; ++x) {
    ++freq_a[ka[x]];
    ++freq_b[kb[x]];
  }
  if (freq_a != freq_b) return std::nullopt;

  detail::IsoProblem p;
  p.from = detail::MagmaView{m, a.table};
  p.to = detail::MagmaView{m, b.table};
  p.mode = detail::ClosureMode::AllPairs;
  std::vector<Element> priority(m);
  std::iota(priority.begin(), priority.end(), 0u);
  std::stable_sort(priority.begin(), priority.end(),
                   [&](Element x, Element y) { return freq_a[ka[x]] < freq_a[ka[y]]; });
  p.generators = detail::greedy_generators(p.from, priority, p.mode);
  for (Element g : p.generators) {
    std::vector<Element> cand;
    for (Element y = 0; y < m; ++y)
      if (kb[y] == ka[g]) cand.push_back(y);
    p.candidates.push_back(std::move(cand));
  }
  p.admissible = [&](Element x, Element y) { return ka[x] == kb[y]; };
  auto phi = detail::find_isomorphism(p);
  if (phi && !detail::preserves_table(p.from, p.to, *phi)) throw InternalError("loop isomorphism post-check failed");
  return phi;
}

// Mixed-radix walk over one choice per coset, coset 0 pinned to its first
// choice. Stops early when `visit` returns false.
template <class Visit>
void for_each_choice(const std::vector<std::vector<Element>>& choices, std::vector<Element>& reps, Visit&& visit) {
  const std::size_t m = choices.size();
  for (const auto& c : choices)
    if (c.empty()) return;
  std::vector<std::uint32_t> digits(m, 0);
  for (std::size_t i = 0; i < m; ++i) reps[i] = choices[i][0];
  while (true) {
    if (!visit()) return;
    std::size_t i = m;
    bool advanced = false;
    while (i > 1 && !advanced) {
      --i;
      if (++digits[i] < choices[i].size()) {
        reps[i] = choices[i][digits[i]];
        advanced = true;
      } else {
        digits[i] = 0;
        reps[i] = choices[i][0];
      }
    }
    if (!advanced) return;
  }
}

struct ClassBuilder {
  struct Entry {
    LoopClass cls;
    std::vector<Signature> sig;
  };
  std::vector<Entry> entries;
  std::map<LoopFingerprint, std::vector<std::size_t>> buckets;
  struct TableHash {
    std::size_t operator()(const std::vector<Element>& t) const {
      std::uint64_t h = 1469598103934665603ull;
      for (auto v : t) {
        h ^= v;
        h *= 1099511628211ull;
      }
      return static_cast<std::size_t>(h);
    }
  };
  std::unordered_map<std::vector<Element>, std::size_t, TableHash> seen_tables;
  std::size_t table_cap = 0;

  explicit ClassBuilder(std::size_t m) {
    const std::size_t cells = std::max<std::size_t>(1, m * m);
    table_cap = std::max<std::size_t>(1024, (std::size_t{1} << 24) / cells);
  }

  void add(RightLoop loop, std::span<const Element> reps) {
    if (auto it = seen_tables.find(loop.table); it != seen_tables.end()) {
      ++entries[it->second].cls.members;
      return;
    }
    auto sig = element_signatures(loop);
    LoopFingerprint fp = fingerprint_from(loop.size, sig);
    auto& bucket = buckets[fp];
    std::size_t cls = entries.size();
    for (std::size_t idx : bucket) {
      if (loop_iso(loop, sig, entries[idx].cls.loop, entries[idx].sig)) {
        cls = idx;
        break;
      }
    }
    if (cls == entries.size()) {
      bucket.push_back(cls);
      entries.push_back(Entry{LoopClass{loop, std::move(fp), {reps.begin(), reps.end()}, 1}, std::move(sig)});
    } else {
      auto& e = entries[cls];
      ++e.cls.members;
      if (loop.table < e.cls.loop.table) {
        e.cls.loop = loop;
        e.cls.witness.assign(reps.begin(), reps.end());
        e.sig = std::move(sig);
      }
    }
    if (seen_tables.size() < table_cap) seen_tables.emplace(std::move(loop.table), cls);
  }

  std::vector<LoopClass> finish() {
    std::vector<LoopClass> out;
    for (auto& e : entries) out.push_back(std::move(e.cls));
    std::sort(out.begin(), out.end(), [](const LoopClass& a, const LoopClass& b) {
      if (a.fingerprint != b.fingerprint) return a.fingerprint < b.fingerprint;
      return a.loop.table < b.loop.table;
    });
    return out;
  }
};

RightLoop loop_from(const Group& g, const CosetDecomposition& cd, std::span<const Element> reps) {
  const std::size_t m = reps.size();
  RightLoop l;
  l.size = m;
  l.table.resize(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) l.table[i * m + j] = cd.coset_of[g.mul(reps[i], reps[j])];
  return l;
}

}  // namespace

CosetDecomposition coset_decomposition(const Subgroup& h) {
  const Group& g = h.parent();
  CosetDecomposition cd;
  constexpr std::uint32_t kNone = ~0u;
  cd.coset_of.assign(g.order(), kNone);
  const std::vector<Element> helems = h.elements().elements();
  for (Element x = 0; x < g.order(); ++x) {
    if (cd.coset_of[x] != kNone) continue;
    const auto k = static_cast<std::uint32_t>(cd.cosets.size());
    std::vector<Element> coset;
    coset.reserve(helems.size());
    for (Element e : helems) {
      Element y = g.mul(e, x);
      cd.coset_of[y] = k;
      coset.push_back(y);
    }
    std::sort(coset.begin(), coset.end());
    cd.cosets.push_back(std::move(coset));
  }
  return cd;
}

Transversal::Transversal(const Subgroup& h, std::shared_ptr<const CosetDecomposition> cosets,
                         std::vector<Element> reps)
    : h_(&h), cosets_(std::move(cosets)), reps_(std::move(reps)) {
  if (reps_.size() != cosets_->index()) throw InvalidArgument("transversal: wrong number of representatives");
  if (reps_.empty() || reps_[0] != 0) throw InvalidArgument("transversal: not normalized (identity missing)");
  for (std::size_t i = 0; i < reps_.size(); ++i) {
    if (reps_[i] >= h.parent().order() || cosets_->coset_of[reps_[i]] != i)
      throw InvalidArgument("transversal: representative outside its coset");
  }
}

Transversal Transversal::from_elements(const Subgroup& h, std::span<const Element> elements) {
  auto cd = std::make_shared<const CosetDecomposition>(coset_decomposition(h));
  constexpr Element kNone = ~0u;
  std::vector<Element> reps(cd->index(), kNone);
  for (Element e : elements) {
    if (e >= h.parent().order()) throw InvalidArgument("transversal: element out of range");
    auto c = cd->coset_of[e];
    if (reps[c] != kNone) throw InvalidArgument("transversal: two elements in one coset");
    reps[c] = e;
  }
  for (Element r : reps)
    if (r == kNone) throw InvalidArgument("transversal: a coset has no representative");
  return Transversal(h, std::move(cd), std::move(reps));
}

boost::multiprecision::cpp_int nrt_count(const Subgroup& h) {
  boost::multiprecision::cpp_int c = 1;
  for (std::size_t i = 1; i < h.index(); ++i) c *= h.order();
  return c;
}

namespace {
std::shared_ptr<const CosetDecomposition> checked_cosets(const Subgroup& h, std::uint64_t budget,
                                                         std::uint64_t& total) {
  const auto count = nrt_count(h);
  if (count > budget) {
    std::ostringstream os;
    os << "NRT enumeration of " << count << " transversals exceeds budget " << budget;
    throw BudgetExceeded(os.str());
  }
  total = count.convert_to<std::uint64_t>();
  return std::make_shared<const CosetDecomposition>(coset_decomposition(h));
}

std::vector<Element> first_reps(const CosetDecomposition& cd) {
  std::vector<Element> r;
  for (const auto& c : cd.cosets) r.push_back(c.front());
  return r;
}
}  // namespace

NrtEnumerator::NrtEnumerator(const Subgroup& h, std::uint64_t budget)
    : cosets_(checked_cosets(h, budget, total_)),
      current_(h, cosets_, first_reps(*cosets_)),
      digits_(cosets_->index(), 0) {}

bool NrtEnumerator::next() {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    return true;
  }
  const auto& cs = cosets_->cosets;
  std::size_t i = cs.size();
  while (i > 1) {
    --i;
    if (++digits_[i] < cs[i].size()) {
      current_.set_rep(i, cs[i][digits_[i]]);
      return true;
    }
    digits_[i] = 0;
    current_.set_rep(i, cs[i][0]);
  }
  done_ = true;
  return false;
}

std::string validate_loop(const RightLoop& loop) {
  const std::size_t m = loop.size;
  if (loop.table.size() != m * m) return "table has wrong size";
  for (Element x = 0; x < m; ++x) {
    if (loop.mul(x, 0) != x || loop.mul(0, x) != x) return "0 is not a two-sided identity";
  }
  std::vector<bool> hit(m);
  for (Element y = 0; y < m; ++y) {
    std::fill(hit.begin(), hit.end(), false);
    for (Element x = 0; x < m; ++x) {
      Element v = loop.mul(x, y);
      if (v >= m || hit[v]) return "right translation is not a bijection";
      hit[v] = true;
    }
  }
  return {};
}

RightLoop induced_loop(const Transversal& s) {
  RightLoop l = loop_from(s.parent(), s.cosets(), s.reps());
  if (auto err = validate_loop(l); !err.empty()) throw InternalError("induced loop: " + err);
  return l;
}

std::uint32_t right_power_order(const RightLoop& loop, Element x) {
  std::uint32_t k = 1;
  Element cur = x;
  while (cur != 0) {
    cur = loop.mul(cur, x);
    ++k;
    if (k > loop.size + 1) throw InternalError("right power never reaches the identity");
  }
  return k;
}

LoopFingerprint fingerprint(const RightLoop& loop) { return fingerprint_from(loop.size, element_signatures(loop)); }

bool is_group_loop(const RightLoop& loop) {
  const std::size_t m = loop.size;
  for (Element a = 0; a < m; ++a)
    for (Element b = 0; b < m; ++b) {
      const Element ab = loop.mul(a, b);
      for (Element c = 0; c < m; ++c)
        if (loop.mul(ab, c) != loop.mul(a, loop.mul(b, c))) return false;
    }
  return true;
}

std::optional<std::vector<Element>> find_loop_isomorphism(const RightLoop& a, const RightLoop& b) {
  if (a.size != b.size) return std::nullopt;
  auto sa = element_signatures(a);
  auto sb = element_signatures(b);
  return loop_iso(a, sa, b, sb);
}

bool loops_isomorphic(const RightLoop& a, const RightLoop& b) { return find_loop_isomorphism(a, b).has_value(); }

Subgroup generated_subgroup(const Transversal& s) {
  return Subgroup(s.parent(), closure(s.parent(), s.reps()));
}

Subgroup h_sub_s(const Transversal& s) {
  const Group& g = s.parent();
  const auto reps = s.reps();
  const std::size_t m = reps.size();
  ElementSet current(g.order());
  current.insert(0);
  std::vector<Element> gens;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const Element xy = g.mul(reps[i], reps[j]);
      const Element r = reps[s.coset_of(xy)];
      const Element h = g.mul(xy, g.inverse(r));
      if (!current.contains(h)) {
        current = closure(g, current, gens, h);
        gens.push_back(h);
      }
    }
  }
  return Subgroup(g, std::move(current));
}

std::vector<std::uint32_t> chi_s(const Transversal& s, Element g) {
  const Group& grp = s.parent();
  if (g >= grp.order()) throw InvalidArgument("chi_s: element out of range");
  std::vector<std::uint32_t> perm(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) perm[i] = s.coset_of(grp.mul(s.reps()[i], g));
  return perm;
}

Group group_torsion(const Transversal& s) {
  const Subgroup hs = h_sub_s(s);
  std::vector<std::vector<std::uint32_t>> gens;
  for (Element h : hs.generators()) gens.push_back(chi_s(s, h));
  return permutation_closure(static_cast<std::uint32_t>(s.size()), gens,
                             std::max<std::size_t>(hs.order(), 1));
}

const char* to_string(ClassSource source) {
  switch (source) {
    case ClassSource::Enumerated: return "enumerated";
    case ClassSource::NormalQuotient: return "normal_quotient";
    case ClassSource::Sampled: return "sampled";
  }
  return "unknown";
}

LoopClassSet loop_class_set(const Subgroup& h, std::uint64_t budget) {
  LoopClassSet out;
  out.subgroup = h;
  const Group& g = h.parent();
  const auto count = nrt_count(h);
  if (count <= budget) {
    NrtEnumerator e(h, budget);
    ClassBuilder builder(h.index());
    const CosetDecomposition& cd = e.current().cosets();
    while (e.next()) {
      builder.add(loop_from(g, cd, e.current().reps()), e.current().reps());
      ++out.nrts_examined;
    }
    out.representatives = builder.finish();
    out.exhaustive = true;
    out.source = ClassSource::Enumerated;
    return out;
  }
  const CosetDecomposition cd = coset_decomposition(h);
  if (h.is_normal()) {
    std::vector<Element> reps = first_reps(cd);
    ClassBuilder builder(h.index());
    builder.add(loop_from(g, cd, reps), reps);
    out.representatives = builder.finish();
    out.representatives.front().members = 0;
    out.exhaustive = true;
    out.source = ClassSource::NormalQuotient;
    return out;
  }
  // Sampled: NRTs lying inside subgroups K with HK = G, K != G.
  std::vector<Subgroup> ks;
  if (g.order() <= kDefaultLatticeMax) {
    for (auto& k : all_subgroups(g).all)
      if (!k.is_whole() && product_is_whole(h, k)) ks.push_back(std::move(k));
  } else {
    ks = complements(g, h);
  }
  ClassBuilder builder(h.index());
  std::uint64_t remaining = budget;
  std::vector<Element> reps(cd.index());
  for (const auto& k : ks) {
    std::vector<std::vector<Element>> choices(cd.index());
    k.elements().for_each([&](Element x) { choices[cd.coset_of[x]].push_back(x); });
    choices[0] = {0};
    for_each_choice(choices, reps, [&] {
      if (remaining == 0) return false;
      --remaining;
      builder.add(loop_from(g, cd, reps), reps);
      ++out.nrts_examined;
      return true;
    });
    if (remaining == 0) break;
  }
  out.representatives = builder.finish();
  out.exhaustive = false;
  out.source = ClassSource::Sampled;
  return out;
}

RightLoop group_as_loop(const Group& g) {
  RightLoop l;
  l.size = g.order();
  l.table.assign(g.table().begin(), g.table().end());
  return l;
}

}  // namespace transiso
