#include "transiso/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

#include "iso_search.hpp"
#include "transiso/error.hpp"

namespace transiso {

namespace {

std::size_t checked_square_root(std::size_t cells) {
  std::size_t n = 0;
  while ((n + 1) * (n + 1) <= cells) ++n;
  if (n * n != cells) throw InvalidArgument("group table is not square");
  return n;
}

detail::MagmaView view(const Group& g) { return {g.order(), g.table()}; }

void require_order(std::size_t order, std::size_t max_order, const char* what) {
  if (order > max_order) {
    std::ostringstream os;
    os << what << " has order " << order << ", above the configured maximum " << max_order;
    throw OrderLimitExceeded(os.str());
  }
}

// Element invariants preserved by isomorphisms: order and centralizer size.
std::vector<std::uint64_t> element_keys(const Group& g) {
  const std::size_t n = g.order();
  std::vector<std::uint64_t> keys(n);
  for (Element x = 0; x < n; ++x) {
    std::uint64_t c = 0;
    for (Element y = 0; y < n; ++y)
      if (g.mul(x, y) == g.mul(y, x)) ++c;
    keys[x] = (static_cast<std::uint64_t>(g.element_order(x)) << 32) | c;
  }
  return keys;
}

Group cyclic_group(std::uint32_t n) {
  if (n == 0) throw InvalidArgument("cyclic: n must be positive");
  std::vector<Element> t(static_cast<std::size_t>(n) * n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) t[i * n + j] = (i + j) % n;
  return Group(std::move(t));
}

// Element b^e a^i has index e*n + i; a^i b = b a^{-i}.
Group dihedral_group(std::uint32_t n) {
  if (n == 0) throw InvalidArgument("dihedral: n must be positive");
  const std::size_t order = 2 * static_cast<std::size_t>(n);
  std::vector<Element> t(order * order);
  for (std::uint32_t x = 0; x < order; ++x) {
    const std::uint32_t e = x / n, i = x % n;
    for (std::uint32_t y = 0; y < order; ++y) {
      const std::uint32_t f = y / n, j = y % n;
      const std::uint32_t ii = f ? (n - i) % n : i;
      t[x * order + y] = ((e + f) % 2) * n + (ii + j) % n;
    }
  }
  return Group(std::move(t));
}

Group quaternion_group() {
  // 0:1 1:-1 2:i 3:-i 4:j 5:-j 6:k 7:-k
  static const Element kTable[8][8] = {
      {0, 1, 2, 3, 4, 5, 6, 7}, {1, 0, 3, 2, 5, 4, 7, 6}, {2, 3, 1, 0, 6, 7, 5, 4},
      {3, 2, 0, 1, 7, 6, 4, 5}, {4, 5, 7, 6, 1, 0, 2, 3}, {5, 4, 6, 7, 0, 1, 3, 2},
      {6, 7, 4, 5, 3, 2, 1, 0}, {7, 6, 5, 4, 2, 3, 0, 1},
  };
  std::vector<Element> t;
  for (const auto& row : kTable) t.insert(t.end(), std::begin(row), std::end(row));
  return Group(std::move(t));
}

// Upper unitriangular 3x3 matrices over F_p; (a, b, c) has index a*p^2 + b*p + c.
Group heisenberg_group(std::uint32_t p, std::size_t max_order) {
  if (p < 3 || !is_prime(p)) throw InvalidArgument("extraspecial_exp_p: p must be an odd prime");
  const std::size_t order = static_cast<std::size_t>(p) * p * p;
  require_order(order, max_order, "extraspecial_exp_p");
  std::vector<Element> t(order * order);
  for (std::uint32_t x = 0; x < order; ++x) {
    const std::uint32_t a = x / (p * p), b = (x / p) % p, c = x % p;
    for (std::uint32_t y = 0; y < order; ++y) {
      const std::uint32_t a2 = y / (p * p), b2 = (y / p) % p, c2 = y % p;
      const std::uint32_t ra = (a + a2) % p, rb = (b + b2) % p, rc = (c + c2 + a * b2) % p;
      t[x * order + y] = ra * p * p + rb * p + rc;
    }
  }
  return Group(std::move(t));
}

std::vector<std::uint32_t> cycle_perm(std::uint32_t degree, std::initializer_list<std::uint32_t> cycle) {
  std::vector<std::uint32_t> img(degree);
  std::iota(img.begin(), img.end(), 0u);
  std::vector<std::uint32_t> c(cycle);
  for (std::size_t i = 0; i < c.size(); ++i) img[c[i]] = c[(i + 1) % c.size()];
  return img;
}

Group symmetric_group(std::uint32_t n, std::size_t max_order) {
  if (n == 0) throw InvalidArgument("symmetric: n must be positive");
  if (n <= 1) return cyclic_group(1);
  std::size_t order = 1;
  for (std::uint32_t k = 2; k <= n; ++k) {
    order *= k;
    require_order(order, max_order, "symmetric group");
  }
  std::vector<std::uint32_t> long_cycle(n);
  for (std::uint32_t i = 0; i < n; ++i) long_cycle[i] = (i + 1) % n;
  // Transposition first, so element 1 is (0 1).
  return permutation_closure(n, {cycle_perm(n, {0, 1}), long_cycle}, max_order);
}

Group alternating_group(std::uint32_t n, std::size_t max_order) {
  if (n == 0) throw InvalidArgument("alternating: n must be positive");
  if (n <= 2) return cyclic_group(1);
  std::size_t order = 1;
  for (std::uint32_t k = 3; k <= n; ++k) {
    order *= k;
    require_order(order, max_order, "alternating group");
  }
  std::vector<std::vector<std::uint32_t>> gens;
  for (std::uint32_t k = 2; k < n; ++k) gens.push_back(cycle_perm(n, {0, 1, k}));
  return permutation_closure(n, gens, max_order);
}

Group cayley_group(const std::vector<std::vector<Element>>& rows) {
  const std::size_t n = rows.size();
  if (n == 0) throw InvalidArgument("cayley: empty table");
  std::vector<Element> t;
  t.reserve(n * n);
  for (const auto& r : rows) {
    if (r.size() != n) throw InvalidArgument("cayley: table is not square");
    for (Element e : r) {
      if (e >= n) throw InvalidArgument("cayley: entry out of range");
      t.push_back(e);
    }
  }
  Group g(std::move(t));
  if (auto err = validate(g); !err.empty()) throw InvalidArgument("cayley: " + err);
  return g;
}

}  // namespace

Group::Group(std::vector<Element> table, std::string label)
    : table_(std::move(table)), label_(std::move(label)) {
  n_ = checked_square_root(table_.size());
  if (n_ == 0) throw InvalidArgument("group must be non-empty");
  for (Element i = 0; i < n_; ++i) {
    if (mul(0, i) != i || mul(i, 0) != i)
      throw InvalidArgument("index 0 is not the identity of the table");
  }
  std::vector<std::uint32_t> seen(n_, 0);
  std::uint32_t stamp = 0;
  for (Element i = 0; i < n_; ++i) {
    ++stamp;
    for (Element j = 0; j < n_; ++j) {
      Element v = mul(i, j);
      if (v >= n_ || seen[v] == stamp) throw InvalidArgument("table row is not a permutation");
      seen[v] = stamp;
    }
  }
  for (Element j = 0; j < n_; ++j) {
    ++stamp;
    for (Element i = 0; i < n_; ++i) {
      Element v = mul(i, j);
      if (seen[v] == stamp) throw InvalidArgument("table column is not a permutation");
      seen[v] = stamp;
    }
  }
  inverse_.assign(n_, 0);
  for (Element i = 0; i < n_; ++i)
    for (Element j = 0; j < n_; ++j)
      if (mul(i, j) == 0) inverse_[i] = j;
  orders_.assign(n_, 0);
  for (Element i = 0; i < n_; ++i) {
    std::uint32_t k = 1;
    Element x = i;
    while (x != 0) {
      x = mul(x, i);
      ++k;
      if (k > n_) throw InvalidArgument("table is not a group: element of unbounded order");
    }
    orders_[i] = k;
  }
  std::vector<Element> priority(n_);
  std::iota(priority.begin(), priority.end(), 0u);
  std::stable_sort(priority.begin(), priority.end(),
                   [&](Element a, Element b) { return orders_[a] > orders_[b]; });
  generators_ = detail::greedy_generators(detail::MagmaView{n_, table_}, priority,
                                          detail::ClosureMode::RightGenerators);
}

const char* to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::Cyclic: return "cyclic";
    case GroupKind::Dihedral: return "dihedral";
    case GroupKind::Symmetric: return "symmetric";
    case GroupKind::Alternating: return "alternating";
    case GroupKind::Quaternion8: return "quaternion8";
    case GroupKind::ExtraspecialExpP: return "extraspecial_exp_p";
    case GroupKind::ElementaryAbelian: return "elementary_abelian";
    case GroupKind::DirectProduct: return "direct_product";
    case GroupKind::Cayley: return "cayley";
    case GroupKind::Perm: return "perm";
  }
  return "unknown";
}

GroupSpec GroupSpec::cyclic(std::uint32_t n) {
  GroupSpec s;
  s.kind = GroupKind::Cyclic;
  s.n = n;
  return s;
}
GroupSpec GroupSpec::dihedral(std::uint32_t n) {
  GroupSpec s;
  s.kind = GroupKind::Dihedral;
  s.n = n;
  return s;
}
GroupSpec GroupSpec::symmetric(std::uint32_t n) {
  GroupSpec s;
  s.kind = GroupKind::Symmetric;
  s.n = n;
  return s;
}
GroupSpec GroupSpec::alternating(std::uint32_t n) {
  GroupSpec s;
  s.kind = GroupKind::Alternating;
  s.n = n;
  return s;
}
GroupSpec GroupSpec::quaternion8() {
  GroupSpec s;
  s.kind = GroupKind::Quaternion8;
  return s;
}
GroupSpec GroupSpec::extraspecial_exp_p(std::uint32_t p) {
  GroupSpec s;
  s.kind = GroupKind::ExtraspecialExpP;
  s.p = p;
  return s;
}
GroupSpec GroupSpec::elementary_abelian(std::uint32_t p, std::uint32_t rank) {
  GroupSpec s;
  s.kind = GroupKind::ElementaryAbelian;
  s.p = p;
  s.rank = rank;
  return s;
}
GroupSpec GroupSpec::direct_product(std::vector<GroupSpec> factors) {
  GroupSpec s;
  s.kind = GroupKind::DirectProduct;
  s.factors = std::move(factors);
  return s;
}
GroupSpec GroupSpec::cayley(std::vector<std::vector<Element>> table) {
  GroupSpec s;
  s.kind = GroupKind::Cayley;
  s.table = std::move(table);
  return s;
}
GroupSpec GroupSpec::perm(std::uint32_t degree, std::vector<std::vector<std::uint32_t>> generators) {
  GroupSpec s;
  s.kind = GroupKind::Perm;
  s.degree = degree;
  s.generators = std::move(generators);
  return s;
}

namespace {

std::string default_label(const GroupSpec& spec) {
  std::ostringstream os;
  switch (spec.kind) {
    case GroupKind::Cyclic: os << "C" << spec.n; break;
    case GroupKind::Dihedral: os << "D" << 2 * spec.n; break;
    case GroupKind::Symmetric: os << "Sym(" << spec.n << ")"; break;
    case GroupKind::Alternating: os << "Alt(" << spec.n << ")"; break;
    case GroupKind::Quaternion8: os << "Q8"; break;
    case GroupKind::ExtraspecialExpP: os << "Heis(" << spec.p << ")"; break;
    case GroupKind::ElementaryAbelian: os << "C" << spec.p << "^" << spec.rank; break;
    case GroupKind::DirectProduct: {
      for (std::size_t i = 0; i < spec.factors.size(); ++i) {
        if (i) os << "x";
        std::string f = spec.factors[i].label.empty() ? default_label(spec.factors[i]) : spec.factors[i].label;
        os << f;
      }
      if (spec.factors.empty()) os << "1";
      break;
    }
    case GroupKind::Cayley: os << "cayley(" << spec.table.size() << ")"; break;
    case GroupKind::Perm: os << "perm(deg " << spec.degree << ")"; break;
  }
  return os.str();
}

}  // namespace

Group build(const GroupSpec& spec, const BuildOptions& options) {
  const std::size_t cap = options.max_order;
  Group g;
  switch (spec.kind) {
    case GroupKind::Cyclic:
      require_order(spec.n, cap, "cyclic group");
      g = cyclic_group(spec.n);
      break;
    case GroupKind::Dihedral:
      require_order(2 * static_cast<std::size_t>(spec.n), cap, "dihedral group");
      g = dihedral_group(spec.n);
      break;
    case GroupKind::Symmetric: g = symmetric_group(spec.n, cap); break;
    case GroupKind::Alternating: g = alternating_group(spec.n, cap); break;
    case GroupKind::Quaternion8: g = quaternion_group(); break;
    case GroupKind::ExtraspecialExpP: g = heisenberg_group(spec.p, cap); break;
    case GroupKind::ElementaryAbelian: {
      if (!is_prime(spec.p)) throw InvalidArgument("elementary_abelian: p must be prime");
      std::size_t order = 1;
      for (std::uint32_t i = 0; i < spec.rank; ++i) {
        order *= spec.p;
        require_order(order, cap, "elementary abelian group");
      }
      g = cyclic_group(1);
      const Group cp = cyclic_group(spec.p);
      for (std::uint32_t i = 0; i < spec.rank; ++i) g = direct_product(g, cp, cap);
      break;
    }
    case GroupKind::DirectProduct: {
      g = cyclic_group(1);
      for (const auto& f : spec.factors) g = direct_product(g, build(f, options), cap);
      break;
    }
    case GroupKind::Cayley:
      require_order(spec.table.size(), cap, "cayley table");
      g = cayley_group(spec.table);
      break;
    case GroupKind::Perm: g = permutation_closure(spec.degree, spec.generators, cap); break;
  }
  g.set_label(spec.label.empty() ? default_label(spec) : spec.label);
  return g;
}

Element multiply(const Group& g, Element a, Element b) {
  if (a >= g.order() || b >= g.order()) throw InvalidArgument("element index out of range");
  return g.mul(a, b);
}

Group direct_product(const Group& a, const Group& b, std::size_t max_order) {
  const std::size_t na = a.order(), nb = b.order();
  if (nb != 0 && na > max_order / nb) require_order(max_order + 1, max_order, "direct product");
  const std::size_t n = na * nb;
  require_order(n, max_order, "direct product");
  std::vector<Element> t(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    const Element xa = static_cast<Element>(x / nb), xb = static_cast<Element>(x % nb);
    for (std::size_t y = 0; y < n; ++y) {
      const Element ya = static_cast<Element>(y / nb), yb = static_cast<Element>(y % nb);
      t[x * n + y] = static_cast<Element>(a.mul(xa, ya) * nb + b.mul(xb, yb));
    }
  }
  std::string label = a.label().empty() || b.label().empty() ? std::string{} : a.label() + "x" + b.label();
  return Group(std::move(t), std::move(label));
}

Group permutation_closure(std::uint32_t degree, const std::vector<std::vector<std::uint32_t>>& generators,
                          std::size_t max_order, std::vector<std::vector<std::uint32_t>>* elements_out) {
  if (degree == 0) throw InvalidArgument("perm: degree must be positive");
  for (const auto& g : generators) {
    if (g.size() != degree) throw InvalidArgument("perm: generator length differs from degree");
    std::vector<bool> hit(degree, false);
    for (auto v : g) {
      if (v >= degree || hit[v]) throw InvalidArgument("perm: generator is not a bijection");
      hit[v] = true;
    }
  }
  using Perm = std::vector<std::uint32_t>;
  struct PermHash {
    std::size_t operator()(const Perm& p) const {
      std::size_t h = 0;
      for (auto v : p) h = h * 1000003u + v;
      return h;
    }
  };
  auto compose = [&](const Perm& x, const Perm& y) {  // apply x then y
    Perm r(degree);
    for (std::uint32_t i = 0; i < degree; ++i) r[i] = y[x[i]];
    return r;
  };
  std::vector<Perm> elems;
  std::unordered_map<Perm, Element, PermHash> index;
  Perm id(degree);
  std::iota(id.begin(), id.end(), 0u);
  elems.push_back(id);
  index.emplace(id, 0);
  for (std::size_t k = 0; k < elems.size(); ++k) {
    for (const auto& g : generators) {
      Perm r = compose(elems[k], g);
      if (!index.count(r)) {
        require_order(elems.size() + 1, max_order, "permutation group closure");
        index.emplace(r, static_cast<Element>(elems.size()));
        elems.push_back(std::move(r));
      }
    }
  }
  const std::size_t n = elems.size();
  std::vector<Element> t(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) t[x * n + y] = index.at(compose(elems[x], elems[y]));
  if (elements_out) *elements_out = std::move(elems);
  return Group(std::move(t));
}

std::string validate(const Group& g, std::size_t exhaustive_limit, std::size_t samples) {
  const std::size_t n = g.order();
  std::ostringstream os;
  for (Element i = 0; i < n; ++i) {
    if (g.mul(0, i) != i || g.mul(i, 0) != i) {
      os << "identity law fails at " << i;
      return os.str();
    }
    if (g.mul(i, g.inverse(i)) != 0 || g.mul(g.inverse(i), i) != 0) {
      os << "inverse fails at " << i;
      return os.str();
    }
    if (n % g.element_order(i) != 0) {
      os << "order of " << i << " does not divide |G|";
      return os.str();
    }
  }
  auto check = [&](Element i, Element j, Element k) {
    if (g.mul(g.mul(i, j), k) != g.mul(i, g.mul(j, k))) {
      os << "associativity fails at (" << i << "," << j << "," << k << ")";
      return false;
    }
    return true;
  };
  if (n <= exhaustive_limit) {
    for (Element i = 0; i < n; ++i)
      for (Element j = 0; j < n; ++j)
        for (Element k = 0; k < n; ++k)
          if (!check(i, j, k)) return os.str();
  } else {
    std::mt19937_64 rng(0x7a5e1501u);
    std::uniform_int_distribution<Element> pick(0, static_cast<Element>(n - 1));
    for (std::size_t s = 0; s < samples; ++s)
      if (!check(pick(rng), pick(rng), pick(rng))) return os.str();
  }
  return {};
}

bool is_abelian(const Group& g) {
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (g.mul(gens[i], gens[j]) != g.mul(gens[j], gens[i])) return false;
  return true;
}

ElementSet centralizer(const Group& g, Element x) {
  ElementSet c(g.order());
  for (Element y = 0; y < g.order(); ++y)
    if (g.mul(x, y) == g.mul(y, x)) c.insert(y);
  return c;
}

ElementSet center(const Group& g) {
  ElementSet z(g.order());
  for (Element x = 0; x < g.order(); ++x) {
    bool central = true;
    for (Element s : g.generators()) {
      if (g.mul(x, s) != g.mul(s, x)) {
        central = false;
        break;
      }
    }
    if (central) z.insert(x);
  }
  return z;
}

ElementSet closure(const Group& g, std::span<const Element> generators) {
  return detail::magma_closure(view(g), generators, detail::ClosureMode::RightGenerators);
}

ElementSet closure(const Group& g, const ElementSet& start, std::span<const Element> start_generators,
                   Element extra) {
  std::vector<Element> gens(start_generators.begin(), start_generators.end());
  gens.push_back(extra);
  ElementSet seen = start;
  std::vector<Element> list = start.elements();
  if (!seen.contains(extra)) {
    seen.insert(extra);
    list.push_back(extra);
  }
  for (std::size_t k = 0; k < list.size(); ++k) {
    for (Element s : gens) {
      Element y = g.mul(list[k], s);
      if (!seen.contains(y)) {
        seen.insert(y);
        list.push_back(y);
      }
    }
  }
  return seen;
}

ElementSet commutator_subgroup(const Group& g) {
  ElementSet current(g.order());
  current.insert(0);
  std::vector<Element> gens;
  for (Element x = 0; x < g.order(); ++x) {
    for (Element y = 0; y < g.order(); ++y) {
      const Element c = g.mul(g.mul(g.inverse(x), g.inverse(y)), g.mul(x, y));
      if (!current.contains(c)) {
        current = closure(g, current, gens, c);
        gens.push_back(c);
      }
    }
  }
  return current;
}

std::vector<Element> generating_set(const Group& g, const ElementSet& subgroup, std::span<const Element> prefer) {
  std::vector<Element> priority(prefer.begin(), prefer.end());
  std::vector<Element> rest = subgroup.elements();
  std::stable_sort(rest.begin(), rest.end(),
                   [&](Element a, Element b) { return g.element_order(a) > g.element_order(b); });
  priority.insert(priority.end(), rest.begin(), rest.end());
  std::vector<Element> gens;
  ElementSet current(g.order());
  current.insert(0);
  for (Element x : priority) {
    if (!subgroup.contains(x) || current.contains(x)) continue;
    current = closure(g, current, gens, x);
    gens.push_back(x);
    if (current.count() == subgroup.count()) break;
  }
  return gens;
}

std::vector<std::uint32_t> order_statistics(const Group& g) {
  std::vector<std::uint32_t> out(g.order());
  for (Element x = 0; x < g.order(); ++x) out[x] = g.element_order(x);
  std::sort(out.begin(), out.end());
  return out;
}

bool isomorphic(const Group& a, const Group& b) {
  if (a.order() != b.order()) return false;
  if (order_statistics(a) != order_statistics(b)) return false;
  if (center(a).count() != center(b).count()) return false;
  if (is_abelian(a) != is_abelian(b)) return false;
  const auto ka = element_keys(a);
  const auto kb = element_keys(b);
  {
    auto sa = ka, sb = kb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }
  if (commutator_subgroup(a).count() != commutator_subgroup(b).count()) return false;

  std::map<std::uint64_t, std::size_t> freq;
  for (auto k : ka) ++freq[k];
  std::vector<Element> priority(a.order());
  std::iota(priority.begin(), priority.end(), 0u);
  std::stable_sort(priority.begin(), priority.end(), [&](Element x, Element y) {
    if (freq[ka[x]] != freq[ka[y]]) return freq[ka[x]] < freq[ka[y]];
    return a.element_order(x) > a.element_order(y);
  });
  detail::IsoProblem p;
  p.from = view(a);
  p.to = view(b);
  p.mode = detail::ClosureMode::RightGenerators;
  p.generators = detail::greedy_generators(p.from, priority, p.mode);
  for (Element g : p.generators) {
    std::vector<Element> cand;
    for (Element y = 0; y < b.order(); ++y)
      if (kb[y] == ka[g]) cand.push_back(y);
    p.candidates.push_back(std::move(cand));
  }
  p.admissible = [&](Element x, Element y) { return ka[x] == kb[y]; };
  auto phi = detail::find_isomorphism(p);
  if (!phi) return false;
  if (!detail::preserves_table(p.from, p.to, *phi)) throw InternalError("isomorphism post-check failed");
  return true;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t prime_power_base(std::uint64_t n) {
  if (n < 2) return 0;
  std::uint64_t p = 2;
  while (n % p != 0) ++p;
  while (n % p == 0) n /= p;
  return n == 1 ? p : 0;
}

std::vector<std::size_t> divisors(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

}  // namespace transiso
