#include "iso_search.hpp"

#include <limits>

namespace transiso::detail {

namespace {

constexpr Element kUnset = std::numeric_limits<Element>::max();

class Search {
 public:
  explicit Search(const IsoProblem& p)
      : p_(p), phi_(p.from.n, kUnset), used_(p.to.n, false) {}

  std::optional<std::vector<Element>> run() {
    if (p_.from.n != p_.to.n || p_.from.n == 0) return std::nullopt;
    if (p_.admissible && !p_.admissible(0, 0)) return std::nullopt;
    phi_[0] = 0;
    used_[0] = true;
    domain_.push_back(0);
    // Identity closure: 0*0 = 0 in both tables, nothing else to propagate.
    if (!descend(0)) return std::nullopt;
    return phi_;
  }

 private:
  bool descend(std::size_t level) {
    if (level == p_.generators.size()) return domain_.size() == p_.from.n;
    const Element g = p_.generators[level];
    if (phi_[g] != kUnset) return descend(level + 1);
    for (Element c : p_.candidates[level]) {
      if (used_[c]) continue;
      if (p_.admissible && !p_.admissible(g, c)) continue;
      const std::size_t trail_mark = trail_.size();
      const std::size_t domain_mark = domain_.size();
      assign(g, c);
      active_.push_back(g);
      bool ok = propagate(domain_mark);
      if (ok && descend(level + 1)) return true;
      active_.pop_back();
      undo(trail_mark, domain_mark);
    }
    return false;
  }

  void assign(Element x, Element y) {
    phi_[x] = y;
    used_[y] = true;
    domain_.push_back(x);
    trail_.push_back(x);
  }

  void undo(std::size_t trail_mark, std::size_t domain_mark) {
    while (trail_.size() > trail_mark) {
      Element x = trail_.back();
      trail_.pop_back();
      used_[phi_[x]] = false;
      phi_[x] = kUnset;
    }
    domain_.resize(domain_mark);
  }

  bool link(Element a, Element b) {
    const Element x = p_.from.mul(a, b);
    const Element y = p_.to.mul(phi_[a], phi_[b]);
    if (phi_[x] == kUnset) {
      if (used_[y]) return false;
      if (p_.admissible && !p_.admissible(x, y)) return false;
      assign(x, y);
      return true;
    }
    return phi_[x] == y;
  }

  // Elements before `first_new` were closed under the previous generators.
  bool propagate(std::size_t first_new) {
    if (p_.mode == ClosureMode::RightGenerators) {
      const Element newest = active_.back();
      for (std::size_t k = 0; k < domain_.size(); ++k) {
        const Element x = domain_[k];
        if (k < first_new) {
          if (!link(x, newest)) return false;
        } else {
          for (Element s : active_)
            if (!link(x, s)) return false;
        }
      }
      return true;
    }
    for (std::size_t k = first_new; k < domain_.size(); ++k) {
      for (std::size_t j = 0; j <= k; ++j) {
        if (!link(domain_[j], domain_[k])) return false;
        if (j != k && !link(domain_[k], domain_[j])) return false;
      }
    }
    return true;
  }

  const IsoProblem& p_;
  std::vector<Element> phi_;
  std::vector<bool> used_;
  std::vector<Element> domain_;
  std::vector<Element> trail_;
  std::vector<Element> active_;
};

}  // namespace

std::optional<std::vector<Element>> find_isomorphism(const IsoProblem& problem) {
  Search s(problem);
  return s.run();
}

ElementSet magma_closure(const MagmaView& m, std::span<const Element> gens, ClosureMode mode) {
  ElementSet seen(m.n);
  std::vector<Element> list;
  auto add = [&](Element x) {
    if (!seen.contains(x)) {
      seen.insert(x);
      list.push_back(x);
    }
  };
  add(0);
  for (Element g : gens) add(g);
  if (mode == ClosureMode::RightGenerators) {
    for (std::size_t k = 0; k < list.size(); ++k)
      for (Element s : gens) add(m.mul(list[k], s));
    return seen;
  }
  for (std::size_t k = 0; k < list.size(); ++k) {
    for (std::size_t j = 0; j <= k; ++j) {
      add(m.mul(list[j], list[k]));
      add(m.mul(list[k], list[j]));
    }
  }
  return seen;
}

std::vector<Element> greedy_generators(const MagmaView& m, std::span<const Element> priority,
                                       ClosureMode mode) {
  std::vector<Element> gens;
  ElementSet current = magma_closure(m, gens, mode);
  for (Element x : priority) {
    if (current.count() == m.n) break;
    if (current.contains(x)) continue;
    gens.push_back(x);
    current = magma_closure(m, gens, mode);
  }
  return gens;
}

bool preserves_table(const MagmaView& from, const MagmaView& to, std::span<const Element> phi) {
  if (from.n != to.n || phi.size() != from.n) return false;
  std::vector<bool> hit(to.n, false);
  for (Element y : phi) {
    if (y >= to.n || hit[y]) return false;
    hit[y] = true;
  }
  for (Element a = 0; a < from.n; ++a)
    for (Element b = 0; b < from.n; ++b)
      if (phi[from.mul(a, b)] != to.mul(phi[a], phi[b])) return false;
  return true;
}

}  // namespace transiso::detail
