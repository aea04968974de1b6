#pragma once

// Backtracking search for structure-preserving bijections between two finite
// magmas given by their multiplication tables. Shared by group isomorphism,
// constrained automorphism search and right-loop isomorphism.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "transiso/element_set.hpp"

namespace transiso::detail {

struct MagmaView {
  std::size_t n = 0;
  std::span<const Element> table;
  Element mul(Element a, Element b) const { return table[a * n + b]; }
};

enum class ClosureMode {
  // Extends along x -> x*s for generators s. Enough for associative tables.
  RightGenerators,
  // Extends along all products x*y of known elements.
  AllPairs,
};

struct IsoProblem {
  MagmaView from;
  MagmaView to;
  ClosureMode mode = ClosureMode::RightGenerators;
  // Generating sequence of `from`, in search order. Element 0 must be the
  // identity of both sides and is pinned 0 -> 0.
  std::vector<Element> generators;
  // Allowed images per generator.
  std::vector<std::vector<Element>> candidates;
  // Per-element admissibility of x -> y for elements reached by closure.
  std::function<bool(Element, Element)> admissible;
};

std::optional<std::vector<Element>> find_isomorphism(const IsoProblem& problem);

// Submagma generated by `gens` (together with 0) under the given closure.
ElementSet magma_closure(const MagmaView& m, std::span<const Element> gens, ClosureMode mode);

// Greedy generating sequence over `priority` (used in order), stopping once
// the closure is everything.
std::vector<Element> greedy_generators(const MagmaView& m, std::span<const Element> priority,
                                       ClosureMode mode);

// Checks that `phi` is a bijection preserving the whole table.
bool preserves_table(const MagmaView& from, const MagmaView& to, std::span<const Element> phi);

}  // namespace transiso::detail
