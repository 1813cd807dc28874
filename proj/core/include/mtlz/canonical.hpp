#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mtlz/graph.hpp"

namespace mtlz {

struct CanonicalForm {
  std::string key;              // equal iff isomorphic; graph6 of the relabeled graph
  std::vector<int> relabeling;  // input vertex v -> canonical vertex relabeling[v]
};

// Canonical labeling by iterative color refinement (degree, then neighbor
// color multisets) with backtracking over refinement ties.
CanonicalForm canonical_form(const Graph& g);

bool is_isomorphic(const Graph& g1, const Graph& g2);

// Exhaustive all-permutations key, n <= 9. Induces the same equivalence as
// canonical_form but the key bytes differ; compare partitions, not strings.
std::string canonical_key_oracle(const Graph& g);

// Canonical key of an edge-colored structure on n vertices. pair_color is a
// row-major n*n matrix; entry (u,v) is 0 when unrelated, otherwise a small
// positive color. Directed relations use asymmetric entries.
std::string canonical_key_colored(int n, const std::vector<std::uint8_t>& pair_color);

}  // namespace mtlz
