#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mtlz/graph.hpp"

namespace mtlz {

// Edge signs s^{ab} = -s^{ba}; an arrow a->b is drawn iff s^{ab} = -1.
// signs[i] stores s^{ab} for edges()[i] with a < b.
struct Orientation {
  std::vector<std::int8_t> signs;
};

enum class CycleOrientationClass {
  Bipartite,     // two sources and two sinks, necessarily alternating
  NonBipartite,  // one source and one sink at opposite corners
  Invalid,       // cyclic, or source and sink adjacent
};

CycleOrientationClass classify_cycle(const Graph& g, const Orientation& o,
                                     const FourCycle& cycle);

// Every edge directed from the lower BFS layer to the higher one.
// Requires a connected bipartite graph.
Orientation all_up_orientation(const Graph& g, int root);

Orientation reversed(const Orientation& o);

class OrientationError : public GraphError {
 public:
  using GraphError::GraphError;
};

// The sign r_{acbd} relating the wedge products of the two 2-paths a~c~b and
// a~d~b; symmetric under swapping a,b and under swapping c,d.
struct RVariable {
  int a = 0, c = 0, b = 0, d = 0;  // normalized: a < b, c < d
  friend constexpr bool operator==(const RVariable&, const RVariable&) = default;
};

// Orientation-independent constraints on the r factors of a candidate graph:
//  - each distance-2 pair with exactly two 2-paths has its r forced to -1
//  - per pair, products over path triples equal +1 (parity)
//  - per pair, the reconstructed path-sign vector must carry both signs
struct RConstraintSystem {
  struct PairGroup {
    int a = 0, b = 0;
    std::vector<int> common;   // sorted common neighbors
    std::vector<int> var_ids;  // one per (c,d) pair of common, lexicographic
  };

  std::vector<RVariable> vars;
  std::vector<int> forced_negative;
  std::vector<std::array<int, 3>> parity;
  std::vector<PairGroup> groups;

  int var_id(int a, int c, int b, int d) const;  // any index order; -1 if absent
  std::string var_name(int id) const;            // r_{acbd}, vertices printed 1-based
};

RConstraintSystem build_r_system(const Graph& g);

using RAssignment = std::vector<std::int8_t>;  // +1/-1 per variable

// All assignments satisfying the base system plus equal/opposite links
// (pairs of variable ids), found by DFS with unit propagation. Stops early
// once `limit` solutions are collected.
std::vector<RAssignment> solve_r(const RConstraintSystem& sys,
                                 const std::vector<std::pair<int, int>>& equal_links,
                                 const std::vector<std::pair<int, int>>& opposite_links,
                                 std::size_t limit);

// One fully oriented graph whose r system is satisfiable, with all of its
// satisfying assignments.
struct SurvivingOrientation {
  Orientation orientation;
  std::vector<RAssignment> assignments;
};

struct OrientationClass {
  std::string canonical_key;  // digraph canonical key, minimized over reversal
  SurvivingOrientation representative;
  std::vector<std::size_t> raw_members;  // indices into BranchSearchResult::raw
};

struct BranchSearchResult {
  std::vector<SurvivingOrientation> raw;  // every completed orientation, sorted by signs
  std::vector<OrientationClass> classes;  // deduplicated, sorted by canonical key
  std::uint64_t reversal_classes = 0;     // quotient by global reversal only
  std::uint64_t pruned_invalid_cycle = 0;
  std::uint64_t pruned_unsat = 0;
};

// Adds arrows edge by edge; each completed 4-cycle must classify as
// Bipartite or NonBipartite and links its two diagonal r factors (equal for
// NonBipartite, opposite for Bipartite). Branches with an invalid cycle or
// an unsatisfiable r system are cut.
BranchSearchResult branch_search(const Graph& g, int threads = 1);

}  // namespace mtlz
