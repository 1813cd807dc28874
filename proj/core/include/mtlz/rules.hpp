#pragma once

#include <span>
#include <vector>

#include "mtlz/graph.hpp"

namespace mtlz {

struct RuleCheck {
  bool pass = true;
  // Failure witness, re-checkable against the graph:
  //   no_k3:    {a, b, c} triangle
  //   two_path: {a, b, c} distance-2 pair with unique middle vertex c
  //   no_k33:   {a1, a2, a3, b1, b2, b3} with all nine cross edges
  //   no_1221:  pattern embedding, label order 1..6 of the 1-2-2-1 layers,
  //             with no rescue vertex
  std::vector<int> witness;
};

RuleCheck check_no_k3(const Graph& g);
RuleCheck check_two_path(const Graph& g);
RuleCheck check_no_k33(const Graph& g);
RuleCheck check_no_1221(const Graph& g);

struct RuleReport {
  RuleCheck no_k3;
  RuleCheck two_path;
  RuleCheck no_k33;
  RuleCheck no_1221;
  bool candidate = false;  // all four rules pass
  bool bipartite = false;
  bool connected = false;
};

RuleReport is_candidate(const Graph& g);

// True iff the graph contains the 1221 pattern (K_{3,3} minus one edge) as a
// subgraph at all, regardless of rescue vertices.
bool contains_1221(const Graph& g);

// Every vertex pair, adjacent or not, has exactly 0 or 2 common neighbors.
bool is_zero_two_graph(const Graph& g);

// n >= 3*diameter - 1; vacuous below diameter 3. Requires a connected graph.
bool diameter_bound_holds(const Graph& g);

namespace detail {

// Rule kernels on raw adjacency, shared with the search engine.
bool two_path_ok(int n, std::span<const VertexSet> adj);
bool rule_1221_ok(int n, std::span<const VertexSet> adj);
bool has_1221(int n, std::span<const VertexSet> adj);

}  // namespace detail

}  // namespace mtlz
