#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mtlz {

inline constexpr int kMaxVertices = 64;

// Bitset over vertex ids 0..63. One machine word covers every graph this
// toolkit handles (search targets live well below 16 vertices).
using VertexSet = std::uint64_t;

struct Edge {
  int a = 0;
  int b = 0;  // invariant: a < b
  friend constexpr bool operator==(const Edge&, const Edge&) = default;
  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

constexpr Edge make_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Distance query between vertices in different components.
class InfiniteDistanceError : public GraphError {
 public:
  using GraphError::GraphError;
};

class CapacityError : public GraphError {
 public:
  using GraphError::GraphError;
};

// Immutable simple undirected graph; no loops, no parallel edges.
class Graph {
 public:
  Graph() = default;

  // Validates vertex range, sorts the edge list, rejects loops/duplicates.
  static Graph from_edges(int n, std::vector<Edge> edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  VertexSet neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  std::span<const VertexSet> adjacency() const { return {adj_.data(), adj_.size()}; }
  bool adjacent(int u, int v) const { return (adj_[static_cast<std::size_t>(u)] >> v) & 1u; }

  int degree(int v) const { return std::popcount(adj_[static_cast<std::size_t>(v)]); }
  std::vector<int> degrees() const;
  // Sorted descending, the form degree tables are usually quoted in.
  std::vector<int> degree_multiset() const;

  // Index into edges() or -1.
  int edge_index(int u, int v) const;

  VertexSet vertex_mask() const {
    return n_ == 64 ? ~VertexSet{0} : ((VertexSet{1} << n_) - 1);
  }

  friend bool operator==(const Graph& x, const Graph& y) {
    return x.n_ == y.n_ && x.edges_ == y.edges_;
  }

 private:
  int n_ = 0;
  std::vector<VertexSet> adj_;
  std::vector<Edge> edges_;
  std::vector<std::int16_t> edge_index_;  // n*n lookup table
};

// Relabeled copy: vertex v of g becomes perm[v].
Graph permuted(const Graph& g, std::span<const int> perm);

struct LayerDecomposition {
  int root = 0;
  std::vector<VertexSet> layers;  // layers[i] = vertices at distance i from root
  std::vector<int> sequence;      // layer sizes N_0..N_d
};

// 4-cycle a~c~b~d~a stored in canonical representative form:
// a is the smallest vertex and c the smaller of a's two cycle neighbors.
struct FourCycle {
  int a = 0, c = 0, b = 0, d = 0;
  std::pair<int, int> diagonal_ab() const { return {a, b}; }
  std::pair<int, int> diagonal_cd() const { return {c, d}; }
  friend constexpr bool operator==(const FourCycle&, const FourCycle&) = default;
};

struct DistanceTwoPair {
  int a = 0, b = 0;          // a < b, graph distance exactly 2
  std::vector<int> common;   // sorted common neighbors, size >= 1
};

bool is_connected(const Graph& g);
int distance(const Graph& g, int a, int b);  // throws InfiniteDistanceError
int diameter(const Graph& g);                // requires connected graph

struct BipartitenessResult {
  bool bipartite = false;
  std::vector<int> coloring;   // 0/1 per vertex, valid iff bipartite
  std::vector<int> odd_cycle;  // closed odd walk witness iff not bipartite
};

BipartitenessResult is_bipartite(const Graph& g);

LayerDecomposition layer_decomposition(const Graph& g, int root);

// Each 4-cycle reported exactly once.
std::vector<FourCycle> enumerate_four_cycles(const Graph& g);

std::vector<DistanceTwoPair> enumerate_distance2_pairs(const Graph& g);

// (u1,u2) ~ (v1,v2) iff equal in one coordinate and adjacent in the other.
Graph cartesian_product(const Graph& g1, const Graph& g2);

namespace detail {

template <typename F>
inline void for_each_bit(VertexSet s, F&& f) {
  while (s) {
    f(std::countr_zero(s));
    s &= s - 1;
  }
}

inline std::vector<int> bits_of(VertexSet s) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(std::popcount(s)));
  for_each_bit(s, [&](int v) { out.push_back(v); });
  return out;
}

// Low-level routines shared with the search engine, which works on raw
// adjacency arrays instead of Graph values.
bool connected(int n, std::span<const VertexSet> adj);
bool bipartite(int n, std::span<const VertexSet> adj);

}  // namespace detail

}  // namespace mtlz
