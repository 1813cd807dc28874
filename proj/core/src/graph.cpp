#include "mtlz/graph.hpp"

#include <algorithm>
#include <queue>

namespace mtlz {

Graph Graph::from_edges(int n, std::vector<Edge> edges) {
  if (n < 1 || n > kMaxVertices)
    throw CapacityError("vertex count " + std::to_string(n) + " outside 1.." +
                        std::to_string(kMaxVertices));
  Graph g;
  g.n_ = n;
  g.adj_.assign(static_cast<std::size_t>(n), 0);
  g.edge_index_.assign(static_cast<std::size_t>(n) * n, -1);
  std::sort(edges.begin(), edges.end());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [a, b] = edges[i];
    if (a < 0 || b >= n || a >= b)
      throw GraphError("bad edge " + std::to_string(a) + "-" + std::to_string(b));
    if (i > 0 && edges[i] == edges[i - 1])
      throw GraphError("duplicate edge " + std::to_string(a) + "-" + std::to_string(b));
    g.adj_[static_cast<std::size_t>(a)] |= VertexSet{1} << b;
    g.adj_[static_cast<std::size_t>(b)] |= VertexSet{1} << a;
    g.edge_index_[static_cast<std::size_t>(a) * n + b] = static_cast<std::int16_t>(i);
    g.edge_index_[static_cast<std::size_t>(b) * n + a] = static_cast<std::int16_t>(i);
  }
  g.edges_ = std::move(edges);
  return g;
}

std::vector<int> Graph::degrees() const {
  std::vector<int> d(static_cast<std::size_t>(n_));
  for (int v = 0; v < n_; ++v) d[static_cast<std::size_t>(v)] = degree(v);
  return d;
}

std::vector<int> Graph::degree_multiset() const {
  auto d = degrees();
  std::sort(d.rbegin(), d.rend());
  return d;
}

int Graph::edge_index(int u, int v) const {
  return edge_index_[static_cast<std::size_t>(u) * n_ + v];
}

Graph permuted(const Graph& g, std::span<const int> perm) {
  std::vector<Edge> edges;
  edges.reserve(g.edges().size());
  for (const Edge& e : g.edges())
    edges.push_back(make_edge(perm[static_cast<std::size_t>(e.a)],
                              perm[static_cast<std::size_t>(e.b)]));
  return Graph::from_edges(g.vertex_count(), std::move(edges));
}

namespace detail {

bool connected(int n, std::span<const VertexSet> adj) {
  VertexSet all = n == 64 ? ~VertexSet{0} : ((VertexSet{1} << n) - 1);
  VertexSet reached = 1;
  VertexSet frontier = 1;
  while (frontier) {
    VertexSet next = 0;
    for_each_bit(frontier, [&](int v) { next |= adj[static_cast<std::size_t>(v)]; });
    frontier = next & ~reached;
    reached |= frontier;
  }
  return reached == all;
}

bool bipartite(int n, std::span<const VertexSet> adj) {
  std::vector<int> color(static_cast<std::size_t>(n), -1);
  for (int s = 0; s < n; ++s) {
    if (color[static_cast<std::size_t>(s)] != -1) continue;
    color[static_cast<std::size_t>(s)] = 0;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      bool bad = false;
      for_each_bit(adj[static_cast<std::size_t>(v)], [&](int u) {
        auto& cu = color[static_cast<std::size_t>(u)];
        if (cu == -1) {
          cu = 1 - color[static_cast<std::size_t>(v)];
          stack.push_back(u);
        } else if (cu == color[static_cast<std::size_t>(v)]) {
          bad = true;
        }
      });
      if (bad) return false;
    }
  }
  return true;
}

}  // namespace detail

namespace {

// BFS distances from root; -1 where unreachable.
std::vector<int> bfs_distances(const Graph& g, int root) {
  std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), -1);
  dist[static_cast<std::size_t>(root)] = 0;
  VertexSet reached = VertexSet{1} << root;
  VertexSet frontier = reached;
  int level = 0;
  while (frontier) {
    VertexSet next = 0;
    detail::for_each_bit(frontier,
                         [&](int v) { next |= g.neighbors(v); });
    next &= ~reached;
    ++level;
    detail::for_each_bit(next, [&](int v) { dist[static_cast<std::size_t>(v)] = level; });
    reached |= next;
    frontier = next;
  }
  return dist;
}

}  // namespace

bool is_connected(const Graph& g) {
  return detail::connected(g.vertex_count(), g.adjacency());
}

int distance(const Graph& g, int a, int b) {
  auto dist = bfs_distances(g, a);
  int d = dist[static_cast<std::size_t>(b)];
  if (d < 0)
    throw InfiniteDistanceError("no path between " + std::to_string(a) + " and " +
                                std::to_string(b));
  return d;
}

int diameter(const Graph& g) {
  int best = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    auto dist = bfs_distances(g, v);
    for (int d : dist) {
      if (d < 0) throw InfiniteDistanceError("graph is disconnected");
      best = std::max(best, d);
    }
  }
  return best;
}

BipartitenessResult is_bipartite(const Graph& g) {
  const int n = g.vertex_count();
  BipartitenessResult res;
  res.coloring.assign(static_cast<std::size_t>(n), -1);
  std::vector<int> parent(static_cast<std::size_t>(n), -1);

  for (int s = 0; s < n; ++s) {
    if (res.coloring[static_cast<std::size_t>(s)] != -1) continue;
    res.coloring[static_cast<std::size_t>(s)] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      int conflict = -1;
      detail::for_each_bit(g.neighbors(v), [&](int u) {
        auto& cu = res.coloring[static_cast<std::size_t>(u)];
        if (cu == -1) {
          cu = 1 - res.coloring[static_cast<std::size_t>(v)];
          parent[static_cast<std::size_t>(u)] = v;
          q.push(u);
        } else if (cu == res.coloring[static_cast<std::size_t>(v)] && conflict == -1) {
          conflict = u;
        }
      });
      if (conflict != -1) {
        // Walk both vertices up to their common ancestor; the two paths plus
        // the conflicting edge form an odd cycle.
        std::vector<int> pv{v}, pu{conflict};
        auto ancestors = [&](std::vector<int>& path) {
          while (parent[static_cast<std::size_t>(path.back())] != -1)
            path.push_back(parent[static_cast<std::size_t>(path.back())]);
        };
        ancestors(pv);
        ancestors(pu);
        while (pv.size() > 1 && pu.size() > 1 &&
               pv[pv.size() - 2] == pu[pu.size() - 2]) {
          pv.pop_back();
          pu.pop_back();
        }
        res.bipartite = false;
        res.odd_cycle.assign(pv.begin(), pv.end());
        for (auto it = pu.rbegin() + 1; it != pu.rend(); ++it)
          res.odd_cycle.push_back(*it);
        return res;
      }
    }
  }
  res.bipartite = true;
  return res;
}

LayerDecomposition layer_decomposition(const Graph& g, int root) {
  auto dist = bfs_distances(g, root);
  int d = 0;
  for (int x : dist) {
    if (x < 0) throw InfiniteDistanceError("graph is disconnected");
    d = std::max(d, x);
  }
  LayerDecomposition out;
  out.root = root;
  out.layers.assign(static_cast<std::size_t>(d) + 1, 0);
  for (int v = 0; v < g.vertex_count(); ++v)
    out.layers[static_cast<std::size_t>(dist[static_cast<std::size_t>(v)])] |= VertexSet{1} << v;
  out.sequence.reserve(out.layers.size());
  for (VertexSet layer : out.layers) out.sequence.push_back(std::popcount(layer));
  return out;
}

std::vector<FourCycle> enumerate_four_cycles(const Graph& g) {
  std::vector<FourCycle> out;
  const int n = g.vertex_count();
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      // Cycles counted at the diagonal holding the smallest vertex: demand
      // a < c < d so each cycle appears exactly once.
      VertexSet common = g.neighbors(a) & g.neighbors(b);
      common &= ~((VertexSet{2} << a) - 1);
      auto cs = detail::bits_of(common);
      for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j)
          out.push_back(FourCycle{a, cs[i], b, cs[j]});
    }
  }
  return out;
}

std::vector<DistanceTwoPair> enumerate_distance2_pairs(const Graph& g) {
  std::vector<DistanceTwoPair> out;
  const int n = g.vertex_count();
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (g.adjacent(a, b)) continue;
      VertexSet common = g.neighbors(a) & g.neighbors(b);
      if (!common) continue;
      out.push_back(DistanceTwoPair{a, b, detail::bits_of(common)});
    }
  }
  return out;
}

Graph cartesian_product(const Graph& g1, const Graph& g2) {
  const int n1 = g1.vertex_count(), n2 = g2.vertex_count();
  if (n1 * n2 > kMaxVertices)
    throw CapacityError("product has " + std::to_string(n1 * n2) + " vertices, max " +
                        std::to_string(kMaxVertices));
  std::vector<Edge> edges;
  auto id = [n2](int u1, int u2) { return u1 * n2 + u2; };
  for (int u = 0; u < n1; ++u)
    for (const Edge& e : g2.edges()) edges.push_back(make_edge(id(u, e.a), id(u, e.b)));
  for (const Edge& e : g1.edges())
    for (int u = 0; u < n2; ++u) edges.push_back(make_edge(id(e.a, u), id(e.b, u)));
  return Graph::from_edges(n1 * n2, std::move(edges));
}

}  // namespace mtlz
