#include "mtlz/rules.hpp"

#include <bit>

namespace mtlz {

namespace {

// Visits 1221 embeddings in a fixed deterministic order. The pattern is
// K_{3,3} minus one edge, labeled by layers: 1 | 2,3 | 4,5 | 6 with edges
// 1-2, 1-3, 2-4, 2-5, 3-4, 3-5, 4-6, 5-6. Vertices x,y play 2,3; p,q play
// 4,5; c1 plays 1; c6 plays 6. Stops early when the visitor returns true.
template <typename Visit>
bool scan_1221(int n, std::span<const VertexSet> adj, Visit&& visit) {
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      VertexSet cxy = adj[static_cast<std::size_t>(x)] & adj[static_cast<std::size_t>(y)];
      if (std::popcount(cxy) < 3) continue;  // needs p, q and c1
      auto mids = detail::bits_of(cxy);
      for (std::size_t i = 0; i < mids.size(); ++i) {
        for (std::size_t j = i + 1; j < mids.size(); ++j) {
          int p = mids[i], q = mids[j];
          VertexSet cpq = adj[static_cast<std::size_t>(p)] & adj[static_cast<std::size_t>(q)];
          VertexSet c6set = cpq & ~(VertexSet{1} << x) & ~(VertexSet{1} << y);
          if (!c6set) continue;
          for (int c1 : mids) {
            if (c1 == p || c1 == q) continue;
            VertexSet rest = c6set & ~(VertexSet{1} << c1);
            bool stop = false;
            detail::for_each_bit(rest, [&](int c6) {
              if (!stop && visit(c1, p, q, x, y, c6)) stop = true;
            });
            if (stop) return true;
          }
        }
      }
    }
  }
  return false;
}

// Rescue vertex for an embedding: some seventh vertex on a 2-path 1~a~4,
// 1~a~5, 2~a~6 or 3~a~6 (the pairs left non-adjacent by the pattern).
bool rescue_exists(std::span<const VertexSet> adj, int c1, int p, int q, int x, int y,
                   int c6) {
  VertexSet rescue = (adj[static_cast<std::size_t>(c1)] & adj[static_cast<std::size_t>(p)]) |
                     (adj[static_cast<std::size_t>(c1)] & adj[static_cast<std::size_t>(q)]) |
                     (adj[static_cast<std::size_t>(x)] & adj[static_cast<std::size_t>(c6)]) |
                     (adj[static_cast<std::size_t>(y)] & adj[static_cast<std::size_t>(c6)]);
  VertexSet used = (VertexSet{1} << c1) | (VertexSet{1} << p) | (VertexSet{1} << q) |
                   (VertexSet{1} << x) | (VertexSet{1} << y) | (VertexSet{1} << c6);
  return (rescue & ~used) != 0;
}

}  // namespace

namespace detail {

bool two_path_ok(int n, std::span<const VertexSet> adj) {
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if ((adj[static_cast<std::size_t>(a)] >> b) & 1u) continue;
      VertexSet common = adj[static_cast<std::size_t>(a)] & adj[static_cast<std::size_t>(b)];
      if (common && std::popcount(common) == 1) return false;
    }
  }
  return true;
}

bool rule_1221_ok(int n, std::span<const VertexSet> adj) {
  return !scan_1221(n, adj, [&](int c1, int p, int q, int x, int y, int c6) {
    return !rescue_exists(adj, c1, p, q, x, y, c6);
  });
}

bool has_1221(int n, std::span<const VertexSet> adj) {
  return scan_1221(n, adj, [](int, int, int, int, int, int) { return true; });
}

}  // namespace detail

RuleCheck check_no_k3(const Graph& g) {
  for (const Edge& e : g.edges()) {
    VertexSet common = g.neighbors(e.a) & g.neighbors(e.b);
    if (common)
      return {false, {e.a, e.b, std::countr_zero(common)}};
  }
  return {};
}

RuleCheck check_two_path(const Graph& g) {
  const int n = g.vertex_count();
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (g.adjacent(a, b)) continue;
      VertexSet common = g.neighbors(a) & g.neighbors(b);
      if (common && std::popcount(common) == 1)
        return {false, {a, b, std::countr_zero(common)}};
    }
  }
  return {};
}

RuleCheck check_no_k33(const Graph& g) {
  const int n = g.vertex_count();
  for (int a1 = 0; a1 < n; ++a1) {
    for (int a2 = a1 + 1; a2 < n; ++a2) {
      VertexSet c12 = g.neighbors(a1) & g.neighbors(a2);
      if (std::popcount(c12) < 3) continue;
      for (int a3 = a2 + 1; a3 < n; ++a3) {
        VertexSet common = c12 & g.neighbors(a3);
        if (std::popcount(common) < 3) continue;
        auto bs = detail::bits_of(common);
        return {false, {a1, a2, a3, bs[0], bs[1], bs[2]}};
      }
    }
  }
  return {};
}

RuleCheck check_no_1221(const Graph& g) {
  RuleCheck out;
  scan_1221(g.vertex_count(), g.adjacency(),
            [&](int c1, int p, int q, int x, int y, int c6) {
              if (rescue_exists(g.adjacency(), c1, p, q, x, y, c6)) return false;
              out.pass = false;
              out.witness = {c1, x, y, p, q, c6};
              return true;
            });
  return out;
}

RuleReport is_candidate(const Graph& g) {
  RuleReport r;
  r.no_k3 = check_no_k3(g);
  r.two_path = check_two_path(g);
  r.no_k33 = check_no_k33(g);
  r.no_1221 = check_no_1221(g);
  r.candidate = r.no_k3.pass && r.two_path.pass && r.no_k33.pass && r.no_1221.pass;
  r.bipartite = is_bipartite(g).bipartite;
  r.connected = is_connected(g);
  return r;
}

bool contains_1221(const Graph& g) {
  return detail::has_1221(g.vertex_count(), g.adjacency());
}

bool is_zero_two_graph(const Graph& g) {
  const int n = g.vertex_count();
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      int k = std::popcount(g.neighbors(a) & g.neighbors(b));
      if (k != 0 && k != 2) return false;
    }
  }
  return true;
}

bool diameter_bound_holds(const Graph& g) {
  int d = diameter(g);
  if (d <= 2) return true;
  return g.vertex_count() >= 3 * d - 1;
}

}  // namespace mtlz
