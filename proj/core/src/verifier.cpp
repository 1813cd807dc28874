#include "mtlz/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace mtlz {

namespace {

void validate(const MTLZData& data) {
  const std::size_t ne = data.graph.edges().size();
  if (data.orientation.signs.size() != ne)
    throw VerifierError("orientation does not cover every edge");
  if (data.forms.forms.size() != ne) throw VerifierError("missing forms for some edges");
  for (const auto& f : data.forms.forms)
    if (static_cast<int>(f.size()) != data.forms.dim)
      throw VerifierError("form dimension mismatch");
  if (data.gamma.size() != ne) throw VerifierError("missing gamma for some edges");
}

int directed_sign(const MTLZData& d, int u, int v) {
  int idx = d.graph.edge_index(u, v);
  int s = d.orientation.signs[static_cast<std::size_t>(idx)];
  return u < v ? s : -s;
}

}  // namespace

std::vector<std::vector<int>> fundamental_cycles(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::vector<int> depth(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<int>> cycles;

  for (int root = 0; root < n; ++root) {
    if (depth[static_cast<std::size_t>(root)] != -1) continue;
    depth[static_cast<std::size_t>(root)] = 0;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      detail::for_each_bit(g.neighbors(v), [&](int u) {
        if (depth[static_cast<std::size_t>(u)] == -1) {
          depth[static_cast<std::size_t>(u)] = depth[static_cast<std::size_t>(v)] + 1;
          parent[static_cast<std::size_t>(u)] = v;
          q.push(u);
        }
      });
    }
  }

  for (const Edge& e : g.edges()) {
    if (parent[static_cast<std::size_t>(e.a)] == e.b ||
        parent[static_cast<std::size_t>(e.b)] == e.a)
      continue;  // tree edge
    // Walk both endpoints to their lowest common ancestor.
    std::vector<int> pa{e.a}, pb{e.b};
    int x = e.a, y = e.b;
    while (depth[static_cast<std::size_t>(x)] > depth[static_cast<std::size_t>(y)]) {
      x = parent[static_cast<std::size_t>(x)];
      pa.push_back(x);
    }
    while (depth[static_cast<std::size_t>(y)] > depth[static_cast<std::size_t>(x)]) {
      y = parent[static_cast<std::size_t>(y)];
      pb.push_back(y);
    }
    while (x != y) {
      x = parent[static_cast<std::size_t>(x)];
      pa.push_back(x);
      y = parent[static_cast<std::size_t>(y)];
      pb.push_back(y);
    }
    std::vector<int> cycle(pa);
    for (auto it = pb.rbegin() + 1; it != pb.rend(); ++it) cycle.push_back(*it);
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

ResidualReport check_cycle_property(const MTLZData& data, double tol) {
  validate(data);
  const int m = data.forms.dim;
  ResidualReport rep;
  for (const auto& cycle : fundamental_cycles(data.graph)) {
    std::vector<double> sum(static_cast<std::size_t>(m) * m, 0.0);
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      int u = cycle[i];
      int v = cycle[(i + 1) % cycle.size()];
      int s = directed_sign(data, u, v);
      const auto& f = data.forms.forms[static_cast<std::size_t>(data.graph.edge_index(u, v))];
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
          sum[static_cast<std::size_t>(j) * m + k] +=
              s * f[static_cast<std::size_t>(j)] * f[static_cast<std::size_t>(k)];
    }
    double worst = 0;
    for (double v : sum) worst = std::max(worst, std::abs(v));
    rep.items.push_back({cycle, worst});
    rep.max_residual = std::max(rep.max_residual, worst);
  }
  (void)tol;
  return rep;
}

std::vector<double> wedge(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t m = x.size();
  std::vector<double> out(m * m, 0.0);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < m; ++k) out[j * m + k] = x[j] * y[k] - x[k] * y[j];
  return out;
}

ResidualReport check_multipath_property(const MTLZData& data, double tol) {
  validate(data);
  const int m = data.forms.dim;
  ResidualReport rep;
  for (const DistanceTwoPair& pair : enumerate_distance2_pairs(data.graph)) {
    std::vector<double> sum(static_cast<std::size_t>(m) * m, 0.0);
    for (int c : pair.common) {
      int eac = data.graph.edge_index(pair.a, c);
      int ebc = data.graph.edge_index(pair.b, c);
      double weight = std::sqrt(std::abs(data.gamma[static_cast<std::size_t>(eac)] *
                                         data.gamma[static_cast<std::size_t>(ebc)]));
      auto w = wedge(data.forms.forms[static_cast<std::size_t>(eac)],
                     data.forms.forms[static_cast<std::size_t>(ebc)]);
      for (std::size_t i = 0; i < w.size(); ++i) sum[i] += weight * w[i];
    }
    double worst = 0;
    for (double v : sum) worst = std::max(worst, std::abs(v));
    rep.items.push_back({{pair.a, pair.b}, worst});
    rep.max_residual = std::max(rep.max_residual, worst);
  }
  (void)tol;
  return rep;
}

std::pair<std::vector<double>, std::vector<double>> apply_cycle_transform(
    const std::vector<double>& base13, const std::vector<double>& base14,
    const CycleTransform& t, CycleOrientationClass kind) {
  if (base13.size() != base14.size())
    throw VerifierError("base forms must share a dimension");
  const double ch = std::cosh(t.theta);
  const double sh = std::sinh(t.theta);
  std::vector<double> a24(base13.size()), a23(base13.size());
  switch (kind) {
    case CycleOrientationClass::NonBipartite:
      for (std::size_t i = 0; i < base13.size(); ++i) {
        a24[i] = t.p * (ch * base13[i] - t.r * sh * base14[i]);
        a23[i] = t.p * (sh * base13[i] - t.r * ch * base14[i]);
      }
      break;
    case CycleOrientationClass::Bipartite:
      for (std::size_t i = 0; i < base13.size(); ++i) {
        a24[i] = t.p * (t.r * sh * base13[i] + ch * base14[i]);
        a23[i] = t.p * (t.r * ch * base13[i] + sh * base14[i]);
      }
      break;
    case CycleOrientationClass::Invalid:
      throw VerifierError("no transform for an invalid cycle orientation");
  }
  return {std::move(a24), std::move(a23)};
}

}  // namespace mtlz
