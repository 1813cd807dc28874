#include "mtlz/canonical.hpp"

#include <algorithm>
#include <numeric>

#include "mtlz/graph6.hpp"

namespace mtlz {

namespace {

class Canonicalizer {
 public:
  Canonicalizer(int n, std::vector<std::uint8_t> pc) : n_(n), pc_(std::move(pc)) {}

  // Returns the lexicographically least encoding over the leaves of the
  // individualization-refinement tree, plus one permutation attaining it.
  std::pair<std::string, std::vector<int>> run() {
    std::vector<int> colors(static_cast<std::size_t>(n_), 0);
    search(colors);
    return {best_key_, best_perm_};
  }

 private:
  std::uint8_t pc(int u, int v) const {
    return pc_[static_cast<std::size_t>(u) * n_ + v];
  }

  // Stable refinement: vertices are recolored by (old color, signature), so
  // existing classes only ever split.
  void refine(std::vector<int>& colors) const {
    using Sig = std::pair<int, std::vector<std::pair<int, int>>>;
    int ncolors = 1 + *std::max_element(colors.begin(), colors.end());
    for (;;) {
      std::vector<Sig> sigs(static_cast<std::size_t>(n_));
      for (int v = 0; v < n_; ++v) {
        auto& s = sigs[static_cast<std::size_t>(v)];
        s.first = colors[static_cast<std::size_t>(v)];
        for (int u = 0; u < n_; ++u) {
          if (u == v) continue;
          int rel = pc(v, u) * 8 + pc(u, v);
          if (rel) s.second.emplace_back(colors[static_cast<std::size_t>(u)], rel);
        }
        std::sort(s.second.begin(), s.second.end());
      }
      std::vector<int> order(static_cast<std::size_t>(n_));
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](int x, int y) {
        return sigs[static_cast<std::size_t>(x)] < sigs[static_cast<std::size_t>(y)];
      });
      std::vector<int> next(static_cast<std::size_t>(n_));
      int id = 0;
      for (std::size_t i = 0; i < order.size(); ++i) {
        if (i > 0 && sigs[static_cast<std::size_t>(order[i])] !=
                         sigs[static_cast<std::size_t>(order[i - 1])])
          ++id;
        next[static_cast<std::size_t>(order[i])] = id;
      }
      if (id + 1 == ncolors) {
        colors = next;
        return;
      }
      ncolors = id + 1;
      colors = next;
    }
  }

  void search(std::vector<int> colors) {
    refine(colors);
    int ncolors = 1 + *std::max_element(colors.begin(), colors.end());
    if (ncolors == n_) {
      emit(colors);
      return;
    }
    // Target cell: the lowest color value with multiplicity >= 2. Color
    // values are refinement ranks, so the choice is isomorphism-invariant.
    std::vector<int> count(static_cast<std::size_t>(ncolors), 0);
    for (int c : colors) ++count[static_cast<std::size_t>(c)];
    int target = 0;
    while (count[static_cast<std::size_t>(target)] < 2) ++target;
    for (int v = 0; v < n_; ++v) {
      if (colors[static_cast<std::size_t>(v)] != target) continue;
      std::vector<int> child(colors);
      for (int u = 0; u < n_; ++u)
        if (child[static_cast<std::size_t>(u)] > target ||
            (child[static_cast<std::size_t>(u)] == target && u != v))
          ++child[static_cast<std::size_t>(u)];
      search(std::move(child));
    }
  }

  void emit(const std::vector<int>& colors) {
    // Discrete coloring: color values are final positions.
    std::vector<int> at(static_cast<std::size_t>(n_));
    for (int v = 0; v < n_; ++v) at[static_cast<std::size_t>(colors[static_cast<std::size_t>(v)])] = v;
    std::string key;
    key.reserve(static_cast<std::size_t>(n_) * n_);
    key.push_back(static_cast<char>(n_));
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) {
        key.push_back(static_cast<char>(pc(at[static_cast<std::size_t>(i)],
                                           at[static_cast<std::size_t>(j)])));
        key.push_back(static_cast<char>(pc(at[static_cast<std::size_t>(j)],
                                           at[static_cast<std::size_t>(i)])));
      }
    if (best_key_.empty() || key < best_key_) {
      best_key_ = std::move(key);
      best_perm_ = colors;
    }
  }

  int n_;
  std::vector<std::uint8_t> pc_;
  std::string best_key_;
  std::vector<int> best_perm_;
};

std::vector<std::uint8_t> pair_colors_of(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<std::uint8_t> pc(static_cast<std::size_t>(n) * n, 0);
  for (const Edge& e : g.edges()) {
    pc[static_cast<std::size_t>(e.a) * n + e.b] = 1;
    pc[static_cast<std::size_t>(e.b) * n + e.a] = 1;
  }
  return pc;
}

}  // namespace

CanonicalForm canonical_form(const Graph& g) {
  Canonicalizer canon(g.vertex_count(), pair_colors_of(g));
  auto [key, perm] = canon.run();
  CanonicalForm out;
  out.relabeling = std::move(perm);
  out.key = emit_graph6(permuted(g, out.relabeling));
  return out;
}

bool is_isomorphic(const Graph& g1, const Graph& g2) {
  if (g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count())
    return false;
  return canonical_form(g1).key == canonical_form(g2).key;
}

std::string canonical_key_oracle(const Graph& g) {
  const int n = g.vertex_count();
  if (n > 9) throw GraphError("all-permutations oracle limited to n <= 9");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  do {
    std::string key = emit_graph6(permuted(g, perm));
    if (best.empty() || key < best) best = std::move(key);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::string canonical_key_colored(int n, const std::vector<std::uint8_t>& pair_color) {
  Canonicalizer canon(n, pair_color);
  return canon.run().first;
}

}  // namespace mtlz
