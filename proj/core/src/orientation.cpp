#include "mtlz/orientation.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>

#include "mtlz/canonical.hpp"
#include "mtlz/rules.hpp"

namespace mtlz {

namespace {

// Sign of edge u->v given the stored sign of the sorted pair.
int directed_sign(const Graph& g, const Orientation& o, int u, int v) {
  int idx = g.edge_index(u, v);
  int s = o.signs[static_cast<std::size_t>(idx)];
  return u < v ? s : -s;
}

}  // namespace

CycleOrientationClass classify_cycle(const Graph& g, const Orientation& o,
                                     const FourCycle& cycle) {
  const std::array<int, 4> vs{cycle.a, cycle.c, cycle.b, cycle.d};
  int sources = 0, sinks = 0, source_pos = -1, sink_pos = -1;
  for (int i = 0; i < 4; ++i) {
    int prev = vs[static_cast<std::size_t>((i + 3) & 3)];
    int next = vs[static_cast<std::size_t>((i + 1) & 3)];
    int v = vs[static_cast<std::size_t>(i)];
    // s^{vu} = -1 means the arrow leaves v.
    bool out_prev = directed_sign(g, o, v, prev) == -1;
    bool out_next = directed_sign(g, o, v, next) == -1;
    if (out_prev && out_next) {
      ++sources;
      source_pos = i;
    } else if (!out_prev && !out_next) {
      ++sinks;
      sink_pos = i;
    }
  }
  if (sources == 2 && sinks == 2) return CycleOrientationClass::Bipartite;
  if (sources == 1 && sinks == 1 && ((source_pos ^ sink_pos) & 1) == 0)
    return CycleOrientationClass::NonBipartite;
  return CycleOrientationClass::Invalid;
}

Orientation all_up_orientation(const Graph& g, int root) {
  if (!is_bipartite(g).bipartite)
    throw OrientationError("all-up orientation requires a bipartite graph");
  LayerDecomposition layers = layer_decomposition(g, root);
  std::vector<int> depth(static_cast<std::size_t>(g.vertex_count()));
  for (std::size_t l = 0; l < layers.layers.size(); ++l)
    detail::for_each_bit(layers.layers[l],
                         [&](int v) { depth[static_cast<std::size_t>(v)] = static_cast<int>(l); });
  Orientation o;
  o.signs.reserve(g.edges().size());
  for (const Edge& e : g.edges())
    o.signs.push_back(depth[static_cast<std::size_t>(e.a)] < depth[static_cast<std::size_t>(e.b)]
                          ? std::int8_t{-1}
                          : std::int8_t{1});
  return o;
}

Orientation reversed(const Orientation& o) {
  Orientation r;
  r.signs.reserve(o.signs.size());
  for (auto s : o.signs) r.signs.push_back(static_cast<std::int8_t>(-s));
  return r;
}

int RConstraintSystem::var_id(int a, int c, int b, int d) const {
  if (a > b) std::swap(a, b);
  if (c > d) std::swap(c, d);
  for (const PairGroup& grp : groups) {
    if (grp.a != a || grp.b != b) continue;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < grp.common.size(); ++i)
      for (std::size_t j = i + 1; j < grp.common.size(); ++j, ++pos)
        if (grp.common[i] == c && grp.common[j] == d)
          return grp.var_ids[pos];
  }
  return -1;
}

std::string RConstraintSystem::var_name(int id) const {
  const RVariable& v = vars[static_cast<std::size_t>(id)];
  auto p = [](int x) { return std::to_string(x + 1); };
  return "r_{" + p(v.a) + "," + p(v.c) + "," + p(v.b) + "," + p(v.d) + "}";
}

RConstraintSystem build_r_system(const Graph& g) {
  RuleReport report = is_candidate(g);
  if (!report.candidate)
    throw OrientationError("r system is defined for candidate graphs only");

  RConstraintSystem sys;
  for (const DistanceTwoPair& pair : enumerate_distance2_pairs(g)) {
    RConstraintSystem::PairGroup grp;
    grp.a = pair.a;
    grp.b = pair.b;
    grp.common = pair.common;
    const std::size_t k = pair.common.size();
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) {
        grp.var_ids.push_back(static_cast<int>(sys.vars.size()));
        sys.vars.push_back(RVariable{pair.a, pair.common[i], pair.b, pair.common[j]});
      }
    if (k == 2) sys.forced_negative.push_back(grp.var_ids[0]);
    if (k >= 3) {
      auto id_of = [&](std::size_t i, std::size_t j) {
        // position of (i,j), i<j, in lexicographic pair order
        std::size_t pos = i * k - i * (i + 1) / 2 + (j - i - 1);
        return grp.var_ids[pos];
      };
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
          for (std::size_t l = j + 1; l < k; ++l)
            sys.parity.push_back({id_of(i, j), id_of(j, l), id_of(i, l)});
    }
    sys.groups.push_back(std::move(grp));
  }
  return sys;
}

namespace {

// DFS over unforced variables with unit propagation: forced values and
// equal/opposite links propagate immediately, parity triples fire once two
// of their members are set, mixed-sign groups reject all-positive pairs.
class RSolver {
 public:
  RSolver(const RConstraintSystem& sys, const std::vector<std::pair<int, int>>& equal,
          const std::vector<std::pair<int, int>>& opposite)
      : sys_(sys), nvars_(sys.vars.size()) {
    links_.resize(nvars_);
    for (auto [x, y] : equal) {
      links_[static_cast<std::size_t>(x)].push_back({y, +1});
      links_[static_cast<std::size_t>(y)].push_back({x, +1});
    }
    for (auto [x, y] : opposite) {
      links_[static_cast<std::size_t>(x)].push_back({y, -1});
      links_[static_cast<std::size_t>(y)].push_back({x, -1});
    }
    parity_by_var_.resize(nvars_);
    for (std::size_t t = 0; t < sys.parity.size(); ++t)
      for (int v : sys.parity[t]) parity_by_var_[static_cast<std::size_t>(v)].push_back(t);
  }

  // Enumerates satisfying assignments until `limit` are found.
  std::vector<RAssignment> solve(std::size_t limit) {
    limit_ = limit;
    values_.assign(nvars_, 0);
    trail_.clear();
    solutions_.clear();
    bool ok = true;
    for (int v : sys_.forced_negative)
      if (!assign(v, -1)) {
        ok = false;
        break;
      }
    if (ok) search();
    return std::move(solutions_);
  }

 private:
  bool assign(int v, int val) {
    auto& slot = values_[static_cast<std::size_t>(v)];
    if (slot != 0) return slot == val;
    slot = static_cast<std::int8_t>(val);
    trail_.push_back(v);
    for (auto [u, rel] : links_[static_cast<std::size_t>(v)])
      if (!assign(u, val * rel)) return false;
    for (std::size_t t : parity_by_var_[static_cast<std::size_t>(v)]) {
      const auto& tri = sys_.parity[t];
      int unknown = -1, prod = 1;
      for (int x : tri) {
        int xv = values_[static_cast<std::size_t>(x)];
        if (xv == 0) {
          if (unknown != -1) {
            unknown = -2;
            break;
          }
          unknown = x;
        } else {
          prod *= xv;
        }
      }
      if (unknown == -2) continue;
      if (unknown == -1) {
        if (prod != 1) return false;
      } else if (!assign(unknown, prod)) {
        return false;
      }
    }
    return true;
  }

  bool groups_ok_complete() const {
    for (const auto& grp : sys_.groups) {
      if (grp.var_ids.empty()) continue;
      bool has_negative = false;
      for (int v : grp.var_ids)
        if (values_[static_cast<std::size_t>(v)] == -1) has_negative = true;
      if (!has_negative) return false;
    }
    return true;
  }

  // Groups whose variables are all assigned must already show a negative.
  bool groups_ok_partial() const {
    for (const auto& grp : sys_.groups) {
      bool complete = true, has_negative = false;
      for (int v : grp.var_ids) {
        int val = values_[static_cast<std::size_t>(v)];
        if (val == 0) complete = false;
        if (val == -1) has_negative = true;
      }
      if (complete && !has_negative && !grp.var_ids.empty()) return false;
    }
    return true;
  }

  void search() {
    if (solutions_.size() >= limit_) return;
    if (!groups_ok_partial()) return;
    int branch = -1;
    for (std::size_t v = 0; v < nvars_; ++v)
      if (values_[v] == 0) {
        branch = static_cast<int>(v);
        break;
      }
    if (branch == -1) {
      if (groups_ok_complete()) solutions_.push_back(values_);
      return;
    }
    for (int val : {-1, +1}) {
      std::size_t mark = trail_.size();
      if (assign(branch, val)) search();
      while (trail_.size() > mark) {
        values_[static_cast<std::size_t>(trail_.back())] = 0;
        trail_.pop_back();
      }
      if (solutions_.size() >= limit_) return;
    }
  }

  const RConstraintSystem& sys_;
  std::size_t nvars_;
  std::vector<std::vector<std::pair<int, int>>> links_;  // (other var, relation sign)
  std::vector<std::vector<std::size_t>> parity_by_var_;
  RAssignment values_;
  std::vector<int> trail_;
  std::vector<RAssignment> solutions_;
  std::size_t limit_ = 0;
};

struct CycleInfo {
  FourCycle cycle;
  std::array<int, 4> edge_ids;  // a-c, c-b, b-d, d-a
  int var_ab = -1;
  int var_cd = -1;
};

std::vector<std::uint8_t> digraph_pair_colors(const Graph& g, const Orientation& o) {
  const int n = g.vertex_count();
  std::vector<std::uint8_t> pc(static_cast<std::size_t>(n) * n, 0);
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const Edge& e = g.edges()[i];
    // arrow a->b iff s^{ab} = -1
    bool down = o.signs[i] == -1;
    pc[static_cast<std::size_t>(e.a) * n + e.b] = down ? 1 : 2;
    pc[static_cast<std::size_t>(e.b) * n + e.a] = down ? 2 : 1;
  }
  return pc;
}

std::string digraph_key(const Graph& g, const Orientation& o) {
  std::string k1 = canonical_key_colored(g.vertex_count(), digraph_pair_colors(g, o));
  std::string k2 = canonical_key_colored(g.vertex_count(), digraph_pair_colors(g, reversed(o)));
  return std::min(k1, k2);
}

class BranchSearcher {
 public:
  explicit BranchSearcher(const Graph& g) : g_(g), sys_(build_r_system(g)) {
    auto cycles = enumerate_four_cycles(g);
    for (const FourCycle& c : cycles) {
      CycleInfo info;
      info.cycle = c;
      info.edge_ids = {g.edge_index(c.a, c.c), g.edge_index(c.c, c.b),
                       g.edge_index(c.b, c.d), g.edge_index(c.d, c.a)};
      info.var_ab = sys_.var_id(c.a, c.c, c.b, c.d);
      info.var_cd = sys_.var_id(c.c, c.a, c.d, c.b);
      cycles_.push_back(info);
    }
    order_edges();
    cycles_by_edge_.resize(g.edges().size());
    for (std::size_t ci = 0; ci < cycles_.size(); ++ci)
      for (int e : cycles_[ci].edge_ids)
        cycles_by_edge_[static_cast<std::size_t>(e)].push_back(ci);
  }

  BranchSearchResult run() {
    BranchSearchResult out;
    signs_.assign(g_.edges().size(), 0);
    dfs(0, out);
    std::sort(out.raw.begin(), out.raw.end(),
              [](const SurvivingOrientation& x, const SurvivingOrientation& y) {
                return x.orientation.signs < y.orientation.signs;
              });

    std::map<std::string, OrientationClass> classes;
    std::map<std::vector<std::int8_t>, int> reversal_reps;
    for (std::size_t i = 0; i < out.raw.size(); ++i) {
      const auto& surv = out.raw[i];
      std::string key = digraph_key(g_, surv.orientation);
      auto [it, fresh] = classes.try_emplace(key);
      if (fresh) {
        it->second.canonical_key = key;
        it->second.representative = surv;
      }
      it->second.raw_members.push_back(i);
      reversal_reps.try_emplace(
          std::min(surv.orientation.signs, reversed(surv.orientation).signs), 0);
    }
    for (auto& [key, cls] : classes) out.classes.push_back(std::move(cls));
    out.reversal_classes = reversal_reps.size();
    return out;
  }

 private:
  // Orient edges in an order that completes 4-cycles as early as possible,
  // so contradictions cut branches high in the tree.
  void order_edges() {
    const std::size_t ne = g_.edges().size();
    edge_order_.clear();
    std::vector<bool> placed(ne, false);
    std::vector<int> remaining(cycles_.size(), 4);
    for (std::size_t step = 0; step < ne; ++step) {
      int best = -1, best_closed = -1, best_advanced = -1;
      for (std::size_t e = 0; e < ne; ++e) {
        if (placed[e]) continue;
        int closed = 0, advanced = 0;
        for (std::size_t ci : cycles_by_edge_placeholder(e)) {
          if (remaining[ci] == 1)
            ++closed;
          else if (remaining[ci] == 2)
            ++advanced;
        }
        if (closed > best_closed ||
            (closed == best_closed && advanced > best_advanced)) {
          best = static_cast<int>(e);
          best_closed = closed;
          best_advanced = advanced;
        }
      }
      placed[static_cast<std::size_t>(best)] = true;
      edge_order_.push_back(best);
      for (std::size_t ci = 0; ci < cycles_.size(); ++ci)
        for (int e : cycles_[ci].edge_ids)
          if (e == best) --remaining[ci];
    }
  }

  // order_edges runs before cycles_by_edge_ exists; scan directly.
  std::vector<std::size_t> cycles_by_edge_placeholder(std::size_t e) const {
    std::vector<std::size_t> out;
    for (std::size_t ci = 0; ci < cycles_.size(); ++ci)
      for (int eid : cycles_[ci].edge_ids)
        if (static_cast<std::size_t>(eid) == static_cast<std::size_t>(e)) out.push_back(ci);
    return out;
  }

  void dfs(std::size_t depth, BranchSearchResult& out) {
    if (depth == edge_order_.size()) {
      Orientation o{signs_};
      auto solutions = RSolver(sys_, equal_links_, opposite_links_).solve(SIZE_MAX);
      if (!solutions.empty()) out.raw.push_back({std::move(o), std::move(solutions)});
      return;
    }
    const int edge = edge_order_[depth];
    for (int sign : {-1, +1}) {
      signs_[static_cast<std::size_t>(edge)] = static_cast<std::int8_t>(sign);
      std::size_t eq_mark = equal_links_.size();
      std::size_t op_mark = opposite_links_.size();
      bool ok = true;
      bool added = false;
      for (std::size_t ci : cycles_by_edge_[static_cast<std::size_t>(edge)]) {
        const CycleInfo& info = cycles_[ci];
        bool complete = true;
        for (int e : info.edge_ids)
          if (signs_[static_cast<std::size_t>(e)] == 0) complete = false;
        if (!complete) continue;
        Orientation view{signs_};
        switch (classify_cycle(g_, view, info.cycle)) {
          case CycleOrientationClass::NonBipartite:
            equal_links_.emplace_back(info.var_ab, info.var_cd);
            added = true;
            break;
          case CycleOrientationClass::Bipartite:
            opposite_links_.emplace_back(info.var_ab, info.var_cd);
            added = true;
            break;
          case CycleOrientationClass::Invalid:
            ++out.pruned_invalid_cycle;
            ok = false;
            break;
        }
        if (!ok) break;
      }
      if (ok && added && depth + 1 < edge_order_.size()) {
        if (RSolver(sys_, equal_links_, opposite_links_).solve(1).empty()) {
          ++out.pruned_unsat;
          ok = false;
        }
      }
      if (ok) dfs(depth + 1, out);
      equal_links_.resize(eq_mark);
      opposite_links_.resize(op_mark);
    }
    signs_[static_cast<std::size_t>(edge)] = 0;
  }

  const Graph& g_;
  RConstraintSystem sys_;
  std::vector<CycleInfo> cycles_;
  std::vector<int> edge_order_;
  std::vector<std::vector<std::size_t>> cycles_by_edge_;
  std::vector<std::int8_t> signs_;
  std::vector<std::pair<int, int>> equal_links_;
  std::vector<std::pair<int, int>> opposite_links_;
};

}  // namespace

std::vector<RAssignment> solve_r(const RConstraintSystem& sys,
                                 const std::vector<std::pair<int, int>>& equal_links,
                                 const std::vector<std::pair<int, int>>& opposite_links,
                                 std::size_t limit) {
  return RSolver(sys, equal_links, opposite_links).solve(limit);
}

BranchSearchResult branch_search(const Graph& g, int /*threads*/) {
  return BranchSearcher(g).run();
}

}  // namespace mtlz
