#include "mtlz/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "mtlz/canonical.hpp"
#include "mtlz/digest.hpp"
#include "mtlz/rules.hpp"

namespace mtlz {

using nlohmann::json;

SearchCounters& SearchCounters::operator+=(const SearchCounters& o) {
  leaves += o.leaves;
  pruned_k3 += o.pruned_k3;
  pruned_k33 += o.pruned_k33;
  fail_connected += o.fail_connected;
  fail_bipartite += o.fail_bipartite;
  fail_two_path += o.fail_two_path;
  fail_1221 += o.fail_1221;
  passing += o.passing;
  return *this;
}

std::pair<int, int> Catalog::table1_row() const {
  int free = 0, with = 0;
  for (const auto& [key, e] : entries) (e.has_1221 ? with : free) += 1;
  return {free, with};
}

std::pair<SeedGraph, SeedGraph> minimal_seeds() {
  auto edges = [](std::initializer_list<std::pair<int, int>> raw) {
    std::vector<Edge> out;
    for (auto [a, b] : raw) out.push_back(make_edge(a - 1, b - 1));
    return out;
  };
  SeedGraph free;
  free.kind = SeedKind::Free1221;
  free.fixed_edges = edges({{1, 2}, {2, 3}, {3, 4}, {1, 5}, {3, 5}, {2, 6},
                            {4, 6}, {1, 7}, {6, 7}, {4, 8}, {5, 8}});
  free.optional_edges = edges({{7, 8}});

  SeedGraph with;
  with.kind = SeedKind::With1221;
  with.fixed_edges = edges({{1, 2}, {2, 3}, {3, 4}, {1, 5}, {3, 5}, {2, 6},
                            {4, 6}, {5, 6}, {4, 8}, {5, 8}, {1, 7}, {7, 8}});
  with.optional_edges = edges({{3, 7}});
  return {free, with};
}

std::vector<std::vector<int>> layer_sequences(int n, int d) {
  std::vector<std::vector<int>> out;
  if (d < 3 || n < 3 * d - 1) return out;
  std::vector<int> seq(static_cast<std::size_t>(d) + 1);
  auto rec = [&](auto&& self, int layer, int remaining) -> void {
    if (layer == d) {
      if (remaining >= 1) {
        seq[static_cast<std::size_t>(d)] = remaining;
        std::vector<int> rev(seq.rbegin(), seq.rend());
        out.push_back(std::min(seq, rev));
      }
      return;
    }
    int lo = (layer == 0) ? 1 : 3;
    // Leave room for the rest: inner layers need 3, the last needs 1.
    int tail = 3 * (d - 1 - layer) + 1;
    for (int k = lo; remaining - k >= tail; ++k) {
      seq[static_cast<std::size_t>(layer)] = k;
      self(self, layer + 1, remaining - k);
    }
  };
  rec(rec, 0, n);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

constexpr int kCheckpointVersion = 1;

std::uint64_t bit(int v) { return VertexSet{1} << v; }

// One independent unit of enumeration: a fixed base plus an ordered list of
// decision edges explored by DFS.
struct DecisionProblem {
  int n = 0;
  SeedKind seed = SeedKind::Free1221;
  bool layered = false;
  std::vector<Edge> fixed_edges;
  std::vector<Edge> decisions;
};

struct TaskResult {
  std::map<std::string, CatalogEntry> entries;
  SearchCounters counters;
};

enum class AddResult { Ok, K3, K33 };

bool creates_k33(std::span<const VertexSet> adj, int u, int v) {
  // A K_{3,3} through edge u-v has sides {u,*,*} and {v,y1,y2} with y1,y2
  // neighbors of u; three common neighbors of v,y1,y2 complete it.
  if (std::popcount(adj[static_cast<std::size_t>(u)]) >
      std::popcount(adj[static_cast<std::size_t>(v)]))
    std::swap(u, v);
  auto nu = detail::bits_of(adj[static_cast<std::size_t>(u)] & ~bit(v));
  for (std::size_t i = 0; i < nu.size(); ++i) {
    VertexSet t1 = adj[static_cast<std::size_t>(v)] & adj[static_cast<std::size_t>(nu[i])];
    if (std::popcount(t1) < 3) continue;
    for (std::size_t j = i + 1; j < nu.size(); ++j) {
      if (std::popcount(t1 & adj[static_cast<std::size_t>(nu[j])]) >= 3) return true;
    }
  }
  return false;
}

AddResult try_add_edge(std::vector<VertexSet>& adj, int u, int v) {
  if (adj[static_cast<std::size_t>(u)] & adj[static_cast<std::size_t>(v)])
    return AddResult::K3;
  adj[static_cast<std::size_t>(u)] |= bit(v);
  adj[static_cast<std::size_t>(v)] |= bit(u);
  if (creates_k33(adj, u, v)) {
    adj[static_cast<std::size_t>(u)] &= ~bit(v);
    adj[static_cast<std::size_t>(v)] &= ~bit(u);
    return AddResult::K33;
  }
  return AddResult::Ok;
}

void remove_edge(std::vector<VertexSet>& adj, int u, int v) {
  adj[static_cast<std::size_t>(u)] &= ~bit(v);
  adj[static_cast<std::size_t>(v)] &= ~bit(u);
}

void process_leaf(const DecisionProblem& prob, const std::vector<VertexSet>& adj,
                  TaskResult& out) {
  auto& c = out.counters;
  ++c.leaves;
  const int n = prob.n;
  std::span<const VertexSet> view(adj.data(), static_cast<std::size_t>(n));
  if (!detail::connected(n, view)) {
    ++c.fail_connected;
    return;
  }
  if (!prob.layered && !detail::bipartite(n, view)) {
    ++c.fail_bipartite;
    return;
  }
  if (!detail::two_path_ok(n, view)) {
    ++c.fail_two_path;
    return;
  }
  if (!detail::rule_1221_ok(n, view)) {
    ++c.fail_1221;
    return;
  }
  ++c.passing;

  std::vector<Edge> edges;
  for (int a = 0; a < n; ++a)
    detail::for_each_bit(adj[static_cast<std::size_t>(a)] & ~((bit(a) << 1) - 1),
                         [&](int b) { edges.push_back(Edge{a, b}); });
  Graph g = Graph::from_edges(n, std::move(edges));
  CanonicalForm cf = canonical_form(g);

  auto it = out.entries.find(cf.key);
  if (it == out.entries.end()) {
    CatalogEntry e;
    e.graph6 = cf.key;
    e.canonical_key = cf.key;
    e.n = n;
    e.diameter = diameter(g);
    e.degrees = g.degree_multiset();
    e.has_1221 = contains_1221(g);
    it = out.entries.emplace(cf.key, std::move(e)).first;
  }
  if (prob.seed == SeedKind::Free1221)
    it->second.from_free_seed = true;
  else
    it->second.from_with1221_seed = true;
}

void explore(const DecisionProblem& prob, std::vector<VertexSet>& adj, std::size_t depth,
             TaskResult& out) {
  if (depth == prob.decisions.size()) {
    process_leaf(prob, adj, out);
    return;
  }
  const Edge e = prob.decisions[depth];
  explore(prob, adj, depth + 1, out);  // edge absent
  switch (try_add_edge(adj, e.a, e.b)) {
    case AddResult::Ok:
      explore(prob, adj, depth + 1, out);
      remove_edge(adj, e.a, e.b);
      break;
    case AddResult::K3:
      ++out.counters.pruned_k3;
      break;
    case AddResult::K33:
      ++out.counters.pruned_k33;
      break;
  }
}

// Replays the first prefix_len decision values, then explores the subtree.
// Prune events hit during the replay are credited to the task whose
// remaining prefix bits are all zero, so totals are independent of the
// partitioning.
void run_task(const DecisionProblem& prob, std::uint64_t prefix, int prefix_len,
              TaskResult& out) {
  std::vector<VertexSet> adj(static_cast<std::size_t>(prob.n), 0);
  for (const Edge& e : prob.fixed_edges) {
    if (try_add_edge(adj, e.a, e.b) != AddResult::Ok)
      throw SearchError("seed edges violate the monotone rules");
  }
  for (int i = 0; i < prefix_len; ++i) {
    if (!((prefix >> i) & 1)) continue;
    const Edge e = prob.decisions[static_cast<std::size_t>(i)];
    AddResult res = try_add_edge(adj, e.a, e.b);
    if (res == AddResult::Ok) continue;
    if ((prefix >> (i + 1)) == 0) {
      if (res == AddResult::K3)
        ++out.counters.pruned_k3;
      else
        ++out.counters.pruned_k33;
    }
    return;
  }
  explore(prob, adj, static_cast<std::size_t>(prefix_len), out);
}

std::vector<Edge> basic_decisions(int n, const SeedGraph& seed) {
  std::vector<Edge> out = seed.optional_edges;
  for (int v = seed.vertex_count; v < n; ++v)
    for (int s = 0; s < seed.vertex_count; ++s) out.push_back(Edge{s, v});
  for (int u = seed.vertex_count; u < n; ++u)
    for (int v = u + 1; v < n; ++v) out.push_back(Edge{u, v});
  return out;
}

std::vector<SeedGraph> chosen_seeds(SeedChoice choice) {
  auto [free, with] = minimal_seeds();
  switch (choice) {
    case SeedChoice::Both:
      return {free, with};
    case SeedChoice::Free:
      return {free};
    case SeedChoice::With1221:
      return {with};
  }
  return {};
}

// All ways to drop the seed into the layers of a sequence so that every seed
// edge joins consecutive layers and no layer overflows.
std::vector<std::vector<int>> seed_layerings(const SeedGraph& seed,
                                             const std::vector<int>& seq) {
  const int d = static_cast<int>(seq.size()) - 1;
  const int k = seed.vertex_count;
  std::vector<std::vector<int>> nbrs(static_cast<std::size_t>(k));
  for (const Edge& e : seed.fixed_edges) {
    nbrs[static_cast<std::size_t>(e.a)].push_back(e.b);
    nbrs[static_cast<std::size_t>(e.b)].push_back(e.a);
  }
  std::vector<std::vector<int>> out;
  std::vector<int> layer(static_cast<std::size_t>(k), -1);
  std::vector<int> used(seq.size(), 0);
  auto rec = [&](auto&& self, int v) -> void {
    if (v == k) {
      out.push_back(layer);
      return;
    }
    for (int l = 0; l <= d; ++l) {
      if (used[static_cast<std::size_t>(l)] >= seq[static_cast<std::size_t>(l)]) continue;
      bool ok = true;
      for (int u : nbrs[static_cast<std::size_t>(v)])
        if (layer[static_cast<std::size_t>(u)] != -1 &&
            std::abs(layer[static_cast<std::size_t>(u)] - l) != 1)
          ok = false;
      if (!ok) continue;
      layer[static_cast<std::size_t>(v)] = l;
      ++used[static_cast<std::size_t>(l)];
      self(self, v + 1);
      --used[static_cast<std::size_t>(l)];
      layer[static_cast<std::size_t>(v)] = -1;
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<DecisionProblem> build_problems(const SearchConfig& cfg) {
  if (cfg.n < 8 || cfg.n > 20)
    throw SearchError("seeded search supports 8 <= n <= 20, got " + std::to_string(cfg.n));
  std::vector<DecisionProblem> out;
  for (const SeedGraph& seed : chosen_seeds(cfg.seeds)) {
    if (cfg.strategy == Strategy::Basic) {
      DecisionProblem p;
      p.n = cfg.n;
      p.seed = seed.kind;
      p.fixed_edges = seed.fixed_edges;
      p.decisions = basic_decisions(cfg.n, seed);
      out.push_back(std::move(p));
      continue;
    }
    for (int d = 3; 3 * d - 1 <= cfg.n; ++d) {
      for (const auto& seq : layer_sequences(cfg.n, d)) {
        std::vector<int> offset(seq.size() + 1, 0);
        for (std::size_t i = 0; i < seq.size(); ++i)
          offset[i + 1] = offset[i] + seq[i];
        for (const auto& layering : seed_layerings(seed, seq)) {
          DecisionProblem p;
          p.n = cfg.n;
          p.seed = seed.kind;
          p.layered = true;
          // Seed vertices take the first slots of their layers in label
          // order; any other slot choice is a within-layer relabeling.
          std::vector<int> slot(static_cast<std::size_t>(seed.vertex_count));
          std::vector<int> used(seq.size(), 0);
          std::vector<bool> is_seed_slot(static_cast<std::size_t>(cfg.n), false);
          for (int v = 0; v < seed.vertex_count; ++v) {
            int l = layering[static_cast<std::size_t>(v)];
            slot[static_cast<std::size_t>(v)] =
                offset[static_cast<std::size_t>(l)] + used[static_cast<std::size_t>(l)]++;
            is_seed_slot[static_cast<std::size_t>(slot[static_cast<std::size_t>(v)])] = true;
          }
          for (const Edge& e : seed.fixed_edges)
            p.fixed_edges.push_back(make_edge(slot[static_cast<std::size_t>(e.a)],
                                              slot[static_cast<std::size_t>(e.b)]));
          for (const Edge& e : seed.optional_edges)
            if (std::abs(layering[static_cast<std::size_t>(e.a)] -
                         layering[static_cast<std::size_t>(e.b)]) == 1)
              p.decisions.push_back(make_edge(slot[static_cast<std::size_t>(e.a)],
                                              slot[static_cast<std::size_t>(e.b)]));
          for (std::size_t l = 0; l + 1 < seq.size(); ++l)
            for (int u = offset[l]; u < offset[l + 1]; ++u)
              for (int v = offset[l + 1]; v < offset[l + 2]; ++v)
                if (!(is_seed_slot[static_cast<std::size_t>(u)] &&
                      is_seed_slot[static_cast<std::size_t>(v)]))
                  p.decisions.push_back(Edge{u, v});
          out.push_back(std::move(p));
        }
      }
    }
  }
  return out;
}

int default_prefix_depth(int threads) {
  int depth = static_cast<int>(std::bit_width(static_cast<unsigned>(std::max(1, threads)) * 8u - 1u));
  return std::clamp(depth, 0, 16);
}

const char* strategy_name(Strategy s) { return s == Strategy::Basic ? "basic" : "layered"; }
const char* seeds_name(SeedChoice s) {
  switch (s) {
    case SeedChoice::Both:
      return "both";
    case SeedChoice::Free:
      return "free";
    case SeedChoice::With1221:
      return "with1221";
  }
  return "?";
}

Strategy strategy_from(const std::string& s) {
  if (s == "basic") return Strategy::Basic;
  if (s == "layered") return Strategy::Layered;
  throw CheckpointError("unknown strategy '" + s + "'");
}

SeedChoice seeds_from(const std::string& s) {
  if (s == "both") return SeedChoice::Both;
  if (s == "free") return SeedChoice::Free;
  if (s == "with1221") return SeedChoice::With1221;
  throw CheckpointError("unknown seed choice '" + s + "'");
}

std::string config_hash(int n, Strategy strategy, SeedChoice seeds, int prefix_depth) {
  std::string desc = std::to_string(kCheckpointVersion) + "|" + std::to_string(n) + "|" +
                     strategy_name(strategy) + "|" + seeds_name(seeds) + "|" +
                     std::to_string(prefix_depth);
  return to_hex(fnv1a64(desc));
}

json counters_to_json(const SearchCounters& c) {
  return json{{"leaves", c.leaves},
              {"pruned_k3", c.pruned_k3},
              {"pruned_k33", c.pruned_k33},
              {"fail_connected", c.fail_connected},
              {"fail_bipartite", c.fail_bipartite},
              {"fail_two_path", c.fail_two_path},
              {"fail_1221", c.fail_1221},
              {"passing", c.passing}};
}

SearchCounters counters_from_json(const json& j) {
  SearchCounters c;
  c.leaves = j.at("leaves").get<std::uint64_t>();
  c.pruned_k3 = j.at("pruned_k3").get<std::uint64_t>();
  c.pruned_k33 = j.at("pruned_k33").get<std::uint64_t>();
  c.fail_connected = j.at("fail_connected").get<std::uint64_t>();
  c.fail_bipartite = j.at("fail_bipartite").get<std::uint64_t>();
  c.fail_two_path = j.at("fail_two_path").get<std::uint64_t>();
  c.fail_1221 = j.at("fail_1221").get<std::uint64_t>();
  c.passing = j.at("passing").get<std::uint64_t>();
  return c;
}

json entry_to_json(const CatalogEntry& e) {
  json seeds = json::array();
  if (e.from_free_seed) seeds.push_back("free");
  if (e.from_with1221_seed) seeds.push_back("with1221");
  return json{{"graph6", e.graph6},       {"canonical_key", hex_encode(e.canonical_key)},
              {"n", e.n},                 {"diameter", e.diameter},
              {"degrees", e.degrees},     {"has_1221", e.has_1221},
              {"seeds", seeds}};
}

CatalogEntry entry_from_json(const json& j) {
  CatalogEntry e;
  e.graph6 = j.at("graph6").get<std::string>();
  e.canonical_key = e.graph6;
  e.n = j.at("n").get<int>();
  e.diameter = j.at("diameter").get<int>();
  e.degrees = j.at("degrees").get<std::vector<int>>();
  e.has_1221 = j.at("has_1221").get<bool>();
  for (const auto& s : j.at("seeds")) {
    if (s == "free") e.from_free_seed = true;
    if (s == "with1221") e.from_with1221_seed = true;
  }
  return e;
}

struct CheckpointState {
  int n = 0;
  Strategy strategy = Strategy::Basic;
  SeedChoice seeds = SeedChoice::Both;
  int prefix_depth = 0;
  std::uint64_t tasks_total = 0;
  std::vector<std::uint64_t> tasks_done;
  Catalog catalog;
};

std::string entries_digest(const Catalog& catalog, const std::vector<std::uint64_t>& done) {
  std::string blob;
  for (const auto& [key, e] : catalog.entries) blob += key;
  blob += "#";
  blob += std::to_string(catalog.counters.leaves);
  blob += std::to_string(catalog.counters.passing);
  for (auto t : done) blob += std::to_string(t) + ",";
  return to_hex(fnv1a64(blob));
}

void write_checkpoint(const std::string& path, const CheckpointState& st) {
  json doc;
  doc["kind"] = "mtlz-search-checkpoint";
  doc["version"] = kCheckpointVersion;
  doc["config"] = json{{"n", st.n},
                       {"strategy", strategy_name(st.strategy)},
                       {"seeds", seeds_name(st.seeds)},
                       {"prefix_depth", st.prefix_depth}};
  doc["config_hash"] = config_hash(st.n, st.strategy, st.seeds, st.prefix_depth);
  doc["tasks_total"] = st.tasks_total;
  doc["tasks_done"] = st.tasks_done;
  doc["counters"] = counters_to_json(st.catalog.counters);
  json entries = json::array();
  for (const auto& [key, e] : st.catalog.entries) entries.push_back(entry_to_json(e));
  doc["entries"] = entries;
  doc["complete"] = st.tasks_done.size() == st.tasks_total;
  doc["digest"] = entries_digest(st.catalog, st.tasks_done);

  std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::trunc);
    if (!os) throw CheckpointError("cannot write checkpoint file " + tmp);
    os << doc.dump() << "\n";
  }
  std::filesystem::rename(tmp, path);
}

CheckpointState read_checkpoint(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw CheckpointError("cannot open checkpoint file " + path);
  json doc;
  try {
    is >> doc;
  } catch (const json::exception& e) {
    throw CheckpointError("corrupt checkpoint: " + std::string(e.what()));
  }
  if (doc.value("kind", "") != "mtlz-search-checkpoint" ||
      doc.value("version", -1) != kCheckpointVersion)
    throw CheckpointError("checkpoint version mismatch");
  CheckpointState st;
  const json& cfg = doc.at("config");
  st.n = cfg.at("n").get<int>();
  st.strategy = strategy_from(cfg.at("strategy").get<std::string>());
  st.seeds = seeds_from(cfg.at("seeds").get<std::string>());
  st.prefix_depth = cfg.at("prefix_depth").get<int>();
  if (doc.at("config_hash").get<std::string>() !=
      config_hash(st.n, st.strategy, st.seeds, st.prefix_depth))
    throw CheckpointError("checkpoint config hash mismatch");
  st.tasks_total = doc.at("tasks_total").get<std::uint64_t>();
  st.tasks_done = doc.at("tasks_done").get<std::vector<std::uint64_t>>();
  st.catalog.counters = counters_from_json(doc.at("counters"));
  for (const auto& je : doc.at("entries")) {
    CatalogEntry e = entry_from_json(je);
    st.catalog.entries.emplace(e.canonical_key, std::move(e));
  }
  if (doc.at("digest").get<std::string>() != entries_digest(st.catalog, st.tasks_done))
    throw CheckpointError("checkpoint digest mismatch");
  return st;
}

Catalog run_search(int n, Strategy strategy, SeedChoice seeds, int threads,
                   int prefix_depth, const std::string& checkpoint_path,
                   std::uint64_t checkpoint_interval, long stop_after_tasks,
                   const std::vector<std::uint64_t>& already_done,
                   const Catalog& initial) {
  std::vector<DecisionProblem> problems;
  {
    SearchConfig cfg;
    cfg.n = n;
    cfg.strategy = strategy;
    cfg.seeds = seeds;
    problems = build_problems(cfg);
  }

  // Task id space: per problem, 2^min(prefix_depth, #decisions) prefixes.
  std::vector<std::uint64_t> task_offset{0};
  std::vector<int> task_bits;
  for (const auto& p : problems) {
    int bits = std::min<int>(prefix_depth, static_cast<int>(p.decisions.size()));
    task_bits.push_back(bits);
    task_offset.push_back(task_offset.back() + (std::uint64_t{1} << bits));
  }
  const std::uint64_t tasks_total = task_offset.back();

  std::vector<bool> done(tasks_total, false);
  Catalog merged = initial;
  std::vector<std::uint64_t> done_ids = already_done;
  for (auto t : already_done) {
    if (t >= tasks_total) throw CheckpointError("checkpoint task id out of range");
    done[t] = true;
  }

  CheckpointState st;
  st.n = n;
  st.strategy = strategy;
  st.seeds = seeds;
  st.prefix_depth = prefix_depth;
  st.tasks_total = tasks_total;

  std::mutex merge_mutex;
  std::uint64_t leaves_since_checkpoint = 0;
  std::atomic<std::uint64_t> next_task{0};
  const std::uint64_t claim_limit =
      stop_after_tasks >= 0
          ? std::min<std::uint64_t>(tasks_total, static_cast<std::uint64_t>(stop_after_tasks))
          : tasks_total;

  auto worker = [&] {
    for (;;) {
      std::uint64_t t = next_task.fetch_add(1);
      if (t >= claim_limit) return;
      if (done[t]) continue;
      std::size_t pi =
          static_cast<std::size_t>(std::upper_bound(task_offset.begin(), task_offset.end(), t) -
                                   task_offset.begin()) -
          1;
      std::uint64_t prefix = t - task_offset[pi];
      TaskResult result;
      run_task(problems[pi], prefix, task_bits[pi], result);

      std::lock_guard lock(merge_mutex);
      merged.counters += result.counters;
      for (auto& [key, e] : result.entries) {
        auto it = merged.entries.find(key);
        if (it == merged.entries.end()) {
          merged.entries.emplace(key, std::move(e));
        } else {
          it->second.from_free_seed |= e.from_free_seed;
          it->second.from_with1221_seed |= e.from_with1221_seed;
        }
      }
      done[t] = true;
      done_ids.push_back(t);
      leaves_since_checkpoint += result.counters.leaves;
      if (!checkpoint_path.empty() && leaves_since_checkpoint >= checkpoint_interval) {
        leaves_since_checkpoint = 0;
        std::sort(done_ids.begin(), done_ids.end());
        st.tasks_done = done_ids;
        st.catalog = merged;
        write_checkpoint(checkpoint_path, st);
      }
    }
  };

  int nthreads = std::max(1, threads);
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  merged.complete = done_ids.size() == tasks_total;
  if (!checkpoint_path.empty()) {
    std::sort(done_ids.begin(), done_ids.end());
    st.tasks_done = done_ids;
    st.catalog = merged;
    write_checkpoint(checkpoint_path, st);
  }
  return merged;
}

}  // namespace

Catalog enumerate_candidates(const SearchConfig& config) {
  int prefix_depth = default_prefix_depth(config.threads);
  return run_search(config.n, config.strategy, config.seeds, config.threads, prefix_depth,
                    config.checkpoint_path, config.checkpoint_interval_leaves,
                    config.stop_after_tasks, {}, Catalog{});
}

Catalog resume(const std::string& checkpoint_path, int threads, const SearchConfig* expect) {
  CheckpointState st = read_checkpoint(checkpoint_path);
  if (expect) {
    if (expect->n != st.n)
      throw CheckpointError("checkpoint is for n=" + std::to_string(st.n) + ", requested n=" +
                            std::to_string(expect->n));
    if (expect->strategy != st.strategy || expect->seeds != st.seeds)
      throw CheckpointError("checkpoint strategy/seed choice differs from the request");
  }
  if (st.tasks_done.size() == st.tasks_total) {
    st.catalog.complete = true;
    return st.catalog;
  }
  return run_search(st.n, st.strategy, st.seeds, threads, st.prefix_depth, checkpoint_path,
                    10'000'000, -1, st.tasks_done, st.catalog);
}

void write_catalog_jsonl(std::ostream& os, const Catalog& catalog) {
  for (const auto& [key, e] : catalog.entries) os << entry_to_json(e).dump() << "\n";
  json summary{{"summary", true},
               {"entries", catalog.entries.size()},
               {"duplicates", catalog.duplicates()},
               {"counters", counters_to_json(catalog.counters)},
               {"complete", catalog.complete}};
  os << summary.dump() << "\n";
}

Catalog read_catalog_jsonl(std::istream& is) {
  Catalog out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    if (j.contains("summary")) {
      if (j.contains("counters")) out.counters = counters_from_json(j["counters"]);
      out.complete = j.value("complete", true);
      continue;
    }
    if (!j.contains("graph6")) continue;  // foreign records (e.g. manifests)
    CatalogEntry e = entry_from_json(j);
    out.entries.emplace(e.canonical_key, std::move(e));
  }
  return out;
}

}  // namespace mtlz
