#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mtlz/graph.hpp"

namespace mtlz {

enum class SeedKind { Free1221, With1221 };

// 8-vertex minimal subgraph fixed as an induced subgraph during search:
// fixed edges are present, optional edges are decision variables, every
// other intra-seed pair stays a non-edge.
struct SeedGraph {
  SeedKind kind = SeedKind::Free1221;
  int vertex_count = 8;
  std::vector<Edge> fixed_edges;
  std::vector<Edge> optional_edges;
};

std::pair<SeedGraph, SeedGraph> minimal_seeds();

enum class Strategy { Basic, Layered };
enum class SeedChoice { Both, Free, With1221 };

struct SearchConfig {
  int n = 8;
  Strategy strategy = Strategy::Basic;
  SeedChoice seeds = SeedChoice::Both;
  int threads = 1;
  std::string checkpoint_path;  // empty disables checkpointing
  std::uint64_t rng_seed = 0;   // reserved; exhaustive search uses no randomness
  std::uint64_t checkpoint_interval_leaves = 10'000'000;
  // Budget hook: claim only the first k work units, leaving a resumable
  // checkpoint behind. -1 runs to completion.
  long stop_after_tasks = -1;
};

struct CatalogEntry {
  std::string graph6;         // canonical-labeling graph6
  std::string canonical_key;  // same bytes; hex-encoded when serialized
  int n = 0;
  int diameter = 0;
  std::vector<int> degrees;  // sorted descending
  bool has_1221 = false;
  bool from_free_seed = false;
  bool from_with1221_seed = false;
};

struct SearchCounters {
  std::uint64_t leaves = 0;         // complete edge assignments reached
  std::uint64_t pruned_k3 = 0;      // branches cut on a completed triangle
  std::uint64_t pruned_k33 = 0;     // branches cut on a completed K_{3,3}
  std::uint64_t fail_connected = 0;
  std::uint64_t fail_bipartite = 0;
  std::uint64_t fail_two_path = 0;
  std::uint64_t fail_1221 = 0;
  std::uint64_t passing = 0;  // leaves surviving every rule, before dedup

  SearchCounters& operator+=(const SearchCounters& o);
};

struct Catalog {
  std::map<std::string, CatalogEntry> entries;  // canonical key -> entry
  SearchCounters counters;
  bool complete = true;

  std::uint64_t duplicates() const { return counters.passing - entries.size(); }
  std::pair<int, int> table1_row() const;  // (1221-free, with-1221) counts
};

class SearchError : public GraphError {
 public:
  using GraphError::GraphError;
};

class CheckpointError : public SearchError {
 public:
  using SearchError::SearchError;
};

// Exhaustive seeded enumeration of candidate graphs on config.n vertices:
// connected, bipartite, all four rules, a chosen seed induced on 8 vertices,
// deduplicated by canonical form.
Catalog enumerate_candidates(const SearchConfig& config);

// Continue an interrupted run. The final catalog is identical to the one an
// uninterrupted run would have produced. When `expect` is given, the
// checkpoint must match its n/strategy/seeds.
Catalog resume(const std::string& checkpoint_path, int threads = 1,
               const SearchConfig* expect = nullptr);

// Valid layer sequences for n vertices at diameter d: outer layers >= 1,
// inner layers >= 3, deduplicated against reversal.
std::vector<std::vector<int>> layer_sequences(int n, int d);

// Line-delimited records, sorted by canonical key, then one summary record.
void write_catalog_jsonl(std::ostream& os, const Catalog& catalog);
Catalog read_catalog_jsonl(std::istream& is);

}  // namespace mtlz
