#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mtlz/graph.hpp"

namespace mtlz {

enum class FamilyKind {
  K2,
  Fan,                // K_{2,n}, n >= 3
  CompleteBipartite,  // K_{m,n}
  Hypercube,          // Q_D
  Product,            // Cartesian product of factors
  G1463,              // the 14-vertex valency-4 bipartite (0,2)-graph
  G14631,             // G1463 plus an apex over its top BFS layer
  G13631,             // 14-vertex layered 1-3-6-3-1 candidate
  Clebsch16,          // 16-vertex non-bipartite triangle-free (0,2)-graph
  Catalog1441_2,      // the 10-vertex catalog graph used as worked example
};

struct FamilySpec {
  FamilyKind kind = FamilyKind::K2;
  int m = 0;
  int n = 0;
  std::vector<FamilySpec> factors;

  // Grammar: K2 | Fan(n) | K(m,n) | Q(d) | Product(spec,spec,...) |
  // G1463 | G14631 | G13631 | Clebsch16 | Catalog1441_2 (alias 1441-2).
  static FamilySpec parse(std::string_view text);
  std::string to_string() const;
};

class FamilyError : public GraphError {
 public:
  using GraphError::GraphError;
};

Graph build(const FamilySpec& spec);

inline Graph build(std::string_view spec) { return build(FamilySpec::parse(spec)); }

}  // namespace mtlz
