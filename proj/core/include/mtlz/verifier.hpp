#pragma once

#include <utility>
#include <vector>

#include "mtlz/graph.hpp"
#include "mtlz/orientation.hpp"

namespace mtlz {

// One real linear form per edge, dimension-generic. Forms are attached to
// undirected edges; direction information lives in the signs.
struct FormAssignment {
  int dim = 0;
  std::vector<std::vector<double>> forms;  // indexed like Graph::edges()
};

struct CycleTransform {
  int p = 1;       // +1 or -1
  int r = 1;       // +1 or -1
  double theta = 0;  // rapidity
};

struct MTLZData {
  Graph graph;
  Orientation orientation;
  FormAssignment forms;
  std::vector<double> gamma;  // positive magnitude per edge
};

class VerifierError : public GraphError {
 public:
  using GraphError::GraphError;
};

struct ResidualReport {
  struct Item {
    std::vector<int> subject;  // cycle vertices, or the distance-2 pair
    double residual = 0;
  };
  double max_residual = 0;
  std::vector<Item> items;
  bool pass(double tol) const { return max_residual <= tol; }
};

// Fundamental cycles of a BFS spanning tree, as closed vertex sequences.
// They span the cycle space, which suffices for any linear per-cycle check.
std::vector<std::vector<int>> fundamental_cycles(const Graph& g);

// Signed sum of A (x) A around every fundamental cycle; entries of the
// resulting dim x dim matrix must vanish.
ResidualReport check_cycle_property(const MTLZData& data, double tol);

// For every distance-2 pair, sum of sqrt(gamma_ac gamma_bc) A_ac ^ A_bc;
// the antisymmetric matrix must vanish.
ResidualReport check_multipath_property(const MTLZData& data, double tol);

// Forms on the far side of a 4-cycle 1~3~2~4 from the base pair (A13, A14),
// via the pseudo-orthogonal transformation of the given orientation class.
// Returns (A24, A23).
std::pair<std::vector<double>, std::vector<double>> apply_cycle_transform(
    const std::vector<double>& base13, const std::vector<double>& base14,
    const CycleTransform& t, CycleOrientationClass kind);

// Wedge product as a flattened antisymmetric matrix (row-major dim x dim).
std::vector<double> wedge(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace mtlz
