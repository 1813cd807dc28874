#pragma once

#include <cstdint>
#include <vector>

#include "mtlz/graph.hpp"
#include "mtlz/orientation.hpp"

namespace mtlz {

// The multipath system on edge variables x_e = sqrt(|gamma_e|) > 0: one
// equation per distance-2 pair (a,b), sum over common neighbors c of
// sigma_c * x_{ac} * x_{bc} = 0. Homogeneous of degree 2.
struct GammaSystem {
  struct Term {
    int sign = 0;       // sigma_c
    int edge_ac = 0;    // edge index of (a,c)
    int edge_bc = 0;    // edge index of (b,c)
  };
  struct Equation {
    int a = 0, b = 0;
    std::vector<Term> terms;
  };
  int edge_count = 0;
  std::vector<Equation> equations;
};

class GammaError : public GraphError {
 public:
  using GraphError::GraphError;
};

// Path signs are reconstructed from the r assignment with the smallest
// common neighbor as reference; throws GammaError if the assignment violates
// the pairwise parity relations.
GammaSystem build_gamma_system(const Graph& g, const RConstraintSystem& sys,
                               const RAssignment& r);

enum class GammaStatus { Nontrivial, TrivialOnly, NoneFound };

struct GammaConfig {
  int restarts = 1000;
  double tol_resid = 1e-10;
  double eps_trivial = 1e-6;
  std::uint64_t rng_seed = 0;
  int max_iterations = 250;
  int threads = 1;
  double init_scale = 1.0;  // starting points scaled by this factor
};

struct GammaSolution {
  std::vector<double> x;  // per edge, normalized to max_e x_e = 1
  double residual = 0;    // max |equation| at the normalized point
  GammaStatus status = GammaStatus::NoneFound;
  int restarts_used = 0;
  int best_restart = -1;
  std::uint64_t rng_seed = 0;
};

// Multi-start damped Gauss-Newton in log coordinates. Deterministic for a
// fixed configuration, independent of thread count.
GammaSolution solve_gamma(const GammaSystem& sys, const GammaConfig& cfg);

// Residuals of the system at a caller-supplied positive point.
struct GammaVerifyReport {
  double max_residual = 0;
  std::vector<double> per_equation;
};

GammaVerifyReport verify_gamma_assignment(const Graph& g, const RConstraintSystem& sys,
                                          const RAssignment& r,
                                          const std::vector<double>& x_per_edge);

// Residual and analytic Jacobian of the equation system at log point y;
// exposed for gradient checking.
void gamma_residual_jacobian(const GammaSystem& sys, const std::vector<double>& y,
                             std::vector<double>& residual, std::vector<double>& jacobian);

}  // namespace mtlz
