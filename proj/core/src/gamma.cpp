#include "mtlz/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include <Eigen/Dense>

namespace mtlz {

GammaSystem build_gamma_system(const Graph& g, const RConstraintSystem& sys,
                               const RAssignment& r) {
  if (r.size() != sys.vars.size())
    throw GammaError("r assignment size does not match the constraint system");
  GammaSystem out;
  out.edge_count = g.edge_count();
  for (const auto& grp : sys.groups) {
    GammaSystem::Equation eq;
    eq.a = grp.a;
    eq.b = grp.b;
    const std::size_t k = grp.common.size();
    std::vector<int> sigma(k, 0);
    sigma[0] = 1;  // reference path through the smallest common neighbor
    for (std::size_t j = 1; j < k; ++j)
      sigma[j] = r[static_cast<std::size_t>(
          sys.var_id(grp.a, grp.common[0], grp.b, grp.common[j]))];
    // Pairwise consistency: sigma_i * sigma_j must equal every stored r.
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) {
        int rij = r[static_cast<std::size_t>(
            sys.var_id(grp.a, grp.common[i], grp.b, grp.common[j]))];
        if (sigma[i] * sigma[j] != rij)
          throw GammaError("r assignment violates parity on pair (" +
                           std::to_string(grp.a + 1) + "," + std::to_string(grp.b + 1) + ")");
      }
    for (std::size_t i = 0; i < k; ++i) {
      GammaSystem::Term t;
      t.sign = sigma[i];
      t.edge_ac = g.edge_index(grp.a, grp.common[i]);
      t.edge_bc = g.edge_index(grp.b, grp.common[i]);
      eq.terms.push_back(t);
    }
    out.equations.push_back(std::move(eq));
  }
  return out;
}

void gamma_residual_jacobian(const GammaSystem& sys, const std::vector<double>& y,
                             std::vector<double>& residual, std::vector<double>& jacobian) {
  const std::size_t ne = static_cast<std::size_t>(sys.edge_count);
  const std::size_t np = sys.equations.size();
  residual.assign(np, 0.0);
  jacobian.assign(np * ne, 0.0);
  for (std::size_t p = 0; p < np; ++p) {
    for (const auto& t : sys.equations[p].terms) {
      double term = t.sign * std::exp(y[static_cast<std::size_t>(t.edge_ac)] +
                                      y[static_cast<std::size_t>(t.edge_bc)]);
      residual[p] += term;
      jacobian[p * ne + static_cast<std::size_t>(t.edge_ac)] += term;
      jacobian[p * ne + static_cast<std::size_t>(t.edge_bc)] += term;
    }
  }
}

namespace {

struct RestartOutcome {
  bool converged = false;
  bool trivial = false;
  double residual = 0;
  std::vector<double> x;  // normalized
};

// Normalized residual: the system is homogeneous of degree 2, so residuals
// are measured after scaling the largest variable to 1.
double normalized_residual(const GammaSystem& sys, const std::vector<double>& y,
                           std::vector<double>& resid_buf) {
  double ymax = *std::max_element(y.begin(), y.end());
  double worst = 0;
  for (const auto& eq : sys.equations) {
    double v = 0;
    for (const auto& t : eq.terms)
      v += t.sign * std::exp(y[static_cast<std::size_t>(t.edge_ac)] +
                             y[static_cast<std::size_t>(t.edge_bc)] - 2 * ymax);
    worst = std::max(worst, std::abs(v));
  }
  (void)resid_buf;
  return worst;
}

RestartOutcome run_restart(const GammaSystem& sys, const GammaConfig& cfg,
                           std::uint64_t restart_index) {
  const std::size_t ne = static_cast<std::size_t>(sys.edge_count);
  const std::size_t np = sys.equations.size();
  std::mt19937_64 rng(cfg.rng_seed ^ (0x9e3779b97f4a7c15ull * (restart_index + 1)));
  std::uniform_real_distribution<double> init(-2.0, 2.0);
  const double shift = std::log(cfg.init_scale);
  std::vector<double> y(ne);
  for (auto& v : y) v = init(rng) + shift;

  std::vector<double> resid, jac;
  Eigen::MatrixXd JtJ(static_cast<Eigen::Index>(ne), static_cast<Eigen::Index>(ne));
  Eigen::VectorXd JtF(static_cast<Eigen::Index>(ne));

  // Fix the scale gauge at max(y) = 0: the system is homogeneous, so the
  // uniform-shift direction carries no information and would otherwise be
  // exploited as a fake descent direction.
  auto regauge = [&](std::vector<double>& point) {
    double top = *std::max_element(point.begin(), point.end());
    for (auto& v : point) v = std::clamp(v - top, -60.0, 60.0);
  };

  double lambda = 1e-3;
  std::vector<double> buf;
  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    regauge(y);
    gamma_residual_jacobian(sys, y, resid, jac);
    double f2 = 0;
    for (double v : resid) f2 += v * v;
    if (normalized_residual(sys, y, buf) <= cfg.tol_resid) break;

    JtJ.setZero();
    JtF.setZero();
    for (std::size_t p = 0; p < np; ++p) {
      for (std::size_t i = 0; i < ne; ++i) {
        double jpi = jac[p * ne + i];
        if (jpi == 0) continue;
        JtF(static_cast<Eigen::Index>(i)) += jpi * resid[p];
        for (std::size_t j = i; j < ne; ++j) {
          double v = jpi * jac[p * ne + j];
          JtJ(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += v;
        }
      }
    }
    for (std::size_t i = 0; i < ne; ++i)
      for (std::size_t j = 0; j < i; ++j)
        JtJ(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            JtJ(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));

    auto cost_at = [&](const std::vector<double>& point) {
      std::vector<double> tr_resid, unused;
      gamma_residual_jacobian(sys, point, tr_resid, unused);
      double t2 = 0;
      for (double v : tr_resid) t2 += v * v;
      return t2;
    };

    bool stepped = false;
    for (int tries = 0; tries < 12 && !stepped; ++tries) {
      Eigen::MatrixXd damped = JtJ;
      for (std::size_t i = 0; i < ne; ++i)
        damped(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) += lambda;
      Eigen::VectorXd delta = damped.ldlt().solve(-JtF);
      auto at_scale = [&](double alpha) {
        std::vector<double> point(ne);
        for (std::size_t i = 0; i < ne; ++i)
          point[i] = y[i] + alpha * delta(static_cast<Eigen::Index>(i));
        regauge(point);
        return point;
      };
      std::vector<double> trial = at_scale(1.0);
      double t2 = cost_at(trial);
      if (t2 < f2) {
        // Extrapolate along the same direction while the cost keeps
        // dropping; trivial branches collapse along descent rays whose
        // natural step length grows without bound.
        for (double alpha = 2.0; alpha <= 1024.0; alpha *= 2.0) {
          std::vector<double> wide = at_scale(alpha);
          double w2 = cost_at(wide);
          if (w2 >= t2) break;
          trial = std::move(wide);
          t2 = w2;
        }
        y = std::move(trial);
        lambda = std::max(lambda / 3.0, 1e-12);
        stepped = true;
      } else {
        lambda *= 4.0;
      }
    }
    if (!stepped) break;  // stalled
  }

  RestartOutcome out;
  out.residual = normalized_residual(sys, y, buf);
  if (out.residual > cfg.tol_resid) return out;
  out.converged = true;
  double ymax = *std::max_element(y.begin(), y.end());
  out.x.resize(ne);
  double xmin = 1.0;
  for (std::size_t i = 0; i < ne; ++i) {
    out.x[i] = std::exp(y[i] - ymax);
    xmin = std::min(xmin, out.x[i]);
  }
  out.trivial = xmin < cfg.eps_trivial;
  return out;
}

int rank_of(const RestartOutcome& o) {
  if (!o.converged) return 2;
  return o.trivial ? 1 : 0;
}

}  // namespace

GammaSolution solve_gamma(const GammaSystem& sys, const GammaConfig& cfg) {
  GammaSolution best;
  best.rng_seed = cfg.rng_seed;
  best.restarts_used = cfg.restarts;

  if (sys.equations.empty() || sys.edge_count == 0) {
    // Nothing to solve; the all-ones point satisfies an empty system.
    best.status = GammaStatus::Nontrivial;
    best.x.assign(static_cast<std::size_t>(sys.edge_count), 1.0);
    best.best_restart = 0;
    return best;
  }

  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(cfg.restarts));
  int nthreads = std::max(1, cfg.threads);
  if (nthreads == 1) {
    for (int i = 0; i < cfg.restarts; ++i)
      outcomes[static_cast<std::size_t>(i)] = run_restart(sys, cfg, static_cast<std::uint64_t>(i));
  } else {
    std::atomic<int> next{0};
    auto worker = [&] {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= cfg.restarts) return;
        outcomes[static_cast<std::size_t>(i)] =
            run_restart(sys, cfg, static_cast<std::uint64_t>(i));
      }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // Deterministic merge: best status, then lowest residual, then the
  // earliest restart.
  int best_idx = -1;
  for (int i = 0; i < cfg.restarts; ++i) {
    const auto& o = outcomes[static_cast<std::size_t>(i)];
    if (best_idx == -1) {
      best_idx = i;
      continue;
    }
    const auto& b = outcomes[static_cast<std::size_t>(best_idx)];
    if (rank_of(o) < rank_of(b) || (rank_of(o) == rank_of(b) && o.residual < b.residual))
      best_idx = i;
  }
  const auto& chosen = outcomes[static_cast<std::size_t>(best_idx)];
  best.best_restart = best_idx;
  best.residual = chosen.residual;
  bool any_converged = false;
  for (const auto& o : outcomes) any_converged |= o.converged;
  if (!any_converged) {
    best.status = GammaStatus::NoneFound;
    return best;
  }
  if (rank_of(chosen) == 0) {
    best.status = GammaStatus::Nontrivial;
    best.x = chosen.x;
  } else {
    best.status = GammaStatus::TrivialOnly;
    best.x = chosen.x;
  }
  return best;
}

GammaVerifyReport verify_gamma_assignment(const Graph& g, const RConstraintSystem& sys,
                                          const RAssignment& r,
                                          const std::vector<double>& x_per_edge) {
  if (static_cast<int>(x_per_edge.size()) != g.edge_count())
    throw GammaError("expected one positive value per edge");
  for (double v : x_per_edge)
    if (!(v > 0)) throw GammaError("edge values must be strictly positive");
  GammaSystem gsys = build_gamma_system(g, sys, r);
  GammaVerifyReport rep;
  for (const auto& eq : gsys.equations) {
    double v = 0;
    for (const auto& t : eq.terms)
      v += t.sign * x_per_edge[static_cast<std::size_t>(t.edge_ac)] *
           x_per_edge[static_cast<std::size_t>(t.edge_bc)];
    rep.per_equation.push_back(v);
    rep.max_residual = std::max(rep.max_residual, std::abs(v));
  }
  return rep;
}

}  // namespace mtlz
