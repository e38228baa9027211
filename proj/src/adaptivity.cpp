#include "sda/adaptivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sda/assembly.hpp"
#include "sda/norms.hpp"
#include "sda/solver.hpp"

namespace sda {

std::vector<int> mark(const IndicatorField& indicators, Real fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw Error("mark: fraction must lie in (0, 1]");
  }
  const int n = static_cast<int>(indicators.theta_sq.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (indicators.theta_sq[a] != indicators.theta_sq[b]) {
      return indicators.theta_sq[a] > indicators.theta_sq[b];
    }
    return a < b;
  });
  // accumulate the total in the same order as the greedy pass so that
  // fraction = 1 marks exactly the elements with positive indicator
  Real total = 0.0;
  for (int id : order) total += indicators.theta_sq[id];
  const Real target = fraction * total;
  std::vector<int> marked;
  if (total <= 0.0) return marked;
  Real acc = 0.0;
  for (int id : order) {
    if (acc >= target) break;
    if (indicators.theta_sq[id] <= 0.0) break;
    marked.push_back(id);
    acc += indicators.theta_sq[id];
  }
  std::sort(marked.begin(), marked.end());
  return marked;
}

AdaptProblem problem_of(const ManufacturedCase& c, bool with_exact) {
  AdaptProblem p;
  p.params = c.params;
  p.f_f = c.f_f;
  p.f_p = c.f_p;
  if (!c.homogeneous_bc) {
    p.uf_boundary = c.u_f;
    p.up_boundary = c.u_p;
  }
  p.pressure_mean_target = c.pressure_integral;
  if (with_exact) {
    p.exact_error = [c](const DiscreteSolution& sol) {
      return exact_error(sol, c).total();
    };
  }
  return p;
}

DiscreteSolution AdaptResult::solution() const {
  if (records.empty() || !mesh || !layout) {
    throw Error("AdaptResult: no completed iteration to view");
  }
  return DiscreteSolution(*mesh, *layout, coefficients);
}

AdaptResult adapt_loop(const TwoRegionMesh& initial, const AdaptProblem& problem,
                       const AdaptConfig& config, const AdaptObserver& observer) {
  if (!(config.theta > 0.0 && config.theta <= 1.0)) {
    throw Error("adapt_loop: marking fraction must lie in (0, 1]");
  }
  if (config.max_iterations < 0 || config.dof_budget <= 0) {
    throw Error("adapt_loop: iteration and dof budgets must be positive");
  }
  AdaptResult result;
  result.mesh = std::make_unique<TwoRegionMesh>(initial);
  if (config.max_iterations == 0) {
    result.stop_reason = "max_iterations";
    return result;
  }

  for (int iter = 0;; ++iter) {
    result.layout = std::make_unique<DofLayout>(*result.mesh);
    const TwoRegionMesh& mesh = *result.mesh;
    const DofLayout& layout = *result.layout;

    VectorX lifting = make_lifting(mesh, layout,
                                   problem.uf_boundary ? &problem.uf_boundary : nullptr,
                                   problem.up_boundary ? &problem.up_boundary : nullptr);
    AssembleOptions opts;
    opts.pressure_mean_target = problem.pressure_mean_target;

    IndicatorField ind;
    try {
      CoupledSystem sys = assemble_system(mesh, layout, problem.params,
                                          problem.f_f, problem.f_p, opts,
                                          std::move(lifting));
      DiscreteSolution sol = solve(sys);
      result.coefficients = sol.coefficients();
      ind = estimate(sol, problem.params, problem.f_f, problem.f_p,
                     problem.estimator);
      AdaptRecord rec;
      rec.iter = iter;
      rec.ndof = layout.n_total();
      rec.theta = ind.theta;
      rec.zeta = ind.zeta;
      const Real nan = std::numeric_limits<Real>::quiet_NaN();
      rec.err_h_norm = problem.exact_error ? problem.exact_error(sol) : nan;
      rec.effectivity = rec.theta / rec.err_h_norm;
      result.records.push_back(rec);
      if (observer) observer(iter, mesh, sol, ind);
    } catch (const Error& e) {
      throw Error("adapt_loop: iteration " + std::to_string(iter) + ": " +
                  e.what());
    }

    if (ind.theta <= config.theta_threshold) {
      result.stop_reason = "theta_threshold";
      break;
    }
    if (layout.n_total() >= config.dof_budget) {
      result.stop_reason = "dof_budget";
      break;
    }
    if (iter + 1 >= config.max_iterations) {
      result.stop_reason = "max_iterations";
      break;
    }

    std::vector<int> marked = mark(ind, config.theta);
    if (marked.empty()) {
      result.stop_reason = "theta_threshold";
      break;
    }
    result.records.back().n_marked = static_cast<int>(marked.size());
    result.mesh = std::make_unique<TwoRegionMesh>(bisect(*result.mesh, marked));
  }
  return result;
}

}  // namespace sda
