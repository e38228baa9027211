#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "sda/estimator.hpp"
#include "sda/manufactured.hpp"
#include "sda/mesh.hpp"
#include "sda/solution.hpp"
#include "sda/types.hpp"

namespace sda {

/// Bulk marking: the smallest set M (greedy by descending squared indicator,
/// ties by ascending element id) with sum_{K in M} theta_K^2 >= fraction *
/// sum_K theta_K^2. Elements with zero indicator are never marked.
std::vector<int> mark(const IndicatorField& indicators, Real fraction);

struct AdaptConfig {
  Real theta = 0.5;           // marking fraction
  int max_iterations = 10;
  int dof_budget = 500000;    // stop once the solved dof count reaches this
  Real theta_threshold = 0.0; // stop once the global estimator drops to this
};

/// One solve/estimate pass of the loop. err_h_norm and effectivity are NaN
/// when no exact solution is attached; n_marked is 0 on the final record.
struct AdaptRecord {
  int iter = 0;
  int ndof = 0;
  Real theta = 0.0;
  Real zeta = 0.0;
  Real err_h_norm = 0.0;
  Real effectivity = 0.0;
  int n_marked = 0;
};

struct AdaptProblem {
  PhysicalParams params;
  VectorField f_f;
  ScalarField f_p;
  VectorField uf_boundary;  // empty means homogeneous data
  VectorField up_boundary;
  Real pressure_mean_target = 0.0;
  std::function<Real(const DiscreteSolution&)> exact_error;  // optional
  EstimatorOptions estimator;
};

AdaptProblem problem_of(const ManufacturedCase& c, bool with_exact = true);

struct AdaptResult {
  std::vector<AdaptRecord> records;
  std::unique_ptr<TwoRegionMesh> mesh;
  std::unique_ptr<DofLayout> layout;
  VectorX coefficients;
  std::string stop_reason;  // theta_threshold | dof_budget | max_iterations

  /// View of the final coefficients; requires at least one completed record.
  DiscreteSolution solution() const;
};

using AdaptObserver = std::function<void(
    int iter, const TwoRegionMesh& mesh, const DiscreteSolution& sol,
    const IndicatorField& indicators)>;

/// Solve, estimate, record, mark, bisect until a stopping rule fires. With
/// max_iterations = 0 the initial mesh is returned untouched and no record
/// is written. Solver failures are rethrown with the iteration prefixed.
AdaptResult adapt_loop(const TwoRegionMesh& initial, const AdaptProblem& problem,
                       const AdaptConfig& config,
                       const AdaptObserver& observer = {});

}  // namespace sda
