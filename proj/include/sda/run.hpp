#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sda/adaptivity.hpp"
#include "sda/manufactured.hpp"
#include "sda/types.hpp"

namespace sda {

/// Everything one invocation needs. Populated from a flat key=value config
/// file and then from command-line flags, later assignments winning.
struct RunConfig {
  std::string command;  // solve | estimate | adapt | convergence
  std::string mesh_file;
  int benchmark_nx = 4;
  int benchmark_ny = 4;
  std::string case_name = "poly";
  CaseOptions case_opts;
  int data_degree = 6;  // load-vector quadrature override
  AdaptConfig adapt;
  EstimatorOptions estimator;
  int levels = 4;
  std::string out_dir = ".";
};

/// Assign one configuration key. Unknown keys and unparsable values raise
/// Error naming the key. Accepted keys: command, mesh, benchmark (NXxNY),
/// case, out, levels, data_degree, scaled_tangential_jump, the physical
/// parameters nu rho g alpha delta k1 k2, the case shape knobs sigma w1 w3
/// c_g r1 c_p layer_epsilon layer_mu, and the loop controls theta
/// max_iterations dof_budget theta_threshold.
void set_config_key(RunConfig& cfg, const std::string& key,
                    const std::string& value);

/// Parse `key = value` lines into cfg; # starts a comment, blank lines are
/// skipped.
void load_config(RunConfig& cfg, std::istream& is);
void load_config_file(RunConfig& cfg, const std::string& path);

/// Consistency checks across fields; raises Error naming the field.
void validate_config(const RunConfig& cfg);

struct ConvergenceRow {
  int level = 0;
  Real h = 0.0;
  int ndof = 0;
  Real err_h_norm = 0.0;
  Real theta = 0.0;
  Real zeta = 0.0;
  Real rate = 0.0;  // NaN on the first level
};

void write_history_csv(std::ostream& os, const std::vector<AdaptRecord>& records);
void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows);

/// Uniform refinement study on the benchmark family: level l uses the
/// (nx*2^l) x (ny*2^l) grid.
std::vector<ConvergenceRow> convergence_study(const RunConfig& cfg);

/// Execute cfg.command, writing artifacts under cfg.out_dir. Raises Error on
/// any failure; the caller maps that to a nonzero exit.
void run(const RunConfig& cfg);

}  // namespace sda
