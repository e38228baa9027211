#include "sda/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "sda/assembly.hpp"
#include "sda/estimator.hpp"
#include "sda/mesh_io.hpp"
#include "sda/norms.hpp"
#include "sda/solver.hpp"
#include "sda/vtk_io.hpp"

namespace sda {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

Real parse_real(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const Real v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw Error("config: key '" + key + "' expects a number, got '" + value + "'");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw Error("config: key '" + key + "' expects an integer, got '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true") return true;
  if (value == "0" || value == "false") return false;
  throw Error("config: key '" + key + "' expects a boolean, got '" + value + "'");
}

std::string fmt(Real v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

/// Mesh, layout, solved coefficients and report bundled so the pieces a
/// DiscreteSolution points into stay alive together.
struct SolveState {
  TwoRegionMesh mesh;
  DofLayout layout;
  VectorX coefficients;
  SolveReport report;

  SolveState(TwoRegionMesh m, const ManufacturedCase& c, int data_degree)
      : mesh(std::move(m)), layout(mesh) {
    VectorX lifting;
    if (!c.homogeneous_bc) lifting = make_lifting(mesh, layout, &c.u_f, &c.u_p);
    AssembleOptions opts;
    opts.pressure_mean_target = c.pressure_integral;
    opts.data_degree = data_degree;
    const CoupledSystem sys = assemble_system(mesh, layout, c.params, c.f_f,
                                              c.f_p, opts, std::move(lifting));
    const VectorX x = solve_vector(sys, 1e-10, &report);
    coefficients = sys.expand(x);
  }

  DiscreteSolution solution() const {
    return DiscreteSolution(mesh, layout, coefficients);
  }
};

TwoRegionMesh make_run_mesh(const RunConfig& cfg) {
  if (!cfg.mesh_file.empty()) return read_mesh_file(cfg.mesh_file);
  return build_rectangle_benchmark(cfg.benchmark_nx, cfg.benchmark_ny);
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

std::ofstream open_out(const RunConfig& cfg, const std::string& name) {
  std::ofstream os(out_path(cfg, name));
  if (!os) throw Error("run: cannot open " + out_path(cfg, name));
  return os;
}

void run_solve(const RunConfig& cfg) {
  const ManufacturedCase c = make_case(cfg.case_name, cfg.case_opts);
  SolveState st(make_run_mesh(cfg), c, cfg.data_degree);
  const DiscreteSolution sol = st.solution();
  write_vtk_file(out_path(cfg, "solution.vtk"), st.mesh, &sol);
  const Real err = exact_error(sol, c).total();
  std::cout << "solve: case=" << c.name << " ndof=" << st.layout.n_total()
            << " residual=" << st.report.residual << " err_h_norm=" << err
            << "\n";
}

void run_estimate(const RunConfig& cfg) {
  const ManufacturedCase c = make_case(cfg.case_name, cfg.case_opts);
  SolveState st(make_run_mesh(cfg), c, cfg.data_degree);
  const DiscreteSolution sol = st.solution();
  const IndicatorField ind = estimate(sol, c.params, c.f_f, c.f_p, cfg.estimator);
  auto os = open_out(cfg, "indicators.csv");
  write_indicator_csv(os, st.mesh, ind);
  std::cout << "estimate: case=" << c.name << " ndof=" << st.layout.n_total()
            << " theta=" << ind.theta << " zeta=" << ind.zeta << "\n";
}

void run_adapt(const RunConfig& cfg) {
  const ManufacturedCase c = make_case(cfg.case_name, cfg.case_opts);
  AdaptProblem prob = problem_of(c);
  prob.estimator = cfg.estimator;
  const AdaptObserver observer = [&cfg](int iter, const TwoRegionMesh& mesh,
                                        const DiscreteSolution&,
                                        const IndicatorField&) {
    char name[32];
    std::snprintf(name, sizeof(name), "mesh_iter_%03d.txt", iter);
    write_mesh_file(out_path(cfg, name), mesh);
  };
  const AdaptResult result = adapt_loop(make_run_mesh(cfg), prob, cfg.adapt,
                                        observer);
  {
    auto os = open_out(cfg, "history.csv");
    write_history_csv(os, result.records);
  }
  write_mesh_file(out_path(cfg, "mesh_final.txt"), *result.mesh);
  if (result.records.empty()) {
    write_vtk_file(out_path(cfg, "solution.vtk"), *result.mesh, nullptr);
    std::cout << "adapt: case=" << c.name << " iterations=0 stop="
              << result.stop_reason << "\n";
    return;
  }
  const DiscreteSolution sol = result.solution();
  write_vtk_file(out_path(cfg, "solution.vtk"), *result.mesh, &sol);
  std::cout << "adapt: case=" << c.name << " iterations=" << result.records.size()
            << " final_ndof=" << result.layout->n_total()
            << " final_theta=" << result.records.back().theta
            << " stop=" << result.stop_reason << "\n";
}

void run_convergence(const RunConfig& cfg) {
  const std::vector<ConvergenceRow> rows = convergence_study(cfg);
  auto os = open_out(cfg, "convergence.csv");
  write_convergence_csv(os, rows);
  std::cout << "convergence: case=" << cfg.case_name << " levels=" << rows.size()
            << " final_err=" << rows.back().err_h_norm
            << " final_rate=" << rows.back().rate << "\n";
}

}  // namespace

void set_config_key(RunConfig& cfg, const std::string& key,
                    const std::string& value) {
  if (key == "command") {
    cfg.command = value;
  } else if (key == "mesh") {
    cfg.mesh_file = value;
  } else if (key == "benchmark") {
    int nx = 0, ny = 0;
    if (std::sscanf(value.c_str(), "%dx%d", &nx, &ny) != 2 || nx < 1 || ny < 1) {
      throw Error("config: key 'benchmark' expects NXxNY, got '" + value + "'");
    }
    cfg.benchmark_nx = nx;
    cfg.benchmark_ny = ny;
    cfg.mesh_file.clear();
  } else if (key == "case") {
    cfg.case_name = value;
  } else if (key == "out") {
    cfg.out_dir = value;
  } else if (key == "levels") {
    cfg.levels = parse_int(key, value);
  } else if (key == "data_degree") {
    cfg.data_degree = parse_int(key, value);
  } else if (key == "scaled_tangential_jump") {
    cfg.estimator.scaled_tangential_jump = parse_bool(key, value);
  } else if (key == "nu") {
    cfg.case_opts.nu = parse_real(key, value);
  } else if (key == "rho") {
    cfg.case_opts.rho = parse_real(key, value);
  } else if (key == "g") {
    cfg.case_opts.g = parse_real(key, value);
  } else if (key == "alpha") {
    cfg.case_opts.alpha = parse_real(key, value);
  } else if (key == "delta") {
    cfg.case_opts.delta = parse_real(key, value);
  } else if (key == "k1") {
    cfg.case_opts.k1 = parse_real(key, value);
  } else if (key == "k2") {
    cfg.case_opts.k2 = parse_real(key, value);
  } else if (key == "sigma") {
    cfg.case_opts.sigma = parse_real(key, value);
  } else if (key == "w1") {
    cfg.case_opts.w1 = parse_real(key, value);
  } else if (key == "w3") {
    cfg.case_opts.w3 = parse_real(key, value);
  } else if (key == "c_g") {
    cfg.case_opts.c_g = parse_real(key, value);
  } else if (key == "r1") {
    cfg.case_opts.r1 = parse_real(key, value);
  } else if (key == "c_p") {
    cfg.case_opts.c_p = parse_real(key, value);
  } else if (key == "layer_epsilon") {
    cfg.case_opts.layer_epsilon = parse_real(key, value);
  } else if (key == "layer_mu") {
    cfg.case_opts.layer_mu = parse_real(key, value);
  } else if (key == "theta") {
    cfg.adapt.theta = parse_real(key, value);
  } else if (key == "max_iterations") {
    cfg.adapt.max_iterations = parse_int(key, value);
  } else if (key == "dof_budget") {
    cfg.adapt.dof_budget = parse_int(key, value);
  } else if (key == "theta_threshold") {
    cfg.adapt.theta_threshold = parse_real(key, value);
  } else {
    throw Error("config: unknown key '" + key + "'");
  }
}

void load_config(RunConfig& cfg, std::istream& is) {
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error("config: line " + std::to_string(lineno) +
                  " is not key=value: '" + line + "'");
    }
    set_config_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("config: cannot open " + path);
  load_config(cfg, is);
}

void validate_config(const RunConfig& cfg) {
  const char* commands[] = {"solve", "estimate", "adapt", "convergence"};
  if (std::find(std::begin(commands), std::end(commands), cfg.command) ==
      std::end(commands)) {
    throw Error("config: command must be solve, estimate, adapt or convergence");
  }
  const auto names = case_names();
  if (std::find(names.begin(), names.end(), cfg.case_name) == names.end()) {
    throw Error("config: unknown case '" + cfg.case_name + "'");
  }
  if (cfg.mesh_file.empty() && (cfg.benchmark_nx < 1 || cfg.benchmark_ny < 1)) {
    throw Error("config: benchmark sizes must be positive");
  }
  if (cfg.data_degree < 1 || cfg.data_degree > 6) {
    throw Error("config: data_degree must lie in [1, 6]");
  }
  if (cfg.command == "convergence") {
    if (cfg.levels < 2) throw Error("config: levels must be at least 2");
    if (!cfg.mesh_file.empty()) {
      throw Error("config: convergence runs on a benchmark mesh, not a file");
    }
  }
  if (!(cfg.adapt.theta > 0.0 && cfg.adapt.theta <= 1.0)) {
    throw Error("config: theta must lie in (0, 1]");
  }
  if (cfg.adapt.max_iterations < 0) {
    throw Error("config: max_iterations must be nonnegative");
  }
  if (cfg.adapt.dof_budget <= 0) {
    throw Error("config: dof_budget must be positive");
  }
  if (cfg.adapt.theta_threshold < 0.0) {
    throw Error("config: theta_threshold must be nonnegative");
  }
  if (cfg.out_dir.empty()) throw Error("config: out directory must be set");
  try {
    CaseOptions o = cfg.case_opts;
    PhysicalParams p;
    p.nu = o.nu;
    p.rho = o.rho;
    p.g = o.g;
    p.alpha = o.alpha;
    p.delta = o.delta;
    p.K = Mat2::Zero();
    p.K(0, 0) = o.k1;
    p.K(1, 1) = o.k2;
    p.validate();
  } catch (const Error& e) {
    throw Error(std::string("config: ") + e.what());
  }
  if (!(cfg.case_opts.layer_epsilon > 0.0)) {
    throw Error("config: layer_epsilon must be positive");
  }
}

void write_history_csv(std::ostream& os, const std::vector<AdaptRecord>& records) {
  os << "iter,ndof,theta,zeta,err_h_norm,effectivity\n";
  for (const AdaptRecord& r : records) {
    os << r.iter << "," << r.ndof << "," << fmt(r.theta) << "," << fmt(r.zeta)
       << "," << fmt(r.err_h_norm) << "," << fmt(r.effectivity) << "\n";
  }
}

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
  os << "level,h,ndof,err_h_norm,theta,zeta,rate\n";
  for (const ConvergenceRow& r : rows) {
    os << r.level << "," << fmt(r.h) << "," << r.ndof << ","
       << fmt(r.err_h_norm) << "," << fmt(r.theta) << "," << fmt(r.zeta) << ","
       << fmt(r.rate) << "\n";
  }
}

std::vector<ConvergenceRow> convergence_study(const RunConfig& cfg) {
  if (!cfg.mesh_file.empty()) {
    throw Error("convergence_study: requires a benchmark mesh source");
  }
  const ManufacturedCase c = make_case(cfg.case_name, cfg.case_opts);
  std::vector<ConvergenceRow> rows;
  for (int level = 0; level < cfg.levels; ++level) {
    TwoRegionMesh mesh = build_rectangle_benchmark(cfg.benchmark_nx << level,
                                                   cfg.benchmark_ny << level);
    SolveState st(std::move(mesh), c, cfg.data_degree);
    const DiscreteSolution sol = st.solution();
    const IndicatorField ind = estimate(sol, c.params, c.f_f, c.f_p, cfg.estimator);
    ConvergenceRow row;
    row.level = level;
    row.h = st.mesh.h();
    row.ndof = st.layout.n_total();
    row.err_h_norm = exact_error(sol, c).total();
    row.theta = ind.theta;
    row.zeta = ind.zeta;
    row.rate = std::numeric_limits<Real>::quiet_NaN();
    if (level > 0) {
      const ConvergenceRow& prev = rows.back();
      row.rate = std::log(prev.err_h_norm / row.err_h_norm) /
                 std::log(prev.h / row.h);
    }
    rows.push_back(row);
  }
  return rows;
}

void run(const RunConfig& cfg) {
  validate_config(cfg);
  std::filesystem::create_directories(cfg.out_dir);
  if (cfg.command == "solve") {
    run_solve(cfg);
  } else if (cfg.command == "estimate") {
    run_estimate(cfg);
  } else if (cfg.command == "adapt") {
    run_adapt(cfg);
  } else {
    run_convergence(cfg);
  }
}

}  // namespace sda
