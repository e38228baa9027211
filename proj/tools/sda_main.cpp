#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sda/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"stabilized mixed solver for coupled free and porous flow"};
  app.get_formatter()->column_width(28);

  std::string command, config_path, mesh_path, benchmark, case_name, out_dir;
  double theta = 0.0, delta = 0.0;
  int levels = 0;

  app.add_option("command", command, "solve | estimate | adapt | convergence")
      ->required();
  auto* config_opt = app.add_option("--config", config_path, "key=value config file");
  auto* mesh_opt = app.add_option("--mesh", mesh_path, "mesh file");
  auto* bench_opt = app.add_option("--benchmark", benchmark, "structured grid NXxNY");
  mesh_opt->excludes(bench_opt);
  auto* case_opt = app.add_option("--case", case_name, "manufactured case name");
  auto* out_opt = app.add_option("--out", out_dir, "output directory");
  auto* theta_opt = app.add_option("--theta", theta, "marking fraction");
  auto* delta_opt = app.add_option("--delta", delta, "interface stabilization weight");
  auto* levels_opt = app.add_option("--levels", levels, "refinement levels");

  CLI11_PARSE(app, argc, argv);

  try {
    sda::RunConfig cfg;
    if (*config_opt) sda::load_config_file(cfg, config_path);
    cfg.command = command;
    if (*mesh_opt) sda::set_config_key(cfg, "mesh", mesh_path);
    if (*bench_opt) sda::set_config_key(cfg, "benchmark", benchmark);
    if (*case_opt) sda::set_config_key(cfg, "case", case_name);
    if (*out_opt) sda::set_config_key(cfg, "out", out_dir);
    if (*theta_opt) sda::set_config_key(cfg, "theta", std::to_string(theta));
    if (*delta_opt) sda::set_config_key(cfg, "delta", std::to_string(delta));
    if (*levels_opt) sda::set_config_key(cfg, "levels", std::to_string(levels));
    sda::run(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
