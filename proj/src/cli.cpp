#include "limitfrac/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "limitfrac/checks.hpp"
#include "limitfrac/config.hpp"
#include "limitfrac/error.hpp"
#include "limitfrac/estimator.hpp"
#include "limitfrac/io.hpp"
#include "limitfrac/run.hpp"
#include "limitfrac/solver.hpp"

namespace limitfrac {

namespace fs = std::filesystem;

namespace {

int cmd_run(const std::string& path) {
  const Config cfg = parse_config(path);
  const auto result = run_quasi_static(cfg, RunOptions{true, &std::cout, {}});
  std::cout << "energy trace written to " << (fs::path(cfg.output_dir) / "energy.csv").string()
            << '\n';
  return result.warning ? kExitWarning : kExitOk;
}

int cmd_estimate(const std::string& path) {
  const Config cfg = parse_config(path);
  const Mesh mesh = build_mesh(cfg);
  LoadSpec load = cfg.load;
  load.split_x = cfg.slit_x;
  const auto dirichlet = dirichlet_constraints(mesh, cfg.load.dt, load);
  const auto res = alternate_minimize(mesh, ScalarField::constant(mesh, 0.0),
                                      ScalarField::constant(mesh, 1.0), dirichlet, {},
                                      cfg.model, cfg.solver);
  const auto ind = assemble_indicators(res.u, res.v, mesh, cfg.model);
  std::cout << "element eta_u eta_v eta\n";
  for (std::size_t t = 0; t < ind.eta.size(); ++t) {
    std::cout << t << ' ' << format_real(ind.eta_u[t]) << ' ' << format_real(ind.eta_v[t]) << ' '
              << format_real(ind.eta[t]) << '\n';
  }
  std::cout << "global " << format_real(ind.global) << '\n';
  return kExitOk;
}

int cmd_refine_demo(const std::string& path) {
  const Config cfg = parse_config(path);
  fs::create_directories(cfg.output_dir);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Mesh mesh = build_mesh(cfg);
  const int rounds = cfg.adapt.max_refine_rounds;
  bool ok = true;
  for (int r = 0; r <= rounds; ++r) {
    if (r > 0) {
      std::vector<double> eta(mesh.num_triangles());
      for (auto& x : eta) x = unit(rng);
      mesh = bisect(mesh, dorfler_mark(eta, cfg.adapt.theta));
    }
    const auto report = check_mesh(mesh);
    ok = ok && report.ok();
    char name[32];
    std::snprintf(name, sizeof name, "mesh_round_%02d.txt", r);
    std::ofstream dump(fs::path(cfg.output_dir) / name, std::ios::binary);
    write_mesh_dump(mesh, dump);
    std::cout << "round " << r << " vertices " << mesh.num_vertices() << " elements "
              << mesh.num_triangles() << " shape " << format_real(report.max_shape_ratio)
              << (report.ok() ? " ok" : " BROKEN") << '\n';
  }
  return ok ? kExitOk : kExitSolver;
}

int cmd_check() {
  bool ok = true;
  for (const auto& c : run_builtin_checks()) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) std::cout << ": " << c.detail;
    std::cout << '\n';
    ok = ok && c.passed;
  }
  return ok ? kExitOk : kExitSolver;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Adaptive phase-field fracture in strain-limiting solids"};
  app.require_subcommand(1);
  std::string config_path;
  auto* run = app.add_subcommand("run", "Run the quasi-static simulation");
  run->add_option("config", config_path, "Configuration file")->required();
  auto* estimate = app.add_subcommand("estimate", "One minimization plus error estimate");
  estimate->add_option("config", config_path, "Configuration file")->required();
  auto* demo = app.add_subcommand("refine-demo", "Random marking and bisection stress test");
  demo->add_option("config", config_path, "Configuration file")->required();
  auto* check = app.add_subcommand("check", "Run the built-in invariant checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return cmd_run(config_path);
    if (*estimate) return cmd_estimate(config_path);
    if (*demo) return cmd_refine_demo(config_path);
    if (*check) return cmd_check();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
  return kExitOk;
}

}  // namespace limitfrac
