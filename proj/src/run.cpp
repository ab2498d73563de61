#include "limitfrac/run.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "limitfrac/io.hpp"
#include "limitfrac/model.hpp"

namespace limitfrac {

namespace fs = std::filesystem;

Mesh build_mesh(const Config& cfg) {
  if (cfg.slit_depth > 0.0) return build_slit_square(cfg.mesh_n, Slit{cfg.slit_x, 1.0 - cfg.slit_depth});
  return build_slit_square(cfg.mesh_n);
}

namespace {

class Logger {
 public:
  Logger(const RunOptions& opt, const fs::path& file) : extra_(opt.log) {
    if (opt.write_files) file_.open(file, std::ios::binary);
  }
  void line(const std::string& s) {
    if (file_.is_open()) file_ << s << '\n' << std::flush;
    if (extra_ != nullptr) *extra_ << s << '\n' << std::flush;
  }

 private:
  std::ofstream file_;
  std::ostream* extra_;
};

std::string snapshot_name(int step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snapshot_%04d.vtk", step);
  return buf;
}

}  // namespace

RunResult run_quasi_static(const Config& cfg, const RunOptions& options) {
  cfg.validate();
  const fs::path outdir(cfg.output_dir);
  if (options.write_files) fs::create_directories(outdir);
  Logger log(options, outdir / "run.log");
  {
    std::ostringstream echo;
    echo_config(cfg, echo);
    std::istringstream lines(echo.str());
    for (std::string l; std::getline(lines, l);) log.line("config " + l);
  }

  LoadSpec load = cfg.load;
  load.split_x = cfg.slit_x;
  RunResult result{initial_state(build_mesh(cfg)), {}, false};
  SimState& state = result.state;
  const StepInputs in{load, cfg.adapt, cfg.solver, cfg.model};

  auto snapshot = [&](const IndicatorSet& ind) {
    if (!options.write_files || cfg.snapshot_every == 0) return;
    write_vtk(state.mesh, state.u, state.v, ind, (outdir / snapshot_name(state.step)).string());
  };
  auto flush_csv = [&] {
    if (options.write_files) write_energy_csv(state.energy_log, (outdir / "energy.csv").string());
  };
  snapshot(IndicatorSet{});

  for (int j = 1; j <= cfg.load.n_steps; ++j) {
    state.step = j;
    state.time = j * cfg.load.dt;
    StepReport report;
    try {
      switch (cfg.driver) {
        case Driver::I: report = algorithm_I_step(state, in); break;
        case Driver::II: report = algorithm_II_step(state, in); break;
        case Driver::III: report = algorithm_III_step(state, in, j - 1); break;
      }
    } catch (const std::exception& e) {
      log.line("step " + std::to_string(j) + " failed: " + e.what());
      flush_csv();
      throw;
    }
    for (std::size_t r = 0; r < report.marks.size(); ++r) {
      const auto& m = report.marks[r];
      log.line("  round " + std::to_string(r + 1) + " elements " + std::to_string(m.elements) +
               " marked " + std::to_string(m.marked) + " estimator " + format_real(m.global));
    }
    const NodeSet fresh = update_cr(state.v, state.mesh, cfg.xi_cr);
    state.cr_nodes.insert(fresh.begin(), fresh.end());
    for (int k : state.cr_nodes) state.v[k] = 0.0;

    const auto e = energy(state.u, state.v, state.mesh, cfg.model);
    state.energy_log.push_back({j, state.time, e.bulk, e.surface, e.total, state.mesh.num_vertices(),
                                state.mesh.num_triangles(), report.final_global});
    result.warning = result.warning || report.warning;
    log.line("step " + std::to_string(j) + " t " + format_real(state.time) + " dofs " +
             std::to_string(state.mesh.num_vertices()) + " elements " +
             std::to_string(state.mesh.num_triangles()) + " bulk " + format_real(e.bulk) +
             " surface " + format_real(e.surface) + " estimator " +
             format_real(report.final_global) + " alternations " +
             std::to_string(report.alternations) + (report.warning ? " WARNING" : ""));
    if (options.on_step) options.on_step(state, report);
    if (cfg.snapshot_every > 0 && (j % cfg.snapshot_every == 0 || j == cfg.load.n_steps)) {
      snapshot(report.indicators);
    }
    result.reports.push_back(std::move(report));
  }
  flush_csv();
  return result;
}

}  // namespace limitfrac
