#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "limitfrac/adapt.hpp"
#include "limitfrac/config.hpp"
#include "limitfrac/sim.hpp"

namespace limitfrac {

struct RunOptions {
  bool write_files = true;        // energy.csv, run.log and VTK snapshots in output_dir
  std::ostream* log = nullptr;    // progress lines, in addition to run.log
  /// Called after every completed time step with the post-step state.
  std::function<void(const SimState&, const StepReport&)> on_step;
};

struct RunResult {
  SimState state;
  std::vector<StepReport> reports;  // one per time step
  bool warning = false;             // any step ended with a driver warning
};

/// Builds the slit square mesh of `cfg`.
Mesh build_mesh(const Config& cfg);

/// The quasi-static time loop. On a driver failure the energy log collected so far is
/// written to disk before the exception propagates.
RunResult run_quasi_static(const Config& cfg, const RunOptions& options = {});

}  // namespace limitfrac
