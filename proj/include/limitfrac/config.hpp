#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "limitfrac/adapt.hpp"
#include "limitfrac/model.hpp"
#include "limitfrac/sim.hpp"
#include "limitfrac/solver.hpp"

namespace limitfrac {

enum class Driver { I, II, III };

struct Config {
  ModelParams model = ModelParams::defaults();
  SolverConfig solver;
  AdaptConfig adapt;
  LoadSpec load;
  double xi_cr = 1e-4;      // crack-set threshold
  int mesh_n = 8;
  double slit_x = 0.5;
  double slit_depth = 0.5;  // 0 disables the slit
  Driver driver = Driver::I;
  std::string output_dir = "output";
  int snapshot_every = 10;  // 0 disables VTK snapshots
  std::uint64_t seed = 12345;
  int threads = 1;

  /// Throws ConfigError when a value violates its owner's invariants.
  void validate() const;
};

/// Parses flat `key = value` lines; `#` starts a comment. Omitted keys keep their
/// defaults. LIMITFRAC_THREADS and LIMITFRAC_OUTDIR override the file.
/// Throws ConfigError (with the offending line) on unknown keys or bad values.
Config parse_config(const std::string& path);
Config parse_config_text(const std::string& text);

/// Applies LIMITFRAC_THREADS / LIMITFRAC_OUTDIR from the environment.
void apply_env_overrides(Config& cfg);

/// One `key = value` line per effective parameter.
void echo_config(const Config& cfg, std::ostream& out);

const char* driver_name(Driver d);

}  // namespace limitfrac
