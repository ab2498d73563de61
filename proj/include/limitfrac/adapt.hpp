#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "limitfrac/estimator.hpp"
#include "limitfrac/model.hpp"
#include "limitfrac/sim.hpp"
#include "limitfrac/solver.hpp"

namespace limitfrac {

struct AdaptConfig {
  double theta = 0.5;
  double xi_rf = 0.01;
  int max_refine_rounds = 10;  // per time step
  double schedule_ratio = 0.5; // Algorithm III: xi_rf * ratio^k

  double schedule(int k) const;
  /// Throws ConfigError unless 0 < theta <= 1, xi_rf > 0, rounds >= 0, 0 < ratio < 1.
  void validate() const;
};

/// Greedy Doerfler marking: descending eta^2, ties by ascending index, shortest prefix
/// whose squared sum reaches theta times the total. Zero indicators give an empty set.
std::vector<int> dorfler_mark(std::span<const double> eta, double theta);
std::vector<int> dorfler_mark(const IndicatorSet& indicators, double theta);

/// Elements with a vertex value of v below this count as part of the damage zone.
inline constexpr double kDamageZone = 0.9;

struct MarkRecord {
  std::size_t elements = 0;  // mesh size before refinement
  std::size_t marked = 0;
  std::size_t marked_in_zone = 0;
  double global = 0.0;
};

struct StepReport {
  int refinements = 0;
  int alternations = 0;
  bool warning = false;          // refinement cap or alternation cap reached
  bool altmin_capped = false;
  double tolerance = 0.0;        // the estimator bound this step aimed for
  double final_global = 0.0;
  IndicatorSet indicators;       // on the final mesh with the final fields
  std::vector<MarkRecord> marks;
  std::vector<double> round_globals;                // Algorithm I: estimator per round
  std::vector<std::vector<double>> energy_traces;   // energy runs on a fixed mesh
};

/// Context for one time step: fields are warm-started from `state`, Dirichlet data
/// come from `load` at state.time.
struct StepInputs {
  const LoadSpec& load;
  const AdaptConfig& adapt;
  const SolverConfig& solver;
  const ModelParams& params;
};

/// Minimize, estimate, refine; repeat until the estimator is below xi_rf.
StepReport algorithm_I_step(SimState& state, const StepInputs& in);

/// Refinement checks after every u-solve and every v-solve at xi_rf / sqrt(2).
StepReport algorithm_II_step(SimState& state, const StepInputs& in);

/// Algorithm II with tolerance schedule(k) and no v-change stopping test; runs until
/// the alternation cap or an exact fixed point.
StepReport algorithm_III_step(SimState& state, const StepInputs& in, int k);

}  // namespace limitfrac
