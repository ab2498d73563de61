#include "limitfrac/adapt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "limitfrac/error.hpp"

namespace limitfrac {

double AdaptConfig::schedule(int k) const { return xi_rf * std::pow(schedule_ratio, k); }

void AdaptConfig::validate() const {
  if (!(theta > 0.0 && theta <= 1.0)) throw ConfigError("theta must lie in (0, 1]");
  if (!(xi_rf > 0.0)) throw ConfigError("xi_rf must be > 0");
  if (max_refine_rounds < 0) throw ConfigError("max_refine_rounds must be >= 0");
  if (!(schedule_ratio > 0.0 && schedule_ratio < 1.0)) {
    throw ConfigError("schedule_ratio must lie in (0, 1)");
  }
}

std::vector<int> dorfler_mark(std::span<const double> eta, double theta) {
  if (!(theta > 0.0 && theta <= 1.0)) throw std::invalid_argument("theta must lie in (0, 1]");
  std::vector<int> order(eta.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> sq(eta.size());
  for (std::size_t i = 0; i < eta.size(); ++i) sq[i] = eta[i] * eta[i];
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return sq[a] > sq[b]; });
  double total = 0.0;
  for (int i : order) total += sq[i];
  std::vector<int> marked;
  if (!(total > 0.0)) return marked;
  const double target = theta * total;
  double acc = 0.0;
  for (int i : order) {
    if (!(sq[i] > 0.0)) break;
    marked.push_back(i);
    acc += sq[i];
    if (acc >= target) break;
  }
  return marked;
}

std::vector<int> dorfler_mark(const IndicatorSet& indicators, double theta) {
  return dorfler_mark(indicators.eta, theta);
}

namespace {

std::size_t count_in_zone(const Mesh& mesh, const ScalarField& v, const std::vector<int>& elems) {
  std::size_t n = 0;
  for (int t : elems) {
    const auto& tri = mesh.triangles()[t];
    if (std::min({v[tri[0]], v[tri[1]], v[tri[2]]}) < kDamageZone) ++n;
  }
  return n;
}

ScalarField pinned(ScalarField v, const NodeSet& cr) {
  for (int k : cr) v[k] = 0.0;
  return v;
}

/// Bisects the marked elements and moves state fields (plus `extra`) to the new mesh.
void refine_state(SimState& state, const IndicatorSet& ind, const StepInputs& in,
                  StepReport& report, ScalarField* extra) {
  const auto marked = dorfler_mark(ind, in.adapt.theta);
  report.marks.push_back({state.mesh.num_triangles(), marked.size(),
                          count_in_zone(state.mesh, state.v, marked), ind.global});
  Mesh next = bisect(state.mesh, marked);
  state.u = transfer(state.u, state.mesh, next);
  state.v = transfer(state.v, state.mesh, next);
  if (extra != nullptr) *extra = transfer(*extra, state.mesh, next);
  state.cr_nodes = transfer_node_set(state.cr_nodes, state.mesh, next);
  state.v = pinned(std::move(state.v), state.cr_nodes);
  state.mesh = std::move(next);
  ++report.refinements;
}

ConstraintSet crack_set(const SimState& state) {
  ConstraintSet cs;
  cs.crack = state.cr_nodes;
  return cs;
}

/// Shared body of Algorithms II and III.
StepReport interleaved_step(SimState& state, const StepInputs& in, double tolerance,
                            bool stop_on_dv) {
  StepReport report;
  report.tolerance = tolerance;
  const double gate = tolerance / std::sqrt(2.0);
  const auto& p = in.params;
  state.v = pinned(std::move(state.v), state.cr_nodes);
  std::vector<double> trace;
  bool converged = false;

  auto check = [&](ScalarField* extra, const ScalarField& v_eval) {
    const auto ind = assemble_indicators(state.u, v_eval, state.mesh, p);
    if (ind.global <= gate || report.refinements >= in.adapt.max_refine_rounds) return false;
    if (dorfler_mark(ind, in.adapt.theta).empty()) return false;
    refine_state(state, ind, in, report, extra);
    return true;
  };

  while (report.alternations < in.solver.altmin_max) {
    ++report.alternations;
    ScalarField v_old = state.v;
    const auto dirichlet = dirichlet_constraints(state.mesh, state.time, in.load);
    state.u = solve_u(state.mesh, state.v, state.u, dirichlet, p, in.solver);
    bool refined = check(&v_old, v_old);
    state.v = solve_v(state.mesh, state.u, state.v, crack_set(state), p, in.solver);
    refined = check(&v_old, state.v) || refined;
    const double dv = sup_distance(state.v, v_old);
    if (refined && !trace.empty()) {
      report.energy_traces.push_back(std::move(trace));
      trace.clear();
    }
    trace.push_back(energy(state.u, state.v, state.mesh, p).total);
    if (refined) continue;
    if (stop_on_dv ? dv < in.solver.xi_v : dv == 0.0) {
      converged = true;
      break;
    }
  }
  if (!trace.empty()) report.energy_traces.push_back(std::move(trace));
  if (!converged && stop_on_dv) {
    if (!in.solver.accept_altmin_cap) {
      throw SolverError("alternation cap reached in the interleaved driver", 0.0,
                        report.alternations);
    }
    report.altmin_capped = true;
  }
  report.indicators = assemble_indicators(state.u, state.v, state.mesh, p);
  report.final_global = report.indicators.global;
  report.warning = report.altmin_capped || report.final_global > gate;
  state.warning = report.warning;
  return report;
}

}  // namespace

StepReport algorithm_I_step(SimState& state, const StepInputs& in) {
  StepReport report;
  report.tolerance = in.adapt.xi_rf;
  const auto& p = in.params;
  for (;;) {
    const auto dirichlet = dirichlet_constraints(state.mesh, state.time, in.load);
    AltMinResult res;
    try {
      res = alternate_minimize(state.mesh, state.u, state.v, dirichlet, crack_set(state), p,
                               in.solver);
    } catch (const AltMinCapError& e) {
      if (!in.solver.accept_altmin_cap) throw;
      res = e.last();
      report.altmin_capped = true;
    }
    state.u = std::move(res.u);
    state.v = std::move(res.v);
    report.alternations += res.iterations;
    report.energy_traces.push_back(std::move(res.energy_trace));

    auto ind = assemble_indicators(state.u, state.v, state.mesh, p);
    report.round_globals.push_back(ind.global);
    const bool stop = ind.global <= in.adapt.xi_rf ||
                      report.refinements >= in.adapt.max_refine_rounds ||
                      dorfler_mark(ind, in.adapt.theta).empty();
    if (stop) {
      report.indicators = std::move(ind);
      break;
    }
    refine_state(state, ind, in, report, nullptr);
  }
  report.final_global = report.indicators.global;
  report.warning = report.altmin_capped || report.final_global > in.adapt.xi_rf;
  state.warning = report.warning;
  return report;
}

StepReport algorithm_II_step(SimState& state, const StepInputs& in) {
  return interleaved_step(state, in, in.adapt.xi_rf, true);
}

StepReport algorithm_III_step(SimState& state, const StepInputs& in, int k) {
  return interleaved_step(state, in, in.adapt.schedule(k), false);
}

}  // namespace limitfrac
