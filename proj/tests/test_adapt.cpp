#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "limitfrac/adapt.hpp"
#include "limitfrac/error.hpp"

using namespace limitfrac;

namespace {

std::vector<double> sqrt_all(std::vector<double> x) {
  for (auto& xi : x) xi = std::sqrt(xi);
  return x;
}

struct ZeroLoad {
  LoadSpec load{0.0, 0.01, 1, 0.5};
  AdaptConfig adapt;
  SolverConfig solver;
  ModelParams params = ModelParams::defaults();
  StepInputs inputs() const { return {load, adapt, solver, params}; }
};

SimState advanced(const Mesh& m) {
  SimState s = initial_state(m);
  s.step = 1;
  s.time = 0.01;
  return s;
}

}  // namespace

TEST(DorflerMark, Examples) {
  EXPECT_EQ(dorfler_mark(sqrt_all({4, 3, 2, 1}), 0.5), (std::vector<int>{0, 1}));
  EXPECT_EQ(dorfler_mark(sqrt_all({1, 2, 3, 4}), 0.5), (std::vector<int>{3, 2}));
  auto all = dorfler_mark(sqrt_all({4, 0, 2, 1}), 1.0);
  std::sort(all.begin(), all.end());
  EXPECT_EQ(all, (std::vector<int>{0, 2, 3}));
  EXPECT_EQ(dorfler_mark(std::vector<double>{0.3}, 0.01), (std::vector<int>{0}));
  EXPECT_TRUE(dorfler_mark(std::vector<double>{0, 0, 0}, 0.5).empty());
}

TEST(DorflerMark, TiesKeepAscendingIndex) {
  EXPECT_EQ(dorfler_mark(std::vector<double>{1, 1, 1, 1}, 0.5), (std::vector<int>{0, 1}));
}

TEST(DorflerMark, RejectsBadTheta) {
  EXPECT_THROW(dorfler_mark(std::vector<double>{1}, 0.0), std::invalid_argument);
  EXPECT_THROW(dorfler_mark(std::vector<double>{1}, 1.5), std::invalid_argument);
}

TEST(DorflerMark, MinimalSetProperty) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> d(0, 1);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng() % 60;
    std::vector<double> eta(n);
    for (auto& e : eta) e = (rng() % 7 == 0) ? 0.0 : d(rng);
    const double theta = std::max(1e-3, d(rng));
    const auto marked = dorfler_mark(eta, theta);
    std::vector<double> sorted(n);
    for (std::size_t i = 0; i < n; ++i) sorted[i] = eta[i] * eta[i];
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double total = 0;
    for (double x : sorted) total += x;
    if (total == 0) {
      EXPECT_TRUE(marked.empty());
      continue;
    }
    std::vector<double> picked;
    for (int k : marked) picked.push_back(eta[k] * eta[k]);
    std::sort(picked.begin(), picked.end(), std::greater<>());
    double got = 0, without_smallest = 0;
    for (std::size_t i = 0; i < picked.size(); ++i) {
      got += picked[i];
      if (i + 1 < picked.size()) without_smallest += picked[i];
    }
    const double smallest = picked.back();
    EXPECT_GE(got, theta * total);
    EXPECT_LT(without_smallest, theta * total);
    // Nothing unmarked is larger than anything marked.
    std::vector<bool> in(n, false);
    for (int k : marked) in[k] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (!in[i]) EXPECT_LE(eta[i] * eta[i], smallest);
    }
  }
}

TEST(AdaptConfig, ScheduleAndValidation) {
  AdaptConfig cfg;
  EXPECT_DOUBLE_EQ(cfg.schedule(0), 0.01);
  EXPECT_DOUBLE_EQ(cfg.schedule(1), 0.005);
  EXPECT_DOUBLE_EQ(cfg.schedule(2), 0.0025);
  EXPECT_NO_THROW(cfg.validate());
  cfg.theta = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = AdaptConfig{};
  cfg.schedule_ratio = 1.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Drivers, ZeroLoadNeverRefines) {
  const Mesh m = build_slit_square(8, Slit{});
  const ZeroLoad z;
  for (int which = 0; which < 3; ++which) {
    SimState s = advanced(m);
    const StepReport r = which == 0   ? algorithm_I_step(s, z.inputs())
                         : which == 1 ? algorithm_II_step(s, z.inputs())
                                      : algorithm_III_step(s, z.inputs(), 3);
    EXPECT_EQ(r.refinements, 0) << which;
    EXPECT_EQ(r.alternations, 1) << which;
    EXPECT_FALSE(r.warning) << which;
    EXPECT_EQ(r.final_global, 0.0) << which;
    EXPECT_EQ(s.mesh.id(), m.id()) << which;
    for (std::size_t i = 0; i < m.num_vertices(); ++i) {
      EXPECT_EQ(s.u[i], 0.0);
      EXPECT_EQ(s.v[i], 1.0);
    }
  }
}

TEST(Drivers, AlgorithmOneRefinesUnderLoadAndKeepsFieldsBound) {
  const Mesh m = build_slit_square(8, Slit{});
  LoadSpec load{1.0, 0.1, 1, 0.5};
  AdaptConfig adapt;
  adapt.max_refine_rounds = 2;
  const SolverConfig solver;
  const ModelParams params(1, 0, 1e-6, 0.02, 1);
  SimState s = advanced(m);
  s.time = 0.1;
  const auto r = algorithm_I_step(s, {load, adapt, solver, params});
  EXPECT_GE(r.refinements, 1);
  EXPECT_LE(r.refinements, 2);
  EXPECT_EQ(r.round_globals.size(), static_cast<std::size_t>(r.refinements + 1));
  EXPECT_GT(r.round_globals.front(), adapt.xi_rf);
  EXPECT_NE(s.mesh.id(), m.id());
  EXPECT_NO_THROW(s.u.require_bound(s.mesh));
  EXPECT_NO_THROW(s.v.require_bound(s.mesh));
  EXPECT_EQ(r.indicators.mesh_id, s.mesh.id());
  EXPECT_TRUE(check_mesh(s.mesh).ok());
  ASSERT_EQ(r.marks.size(), static_cast<std::size_t>(r.refinements));
  for (const auto& mk : r.marks) EXPECT_GT(mk.marked, 0u);
  for (const auto& tr : r.energy_traces) {
    for (std::size_t k = 1; k < tr.size(); ++k) EXPECT_LE(tr[k], tr[k - 1] * (1 + 1e-10) + 1e-14);
  }
}

TEST(Drivers, AlgorithmThreeWithConstantScheduleTracksAlgorithmTwoGate) {
  const Mesh m = build_slit_square(8, Slit{});
  LoadSpec load{1.0, 0.1, 1, 0.5};
  AdaptConfig adapt;
  adapt.max_refine_rounds = 1;
  const SolverConfig solver;
  const ModelParams params(1, 0, 1e-6, 0.02, 1);
  SimState a = advanced(m), b = advanced(m);
  a.time = b.time = 0.1;
  const auto ra = algorithm_II_step(a, {load, adapt, solver, params});
  const auto rb = algorithm_III_step(b, {load, adapt, solver, params}, 0);
  EXPECT_DOUBLE_EQ(ra.tolerance, rb.tolerance);
  EXPECT_EQ(ra.refinements, rb.refinements);
}
