#include "limitfrac/checks.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "limitfrac/adapt.hpp"
#include "limitfrac/estimator.hpp"
#include "limitfrac/fespace.hpp"
#include "limitfrac/mesh.hpp"
#include "limitfrac/model.hpp"
#include "limitfrac/solver.hpp"

namespace limitfrac {

namespace {

bool close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

CheckResult guarded(const std::string& name, const std::function<std::string()>& body) {
  try {
    std::string failure = body();
    return {name, failure.empty(), failure};
  } catch (const std::exception& e) {
    return {name, false, std::string("exception: ") + e.what()};
  }
}

}  // namespace

std::vector<CheckResult> run_builtin_checks(std::uint64_t seed) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Mesh square = build_slit_square(4);
  const Mesh slit = build_slit_square(8, Slit{});

  out.push_back(guarded("partition of unity", [&]() -> std::string {
    Mesh m = slit;
    for (int level = 0; level < 3; ++level) {
      const double a = lumped_integral(ScalarField::constant(m, 1.0), m);
      if (!close(a, 1.0, 1e-13)) return "lumped area " + std::to_string(a);
      m = refine_uniform(m);
    }
    return "";
  }));

  out.push_back(guarded("energy hand values", [&]() -> std::string {
    const auto x1 = interpolate([](const Point& p) { return p.x; }, square);
    const auto ones = ScalarField::constant(square, 1.0);
    const auto zeros = ScalarField::constant(square, 0.0);
    if (energy(zeros, ones, square, ModelParams::defaults()).total != 0.0) return "unloaded";
    if (!close(energy(x1, ones, square, {1, 0, 1e-6, 0.02, 1}).bulk, 0.5, 1e-13)) return "beta 0";
    if (!close(energy(x1, ones, square, {1, 1, 1e-6, 0.02, 1}).bulk, 0.25, 1e-13)) return "beta 1";
    if (!close(energy(zeros, zeros, square, {1, 1, 1e-6, 0.01, 1}).surface, 25.0, 1e-13)) {
      return "surface";
    }
    return "";
  }));

  out.push_back(guarded("strain-limiting bound", [&]() -> std::string {
    for (double beta : {0.5, 1.0, 2.0}) {
      const ModelParams p(1.0, beta, 1e-6, 0.02, 1.0);
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> u(square.num_vertices()), v(square.num_vertices());
        for (auto& x : u) x = 50.0 * (unit(rng) - 0.5);
        for (auto& x : v) x = unit(rng);
        const auto e = energy(ScalarField(square, u), ScalarField(square, v), square, p);
        if (!(e.bulk <= 1.0 / (2.0 * beta))) return "bulk exceeds area/(2 beta)";
      }
    }
    return "";
  }));

  out.push_back(guarded("Doerfler marking", [&]() -> std::string {
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> eta(1 + rng() % 50);
      for (auto& x : eta) x = unit(rng);
      const double theta = (trial % 3 == 0) ? 0.1 : (trial % 3 == 1 ? 0.5 : 1.0);
      const auto m = dorfler_mark(eta, theta);
      double total = 0.0, sel = 0.0;
      for (double x : eta) total += x * x;
      for (int i : m) sel += eta[i] * eta[i];
      if (sel < theta * total * (1.0 - 1e-12)) return "selection below theta fraction";
    }
    return "";
  }));

  out.push_back(guarded("mesh integrity under bisection", [&]() -> std::string {
    Mesh m = slit;
    for (int round = 0; round < 6; ++round) {
      std::vector<int> marked;
      for (std::size_t t = 0; t < m.num_triangles(); ++t) {
        if (unit(rng) < 0.2) marked.push_back(static_cast<int>(t));
      }
      m = bisect(m, marked);
      if (!check_mesh(m).ok()) return "round " + std::to_string(round) + " broke conformity";
    }
    return "";
  }));

  out.push_back(guarded("phase-field solve range", [&]() -> std::string {
    const auto p = ModelParams::defaults();
    std::vector<double> u(slit.num_vertices());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = 3.0 * slit.vertices()[i].x * slit.vertices()[i].y;
    ConstraintSet crack;
    crack.crack.insert(0);
    const auto v = solve_v(slit, ScalarField(slit, u), ScalarField::constant(slit, 1.0), crack, p,
                           SolverConfig{});
    if (v.min() < 0.0 || v.max() > 1.0) return "v left [0,1]";
    if (v[0] != 0.0) return "crack node not pinned";
    return "";
  }));

  out.push_back(guarded("zero state estimator", [&]() -> std::string {
    const auto ind = assemble_indicators(ScalarField::constant(slit, 0.3),
                                         ScalarField::constant(slit, 1.0), slit,
                                         ModelParams::defaults());
    if (ind.global != 0.0) return "global estimator " + std::to_string(ind.global);
    return "";
  }));

  return out;
}

}  // namespace limitfrac
