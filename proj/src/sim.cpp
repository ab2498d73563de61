#include "limitfrac/sim.hpp"

#include "limitfrac/error.hpp"

namespace limitfrac {

void LoadSpec::validate() const {
  if (!(dt > 0.0)) throw ConfigError("dt must be > 0");
  if (n_steps < 0) throw ConfigError("n_steps must be >= 0");
}

std::optional<double> load_f(double t, const Point& x, const LoadSpec& spec) {
  if (x.y != 1.0) return std::nullopt;
  if (x.x < spec.split_x) return -spec.c * t;
  if (x.x > spec.split_x) return spec.c * t;
  return 0.0;
}

ConstraintSet dirichlet_constraints(const Mesh& mesh, double t, const LoadSpec& spec) {
  ConstraintSet cs;
  for (std::size_t i = 0; i < mesh.num_vertices(); ++i) {
    switch (mesh.dirichlet_sides(static_cast<int>(i))) {
      case 1: cs.dirichlet[static_cast<int>(i)] = -spec.c * t; break;
      case 2: cs.dirichlet[static_cast<int>(i)] = spec.c * t; break;
      case 3: cs.dirichlet[static_cast<int>(i)] = 0.0; break;
      default: break;
    }
  }
  return cs;
}

NodeSet update_cr(const ScalarField& v, const Mesh& mesh, double xi_cr) {
  v.require_bound(mesh);
  NodeSet out;
  for (const auto& e : mesh.edges()) {
    if (v[e.v[0]] <= xi_cr && v[e.v[1]] <= xi_cr) {
      out.insert(e.v[0]);
      out.insert(e.v[1]);
    }
  }
  return out;
}

SimState::SimState(Mesh m) : mesh(std::move(m)) {}

SimState initial_state(const Mesh& mesh) {
  SimState s(mesh);
  s.u = ScalarField::constant(mesh, 0.0);
  s.v = ScalarField::constant(mesh, 1.0);
  s.energy_log.push_back({0, 0.0, 0.0, 0.0, 0.0, mesh.num_vertices(), mesh.num_triangles(), 0.0});
  return s;
}

}  // namespace limitfrac
