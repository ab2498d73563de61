#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "limitfrac/fespace.hpp"
#include "limitfrac/mesh.hpp"

namespace limitfrac {

/// Antisymmetric shear of the top boundary: -c t left of the split, +c t right of it.
struct LoadSpec {
  double c = 1.0;
  double dt = 0.01;
  int n_steps = 240;
  double split_x = 0.5;

  void validate() const;
};

/// Prescribed displacement at a boundary point, or nothing for traction-free points.
/// A point exactly on the split line gets 0.
std::optional<double> load_f(double t, const Point& x, const LoadSpec& spec);

/// Dirichlet data on the top boundary of `mesh` at time t. Side membership comes from
/// the adjacent Dirichlet edges, so the two copies of a slit-mouth node take the value
/// of their own side; a node touching both sides gets 0.
ConstraintSet dirichlet_constraints(const Mesh& mesh, double t, const LoadSpec& spec);

/// Endpoints of edges whose two nodal values are both <= xi_cr.
NodeSet update_cr(const ScalarField& v, const Mesh& mesh, double xi_cr);

struct EnergyRow {
  int step = 0;
  double time = 0.0;
  double bulk = 0.0;
  double surface = 0.0;
  double total = 0.0;
  std::size_t dofs = 0;
  std::size_t elements = 0;
  double estimator = 0.0;
};

struct SimState {
  explicit SimState(Mesh m);

  int step = 0;
  double time = 0.0;
  Mesh mesh;
  ScalarField u;
  ScalarField v;
  NodeSet cr_nodes;
  std::vector<EnergyRow> energy_log;
  bool warning = false;
};

/// u = 0, v = 1 on `mesh`, with the step-0 row in the energy log.
SimState initial_state(const Mesh& mesh);

}  // namespace limitfrac
