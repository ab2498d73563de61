#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "limitfrac/mesh.hpp"

namespace limitfrac {

using NodeSet = std::set<int>;

/// Nodal coefficients of a continuous P1 function on one specific mesh.
class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(const Mesh& mesh, std::vector<double> values);

  static ScalarField constant(const Mesh& mesh, double value);

  std::uint64_t mesh_id() const { return mesh_id_; }
  bool bound_to(const Mesh& mesh) const {
    return mesh_id_ == mesh.id() && values_.size() == mesh.num_vertices();
  }
  /// Throws FieldError when the field does not belong to `mesh`.
  void require_bound(const Mesh& mesh) const;

  std::span<const double> values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  double min() const;
  double max() const;

 private:
  std::uint64_t mesh_id_ = 0;
  std::vector<double> values_;
};

/// Prescribed nodal values for u and zero-pinned nodes for v.
struct ConstraintSet {
  std::map<int, double> dirichlet;
  NodeSet crack;

  bool empty() const { return dirichlet.empty() && crack.empty(); }
  /// Throws FieldError when a node is both Dirichlet (non-zero) and crack.
  void validate() const;
  /// Union of Dirichlet and crack nodes.
  std::vector<char> constrained_mask(std::size_t n) const;
};

ScalarField interpolate(const std::function<double(const Point&)>& f, const Mesh& mesh);

/// Integral of the P1 interpolant of the nodal data, computed with the vertex rule.
double lumped_integral(std::span<const double> nodal_values, const Mesh& mesh);
double lumped_integral(const ScalarField& field, const Mesh& mesh);

/// Moves a field from `old_mesh` to a refinement descendant by linear interpolation.
ScalarField transfer(const ScalarField& field, const Mesh& old_mesh, const Mesh& new_mesh);

/// Carries a node set to a refinement descendant; a new vertex joins when both
/// endpoints of the edge it bisects are members.
NodeSet transfer_node_set(const NodeSet& nodes, const Mesh& old_mesh, const Mesh& new_mesh);

/// True when `descendant` was produced from `ancestor` by zero or more bisections.
bool is_descendant(const Mesh& descendant, const Mesh& ancestor);

ScalarField apply_constraints(ScalarField field, const ConstraintSet& cs);

double sup_distance(const ScalarField& a, const ScalarField& b);

}  // namespace limitfrac
