#include "limitfrac/fespace.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "limitfrac/error.hpp"

namespace limitfrac {

ScalarField::ScalarField(const Mesh& mesh, std::vector<double> values)
    : mesh_id_(mesh.id()), values_(std::move(values)) {
  if (values_.size() != mesh.num_vertices()) {
    throw FieldError("field has " + std::to_string(values_.size()) + " values but mesh has " +
                     std::to_string(mesh.num_vertices()) + " vertices");
  }
}

ScalarField ScalarField::constant(const Mesh& mesh, double value) {
  return ScalarField(mesh, std::vector<double>(mesh.num_vertices(), value));
}

void ScalarField::require_bound(const Mesh& mesh) const {
  if (!bound_to(mesh)) throw FieldError("field is not bound to this mesh generation");
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }

void ConstraintSet::validate() const {
  for (int k : crack) {
    const auto it = dirichlet.find(k);
    if (it != dirichlet.end() && it->second != 0.0) {
      throw FieldError("node " + std::to_string(k) +
                       " is pinned to zero as a crack node and prescribed a non-zero value");
    }
  }
}

std::vector<char> ConstraintSet::constrained_mask(std::size_t n) const {
  std::vector<char> mask(n, 0);
  for (const auto& [k, value] : dirichlet) mask.at(k) = 1;
  for (int k : crack) mask.at(k) = 1;
  return mask;
}

ScalarField interpolate(const std::function<double(const Point&)>& f, const Mesh& mesh) {
  std::vector<double> values;
  values.reserve(mesh.num_vertices());
  for (const auto& p : mesh.vertices()) values.push_back(f(p));
  return ScalarField(mesh, std::move(values));
}

double lumped_integral(std::span<const double> nodal_values, const Mesh& mesh) {
  if (nodal_values.size() != mesh.num_vertices()) {
    throw FieldError("nodal data length does not match the mesh");
  }
  const auto& w = mesh.lumped_weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * nodal_values[i];
  return sum;
}

double lumped_integral(const ScalarField& field, const Mesh& mesh) {
  field.require_bound(mesh);
  return lumped_integral(field.values(), mesh);
}

bool is_descendant(const Mesh& descendant, const Mesh& ancestor) {
  const auto& chain = descendant.ancestry();
  const auto g = static_cast<std::size_t>(ancestor.generation());
  return g < chain.size() && chain[g] == ancestor.id();
}

ScalarField transfer(const ScalarField& field, const Mesh& old_mesh, const Mesh& new_mesh) {
  field.require_bound(old_mesh);
  if (!is_descendant(new_mesh, old_mesh)) {
    throw FieldError("target mesh is not a refinement descendant of the source mesh");
  }
  if (new_mesh.id() == old_mesh.id()) return field;
  const std::size_t n_old = old_mesh.num_vertices();
  const auto& parents = new_mesh.vertex_parents();
  std::vector<double> values(new_mesh.num_vertices());
  std::copy(field.values().begin(), field.values().end(), values.begin());
  // Parents always carry smaller indices, so one ascending pass resolves chains.
  for (std::size_t i = n_old; i < values.size(); ++i) {
    values[i] = 0.5 * (values[parents[i][0]] + values[parents[i][1]]);
  }
  return ScalarField(new_mesh, std::move(values));
}

NodeSet transfer_node_set(const NodeSet& nodes, const Mesh& old_mesh, const Mesh& new_mesh) {
  if (!is_descendant(new_mesh, old_mesh)) {
    throw FieldError("target mesh is not a refinement descendant of the source mesh");
  }
  if (nodes.empty() || new_mesh.id() == old_mesh.id()) return nodes;
  std::vector<char> in(new_mesh.num_vertices(), 0);
  for (int k : nodes) in.at(k) = 1;
  const auto& parents = new_mesh.vertex_parents();
  NodeSet out = nodes;
  for (std::size_t i = old_mesh.num_vertices(); i < in.size(); ++i) {
    if (in[parents[i][0]] && in[parents[i][1]]) {
      in[i] = 1;
      out.insert(static_cast<int>(i));
    }
  }
  return out;
}

ScalarField apply_constraints(ScalarField field, const ConstraintSet& cs) {
  cs.validate();
  for (const auto& [k, value] : cs.dirichlet) field.mutable_values().at(k) = value;
  for (int k : cs.crack) field.mutable_values().at(k) = 0.0;
  return field;
}

double sup_distance(const ScalarField& a, const ScalarField& b) {
  if (a.mesh_id() != b.mesh_id()) throw FieldError("fields live on different meshes");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace limitfrac
