#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace limitfrac {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

enum class EdgeClass : std::uint8_t { Interior, Dirichlet, Neumann, Crack };

/// Which loaded half of the top boundary a Dirichlet edge belongs to.
enum class DirichletSide : std::uint8_t { None, Left, Right };

/// Vertical slit {x} x [tip_y, 1] entering the unit square from the top.
struct Slit {
  double x = 0.5;
  double tip_y = 0.5;
};

/// Vertex triple. The refinement edge is (v[0], v[1]); v[2] is the newest vertex.
/// Vertices are ordered counter-clockwise.
using Triangle = std::array<int, 3>;

struct Edge {
  std::array<int, 2> v{};           // sorted vertex indices
  std::array<int, 2> tri{-1, -1};   // tri[1] == -1 on boundary edges
  EdgeClass tag = EdgeClass::Interior;
  DirichletSide side = DirichletSide::None;

  bool boundary() const { return tri[1] < 0; }
};

struct ElementGeometry {
  double area = 0.0;
  double diameter = 0.0;         // h_tau, longest edge
  double inball_diameter = 0.0;  // twice the inradius
  std::array<Vec2, 3> grad{};    // gradients of the barycentric basis functions
  Point centroid{};
};

struct EdgeGeometry {
  double length = 0.0;
  /// Unit normal. Points out of tri[0] (the lower element index) for interior
  /// edges and outward for boundary edges.
  Vec2 normal{};
};

/// Conforming triangulation of (a subset of) the unit square. Immutable once built;
/// refinement returns a new Mesh that shares the vertex numbering of its parent.
class Mesh {
 public:
  /// Builds a mesh from raw arrays. Triangles are reoriented counter-clockwise and
  /// rotated so their longest edge becomes the refinement edge. Boundary edges on
  /// y = 1 are Dirichlet, edges on the slit are Crack, the rest Neumann.
  static Mesh from_arrays(std::vector<Point> vertices, std::vector<Triangle> triangles,
                          std::optional<Slit> slit = std::nullopt);

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<Edge>& edges() const { return edges_; }
  /// Edge index of local edge k = (t[k], t[(k+1)%3]) of each triangle.
  const std::vector<std::array<int, 3>>& triangle_edges() const { return triangle_edges_; }
  const std::vector<ElementGeometry>& element_geometry() const { return elem_geom_; }
  const std::vector<EdgeGeometry>& edge_geometry() const { return edge_geom_; }
  /// Lumped (vertex-rule) quadrature weights: one third of the patch area.
  const std::vector<double>& lumped_weights() const { return lumped_weights_; }
  /// Triangle index in the previous generation this triangle descends from (-1 for roots).
  const std::vector<int>& parents() const { return parents_; }
  /// For vertices created by bisection, the endpoints of the bisected edge; {-1,-1} otherwise.
  const std::vector<std::array<int, 2>>& vertex_parents() const { return vertex_parents_; }

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_triangles() const { return triangles_.size(); }
  int generation() const { return static_cast<int>(ancestry_.size()) - 1; }
  std::uint64_t id() const { return ancestry_.back(); }
  /// Mesh ids of this mesh's ancestors, indexed by generation.
  const std::vector<std::uint64_t>& ancestry() const { return ancestry_; }
  const std::optional<Slit>& slit() const { return slit_; }
  double total_area() const;

  /// Bit mask of the Dirichlet sides a vertex touches (1 = left, 2 = right).
  unsigned dirichlet_sides(int vertex) const { return vertex_sides_[vertex]; }

  friend Mesh bisect(const Mesh& mesh, std::span<const int> marked);

 private:
  Mesh() = default;
  void finalize();

  std::vector<Point> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<Edge> edges_;
  std::vector<std::array<int, 3>> triangle_edges_;
  std::vector<ElementGeometry> elem_geom_;
  std::vector<EdgeGeometry> edge_geom_;
  std::vector<double> lumped_weights_;
  std::vector<int> parents_;
  std::vector<std::array<int, 2>> vertex_parents_;
  std::vector<unsigned> vertex_sides_;
  std::vector<std::uint64_t> ancestry_;
  std::optional<Slit> slit_;
};

/// Structured n x n unit square split into right isosceles triangles (diagonals
/// mirrored about x = 0.5). With a slit, vertices on the slit strictly above the tip
/// (mouth included) are duplicated so the two crack faces are disconnected.
Mesh build_slit_square(int n, std::optional<Slit> slit = std::nullopt);

/// Newest-vertex bisection of the marked triangles plus conforming closure.
/// An empty marked set returns an identical copy.
Mesh bisect(const Mesh& mesh, std::span<const int> marked);

/// Marks every triangle once.
Mesh refine_uniform(const Mesh& mesh);

struct GeometryTables {
  const std::vector<ElementGeometry>& elements;
  const std::vector<EdgeGeometry>& edges;
};

/// Per-element area, diameter and basis gradients; per-edge length and normal.
GeometryTables geometry_tables(const Mesh& mesh);

/// Result of an independent brute-force validation of a mesh.
struct MeshReport {
  bool conforming = true;            // interior edges shared by exactly 2 triangles, no hanging nodes
  bool positive_orientation = true;
  bool classification_ok = true;     // boundary edges lie on the outer boundary or the slit
  bool crack_faces_separated = true;
  double max_shape_ratio = 0.0;      // max h / inball diameter

  bool ok() const {
    return conforming && positive_orientation && classification_ok && crack_faces_separated;
  }
};

MeshReport check_mesh(const Mesh& mesh);

/// Gradient of the P1 function with the given nodal values on triangle t.
Vec2 element_gradient(const Mesh& mesh, int t, std::span<const double> nodal);

/// Plain-text dump: vertices, triangles, edges with tags.
void write_mesh_dump(const Mesh& mesh, std::ostream& out);

}  // namespace limitfrac
