#include "limitfrac/mesh.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <unordered_map>

#include "limitfrac/error.hpp"

namespace limitfrac {

namespace {

constexpr double kGeomTol = 1e-12;

std::uint64_t next_mesh_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

double signed_area(const Point& a, const Point& b, const Point& c) {
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

double distance(const Point& a, const Point& b) { return std::hypot(b.x - a.x, b.y - a.y); }

bool near(double a, double b) { return std::abs(a - b) <= kGeomTol; }

bool on_slit(const std::optional<Slit>& slit, const Point& p) {
  return slit && near(p.x, slit->x) && p.y >= slit->tip_y - kGeomTol;
}

bool on_outer_boundary(const Point& a, const Point& b) {
  return (near(a.x, 0.0) && near(b.x, 0.0)) || (near(a.x, 1.0) && near(b.x, 1.0)) ||
         (near(a.y, 0.0) && near(b.y, 0.0)) || (near(a.y, 1.0) && near(b.y, 1.0));
}

}  // namespace

double Mesh::total_area() const {
  double sum = 0.0;
  for (const auto& g : elem_geom_) sum += g.area;
  return sum;
}

Mesh Mesh::from_arrays(std::vector<Point> vertices, std::vector<Triangle> triangles,
                       std::optional<Slit> slit) {
  const int nv = static_cast<int>(vertices.size());
  for (auto& t : triangles) {
    for (int k : t) {
      if (k < 0 || k >= nv) throw GeometryError("triangle references a vertex out of range");
    }
    const double a = signed_area(vertices[t[0]], vertices[t[1]], vertices[t[2]]);
    if (!(std::abs(a) > 0.0)) throw GeometryError("degenerate (zero-area) triangle");
    if (a < 0.0) std::swap(t[1], t[2]);
    int longest = 0;
    double best = -1.0;
    for (int k = 0; k < 3; ++k) {
      const double len = distance(vertices[t[k]], vertices[t[(k + 1) % 3]]);
      if (len > best * (1.0 + 1e-12)) {
        best = len;
        longest = k;
      }
    }
    t = {t[longest], t[(longest + 1) % 3], t[(longest + 2) % 3]};
  }

  Mesh m;
  m.vertices_ = std::move(vertices);
  m.triangles_ = std::move(triangles);
  m.slit_ = slit;
  m.parents_.assign(m.triangles_.size(), -1);
  m.vertex_parents_.assign(m.vertices_.size(), {-1, -1});
  m.ancestry_ = {next_mesh_id()};
  m.finalize();
  return m;
}

void Mesh::finalize() {
  const std::size_t nt = triangles_.size();
  elem_geom_.resize(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    const auto& tri = triangles_[t];
    const Point& p0 = vertices_[tri[0]];
    const Point& p1 = vertices_[tri[1]];
    const Point& p2 = vertices_[tri[2]];
    const double area = signed_area(p0, p1, p2);
    if (!(area > 0.0)) throw GeometryError("degenerate or inverted triangle " + std::to_string(t));
    const double l01 = distance(p0, p1);
    const double l12 = distance(p1, p2);
    const double l20 = distance(p2, p0);
    ElementGeometry& g = elem_geom_[t];
    g.area = area;
    g.diameter = std::max({l01, l12, l20});
    g.inball_diameter = 4.0 * area / (l01 + l12 + l20);
    const double inv = 1.0 / (2.0 * area);
    g.grad[0] = {(p1.y - p2.y) * inv, (p2.x - p1.x) * inv};
    g.grad[1] = {(p2.y - p0.y) * inv, (p0.x - p2.x) * inv};
    g.grad[2] = {(p0.y - p1.y) * inv, (p1.x - p0.x) * inv};
    g.centroid = {(p0.x + p1.x + p2.x) / 3.0, (p0.y + p1.y + p2.y) / 3.0};
  }

  edges_.clear();
  triangle_edges_.assign(nt, {-1, -1, -1});
  std::unordered_map<std::uint64_t, int> lookup;
  lookup.reserve(nt * 2);
  for (std::size_t t = 0; t < nt; ++t) {
    for (int k = 0; k < 3; ++k) {
      const int a = triangles_[t][k];
      const int b = triangles_[t][(k + 1) % 3];
      auto [it, inserted] = lookup.try_emplace(edge_key(a, b), static_cast<int>(edges_.size()));
      if (inserted) {
        Edge e;
        e.v = {std::min(a, b), std::max(a, b)};
        e.tri = {static_cast<int>(t), -1};
        edges_.push_back(e);
      } else {
        Edge& e = edges_[it->second];
        if (e.tri[1] >= 0) throw GeometryError("edge shared by more than two triangles");
        e.tri[1] = static_cast<int>(t);
      }
      triangle_edges_[t][k] = it->second;
    }
  }

  const double split_x = slit_ ? slit_->x : 0.5;
  edge_geom_.resize(edges_.size());
  vertex_sides_.assign(vertices_.size(), 0u);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    Edge& e = edges_[i];
    const Point& a = vertices_[e.v[0]];
    const Point& b = vertices_[e.v[1]];
    if (!e.boundary()) {
      e.tag = EdgeClass::Interior;
    } else if (on_slit(slit_, a) && on_slit(slit_, b)) {
      e.tag = EdgeClass::Crack;
    } else if (near(a.y, 1.0) && near(b.y, 1.0)) {
      e.tag = EdgeClass::Dirichlet;
      e.side = 0.5 * (a.x + b.x) < split_x ? DirichletSide::Left : DirichletSide::Right;
      const unsigned bit = e.side == DirichletSide::Left ? 1u : 2u;
      vertex_sides_[e.v[0]] |= bit;
      vertex_sides_[e.v[1]] |= bit;
    } else {
      e.tag = EdgeClass::Neumann;
    }

    EdgeGeometry& eg = edge_geom_[i];
    eg.length = distance(a, b);
    Vec2 n{(b.y - a.y) / eg.length, -(b.x - a.x) / eg.length};
    const Point& c = elem_geom_[e.tri[0]].centroid;
    if ((a.x - c.x) * n.x + (a.y - c.y) * n.y < 0.0) n = {-n.x, -n.y};
    eg.normal = n;
  }

  lumped_weights_.assign(vertices_.size(), 0.0);
  for (std::size_t t = 0; t < nt; ++t) {
    for (int k : triangles_[t]) lumped_weights_[k] += elem_geom_[t].area / 3.0;
  }
}

Mesh build_slit_square(int n, std::optional<Slit> slit) {
  if (n < 1) throw GeometryError("subdivisions per side must be at least 1");
  int slit_i = -1;
  int tip_j = -1;
  if (slit) {
    if (!(slit->x > 0.0 && slit->x < 1.0) || !(slit->tip_y > 0.0 && slit->tip_y < 1.0)) {
      throw GeometryError("slit must lie strictly inside the unit square with depth in (0,1)");
    }
    const double si = slit->x * n;
    const double sj = slit->tip_y * n;
    if (std::abs(si - std::round(si)) > 1e-9 || std::abs(sj - std::round(sj)) > 1e-9) {
      throw GeometryError("slit is not aligned with mesh lines (n = " + std::to_string(n) + ")");
    }
    slit_i = static_cast<int>(std::lround(si));
    tip_j = static_cast<int>(std::lround(sj));
  }

  const int np = n + 1;
  std::vector<Point> vertices;
  vertices.reserve(static_cast<std::size_t>(np) * np + np);
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      vertices.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
    }
  }
  auto idx = [np](int i, int j) { return j * np + i; };

  // Right-face copies of slit vertices above the tip.
  std::vector<int> right_copy(vertices.size(), -1);
  if (slit) {
    for (int j = tip_j + 1; j <= n; ++j) {
      right_copy[idx(slit_i, j)] = static_cast<int>(vertices.size());
      vertices.push_back(vertices[idx(slit_i, j)]);
    }
  }

  std::vector<Triangle> triangles;
  triangles.reserve(2 * static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int a = idx(i, j), b = idx(i + 1, j), c = idx(i + 1, j + 1), d = idx(i, j + 1);
      const bool left_half = (i + 0.5) / n < 0.5;
      std::array<Triangle, 2> pair = left_half ? std::array<Triangle, 2>{{{c, a, b}, {a, c, d}}}
                                               : std::array<Triangle, 2>{{{b, d, a}, {d, b, c}}};
      for (auto& t : pair) {
        if (slit) {
          double cx = 0.0;
          for (int k : t) cx += vertices[k].x;
          if (cx / 3.0 > slit->x) {
            for (int& k : t) {
              if (right_copy[k] >= 0) k = right_copy[k];
            }
          }
        }
        triangles.push_back(t);
      }
    }
  }
  return Mesh::from_arrays(std::move(vertices), std::move(triangles), slit);
}

Mesh bisect(const Mesh& mesh, std::span<const int> marked) {
  const int nt = static_cast<int>(mesh.num_triangles());
  for (int t : marked) {
    if (t < 0 || t >= nt) throw GeometryError("marked element index out of range: " + std::to_string(t));
  }
  if (marked.empty()) return mesh;

  const auto& tri_edges = mesh.triangle_edges();
  const auto& edges = mesh.edges();
  std::vector<char> edge_marked(edges.size(), 0);
  std::vector<int> work;
  auto mark_edge = [&](int e) {
    if (edge_marked[e]) return;
    edge_marked[e] = 1;
    for (int t : edges[e].tri) {
      if (t >= 0) work.push_back(t);
    }
  };
  for (int t : marked) mark_edge(tri_edges[t][0]);
  // Closure: a triangle with any marked edge must also bisect its refinement edge.
  while (!work.empty()) {
    const int t = work.back();
    work.pop_back();
    const auto& te = tri_edges[t];
    if (!edge_marked[te[0]] && (edge_marked[te[1]] || edge_marked[te[2]])) mark_edge(te[0]);
  }

  Mesh out;
  out.vertices_ = mesh.vertices_;
  out.vertex_parents_ = mesh.vertex_parents_;
  out.slit_ = mesh.slit_;
  out.ancestry_ = mesh.ancestry_;
  out.ancestry_.push_back(next_mesh_id());

  std::unordered_map<std::uint64_t, int> midpoint;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!edge_marked[e]) continue;
    const auto [a, b] = edges[e].v;
    const Point& pa = mesh.vertices_[a];
    const Point& pb = mesh.vertices_[b];
    midpoint.emplace(edge_key(a, b), static_cast<int>(out.vertices_.size()));
    out.vertices_.push_back({0.5 * (pa.x + pb.x), 0.5 * (pa.y + pb.y)});
    out.vertex_parents_.push_back({a, b});
  }

  std::function<void(const Triangle&, int)> split = [&](const Triangle& t, int parent) {
    const auto it = midpoint.find(edge_key(t[0], t[1]));
    if (it == midpoint.end()) {
      out.triangles_.push_back(t);
      out.parents_.push_back(parent);
      return;
    }
    const int m = it->second;
    split({t[2], t[0], m}, parent);
    split({t[1], t[2], m}, parent);
  };
  out.triangles_.reserve(mesh.num_triangles() + 2 * midpoint.size());
  for (int t = 0; t < nt; ++t) split(mesh.triangles_[t], t);

  out.finalize();
  return out;
}

Mesh refine_uniform(const Mesh& mesh) {
  std::vector<int> all(mesh.num_triangles());
  for (std::size_t t = 0; t < all.size(); ++t) all[t] = static_cast<int>(t);
  return bisect(mesh, all);
}

GeometryTables geometry_tables(const Mesh& mesh) {
  return {mesh.element_geometry(), mesh.edge_geometry()};
}

Vec2 element_gradient(const Mesh& mesh, int t, std::span<const double> nodal) {
  const auto& tri = mesh.triangles()[t];
  const auto& g = mesh.element_geometry()[t].grad;
  // Differences against vertex 0 keep constant fields at exactly zero gradient.
  const double d1 = nodal[tri[1]] - nodal[tri[0]];
  const double d2 = nodal[tri[2]] - nodal[tri[0]];
  return {d1 * g[1].x + d2 * g[2].x, d1 * g[1].y + d2 * g[2].y};
}

MeshReport check_mesh(const Mesh& mesh) {
  MeshReport r;
  const auto& V = mesh.vertices();
  const auto& T = mesh.triangles();
  const auto& slit = mesh.slit();

  std::map<std::pair<int, int>, int> count;
  for (const auto& t : T) {
    if (!(signed_area(V[t[0]], V[t[1]], V[t[2]]) > 0.0)) r.positive_orientation = false;
    for (int k = 0; k < 3; ++k) {
      int a = t[k], b = t[(k + 1) % 3];
      if (a > b) std::swap(a, b);
      ++count[{a, b}];
    }
    double h = 0.0, per = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double l = distance(V[t[k]], V[t[(k + 1) % 3]]);
      h = std::max(h, l);
      per += l;
    }
    const double inball = 4.0 * std::abs(signed_area(V[t[0]], V[t[1]], V[t[2]])) / per;
    r.max_shape_ratio = std::max(r.max_shape_ratio, h / inball);
  }

  for (const auto& [key, c] : count) {
    if (c > 2) r.conforming = false;
    if (c == 1) {
      const Point& a = V[key.first];
      const Point& b = V[key.second];
      const bool crack = on_slit(slit, a) && on_slit(slit, b);
      if (!crack && !on_outer_boundary(a, b)) r.conforming = false;
    }
  }

  // Hanging nodes: a vertex strictly inside some edge. Crack faces overlap geometrically
  // and are skipped. Vertices are bucketed on a uniform grid so each edge only visits
  // the vertices near its bounding box.
  double x0 = V[0].x, x1 = V[0].x, y0 = V[0].y, y1 = V[0].y;
  for (const auto& p : V) {
    x0 = std::min(x0, p.x), x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
  }
  const int cells = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(V.size()))));
  const double cw = std::max(x1 - x0, kGeomTol) / cells, ch = std::max(y1 - y0, kGeomTol) / cells;
  auto cell_x = [&](double x) { return std::clamp(static_cast<int>((x - x0) / cw), 0, cells - 1); };
  auto cell_y = [&](double y) { return std::clamp(static_cast<int>((y - y0) / ch), 0, cells - 1); };
  std::vector<std::vector<int>> bucket(static_cast<std::size_t>(cells) * cells);
  for (std::size_t v = 0; v < V.size(); ++v) {
    bucket[cell_y(V[v].y) * cells + cell_x(V[v].x)].push_back(static_cast<int>(v));
  }
  for (const auto& [key, c] : count) {
    (void)c;
    const Point& a = V[key.first];
    const Point& b = V[key.second];
    const double lx = std::min(a.x, b.x) - kGeomTol, hx = std::max(a.x, b.x) + kGeomTol;
    const double ly = std::min(a.y, b.y) - kGeomTol, hy = std::max(a.y, b.y) + kGeomTol;
    for (int j = cell_y(ly); j <= cell_y(hy); ++j) {
      for (int i = cell_x(lx); i <= cell_x(hx); ++i) {
        for (int v : bucket[j * cells + i]) {
          const Point& p = V[v];
          if (p.x < lx || p.x > hx || p.y < ly || p.y > hy) continue;
          if (v == key.first || v == key.second) continue;
          const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
          if (std::abs(cross) > kGeomTol * distance(a, b)) continue;
          if (distance(p, a) < kGeomTol || distance(p, b) < kGeomTol) continue;
          if (on_slit(slit, p) && on_slit(slit, a) && on_slit(slit, b)) continue;
          r.conforming = false;
        }
      }
    }
  }

  for (const auto& e : mesh.edges()) {
    const Point& a = V[e.v[0]];
    const Point& b = V[e.v[1]];
    EdgeClass expected = EdgeClass::Interior;
    if (e.boundary()) {
      if (on_slit(slit, a) && on_slit(slit, b)) {
        expected = EdgeClass::Crack;
      } else if (near(a.y, 1.0) && near(b.y, 1.0)) {
        expected = EdgeClass::Dirichlet;
      } else {
        expected = EdgeClass::Neumann;
      }
    }
    if (e.tag != expected) r.classification_ok = false;
  }

  if (slit) {
    std::vector<unsigned> used(V.size(), 0u);
    for (const auto& t : T) {
      const double cx = (V[t[0]].x + V[t[1]].x + V[t[2]].x) / 3.0;
      const unsigned bit = cx < slit->x ? 1u : 2u;
      for (int k : t) used[k] |= bit;
    }
    for (std::size_t v = 0; v < V.size(); ++v) {
      if (used[v] == 3u && near(V[v].x, slit->x) && V[v].y > slit->tip_y + kGeomTol) {
        r.crack_faces_separated = false;
      }
    }
  }
  return r;
}

void write_mesh_dump(const Mesh& mesh, std::ostream& out) {
  auto tag_name = [](EdgeClass c) {
    switch (c) {
      case EdgeClass::Interior: return "interior";
      case EdgeClass::Dirichlet: return "dirichlet";
      case EdgeClass::Neumann: return "neumann";
      case EdgeClass::Crack: return "crack";
    }
    return "?";
  };
  char buf[128];
  out << "generation " << mesh.generation() << "\n";
  out << "vertices " << mesh.num_vertices() << "\n";
  for (const auto& p : mesh.vertices()) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x, p.y);
    out << buf;
  }
  out << "triangles " << mesh.num_triangles() << "\n";
  for (const auto& t : mesh.triangles()) out << t[0] << ' ' << t[1] << ' ' << t[2] << "\n";
  out << "edges " << mesh.edges().size() << "\n";
  for (const auto& e : mesh.edges()) {
    out << e.v[0] << ' ' << e.v[1] << ' ' << tag_name(e.tag);
    if (e.side == DirichletSide::Left) out << " left";
    if (e.side == DirichletSide::Right) out << " right";
    out << "\n";
  }
}

}  // namespace limitfrac
