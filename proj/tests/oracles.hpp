// Independent reference implementations used only by the tests.
#pragma once

#include <boost/multiprecision/float128.hpp>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "limitfrac/mesh.hpp"
#include "limitfrac/model.hpp"
#include "limitfrac/quadrature.hpp"

namespace oracle {

using quad = boost::multiprecision::float128;

/// Central difference of the exact-quadrature energy along (psi, phi), in quad precision.
inline quad central_difference(const limitfrac::Mesh& mesh, const std::vector<double>& u,
                               const std::vector<double>& v, const std::vector<double>& psi,
                               const std::vector<double>& phi, const limitfrac::ModelParams& p,
                               quad h) {
  const std::size_t n = u.size();
  std::vector<quad> up(n), vp(n), um(n), vm(n);
  for (std::size_t i = 0; i < n; ++i) {
    up[i] = quad(u[i]) + h * quad(psi[i]);
    um[i] = quad(u[i]) - h * quad(psi[i]);
    vp[i] = quad(v[i]) + h * quad(phi[i]);
    vm[i] = quad(v[i]) - h * quad(phi[i]);
  }
  const auto ep = limitfrac::energy_exact<quad>(mesh, up, vp, p);
  const auto em = limitfrac::energy_exact<quad>(mesh, um, vm, p);
  return ((ep.bulk + ep.surface) - (em.bulk + em.surface)) / (2 * h);
}

inline quad derivative_quad(const limitfrac::Mesh& mesh, const std::vector<double>& u,
                            const std::vector<double>& v, const std::vector<double>& psi,
                            const std::vector<double>& phi, const limitfrac::ModelParams& p) {
  auto lift = [](const std::vector<double>& x) { return std::vector<quad>(x.begin(), x.end()); };
  const auto uq = lift(u), vq = lift(v), psiq = lift(psi), phiq = lift(phi);
  return limitfrac::directional_derivative_exact<quad>(mesh, uq, vq, psiq, phiq, p);
}

/// Per-element indicator terms straight from the formulas: own gradients from vertex
/// coordinates, own edge search and normals, high-order quadrature everywhere.
struct BruteIndicators {
  std::vector<double> eta_u2;
  std::vector<double> eta_v2;
};

inline BruteIndicators brute_indicators(const limitfrac::Mesh& mesh, const std::vector<double>& u,
                                        const std::vector<double>& v,
                                        const limitfrac::ModelParams& p) {
  using limitfrac::Point;
  const auto& X = mesh.vertices();
  const auto& T = mesh.triangles();
  const std::size_t nt = T.size();
  const double kappa = p.kappa(), alpha = p.alpha(), beta = p.beta();
  const double rho = p.lambda_c() * p.eps(), delta = p.lambda_c() / (4.0 * p.eps());

  struct Grad {
    double x, y;
  };
  auto gradient = [&](std::size_t t, const std::vector<double>& f) {
    const Point a = X[T[t][0]], b = X[T[t][1]], c = X[T[t][2]];
    const double det = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
    const double fa = f[T[t][0]], fb = f[T[t][1]], fc = f[T[t][2]];
    return Grad{((fb - fa) * (c.y - a.y) - (fc - fa) * (b.y - a.y)) / det,
                ((fc - fa) * (b.x - a.x) - (fb - fa) * (c.x - a.x)) / det};
  };
  auto area = [&](std::size_t t) {
    const Point a = X[T[t][0]], b = X[T[t][1]], c = X[T[t][2]];
    return 0.5 * std::abs((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
  };
  auto dist = [&](int i, int j) { return std::hypot(X[i].x - X[j].x, X[i].y - X[j].y); };
  auto diameter = [&](std::size_t t) {
    return std::max({dist(T[t][0], T[t][1]), dist(T[t][1], T[t][2]), dist(T[t][2], T[t][0])});
  };
  auto centroid_v = [&](std::size_t t) { return (v[T[t][0]] + v[T[t][1]] + v[T[t][2]]) / 3.0; };
  auto limiter = [&](std::size_t t) {
    const Grad g = gradient(t, u);
    const double vc = centroid_v(t);
    const double t2 = ((1 - kappa) * vc * vc + kappa) * (g.x * g.x + g.y * g.y);
    return 1.0 + std::pow(beta, alpha) * std::pow(t2, alpha);  // 1 + beta^a |T|^{2a}
  };

  // Neighbor search by brute force over vertex pairs.
  auto neighbor = [&](std::size_t t, int a, int b) -> long {
    for (std::size_t s = 0; s < nt; ++s) {
      if (s == t) continue;
      int hits = 0;
      for (int k = 0; k < 3; ++k) hits += (T[s][k] == a || T[s][k] == b);
      if (hits == 2) return static_cast<long>(s);
    }
    return -1;
  };
  auto on_dirichlet = [&](int a, int b) { return X[a].y == 1.0 && X[b].y == 1.0; };

  const auto rule = limitfrac::collapsed_gauss_rule(8);
  const auto gl = limitfrac::gauss_legendre(8);
  BruteIndicators out{std::vector<double>(nt), std::vector<double>(nt)};
  for (std::size_t t = 0; t < nt; ++t) {
    const Grad gu = gradient(t, u), gv = gradient(t, v);
    const double g = gu.x * gu.x + gu.y * gu.y;
    const double gvn = std::sqrt(gv.x * gv.x + gv.y * gv.y);
    const double D = limiter(t);
    const double D1 = std::pow(D, 1.0 / alpha + 1.0);
    const double D2 = std::pow(D, 1.0 / alpha + 2.0);
    const double h = diameter(t), A = area(t);

    double i1u = 0, i2u = 0, i1v = 0, i2v = 0;
    for (const auto& q : rule) {
      const double vq = q.bary[0] * v[T[t][0]] + q.bary[1] * v[T[t][1]] + q.bary[2] * v[T[t][2]];
      const double f1u = (1 - kappa) * std::sqrt(g) / D1;
      i1u += q.w * A * f1u * f1u;
      const double f2u = 2 * (kappa - 1) * vq * (gv.x * gu.x + gv.y * gu.y) *
                         (1 - alpha * (D - 1)) / D2;
      i2u += q.w * A * f2u * f2u;
      const double f1v = (1 - kappa) * g / D1 + 2 * delta;
      i1v += q.w * A * f1v * f1v;
      const double f2v = (1 - kappa) * g * vq / D1 + 2 * delta * vq - 2 * delta;
      i2v += q.w * A * f2v * f2v;
    }
    double eu = std::pow(h, 4) * std::pow(gvn, 4) * i1u + h * h * i2u;
    double ev = std::pow(h, 4) * gvn * gvn * i1v + h * h * i2v;

    for (int k = 0; k < 3; ++k) {
      const int a = T[t][k], b = T[t][(k + 1) % 3], c = T[t][(k + 2) % 3];
      const double len = dist(a, b);
      // Outward normal of t on edge (a, b): perpendicular, pointing away from c.
      double nx = X[b].y - X[a].y, ny = X[a].x - X[b].x;
      if (nx * (X[c].x - X[a].x) + ny * (X[c].y - X[a].y) > 0) nx = -nx, ny = -ny;
      nx /= len, ny /= len;
      const long s = neighbor(t, a, b);
      double ju, jv;
      if (s < 0) {
        ju = gu.x * nx + gu.y * ny;
        jv = gv.x * nx + gv.y * ny;
      } else {
        const Grad su = gradient(static_cast<std::size_t>(s), u);
        const Grad sv = gradient(static_cast<std::size_t>(s), v);
        ju = (su.x - gu.x) * nx + (su.y - gu.y) * ny;
        jv = (sv.x - gv.x) * nx + (sv.y - gv.y) * ny;
      }
      const bool dirichlet = s < 0 && on_dirichlet(a, b);
      double iu = 0;
      for (const auto& q : gl) {
        const double vq = (1 - q.x) * v[a] + q.x * v[b];
        const double f = ((1 - kappa) * vq * vq + kappa) * ju / D1;
        iu += q.w * len * f * f;
      }
      if (!dirichlet) eu += len * iu;
      ev += rho * rho * len * len * jv * jv;
    }
    out.eta_u2[t] = eu;
    out.eta_v2[t] = ev;
  }
  return out;
}

/// Minimal legacy VTK reader: point coordinates and named scalar arrays.
struct VtkData {
  std::vector<std::array<double, 3>> points;
  std::vector<std::array<int, 3>> cells;
  std::map<std::string, std::vector<double>> arrays;
};

inline VtkData read_vtk(const std::string& path) {
  std::ifstream in(path);
  VtkData d;
  std::string tok;
  std::size_t count = 0;
  while (in >> tok) {
    if (tok == "POINTS") {
      in >> count >> tok;
      d.points.resize(count);
      for (auto& p : d.points) in >> p[0] >> p[1] >> p[2];
    } else if (tok == "CELLS") {
      std::size_t total = 0;
      in >> count >> total;
      d.cells.resize(count);
      for (auto& c : d.cells) {
        int k;
        in >> k >> c[0] >> c[1] >> c[2];
      }
    } else if (tok == "POINT_DATA" || tok == "CELL_DATA") {
      in >> count;
    } else if (tok == "SCALARS") {
      std::string name, type, lut, lut_name;
      int ncomp;
      in >> name >> type >> ncomp >> lut >> lut_name;
      auto& arr = d.arrays[name];
      arr.resize(count);
      for (auto& x : arr) in >> x;
    }
  }
  return d;
}

}  // namespace oracle
