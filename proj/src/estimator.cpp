#include "limitfrac/estimator.hpp"

#include <cmath>

#include "limitfrac/quadrature.hpp"

namespace limitfrac {

namespace {

struct ElementData {
  Vec2 grad_u;
  Vec2 grad_v;
  double g = 0.0;      // |grad u|^2
  double log_d = 0.0;  // log(1 + beta^alpha |T|^{2 alpha}) with T at the centroid
};

ElementData element_data(const Mesh& mesh, int t, const ScalarField& u, const ScalarField& v,
                         const ModelParams& p) {
  ElementData d;
  d.grad_u = element_gradient(mesh, t, u.values());
  d.grad_v = element_gradient(mesh, t, v.values());
  d.g = dot(d.grad_u, d.grad_u);
  const auto& tri = mesh.triangles()[t];
  const double vc = (v[tri[0]] + v[tri[1]] + v[tri[2]]) / 3.0;
  const double t2 = ((1.0 - p.kappa()) * vc * vc + p.kappa()) * d.g;
  d.log_d = log_limiter(t2, p.alpha(), p.beta());
  return d;
}

// (1 + beta^alpha |T|^{2 alpha})^{power} from its logarithm.
double limiter_power(double log_d, double power) { return std::exp(power * log_d); }

double field_jump(std::span<const double> values, const Mesh& mesh, int e) {
  const auto& edge = mesh.edges()[e];
  const Vec2 n = mesh.edge_geometry()[e].normal;
  const Vec2 g0 = element_gradient(mesh, edge.tri[0], values);
  if (edge.boundary()) return dot(g0, n);
  const Vec2 g1 = element_gradient(mesh, edge.tri[1], values);
  return dot(g1, n) - dot(g0, n);
}

}  // namespace

double jump(const ScalarField& field, const Mesh& mesh, int e) {
  field.require_bound(mesh);
  return field_jump(field.values(), mesh, e);
}

IndicatorTerms indicator_u_terms(const ScalarField& u, const ScalarField& v, const Mesh& mesh,
                                 const ModelParams& p) {
  u.require_bound(mesh);
  v.require_bound(mesh);
  const std::size_t nt = mesh.num_triangles();
  IndicatorTerms out{std::vector<double>(nt), std::vector<double>(nt), std::vector<double>(nt)};
  const auto& geo = mesh.element_geometry();
  const auto& egeo = mesh.edge_geometry();
  const auto& edges = mesh.edges();
  const double kappa = p.kappa();
  const double inv_alpha = 1.0 / p.alpha();
  const auto gl = gauss_legendre(3);

  std::vector<double> jumps(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    jumps[e] = field_jump(u.values(), mesh, static_cast<int>(e));
  }

  for (std::size_t t = 0; t < nt; ++t) {
    const int ti = static_cast<int>(t);
    const auto d = element_data(mesh, ti, u, v, p);
    const double h = geo[t].diameter;
    const double area = geo[t].area;
    const double d1 = limiter_power(d.log_d, inv_alpha + 1.0);
    const double d2 = limiter_power(d.log_d, inv_alpha + 2.0);
    // beta^alpha |T|^{2 alpha} = D - 1.
    const double limiter_term = std::expm1(d.log_d);

    const double gv2 = dot(d.grad_v, d.grad_v);
    out.term1[t] = h * h * h * h * gv2 * gv2 * area * (1.0 - kappa) * (1.0 - kappa) * d.g / (d1 * d1);

    const double dvdu = dot(d.grad_v, d.grad_u);
    const double factor = 2.0 * (kappa - 1.0) * dvdu * (1.0 - p.alpha() * limiter_term) / d2;
    const auto& tri = mesh.triangles()[t];
    double vol = 0.0;
    for (const auto& q : three_point_rule()) {
      const double vq = q.bary[0] * v[tri[0]] + q.bary[1] * v[tri[1]] + q.bary[2] * v[tri[2]];
      vol += q.w * (factor * vq) * (factor * vq);
    }
    out.term2[t] = h * h * area * vol;

    double edge_sum = 0.0;
    for (int k = 0; k < 3; ++k) {
      const int e = mesh.triangle_edges()[t][k];
      if (edges[e].tag == EdgeClass::Dirichlet) continue;
      const double he = egeo[e].length;
      const double va = v[edges[e].v[0]];
      const double vb = v[edges[e].v[1]];
      double integral = 0.0;
      for (const auto& q : gl) {
        const double vq = (1.0 - q.x) * va + q.x * vb;
        const double val = ((1.0 - kappa) * vq * vq + kappa) * jumps[e] / d1;
        integral += q.w * val * val;
      }
      edge_sum += he * he * integral;
    }
    out.term3[t] = edge_sum;
  }
  return out;
}

IndicatorTerms indicator_v_terms(const ScalarField& u, const ScalarField& v, const Mesh& mesh,
                                 const ModelParams& p) {
  u.require_bound(mesh);
  v.require_bound(mesh);
  const std::size_t nt = mesh.num_triangles();
  IndicatorTerms out{std::vector<double>(nt), std::vector<double>(nt), std::vector<double>(nt)};
  const auto& geo = mesh.element_geometry();
  const auto& egeo = mesh.edge_geometry();
  const auto& edges = mesh.edges();
  const double kappa = p.kappa();
  const double two_delta = 2.0 * p.delta();
  const double rho2 = p.rho() * p.rho();
  const double inv_alpha = 1.0 / p.alpha();

  std::vector<double> jumps(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    jumps[e] = field_jump(v.values(), mesh, static_cast<int>(e));
  }

  for (std::size_t t = 0; t < nt; ++t) {
    const int ti = static_cast<int>(t);
    const auto d = element_data(mesh, ti, u, v, p);
    const double h = geo[t].diameter;
    const double area = geo[t].area;
    const double a = (1.0 - kappa) * d.g / limiter_power(d.log_d, inv_alpha + 1.0);

    const double gv2 = dot(d.grad_v, d.grad_v);
    out.term1[t] = h * h * h * h * gv2 * area * (a + two_delta) * (a + two_delta);

    const auto& tri = mesh.triangles()[t];
    double vol = 0.0;
    for (const auto& q : three_point_rule()) {
      const double vq = q.bary[0] * v[tri[0]] + q.bary[1] * v[tri[1]] + q.bary[2] * v[tri[2]];
      const double gap = q.bary[0] * (1.0 - v[tri[0]]) + q.bary[1] * (1.0 - v[tri[1]]) +
                         q.bary[2] * (1.0 - v[tri[2]]);
      const double r = a * vq - two_delta * gap;
      vol += q.w * r * r;
    }
    out.term2[t] = h * h * area * vol;

    double edge_sum = 0.0;
    for (int k = 0; k < 3; ++k) {
      const int e = mesh.triangle_edges()[t][k];
      const double he = egeo[e].length;
      edge_sum += rho2 * he * he * jumps[e] * jumps[e];
    }
    out.term3[t] = edge_sum;
  }
  return out;
}

namespace {

std::vector<double> combine(const IndicatorTerms& terms) {
  std::vector<double> eta(terms.term1.size());
  for (std::size_t t = 0; t < eta.size(); ++t) {
    eta[t] = std::sqrt(terms.term1[t] + terms.term2[t] + terms.term3[t]);
  }
  return eta;
}

}  // namespace

std::vector<double> indicator_u(const ScalarField& u, const ScalarField& v, const Mesh& mesh,
                                const ModelParams& p) {
  return combine(indicator_u_terms(u, v, mesh, p));
}

std::vector<double> indicator_v(const ScalarField& u, const ScalarField& v, const Mesh& mesh,
                                const ModelParams& p) {
  return combine(indicator_v_terms(u, v, mesh, p));
}

IndicatorSet assemble_indicators(const ScalarField& u, const ScalarField& v, const Mesh& mesh,
                                 const ModelParams& p) {
  IndicatorSet set;
  set.mesh_id = mesh.id();
  set.eta_u = indicator_u(u, v, mesh, p);
  set.eta_v = indicator_v(u, v, mesh, p);
  set.eta.resize(set.eta_u.size());
  double sum = 0.0;
  for (std::size_t t = 0; t < set.eta.size(); ++t) {
    const double sq = set.eta_u[t] * set.eta_u[t] + set.eta_v[t] * set.eta_v[t];
    set.eta[t] = std::sqrt(sq);
    sum += sq;
  }
  set.global = std::sqrt(sum);
  return set;
}

}  // namespace limitfrac
