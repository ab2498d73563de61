#include "limitfrac/model.hpp"

#include <cmath>
#include <stdexcept>

#include "limitfrac/error.hpp"

namespace limitfrac {

ModelParams::ModelParams(double alpha, double beta, double kappa, double eps, double lambda_c)
    : alpha_(alpha), beta_(beta), kappa_(kappa), eps_(eps), lambda_c_(lambda_c) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  if (!(beta >= 0.0)) throw std::invalid_argument("beta must be >= 0");
  if (!(kappa > 0.0 && kappa < 1.0)) throw std::invalid_argument("kappa must lie in (0,1)");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
  if (!(lambda_c > 0.0)) throw std::invalid_argument("lambda_c must be > 0");
}

namespace {

double gamma_of(double v_sq, const ModelParams& p) { return p.kappa() + (1.0 - p.kappa()) * v_sq; }

double flux_factor(double log_d, const ModelParams& p) {
  return std::exp(-(1.0 / p.alpha() + 1.0) * log_d);
}

void require(const ScalarField& f, const Mesh& mesh) { f.require_bound(mesh); }

}  // namespace

double coefficient(Vec2 u_grad, double v_sq, const ModelParams& p) {
  const double gamma = gamma_of(v_sq, p);
  const double t2 = gamma * dot(u_grad, u_grad);
  return gamma * flux_factor(log_limiter(t2, p.alpha(), p.beta()), p);
}

ElementState element_state(const Mesh& mesh, int t, std::span<const double> u,
                           std::span<const double> v, const ModelParams& p) {
  ElementState s;
  s.grad_u = element_gradient(mesh, t, u);
  s.grad_v = element_gradient(mesh, t, v);
  s.grad_u_sq = dot(s.grad_u, s.grad_u);
  const auto& tri = mesh.triangles()[t];
  s.v_sq_centroid = (v[tri[0]] * v[tri[0]] + v[tri[1]] * v[tri[1]] + v[tri[2]] * v[tri[2]]) / 3.0;
  s.log_d = log_limiter(gamma_of(s.v_sq_centroid, p) * s.grad_u_sq, p.alpha(), p.beta());
  return s;
}

EnergyBreakdown energy(const ScalarField& u, const ScalarField& v, const Mesh& mesh,
                       const ModelParams& p) {
  require(u, mesh);
  require(v, mesh);
  const auto& geo = mesh.element_geometry();
  EnergyBreakdown e;
  double grad_term = 0.0;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto s = element_state(mesh, static_cast<int>(t), u.values(), v.values(), p);
    const double t2 = gamma_of(s.v_sq_centroid, p) * s.grad_u_sq;
    e.bulk += geo[t].area * 0.5 * t2 * std::exp(-s.log_d / p.alpha());
    grad_term += geo[t].area * p.rho() * dot(s.grad_v, s.grad_v);
  }
  const auto& w = mesh.lumped_weights();
  double reaction = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) reaction += w[i] * (1.0 - v[i]) * (1.0 - v[i]);
  e.surface = grad_term + p.delta() * reaction;
  e.total = e.bulk + e.surface;
  return e;
}

std::vector<double> residual_A(const ScalarField& v, const ScalarField& u, const Mesh& mesh,
                               const ModelParams& p, const ConstraintSet& cs) {
  require(u, mesh);
  require(v, mesh);
  const auto& geo = mesh.element_geometry();
  std::vector<double> r(mesh.num_vertices(), 0.0);
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto s = element_state(mesh, static_cast<int>(t), u.values(), v.values(), p);
    const double c = gamma_of(s.v_sq_centroid, p) * flux_factor(s.log_d, p) * geo[t].area;
    const auto& tri = mesh.triangles()[t];
    for (int k = 0; k < 3; ++k) r[tri[k]] += c * dot(s.grad_u, geo[t].grad[k]);
  }
  for (const auto& [k, value] : cs.dirichlet) r.at(k) = 0.0;
  return r;
}

std::vector<double> residual_B_frozen(const ScalarField& u, const ScalarField& v,
                                      const ScalarField& v_lag, const Mesh& mesh,
                                      const ModelParams& p, const ConstraintSet& cs) {
  require(u, mesh);
  require(v, mesh);
  require(v_lag, mesh);
  const auto& geo = mesh.element_geometry();
  std::vector<double> r(mesh.num_vertices(), 0.0);
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto lag = element_state(mesh, static_cast<int>(t), u.values(), v_lag.values(), p);
    const Vec2 gv = element_gradient(mesh, static_cast<int>(t), v.values());
    const double reaction =
        (1.0 - p.kappa()) * lag.grad_u_sq * flux_factor(lag.log_d, p) * geo[t].area / 3.0;
    const auto& tri = mesh.triangles()[t];
    for (int k = 0; k < 3; ++k) {
      r[tri[k]] += 2.0 * p.rho() * geo[t].area * dot(gv, geo[t].grad[k]) + reaction * v[tri[k]];
    }
  }
  const auto& w = mesh.lumped_weights();
  for (std::size_t i = 0; i < w.size(); ++i) r[i] -= 2.0 * p.delta() * w[i] * (1.0 - v[i]);
  for (int k : cs.crack) r.at(k) = 0.0;
  return r;
}

std::vector<double> residual_B(const ScalarField& u, const ScalarField& v, const Mesh& mesh,
                               const ModelParams& p, const ConstraintSet& cs) {
  return residual_B_frozen(u, v, v, mesh, p, cs);
}

EnergyBreakdown energy_exact(const ScalarField& u, const ScalarField& v, const Mesh& mesh,
                             const ModelParams& p) {
  require(u, mesh);
  require(v, mesh);
  const auto e = energy_exact<double>(mesh, u.values(), v.values(), p);
  return {e.bulk, e.surface, e.bulk + e.surface};
}

double directional_derivative(const ScalarField& u, const ScalarField& v, const ScalarField& psi,
                              const ScalarField& phi, const Mesh& mesh, const ModelParams& p) {
  for (const ScalarField* f : {&u, &v, &psi, &phi}) require(*f, mesh);
  return directional_derivative_exact<double>(mesh, u.values(), v.values(), psi.values(),
                                              phi.values(), p);
}

}  // namespace limitfrac
