#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "limitfrac/fespace.hpp"
#include "limitfrac/mesh.hpp"
#include "limitfrac/quadrature.hpp"

namespace limitfrac {

/// Physical and regularization constants of the strain-limiting phase-field model.
/// rho = lambda_c * eps and delta = lambda_c / (4 eps) are derived.
class ModelParams {
 public:
  /// Throws std::invalid_argument unless alpha > 0, beta >= 0, 0 < kappa < 1, eps > 0,
  /// lambda_c > 0.
  ModelParams(double alpha, double beta, double kappa, double eps, double lambda_c);

  /// alpha = 1, beta = 1, kappa = 1e-6, eps = 0.02, lambda_c = 1.
  static ModelParams defaults() { return {1.0, 1.0, 1e-6, 0.02, 1.0}; }

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double kappa() const { return kappa_; }
  double eps() const { return eps_; }
  double lambda_c() const { return lambda_c_; }
  double rho() const { return lambda_c_ * eps_; }
  double delta() const { return lambda_c_ / (4.0 * eps_); }

 private:
  double alpha_;
  double beta_;
  double kappa_;
  double eps_;
  double lambda_c_;
};

struct EnergyBreakdown {
  double bulk = 0.0;
  double surface = 0.0;
  double total = 0.0;
};

/// log(1 + beta^alpha |T|^{2 alpha}) for t2 = |T|^2. Large arguments go through the
/// log form so the result stays finite.
template <class Real>
Real log_limiter(Real t2, double alpha, double beta) {
  using std::exp;
  using std::log;
  using std::pow;
  const Real s = Real(beta) * t2;
  if (!(s > Real(0))) return Real(0);
  if (t2 > Real(1e16)) {
    const Real la = Real(alpha) * log(s);
    return la + log(Real(1) + exp(-la));
  }
  return log(Real(1) + pow(s, Real(alpha)));
}

/// Flux coefficient gamma / (1 + beta^alpha (gamma |g|^2)^alpha)^{1/alpha + 1} with
/// gamma = (1 - kappa) v_sq + kappa.
double coefficient(Vec2 u_grad, double v_sq, const ModelParams& p);

/// Discrete mass-lumped energy. The interpolant of v^2 enters the bulk density at the
/// element centroid; (1 - v)^2 is lumped at the vertices.
EnergyBreakdown energy(const ScalarField& u, const ScalarField& v, const Mesh& mesh,
                       const ModelParams& p);

/// First variation of the discrete energy in u, tested with each hat function.
/// Entries of Dirichlet nodes in `cs` are zero.
std::vector<double> residual_A(const ScalarField& v, const ScalarField& u, const Mesh& mesh,
                               const ModelParams& p, const ConstraintSet& cs = {});

/// First variation of the discrete energy in v. Entries of crack nodes in `cs` are zero.
std::vector<double> residual_B(const ScalarField& u, const ScalarField& v, const Mesh& mesh,
                               const ModelParams& p, const ConstraintSet& cs = {});

/// residual_B with the strain-limiting denominator evaluated at (u, v_lag) instead of (u, v).
std::vector<double> residual_B_frozen(const ScalarField& u, const ScalarField& v,
                                      const ScalarField& v_lag, const Mesh& mesh,
                                      const ModelParams& p, const ConstraintSet& cs = {});

/// Number of points per direction of the collapsed Gauss rule used by the
/// non-lumped (continuous-form) energy and derivative.
inline constexpr int kExactQuadratureOrder = 6;

template <class Real>
struct ExactEnergy {
  Real bulk{0};
  Real surface{0};
};

/// Continuous energy of the P1 fields (no lumping), integrated with a high-order rule.
template <class Real>
ExactEnergy<Real> energy_exact(const Mesh& mesh, std::span<const Real> u, std::span<const Real> v,
                               const ModelParams& p, int order = kExactQuadratureOrder) {
  using std::exp;
  const auto rule = collapsed_gauss_rule(order);
  const Real kappa(p.kappa()), rho(p.rho()), delta(p.delta()), inv_alpha(1.0 / p.alpha());
  ExactEnergy<Real> out;
  const auto& tris = mesh.triangles();
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const auto& geo = mesh.element_geometry()[t];
    const auto& tri = tris[t];
    Real gux(0), guy(0), gvx(0), gvy(0);
    for (int k = 0; k < 3; ++k) {
      gux += u[tri[k]] * Real(geo.grad[k].x);
      guy += u[tri[k]] * Real(geo.grad[k].y);
      gvx += v[tri[k]] * Real(geo.grad[k].x);
      gvy += v[tri[k]] * Real(geo.grad[k].y);
    }
    const Real g = gux * gux + guy * guy;
    const Real area(geo.area);
    Real bulk(0), surf(0);
    for (const auto& q : rule) {
      Real vq(0);
      for (int k = 0; k < 3; ++k) vq += Real(q.bary[k]) * v[tri[k]];
      const Real t2 = ((Real(1) - kappa) * vq * vq + kappa) * g;
      const Real log_d = log_limiter(t2, p.alpha(), p.beta());
      bulk += Real(q.w) * Real(0.5) * t2 * exp(-inv_alpha * log_d);
      surf += Real(q.w) * (delta * (Real(1) - vq) * (Real(1) - vq));
    }
    out.bulk += area * bulk;
    out.surface += area * (surf + rho * (gvx * gvx + gvy * gvy));
  }
  return out;
}

/// Directional derivative A(v; u, psi) + B(u; v, phi) of the continuous energy, with the
/// same quadrature as energy_exact.
template <class Real>
Real directional_derivative_exact(const Mesh& mesh, std::span<const Real> u,
                                  std::span<const Real> v, std::span<const Real> psi,
                                  std::span<const Real> phi, const ModelParams& p,
                                  int order = kExactQuadratureOrder) {
  using std::exp;
  const auto rule = collapsed_gauss_rule(order);
  const Real kappa(p.kappa()), rho(p.rho()), delta(p.delta());
  const Real flux_exp(1.0 / p.alpha() + 1.0);
  Real total(0);
  const auto& tris = mesh.triangles();
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const auto& geo = mesh.element_geometry()[t];
    const auto& tri = tris[t];
    Real gu[2]{}, gv[2]{}, gpsi[2]{}, gphi[2]{};
    for (int k = 0; k < 3; ++k) {
      const Real gx(geo.grad[k].x), gy(geo.grad[k].y);
      gu[0] += u[tri[k]] * gx, gu[1] += u[tri[k]] * gy;
      gv[0] += v[tri[k]] * gx, gv[1] += v[tri[k]] * gy;
      gpsi[0] += psi[tri[k]] * gx, gpsi[1] += psi[tri[k]] * gy;
      gphi[0] += phi[tri[k]] * gx, gphi[1] += phi[tri[k]] * gy;
    }
    const Real g = gu[0] * gu[0] + gu[1] * gu[1];
    const Real u_psi = gu[0] * gpsi[0] + gu[1] * gpsi[1];
    const Real v_phi = gv[0] * gphi[0] + gv[1] * gphi[1];
    Real acc(0);
    for (const auto& q : rule) {
      Real vq(0), phiq(0);
      for (int k = 0; k < 3; ++k) {
        vq += Real(q.bary[k]) * v[tri[k]];
        phiq += Real(q.bary[k]) * phi[tri[k]];
      }
      const Real gamma = (Real(1) - kappa) * vq * vq + kappa;
      const Real flux = exp(-flux_exp * log_limiter(gamma * g, p.alpha(), p.beta()));
      acc += Real(q.w) * (gamma * flux * u_psi - Real(2) * delta * (Real(1) - vq) * phiq +
                          (Real(1) - kappa) * g * flux * vq * phiq);
    }
    total += Real(geo.area) * (acc + Real(2) * rho * v_phi);
  }
  return total;
}

EnergyBreakdown energy_exact(const ScalarField& u, const ScalarField& v, const Mesh& mesh,
                             const ModelParams& p);

double directional_derivative(const ScalarField& u, const ScalarField& v, const ScalarField& psi,
                              const ScalarField& phi, const Mesh& mesh, const ModelParams& p);

/// Per-element data shared by the assembly routines.
struct ElementState {
  Vec2 grad_u;
  Vec2 grad_v;
  double grad_u_sq = 0.0;
  double v_sq_centroid = 0.0;  // value of the interpolant of v^2 at the centroid
  double log_d = 0.0;          // log(1 + beta^alpha |T|^{2 alpha})
};

ElementState element_state(const Mesh& mesh, int t, std::span<const double> u,
                           std::span<const double> v, const ModelParams& p);

}  // namespace limitfrac
