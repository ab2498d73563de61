#include "limitfrac/solver.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace limitfrac {

void SolverConfig::validate() const {
  if (!(picard_tol > 0.0)) throw ConfigError("picard_tol must be > 0");
  if (!(linear_tol > 0.0)) throw ConfigError("linear_tol must be > 0");
  if (!(xi_vn > 0.0)) throw ConfigError("xi_vn must be > 0");
  if (!(xi_v > 0.0)) throw ConfigError("xi_v must be > 0");
  if (picard_max < 1) throw ConfigError("picard_max must be >= 1");
  if (linear_max < 1) throw ConfigError("linear_max must be >= 1");
  if (altmin_max < 1) throw ConfigError("altmin_max must be >= 1");
}

Eigen::VectorXd spd_solve(const Eigen::SparseMatrix<double>& a, const Eigen::VectorXd& b,
                          double tol, int max_iter, const Eigen::VectorXd* guess) {
  if (a.rows() != a.cols() || a.rows() != b.size()) {
    throw std::invalid_argument("spd_solve: dimension mismatch");
  }
  const double bnorm = b.norm();
  if (bnorm == 0.0) return Eigen::VectorXd::Zero(b.size());
  if (guess != nullptr && guess->size() == b.size() && (a * *guess - b).norm() <= tol * bnorm) {
    return *guess;
  }
  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                           Eigen::IncompleteCholesky<double>>
      cg;
  cg.setTolerance(tol);
  cg.setMaxIterations(max_iter);
  cg.compute(a);
  if (cg.info() != Eigen::Success) throw SolverError("preconditioner setup failed", bnorm, 0);
  Eigen::VectorXd x = (guess != nullptr && guess->size() == b.size())
                          ? Eigen::VectorXd(cg.solveWithGuess(b, *guess))
                          : Eigen::VectorXd(cg.solve(b));
  const double rel = (a * x - b).norm() / bnorm;
  if (!(rel <= tol)) {
    throw SolverError("CG stopped at relative residual " + std::to_string(rel), rel,
                      static_cast<int>(cg.iterations()));
  }
  return x;
}

namespace {

/// Maps mesh vertices to unknown indices; constrained vertices map to -1.
struct DofMap {
  std::vector<int> index;
  int n_free = 0;

  DofMap(std::size_t n_vertices, const std::vector<char>& constrained) : index(n_vertices, -1) {
    for (std::size_t i = 0; i < n_vertices; ++i) {
      if (!constrained[i]) index[i] = n_free++;
    }
  }
};

double sup_norm(const std::vector<double>& r) {
  double m = 0.0;
  for (double x : r) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

ScalarField solve_u(const Mesh& mesh, const ScalarField& v, const ScalarField& u_init,
                    const ConstraintSet& dirichlet, const ModelParams& p, const SolverConfig& cfg,
                    USolveInfo* info) {
  v.require_bound(mesh);
  u_init.require_bound(mesh);
  if (dirichlet.dirichlet.empty()) {
    throw std::invalid_argument("solve_u needs at least one Dirichlet node");
  }
  ConstraintSet bc;
  bc.dirichlet = dirichlet.dirichlet;
  ScalarField u = apply_constraints(u_init, bc);

  std::vector<char> fixed(mesh.num_vertices(), 0);
  for (const auto& [k, value] : bc.dirichlet) fixed.at(k) = 1;
  const DofMap dofs(mesh.num_vertices(), fixed);
  const auto& geo = mesh.element_geometry();
  const auto& tris = mesh.triangles();

  std::vector<double> r = residual_A(v, u, mesh, p, bc);
  double res = sup_norm(r);
  int it = 0;
  std::vector<Eigen::Triplet<double>> trip;
  while (res > cfg.picard_tol) {
    if (it == cfg.picard_max) {
      throw SolverError("Picard iteration did not converge (residual " + std::to_string(res) + ")",
                        res, it);
    }
    ++it;
    trip.clear();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dofs.n_free);
    for (std::size_t t = 0; t < tris.size(); ++t) {
      const auto s = element_state(mesh, static_cast<int>(t), u.values(), v.values(), p);
      const double c = coefficient(s.grad_u, s.v_sq_centroid, p) * geo[t].area;
      for (int a = 0; a < 3; ++a) {
        const int ia = dofs.index[tris[t][a]];
        if (ia < 0) continue;
        for (int b = 0; b < 3; ++b) {
          const double k = c * dot(geo[t].grad[a], geo[t].grad[b]);
          const int ib = dofs.index[tris[t][b]];
          if (ib < 0) {
            rhs[ia] -= k * u[tris[t][b]];
          } else {
            trip.emplace_back(ia, ib, k);
          }
        }
      }
    }
    Eigen::SparseMatrix<double> a(dofs.n_free, dofs.n_free);
    a.setFromTriplets(trip.begin(), trip.end());
    Eigen::VectorXd guess(dofs.n_free);
    for (std::size_t i = 0; i < dofs.index.size(); ++i) {
      if (dofs.index[i] >= 0) guess[dofs.index[i]] = u[i];
    }
    const Eigen::VectorXd x = spd_solve(a, rhs, cfg.linear_tol, cfg.linear_max, &guess);
    for (std::size_t i = 0; i < dofs.index.size(); ++i) {
      if (dofs.index[i] >= 0) u[i] = x[dofs.index[i]];
    }
    r = residual_A(v, u, mesh, p, bc);
    res = sup_norm(r);
  }
  if (info != nullptr) *info = {it, res};
  return u;
}

ScalarField solve_v(const Mesh& mesh, const ScalarField& u, const ScalarField& v_init,
                    const ConstraintSet& crack, const ModelParams& p, const SolverConfig& cfg) {
  u.require_bound(mesh);
  v_init.require_bound(mesh);
  std::vector<char> pinned(mesh.num_vertices(), 0);
  for (int k : crack.crack) pinned.at(k) = 1;
  const DofMap dofs(mesh.num_vertices(), pinned);
  const auto& geo = mesh.element_geometry();
  const auto& tris = mesh.triangles();
  const auto& w = mesh.lumped_weights();

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(tris.size() * 9 + mesh.num_vertices());
  std::vector<double> diag(mesh.num_vertices(), 0.0);
  const double two_rho = 2.0 * p.rho();
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const auto s = element_state(mesh, static_cast<int>(t), u.values(), v_init.values(), p);
    const double flux = std::exp(-(1.0 / p.alpha() + 1.0) * s.log_d);
    const double reaction = (1.0 - p.kappa()) * s.grad_u_sq * flux * geo[t].area / 3.0;
    for (int a = 0; a < 3; ++a) {
      diag[tris[t][a]] += reaction;
      const int ia = dofs.index[tris[t][a]];
      if (ia < 0) continue;
      for (int b = 0; b < 3; ++b) {
        const int ib = dofs.index[tris[t][b]];
        if (ib >= 0) trip.emplace_back(ia, ib, two_rho * geo[t].area * dot(geo[t].grad[a], geo[t].grad[b]));
      }
    }
  }
  Eigen::VectorXd rhs(dofs.n_free);
  Eigen::VectorXd guess(dofs.n_free);
  for (std::size_t i = 0; i < dofs.index.size(); ++i) {
    const int ii = dofs.index[i];
    if (ii < 0) continue;
    const double two_delta_w = 2.0 * p.delta() * w[i];
    trip.emplace_back(ii, ii, diag[i] + two_delta_w);
    rhs[ii] = two_delta_w;
    guess[ii] = v_init[i];
  }
  Eigen::SparseMatrix<double> a(dofs.n_free, dofs.n_free);
  a.setFromTriplets(trip.begin(), trip.end());
  const Eigen::VectorXd x = spd_solve(a, rhs, cfg.linear_tol, cfg.linear_max, &guess);

  std::vector<double> out(mesh.num_vertices(), 0.0);
  for (std::size_t i = 0; i < dofs.index.size(); ++i) {
    const int ii = dofs.index[i];
    if (ii < 0) continue;
    double value = x[ii];
    if (value < cfg.xi_v) value = 0.0;
    if (value > 1.0) value = 1.0;
    out[i] = value;
  }
  return ScalarField(mesh, std::move(out));
}

AltMinResult alternate_minimize(const Mesh& mesh, const ScalarField& u0, const ScalarField& v0,
                                const ConstraintSet& dirichlet, const ConstraintSet& crack,
                                const ModelParams& p, const SolverConfig& cfg) {
  AltMinResult res;
  res.u = u0;
  ConstraintSet pin;
  pin.crack = crack.crack;
  res.v = apply_constraints(v0, pin);
  double dv = 0.0;
  while (res.iterations < cfg.altmin_max) {
    ++res.iterations;
    res.u = solve_u(mesh, res.v, res.u, dirichlet, p, cfg);
    ScalarField v_next = solve_v(mesh, res.u, res.v, crack, p, cfg);
    dv = sup_distance(v_next, res.v);
    res.v = std::move(v_next);
    res.energy_trace.push_back(energy(res.u, res.v, mesh, p).total);
    if (dv < cfg.xi_vn) {
      res.converged = true;
      return res;
    }
  }
  throw AltMinCapError(std::move(res), dv);
}

}  // namespace limitfrac
