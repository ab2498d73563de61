#pragma once

#include <Eigen/Sparse>
#include <vector>

#include "limitfrac/error.hpp"
#include "limitfrac/fespace.hpp"
#include "limitfrac/mesh.hpp"
#include "limitfrac/model.hpp"

namespace limitfrac {

struct SolverConfig {
  double picard_tol = 1e-8;   // sup-norm of residual_A over free nodes
  int picard_max = 200;
  double linear_tol = 1e-10;  // relative residual of each SPD solve
  int linear_max = 20000;
  double xi_vn = 1e-6;        // alternating-loop stopping tolerance
  double xi_v = 1e-4;         // clamp-to-zero threshold for v
  int altmin_max = 500;
  bool accept_altmin_cap = true;  // drivers keep the last iterate instead of failing

  /// Throws ConfigError on non-positive tolerances or counts.
  void validate() const;
};

/// Preconditioned conjugate gradients. `guess`, when given, is the starting iterate.
/// Throws SolverError unless ||Ax - b|| <= tol ||b||.
Eigen::VectorXd spd_solve(const Eigen::SparseMatrix<double>& a, const Eigen::VectorXd& b,
                          double tol, int max_iter, const Eigen::VectorXd* guess = nullptr);

struct USolveInfo {
  int iterations = 0;
  double residual = 0.0;
};

/// Picard (frozen coefficient) iteration for the u-subproblem starting from `u_init`.
/// Dirichlet values of `dirichlet` are imposed; at least one node must be prescribed.
ScalarField solve_u(const Mesh& mesh, const ScalarField& v, const ScalarField& u_init,
                    const ConstraintSet& dirichlet, const ModelParams& p, const SolverConfig& cfg,
                    USolveInfo* info = nullptr);

/// One linear solve for v with the limiter denominator frozen at (u, v_init), followed by
/// clamping (v < xi_v -> 0, v > 1 -> 1). Crack nodes are pinned to zero.
ScalarField solve_v(const Mesh& mesh, const ScalarField& u, const ScalarField& v_init,
                    const ConstraintSet& crack, const ModelParams& p, const SolverConfig& cfg);

struct AltMinResult {
  ScalarField u;
  ScalarField v;
  int iterations = 0;
  bool converged = false;
  std::vector<double> energy_trace;  // total discrete energy after each (u, v) pair
};

/// Raised when altmin_max alternations pass without meeting xi_vn.
class AltMinCapError : public SolverError {
 public:
  AltMinCapError(AltMinResult last, double dv)
      : SolverError("alternating minimization hit its iteration cap", dv, last.iterations),
        last_(std::move(last)) {}
  const AltMinResult& last() const { return last_; }

 private:
  AltMinResult last_;
};

/// Alternates solve_u and solve_v until the sup-norm change of v drops below xi_vn.
AltMinResult alternate_minimize(const Mesh& mesh, const ScalarField& u0, const ScalarField& v0,
                                const ConstraintSet& dirichlet, const ConstraintSet& crack,
                                const ModelParams& p, const SolverConfig& cfg);

}  // namespace limitfrac
