#pragma once

#include <Eigen/Dense>
#include <vector>

namespace deto {

struct LmiReport {
  bool feasible = false;
  double min_eigenvalue_P = 0.0;
  /// lambda_max of the symmetrized M_i = PA - WC + PG_i + G_i'P + A'P - C'W' + Q,
  /// one entry per vertex; feasibility needs every entry <= tol.
  std::vector<double> worst_eigenvalue;
};

/// Checks the vertex Lyapunov inequalities M_i <= -Q as lambda_max(M_i + Q) <= tol
/// together with P > 0, using the cyclic Jacobi eigensolver. W is the
/// output-injection product P*L. Throws BadInput when P is asymmetric beyond 1e-9.
LmiReport verify_lmi(const Eigen::MatrixXd& A, const Eigen::MatrixXd& C,
                     const Eigen::MatrixXd& P, const Eigen::MatrixXd& W,
                     const Eigen::MatrixXd& Q, const std::vector<Eigen::MatrixXd>& vertices,
                     double tol);

}  // namespace deto
