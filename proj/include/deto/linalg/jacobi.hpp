#pragma once

#include <Eigen/Dense>

namespace deto::linalg {

/// Eigenvalues of a real symmetric matrix by the cyclic Jacobi method.
///
/// Sweeps all off-diagonal (p,q) pairs with classic 2x2 rotations until the
/// off-diagonal Frobenius norm drops below `off_tol`, capped at `max_sweeps`.
/// Returns the eigenvalues sorted ascending. Intended for the small dense
/// matrices used by the certificate checks (2x2..8x8), where it is exact to
/// near machine precision.
Eigen::VectorXd jacobi_eigenvalues(const Eigen::MatrixXd& sym, double off_tol = 1e-12,
                                   int max_sweeps = 50);

/// Largest / smallest eigenvalue helpers (same solver).
double jacobi_max_eigenvalue(const Eigen::MatrixXd& sym);
double jacobi_min_eigenvalue(const Eigen::MatrixXd& sym);

/// Spectral norm of a symmetric matrix: max |eigenvalue|.
double jacobi_spectral_norm(const Eigen::MatrixXd& sym);

}  // namespace deto::linalg
