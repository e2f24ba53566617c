#include "deto/observer/lmi.hpp"

#include "deto/errors.hpp"
#include "deto/linalg/jacobi.hpp"

namespace deto {

LmiReport verify_lmi(const Eigen::MatrixXd& A, const Eigen::MatrixXd& C,
                     const Eigen::MatrixXd& P, const Eigen::MatrixXd& W,
                     const Eigen::MatrixXd& Q, const std::vector<Eigen::MatrixXd>& vertices,
                     double tol) {
  if ((P - P.transpose()).cwiseAbs().maxCoeff() > 1e-9)
    throw BadInput("verify_lmi: P is not symmetric");

  LmiReport report;
  report.min_eigenvalue_P = linalg::jacobi_min_eigenvalue(0.5 * (P + P.transpose()));
  report.feasible = report.min_eigenvalue_P > 0.0;

  for (const Eigen::MatrixXd& G : vertices) {
    Eigen::MatrixXd M = P * A - W * C + P * G + G.transpose() * P + A.transpose() * P -
                        C.transpose() * W.transpose() + Q;
    M = 0.5 * (M + M.transpose());
    const double worst = linalg::jacobi_max_eigenvalue(M);
    report.worst_eigenvalue.push_back(worst);
    if (!(worst <= tol)) report.feasible = false;
  }
  return report;
}

}  // namespace deto
