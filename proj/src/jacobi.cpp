#include "deto/linalg/jacobi.hpp"

#include <algorithm>
#include <cmath>

#include "deto/errors.hpp"

namespace deto::linalg {

namespace {

double off_diagonal_norm(const Eigen::MatrixXd& a) {
  double s = 0.0;
  for (int p = 0; p < a.rows(); ++p)
    for (int q = p + 1; q < a.cols(); ++q) s += a(p, q) * a(p, q);
  return std::sqrt(2.0 * s);
}

}  // namespace

Eigen::VectorXd jacobi_eigenvalues(const Eigen::MatrixXd& sym, double off_tol, int max_sweeps) {
  if (sym.rows() != sym.cols()) throw BadInput("jacobi_eigenvalues: matrix not square");
  const int n = static_cast<int>(sym.rows());
  Eigen::MatrixXd a = 0.5 * (sym + sym.transpose());

  for (int sweep = 0; sweep < max_sweeps && off_diagonal_norm(a) >= off_tol; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle from the stable tan(theta) formula.
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }

  Eigen::VectorXd ev = a.diagonal();
  std::sort(ev.data(), ev.data() + n);
  return ev;
}

double jacobi_max_eigenvalue(const Eigen::MatrixXd& sym) {
  const Eigen::VectorXd ev = jacobi_eigenvalues(sym);
  return ev(ev.size() - 1);
}

double jacobi_min_eigenvalue(const Eigen::MatrixXd& sym) {
  return jacobi_eigenvalues(sym)(0);
}

double jacobi_spectral_norm(const Eigen::MatrixXd& sym) {
  const Eigen::VectorXd ev = jacobi_eigenvalues(sym);
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

}  // namespace deto::linalg
