#include "deto/observer/certificate.hpp"

#include "deto/errors.hpp"
#include "deto/linalg/jacobi.hpp"

namespace deto {

double eval_V(const Eigen::Ref<const Eigen::VectorXd>& x,
              const Eigen::Ref<const Eigen::VectorXd>& z, const Eigen::MatrixXd& P) {
  const Eigen::VectorXd xi = x - z;
  return xi.dot(P * xi);
}

IssCertificate robot_arm_certificate() {
  IssCertificate cert;
  cert.P.resize(4, 4);
  cert.P << 4.44309807939, -0.0685928752549, 0.442554528786, -0.0111153765835,
      -0.0685928752549, 4.0355590266, -0.633804913221, 0.144041808962,
      0.442554528786, -0.633804913221, 6.53946835692, -1.20823344536,
      -0.0111153765835, 0.144041808962, -1.20823344536, 0.654400304359;
  cert.Q = Eigen::MatrixXd::Identity(4, 4);
  cert.c_v = 0.2;
  cert.c_1 = 0.2;
  cert.c_2 = 0.2;
  return cert;
}

IssGains iss_gains(const IssCertificate& cert, const Eigen::MatrixXd& L) {
  const double lam_min_q = linalg::jacobi_min_eigenvalue(cert.Q);
  const double lam_max_p = linalg::jacobi_max_eigenvalue(cert.P);
  const double num = lam_min_q - cert.c_v - cert.c_1 - cert.c_2;
  if (!(num > 0.0))
    throw InvalidSplit("iss_gains: lambda_min(Q) - c_v - c_1 - c_2 must be positive, got " +
                       std::to_string(num));
  if (!(lam_max_p > 0.0)) throw InvalidSplit("iss_gains: P must be positive definite");

  const double p_norm = linalg::jacobi_spectral_norm(cert.P);
  const Eigen::MatrixXd PL = cert.P * L;

  IssGains g;
  g.a = KinfFn::linear(num / lam_max_p);
  g.theta = KinfFn::quadratic(p_norm * p_norm / cert.c_v);
  g.gamma_1 = KinfFn::quadratic(PL.col(0).squaredNorm() / cert.c_1);
  g.gamma_2 = KinfFn::quadratic(PL.col(1).squaredNorm() / cert.c_2);
  return g;
}

}  // namespace deto
