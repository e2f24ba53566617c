#pragma once

#include <Eigen/Dense>

#include "deto/kinf.hpp"

namespace deto {

/// Quadratic ISS certificate for an observer: V(x,z) = (x-z)' P (x-z) with
/// P > 0 and a vertex LMI margin of at least Q, split into a linear decay on
/// V and quadratic gains on the disturbance and the per-node output errors.
struct IssCertificate {
  Eigen::MatrixXd P;
  Eigen::MatrixXd Q;
  double c_v = 0.2;
  double c_1 = 0.2;
  double c_2 = 0.2;
};

/// Split of the certificate into the gains the triggering analysis consumes.
struct IssGains {
  KinfFn a;        // linear decay, coefficient (lambda_min(Q)-c_v-c_1-c_2)/lambda_max(P)
  KinfFn theta;    // quadratic disturbance gain, ||P||^2 / c_v
  KinfFn gamma_1;  // quadratic node-1 gain, ||P L_1||^2 / c_1
  KinfFn gamma_2;  // quadratic node-2 gain, ||P L_2||^2 / c_2
};

/// V(x,z) = (x - z)' P (x - z).
double eval_V(const Eigen::Ref<const Eigen::VectorXd>& x,
              const Eigen::Ref<const Eigen::VectorXd>& z, const Eigen::MatrixXd& P);

/// Certificate fixture for the robot-arm observer. P was precomputed offline
/// by a semidefinite-programming solver on the two vertex inequalities with
/// Q = I and the shipped gain L (margin ~0.99, lambda_max(P) = 7); the repo
/// verifies it at runtime (verify_lmi) rather than re-solving.
IssCertificate robot_arm_certificate();

/// Derived gains from a certificate and the observer gain columns.
/// Throws InvalidSplit when lambda_min(Q) - c_v - c_1 - c_2 <= 0.
IssGains iss_gains(const IssCertificate& cert, const Eigen::MatrixXd& L);

}  // namespace deto
