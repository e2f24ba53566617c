#include "deto/plant/robot_arm.hpp"

#include <cmath>

namespace deto {

void PlantModel::error_flow(const Eigen::Ref<const VectorXd>& x,
                            const Eigen::Ref<const VectorXd>& u,
                            const Eigen::Ref<const VectorXd>& v, int node,
                            Eigen::Ref<VectorXd> g) const {
  VectorXd dx(nx());
  flow(x, u, v, dx);
  MatrixXd jac(ny(), nx());
  output_jacobian(x, jac);
  int off = 0;
  for (int i = 0; i < node; ++i) off += node_widths()[i];
  g.noalias() = -jac.middleRows(off, node_widths()[node]) * dx;
}

RobotArmParams RobotArmParams::standard() {
  RobotArmParams p;
  p.A << 0, 1, 0, 0,
      -48.6, -1.25, 48.6, 0,
      0, 0, 0, 1,
      19.5, 0, -19.5, 0;
  p.B << 0, 21.6, 0, 0;
  p.G << 0, 0, 0, -1;
  p.H << 0, 0, 1, 0;
  p.C << 1, 0, 0, 0,
      0, 1, 0, 0;
  p.nonlinearity_gain = 3.3;
  return p;
}

void RobotArmPlant::flow(const Eigen::Ref<const VectorXd>& x, const Eigen::Ref<const VectorXd>& u,
                         const Eigen::Ref<const VectorXd>& v, Eigen::Ref<VectorXd> dx) const {
  // Accumulation order keeps the u = v = 0 path bit-identical to the driven one.
  dx.noalias() = params_.A * x;
  dx += params_.G * (params_.nonlinearity_gain * std::sin(x(2)));
  dx += params_.B * u(0);
  dx += v;
}

void RobotArmPlant::output(const Eigen::Ref<const VectorXd>& x, Eigen::Ref<VectorXd> y) const {
  y.noalias() = params_.C * x;
}

void RobotArmPlant::output_jacobian(const Eigen::Ref<const VectorXd>&,
                                    Eigen::Ref<MatrixXd> jac) const {
  jac = params_.C;
}

void RobotSignals::u(double t, Eigen::Ref<VectorXd> out) const {
  out(0) = enable_u_ ? std::sin(t) : 0.0;
}

void RobotSignals::udot(double t, Eigen::Ref<VectorXd> out) const {
  out(0) = enable_u_ ? std::cos(t) : 0.0;
}

void RobotSignals::v(double t, Eigen::Ref<VectorXd> out) const {
  if (enable_v_) {
    const double s = 0.02 * std::sin(0.4 * t);
    out << 0.0, s, 0.0, s;
  } else {
    out.setZero();
  }
}

void RobotSignals::m(double t, Eigen::Ref<VectorXd> out) const {
  out(0) = 0.0;
  out(1) = enable_m_ ? 0.01 * std::sin(0.3 * t) : 0.0;
}

void RobotSignals::mdot(double t, Eigen::Ref<VectorXd> out) const {
  out(0) = 0.0;
  out(1) = enable_m_ ? 0.01 * 0.3 * std::cos(0.3 * t) : 0.0;
}

double RobotSignals::sup_v_norm() const {
  return enable_v_ ? 0.02 * std::sqrt(2.0) : 0.0;
}

VectorXd RobotSignals::noise_bounds() const {
  VectorXd b(2);
  b << 0.0, (enable_m_ ? 0.01 : 0.0);
  return b;
}

}  // namespace deto
