#pragma once

#include "deto/plant/plant.hpp"

namespace deto {

/// Flexible-joint robot arm: dx = A x + B u + G * g_nl * sin(x_3) + v,
/// y = C x, two single-output sensor nodes (y_1 = x_1, y_2 = x_2).
struct RobotArmParams {
  Eigen::Matrix4d A;
  Eigen::Vector4d B;
  Eigen::Vector4d G;
  Eigen::RowVector4d H;   // picks x_3 for the nonlinearity
  Eigen::Matrix<double, 2, 4> C;
  double nonlinearity_gain = 3.3;

  static RobotArmParams standard();
};

class RobotArmPlant final : public PlantModel {
public:
  RobotArmPlant() : params_(RobotArmParams::standard()), node_widths_{1, 1} {}

  int nx() const override { return 4; }
  int nu() const override { return 1; }
  int nv() const override { return 4; }
  const std::vector<int>& node_widths() const override { return node_widths_; }

  void flow(const Eigen::Ref<const VectorXd>& x, const Eigen::Ref<const VectorXd>& u,
            const Eigen::Ref<const VectorXd>& v, Eigen::Ref<VectorXd> dx) const override;
  void output(const Eigen::Ref<const VectorXd>& x, Eigen::Ref<VectorXd> y) const override;
  void output_jacobian(const Eigen::Ref<const VectorXd>& x,
                       Eigen::Ref<MatrixXd> jac) const override;

  const RobotArmParams& params() const { return params_; }

private:
  RobotArmParams params_;
  std::vector<int> node_widths_;
};

/// The robot scenario's exogenous signals: u(t) = sin t, a two-component
/// sinusoidal state disturbance and a sensor-2 measurement noise, each
/// switchable for the disturbance-free columns of the parameter study.
class RobotSignals final : public ExogenousSignals {
public:
  RobotSignals(bool enable_u, bool enable_v, bool enable_m)
      : enable_u_(enable_u), enable_v_(enable_v), enable_m_(enable_m) {}

  void u(double t, Eigen::Ref<VectorXd> out) const override;
  void udot(double t, Eigen::Ref<VectorXd> out) const override;
  void v(double t, Eigen::Ref<VectorXd> out) const override;
  void m(double t, Eigen::Ref<VectorXd> out) const override;
  void mdot(double t, Eigen::Ref<VectorXd> out) const override;
  double sup_v_norm() const override;
  VectorXd noise_bounds() const override;

private:
  bool enable_u_, enable_v_, enable_m_;
};

}  // namespace deto
