#pragma once

#include "deto/observer/observer.hpp"
#include "deto/plant/linear_decay.hpp"
#include "deto/plant/robot_arm.hpp"

namespace deto {

/// Luenberger observer for the robot arm:
/// dxhat = A xhat + B u + G * 3.3 sin(xhat_3) + L (ybar - C xhat), z = xhat.
class RobotLuenbergerObserver final : public ObserverModel {
public:
  RobotLuenbergerObserver();

  int nz() const override { return 4; }
  void flow(const Eigen::Ref<const VectorXd>& z, const Eigen::Ref<const VectorXd>& u,
            const Eigen::Ref<const VectorXd>& ybar, const Eigen::Ref<const VectorXd>& yhat,
            Eigen::Ref<VectorXd> dz) const override;
  void estimate(const Eigen::Ref<const VectorXd>& z, Eigen::Ref<VectorXd> xhat) const override {
    xhat = z;
  }
  void output_estimate(const Eigen::Ref<const VectorXd>& z,
                       Eigen::Ref<VectorXd> yhat) const override {
    yhat.noalias() = params_.C * z;
  }

  /// The stabilizing output-injection gain (4x2).
  static Eigen::Matrix<double, 4, 2> gain();
  const RobotArmParams& plant_params() const { return params_; }

private:
  RobotArmParams params_;
  Eigen::Matrix<double, 4, 2> L_;
};

/// Identity-gain observer for the settling plant (z = xhat, psi = identity).
class LinearDecayObserver final : public ObserverModel {
public:
  explicit LinearDecayObserver(const LinearDecayPlant& plant)
      : rate_(plant.rate()), x_inf_(plant.x_inf()) {}

  int nz() const override { return 2; }
  void flow(const Eigen::Ref<const VectorXd>& z, const Eigen::Ref<const VectorXd>&,
            const Eigen::Ref<const VectorXd>& ybar, const Eigen::Ref<const VectorXd>& yhat,
            Eigen::Ref<VectorXd> dz) const override {
    dz = -rate_ * (z - x_inf_) + (ybar - yhat);
  }
  void estimate(const Eigen::Ref<const VectorXd>& z, Eigen::Ref<VectorXd> xhat) const override {
    xhat = z;
  }
  void output_estimate(const Eigen::Ref<const VectorXd>& z,
                       Eigen::Ref<VectorXd> yhat) const override {
    yhat = z;
  }

private:
  double rate_;
  Eigen::Vector2d x_inf_;
};

}  // namespace deto
