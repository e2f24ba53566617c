#include "deto/observer/luenberger.hpp"

#include <cmath>

namespace deto {

Eigen::Matrix<double, 4, 2> RobotLuenbergerObserver::gain() {
  Eigen::Matrix<double, 4, 2> L;
  L << 0.58, -42.96,
      -4.67, 2.83,
      3.16, 49.25,
      16.34, 88.46;
  return L;
}

RobotLuenbergerObserver::RobotLuenbergerObserver()
    : params_(RobotArmParams::standard()), L_(gain()) {}

void RobotLuenbergerObserver::flow(const Eigen::Ref<const VectorXd>& z,
                                   const Eigen::Ref<const VectorXd>& u,
                                   const Eigen::Ref<const VectorXd>& ybar,
                                   const Eigen::Ref<const VectorXd>& yhat,
                                   Eigen::Ref<VectorXd> dz) const {
  dz.noalias() = params_.A * z;
  dz += params_.G * (params_.nonlinearity_gain * std::sin(z(2)));
  dz += params_.B * u(0);
  dz.noalias() += L_ * (ybar - yhat);
}

}  // namespace deto
