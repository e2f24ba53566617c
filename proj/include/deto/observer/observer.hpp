#pragma once

#include <Eigen/Dense>

namespace deto {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Observer abstraction: dz = f_o(z, u, ybar, yhat), estimate xhat = psi(z),
/// output estimate yhat = h(psi(z)). For the shipped observers z = xhat and
/// psi is the identity; the interface carries the general shape anyway.
class ObserverModel {
public:
  virtual ~ObserverModel() = default;

  virtual int nz() const = 0;

  virtual void flow(const Eigen::Ref<const VectorXd>& z, const Eigen::Ref<const VectorXd>& u,
                    const Eigen::Ref<const VectorXd>& ybar, const Eigen::Ref<const VectorXd>& yhat,
                    Eigen::Ref<VectorXd> dz) const = 0;

  /// xhat = psi(z)
  virtual void estimate(const Eigen::Ref<const VectorXd>& z, Eigen::Ref<VectorXd> xhat) const = 0;

  /// yhat = h(psi(z))
  virtual void output_estimate(const Eigen::Ref<const VectorXd>& z,
                               Eigen::Ref<VectorXd> yhat) const = 0;
};

}  // namespace deto
