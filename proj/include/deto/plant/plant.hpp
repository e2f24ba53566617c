#pragma once

#include <Eigen/Dense>
#include <vector>

namespace deto {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Plant abstraction: evaluator triple (f_p, h, dh/dx) plus dimensions and
/// the sensor-node partition of the output. f_p must be locally Lipschitz in
/// x and h continuously differentiable (contract, not checked).
class PlantModel {
public:
  virtual ~PlantModel() = default;

  virtual int nx() const = 0;
  virtual int nu() const = 0;
  virtual int nv() const = 0;
  virtual const std::vector<int>& node_widths() const = 0;
  int ny() const {
    int s = 0;
    for (int w : node_widths()) s += w;
    return s;
  }
  int num_nodes() const { return static_cast<int>(node_widths().size()); }

  /// dx = f_p(x, u, v)
  virtual void flow(const Eigen::Ref<const VectorXd>& x, const Eigen::Ref<const VectorXd>& u,
                    const Eigen::Ref<const VectorXd>& v, Eigen::Ref<VectorXd> dx) const = 0;

  /// y = h(x)
  virtual void output(const Eigen::Ref<const VectorXd>& x, Eigen::Ref<VectorXd> y) const = 0;

  /// J = dh/dx(x), ny-by-nx
  virtual void output_jacobian(const Eigen::Ref<const VectorXd>& x,
                               Eigen::Ref<MatrixXd> jac) const = 0;

  /// Per-node error flow g_i(x,u,v) = -(dh_i/dx) f_p(x,u,v), the drift of the
  /// network-induced error between transmissions.
  void error_flow(const Eigen::Ref<const VectorXd>& x, const Eigen::Ref<const VectorXd>& u,
                  const Eigen::Ref<const VectorXd>& v, int node, Eigen::Ref<VectorXd> g) const;
};

/// Exogenous input bundle for a scenario: measured input u, disturbance v and
/// measurement noise m, with the analytic derivatives the simulation needs
/// (mdot drives the measured-error flow, udot the input-channel error).
class ExogenousSignals {
public:
  virtual ~ExogenousSignals() = default;

  virtual void u(double t, Eigen::Ref<VectorXd> out) const = 0;
  virtual void udot(double t, Eigen::Ref<VectorXd> out) const = 0;
  virtual void v(double t, Eigen::Ref<VectorXd> out) const = 0;
  virtual void m(double t, Eigen::Ref<VectorXd> out) const = 0;
  virtual void mdot(double t, Eigen::Ref<VectorXd> out) const = 0;

  /// Closed-form sup of |v(s)| over s >= 0 (avoids sampling bias in bounds).
  virtual double sup_v_norm() const = 0;
  /// Per-node amplitude bounds on |m_i(t)|.
  virtual VectorXd noise_bounds() const = 0;
};

}  // namespace deto
