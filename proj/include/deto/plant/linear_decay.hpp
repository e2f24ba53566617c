#pragma once

#include "deto/plant/plant.hpp"

namespace deto {

/// Two-state exponential-settling plant: dx = -rate * (x - x_inf), y = x,
/// one sensor node per state. Outputs settle to the constants x_inf, which
/// exercises the transmission-stop condition; with x(0) = x_inf the outputs
/// are constant from the start and no transmission ever fires.
class LinearDecayPlant final : public PlantModel {
public:
  LinearDecayPlant(double rate, Eigen::Vector2d x_inf)
      : rate_(rate), x_inf_(x_inf), node_widths_{1, 1} {}
  LinearDecayPlant() : LinearDecayPlant(0.5, Eigen::Vector2d(1.0, -2.0)) {}

  int nx() const override { return 2; }
  int nu() const override { return 1; }  // ignored by the dynamics
  int nv() const override { return 2; }
  const std::vector<int>& node_widths() const override { return node_widths_; }

  void flow(const Eigen::Ref<const VectorXd>& x, const Eigen::Ref<const VectorXd>&,
            const Eigen::Ref<const VectorXd>& v, Eigen::Ref<VectorXd> dx) const override {
    dx = -rate_ * (x - x_inf_) + v;
  }
  void output(const Eigen::Ref<const VectorXd>& x, Eigen::Ref<VectorXd> y) const override {
    y = x;
  }
  void output_jacobian(const Eigen::Ref<const VectorXd>&, Eigen::Ref<MatrixXd> jac) const override {
    jac.setIdentity();
  }

  double rate() const { return rate_; }
  const Eigen::Vector2d& x_inf() const { return x_inf_; }

private:
  double rate_;
  Eigen::Vector2d x_inf_;
  std::vector<int> node_widths_;
};

/// Quiet signal bundle for the settling scenarios (u, v, m all zero).
class ZeroSignals final : public ExogenousSignals {
public:
  explicit ZeroSignals(int ny) : ny_(ny) {}
  void u(double, Eigen::Ref<VectorXd> out) const override { out.setZero(); }
  void udot(double, Eigen::Ref<VectorXd> out) const override { out.setZero(); }
  void v(double, Eigen::Ref<VectorXd> out) const override { out.setZero(); }
  void m(double, Eigen::Ref<VectorXd> out) const override { out.setZero(); }
  void mdot(double, Eigen::Ref<VectorXd> out) const override { out.setZero(); }
  double sup_v_norm() const override { return 0.0; }
  VectorXd noise_bounds() const override { return VectorXd::Zero(ny_); }

private:
  int ny_;
};

}  // namespace deto
