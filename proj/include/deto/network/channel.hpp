#pragma once

#include <Eigen/Dense>
#include <vector>

#include "deto/hybrid/time.hpp"

namespace deto {

/// Zero-order-hold channel: one held output block per sensor node, plus an
/// optional held input. A held value changes only at that node's own
/// transmissions; between them it is exactly constant.
class ZohChannel {
public:
  ZohChannel() = default;
  ZohChannel(std::vector<int> node_widths, int input_width);

  /// Sets the initial held outputs (default: the output sampled at t = 0, so
  /// every initial network-induced error is zero).
  void initialize(const Eigen::VectorXd& ybar0, const Eigen::VectorXd& ubar0);

  int num_nodes() const { return static_cast<int>(node_widths_.size()); }
  bool has_input() const { return ubar_.size() > 0; }

  Eigen::Ref<const Eigen::VectorXd> held_output(int node) const {
    return ybar_.segment(offsets_[node], node_widths_[node]);
  }
  const Eigen::VectorXd& held_outputs() const { return ybar_; }
  const Eigen::VectorXd& held_input() const { return ubar_; }

  void transmit_output(int node, const Eigen::Ref<const Eigen::VectorXd>& value, HybridTime when);
  void transmit_input(const Eigen::Ref<const Eigen::VectorXd>& value, HybridTime when);

  HybridTime last_transmission(int node) const { return last_tx_[node]; }
  HybridTime last_input_transmission() const { return last_tx_u_; }

private:
  std::vector<int> node_widths_;
  std::vector<int> offsets_;
  Eigen::VectorXd ybar_;
  Eigen::VectorXd ubar_;
  std::vector<HybridTime> last_tx_;
  HybridTime last_tx_u_;
};

/// Bounded additive measurement noise: per-node amplitude bounds checked by
/// sampling the signal.
struct NoiseModel {
  Eigen::VectorXd bounds;  // one amplitude per node (stacked widths of 1 assumed not required)
};

}  // namespace deto
