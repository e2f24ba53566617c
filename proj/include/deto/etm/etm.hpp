#pragma once

#include <Eigen/Dense>
#include <vector>

#include "deto/kinf.hpp"

namespace deto {

/// Per-node design parameters of the dynamic event-triggering mechanism.
/// The node transmits when gamma(|e|) >= sigma * alpha(eta) + epsilon; eta
/// runs the local filter deta = -alpha(eta) + c * gamma(|e|) and is scaled
/// by b at the node's own transmissions.
struct NodeEtmParams {
  double sigma = 0.0;    // >= 0
  double c = 0.0;        // >= 0
  double b = 1.0;        // in [0, 1]
  double epsilon = 1.0;  // > 0, excludes Zeno
  KinfFn alpha = KinfFn::linear(1.0);
  KinfFn gamma = KinfFn::quadratic(1.0);

  void validate() const;
};

/// Runtime state owned by one node: the filter value, the last transmitted
/// output and the network-induced error it implies.
struct NodeEtmState {
  double eta = 0.0;
  Eigen::VectorXd ybar;
  Eigen::VectorXd e;
};

/// deta = -alpha(eta) + c * gamma(|e|).
double eta_flow(double eta, double e_norm, const NodeEtmParams& p);

/// gamma(|e|) - sigma * alpha(eta) - epsilon; the node transmits iff >= 0.
double trigger_margin(double eta, double e_norm, const NodeEtmParams& p);

/// Minimum admissible epsilon in the presence of measurement noise bounded
/// by m_bound: configurations with noise enabled must pick epsilon strictly
/// above gamma(2 * m_bound).
double noise_floor(const NodeEtmParams& p, double m_bound);

/// Guaranteed minimum inter-event time gamma^{-1}(epsilon) / E, where E
/// bounds the error drift |dh_i/dx * f_p| along the trajectory.
double tau_min(const NodeEtmParams& p, double E);

/// Average dwell-time constant min_i tau_i / N for a set of channels.
double average_dwell_tau(const std::vector<double>& tau_per_channel);

}  // namespace deto
