#include "deto/etm/etm.hpp"

#include <algorithm>

#include "deto/errors.hpp"

namespace deto {

void NodeEtmParams::validate() const {
  if (!(sigma >= 0.0)) throw ParameterViolation("node parameter sigma must be >= 0");
  if (!(c >= 0.0)) throw ParameterViolation("node parameter c must be >= 0");
  if (!(b >= 0.0 && b <= 1.0)) throw ParameterViolation("node parameter b must lie in [0, 1]");
  if (!(epsilon > 0.0)) throw ParameterViolation("node parameter epsilon must be > 0");
}

double eta_flow(double eta, double e_norm, const NodeEtmParams& p) {
  return -p.alpha(eta) + p.c * p.gamma(e_norm);
}

double trigger_margin(double eta, double e_norm, const NodeEtmParams& p) {
  return p.gamma(e_norm) - p.sigma * p.alpha(eta) - p.epsilon;
}

double noise_floor(const NodeEtmParams& p, double m_bound) {
  return p.gamma(2.0 * m_bound);
}

double tau_min(const NodeEtmParams& p, double E) {
  if (!(E > 0.0)) throw BadInput("tau_min: drift bound E must be positive");
  return p.gamma.inverse(p.epsilon) / E;
}

double average_dwell_tau(const std::vector<double>& tau_per_channel) {
  if (tau_per_channel.empty()) throw BadInput("average_dwell_tau: no channels");
  const double tau_min_all = *std::min_element(tau_per_channel.begin(), tau_per_channel.end());
  return tau_min_all / static_cast<double>(tau_per_channel.size());
}

}  // namespace deto
