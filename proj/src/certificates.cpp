#include "deto/analysis/certificates.hpp"

#include <algorithm>
#include <cmath>

#include "deto/errors.hpp"

namespace deto {

double eval_U(const Eigen::Ref<const VectorXd>& q, const StateLayout& lay,
              const ObserverModel& observer, const Eigen::MatrixXd& P,
              const std::vector<double>& d) {
  VectorXd xhat(lay.nx);
  observer.estimate(q.segment(lay.z_offset(), lay.nz), xhat);
  double U = eval_V(q.segment(lay.x_offset(), lay.nx), xhat, P);
  for (int i = 0; i < lay.num_nodes(); ++i) U += d[i] * q(lay.eta_offset() + i);
  return U;
}

JumpMonitor verify_jump_nonincrease(const SimTrace& trace, const ObserverModel& observer,
                                    const Eigen::MatrixXd& P, const std::vector<double>& d) {
  JumpMonitor mon;
  const StateLayout& lay = trace.layout;
  for (size_t k = 0; k + 1 < trace.samples.size(); ++k) {
    const TraceSample& pre = trace.samples[k];
    const TraceSample& post = trace.samples[k + 1];
    if (post.ht.j != pre.ht.j + 1) continue;  // not a jump pair
    const double u_pre = eval_U(pre.q, lay, observer, P, d);
    const double u_post = eval_U(post.q, lay, observer, P, d);
    const double du = u_post - u_pre;
    mon.worst_increase = std::max(mon.worst_increase, du);
    mon.worst_relative = std::max(mon.worst_relative, du / (1.0 + u_pre));
    if (du > 1e-9 * (1.0 + u_pre)) mon.pass = false;
    ++mon.jumps_checked;
  }
  return mon;
}

EnvelopeReport verify_theorem3_envelope(const SimTrace& trace, const ObserverModel& observer,
                                        const Eigen::MatrixXd& P, const Theorem3Design& design,
                                        const KinfFn& theta, double sup_v_norm) {
  if (design.nodes.size() != static_cast<size_t>(trace.layout.num_nodes()))
    throw BadInput("verify_theorem3_envelope: design does not match the trace's node count");
  std::vector<double> d;
  for (const auto& n : design.nodes) d.push_back(n.d);

  EnvelopeReport rep;
  const StateLayout& lay = trace.layout;
  rep.U0 = eval_U(trace.samples.front().q, lay, observer, P, d);
  const double offset = design.mu + theta(sup_v_norm) / design.a_U;
  for (const TraceSample& s : trace.samples) {
    const double bound = std::exp(-design.a_U * s.ht.t) * rep.U0 + offset;
    const double violation = eval_U(s.q, lay, observer, P, d) - bound;
    rep.worst_violation = std::max(rep.worst_violation, violation);
  }
  rep.pass = rep.worst_violation <= 1e-6 * rep.U0;
  return rep;
}

bool CertificateReport::all_pass() const {
  if (!jump_monitor.pass || !dwell_pass) return false;
  for (const IetCheck& c : iet_checks)
    if (!c.pass) return false;
  if (has_envelope && !envelope.pass) return false;
  return true;
}

CertificateReport check_certificates(const SimTrace& trace, const ObserverModel& observer,
                                     const PlantModel& plant, const ExogenousSignals& signals,
                                     const std::vector<NodeEtmParams>& nodes,
                                     const std::optional<NodeEtmParams>& input_etm,
                                     const Eigen::MatrixXd& P, const std::vector<double>& d) {
  CertificateReport report;
  report.jump_monitor = verify_jump_nonincrease(trace, observer, P, d);

  report.estimated_E = estimate_E(trace, plant, signals);
  std::vector<double> taus;
  for (int i = 0; i < trace.layout.num_nodes(); ++i) {
    IetCheck check;
    check.tau_guaranteed = report.estimated_E > 0.0 ? tau_min(nodes[i], report.estimated_E)
                                                    : std::numeric_limits<double>::infinity();
    const auto gaps = inter_event_times(trace, i);
    check.measured_min = gaps.empty() ? std::numeric_limits<double>::infinity()
                                      : *std::min_element(gaps.begin(), gaps.end());
    check.pass = check.measured_min >= check.tau_guaranteed - trace.dt;
    taus.push_back(check.tau_guaranteed);
    report.iet_checks.push_back(check);
  }
  if (input_etm) {
    report.estimated_E_input = estimate_E_input(trace, signals);
    IetCheck check;
    check.tau_guaranteed = report.estimated_E_input > 0.0
                               ? tau_min(*input_etm, report.estimated_E_input)
                               : std::numeric_limits<double>::infinity();
    const auto gaps = inter_event_times(trace, trace.layout.num_nodes());
    check.measured_min = gaps.empty() ? std::numeric_limits<double>::infinity()
                                      : *std::min_element(gaps.begin(), gaps.end());
    check.pass = check.measured_min >= check.tau_guaranteed - trace.dt;
    taus.push_back(check.tau_guaranteed);
    report.iet_checks.push_back(check);
  }

  bool any_finite_tau = false;
  for (double tau : taus) any_finite_tau |= std::isfinite(tau);
  if (any_finite_tau) {
    const double tau = average_dwell_tau(taus);
    report.dwell_violation = dwell_time_violation(trace, tau, trace.layout.num_channels());
    report.dwell_pass = report.dwell_violation <= 0.0;
  } else {
    // no drift anywhere: events cannot occur and the bound is vacuous
    report.dwell_violation = trace.events.empty() ? 0.0 : 1.0;
    report.dwell_pass = trace.events.empty();
  }
  return report;
}

}  // namespace deto
