#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "deto/analysis/metrics.hpp"
#include "deto/etm/theorems.hpp"
#include "deto/hybrid/state.hpp"
#include "deto/observer/certificate.hpp"
#include "deto/observer/observer.hpp"

namespace deto {

/// Composite Lyapunov value U(q) = V(x, xhat) + sum_i d_i eta_i.
double eval_U(const Eigen::Ref<const VectorXd>& q, const StateLayout& lay,
              const ObserverModel& observer, const Eigen::MatrixXd& P,
              const std::vector<double>& d);

/// Max over logged jumps of U(post) - U(pre). Exact arithmetic predicts <= 0
/// (U does not depend on e; eta only shrinks); a pass allows float slack
/// 1e-9 * (1 + U(pre)).
struct JumpMonitor {
  double worst_increase = -std::numeric_limits<double>::infinity();
  double worst_relative = -std::numeric_limits<double>::infinity();  // dU / (1 + U(pre))
  long jumps_checked = 0;
  bool pass = true;
};
JumpMonitor verify_jump_nonincrease(const SimTrace& trace, const ObserverModel& observer,
                                    const Eigen::MatrixXd& P, const std::vector<double>& d);

/// Max over samples of U(t,j) - [exp(-a_U t) U(0,0) + mu + theta(sup_v)/a_U].
/// Only meaningful for parameters produced by design_theorem3; pass iff the
/// worst violation <= 1e-6 * U(0,0).
struct EnvelopeReport {
  double worst_violation = -std::numeric_limits<double>::infinity();
  double U0 = 0.0;
  bool pass = true;
};
EnvelopeReport verify_theorem3_envelope(const SimTrace& trace, const ObserverModel& observer,
                                        const Eigen::MatrixXd& P, const Theorem3Design& design,
                                        const KinfFn& theta, double sup_v_norm);

/// Per-channel comparison of the guaranteed minimum inter-event time against
/// the measured one, with dt slack for the sampled drift bound.
struct IetCheck {
  double tau_guaranteed = 0.0;
  double measured_min = 0.0;  // +inf with fewer than two events
  bool pass = true;
};

struct CertificateReport {
  JumpMonitor jump_monitor;
  std::vector<IetCheck> iet_checks;       // sensor nodes, then input channel if active
  double dwell_violation = 0.0;           // <= 0 when the average dwell-time bound holds
  bool dwell_pass = true;
  double estimated_E = 0.0;               // sensor-error drift bound from the trace
  double estimated_E_input = 0.0;         // |du/dt| bound, input channel only
  bool has_envelope = false;
  EnvelopeReport envelope;
  bool all_pass() const;
};

/// Runs every per-trace certificate check: jump non-increase of U, the
/// per-channel minimum inter-event-time bound and the average dwell-time
/// inequality. The envelope check is added by the caller when the scenario
/// was designed for a decay envelope.
CertificateReport check_certificates(const SimTrace& trace, const ObserverModel& observer,
                                     const PlantModel& plant, const ExogenousSignals& signals,
                                     const std::vector<NodeEtmParams>& nodes,
                                     const std::optional<NodeEtmParams>& input_etm,
                                     const Eigen::MatrixXd& P, const std::vector<double>& d);

}  // namespace deto
