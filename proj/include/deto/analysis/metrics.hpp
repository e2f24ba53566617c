#pragma once

#include <vector>

#include "deto/etm/etm.hpp"
#include "deto/hybrid/state.hpp"
#include "deto/observer/observer.hpp"
#include "deto/plant/plant.hpp"

namespace deto {

/// Continuous-time gaps between consecutive transmissions of one channel.
/// Fewer than two events yields an empty list.
std::vector<double> inter_event_times(const SimTrace& trace, int channel);

/// Number of channel transmissions with t in the closed window [t1, t2].
long event_count(const SimTrace& trace, int channel, double t1, double t2);

/// Max Euclidean |x - xhat| over samples with t in [t1, t2].
/// Throws BadWindow when the window misses the trace.
double ultimate_bound(const SimTrace& trace, const ObserverModel& observer, double t1, double t2);

/// Max over samples and sensor nodes of |g_i(x, u, v)| = |(dh_i/dx) f_p|,
/// the trace-dependent bound on the network-error drift.
double estimate_E(const SimTrace& trace, const PlantModel& plant, const ExogenousSignals& signals);

/// Max over samples of |du/dt|, the input-channel counterpart.
double estimate_E_input(const SimTrace& trace, const ExogenousSignals& signals);

/// Per-node transmission-stop detection over the tail window [horizon - tail,
/// horizon]: stopped iff no node events in the window and |e_i| stays below
/// gamma_i^{-1}(epsilon_i) throughout it.
std::vector<bool> detect_stop(const SimTrace& trace, const std::vector<NodeEtmParams>& params,
                              double tail_window);

/// Worst violation of the average dwell-time bound j' - j <= (t' - t)/tau + N
/// over all ordered sample pairs (<= 0 when the bound holds). N is the number
/// of active channels.
double dwell_time_violation(const SimTrace& trace, double tau, int num_channels);

struct NodeMetrics {
  long events = 0;
  double min_iet = 0.0;   // +inf when fewer than two events
  double mean_iet = 0.0;  // 0 when no gaps
};

struct Metrics {
  std::vector<NodeMetrics> per_channel;  // sensor nodes, then the input channel if active
  double max_estimation_error = 0.0;     // over the metrics window
  long total_jumps = 0;
  bool zeno_suspected = false;  // runs that abort never produce a trace; kept for reports
  bool finite_escape = false;
};

/// Window metrics: event counts over [t1, t2], IET statistics over the whole
/// trace, estimation-error bound over [err_t1, err_t2].
Metrics compute_metrics(const SimTrace& trace, const ObserverModel& observer, double t1, double t2,
                        double err_t1, double err_t2);

}  // namespace deto
