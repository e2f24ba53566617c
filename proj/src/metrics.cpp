#include "deto/analysis/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "deto/errors.hpp"

namespace deto {

std::vector<double> inter_event_times(const SimTrace& trace, int channel) {
  std::vector<double> gaps;
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (const TraceEvent& ev : trace.events) {
    if (ev.node != channel) continue;
    if (!std::isnan(prev)) gaps.push_back(ev.ht.t - prev);
    prev = ev.ht.t;
  }
  return gaps;
}

long event_count(const SimTrace& trace, int channel, double t1, double t2) {
  long n = 0;
  for (const TraceEvent& ev : trace.events)
    if (ev.node == channel && ev.ht.t >= t1 && ev.ht.t <= t2) ++n;
  return n;
}

double ultimate_bound(const SimTrace& trace, const ObserverModel& observer, double t1,
                      double t2) {
  if (trace.samples.empty() || t1 > t2 || t2 > trace.horizon || t1 < 0.0)
    throw BadWindow("ultimate_bound: window [" + std::to_string(t1) + ", " + std::to_string(t2) +
                    "] outside the trace");
  const StateLayout& lay = trace.layout;
  VectorXd xhat(lay.nx);
  double worst = 0.0;
  bool any = false;
  for (const TraceSample& s : trace.samples) {
    if (s.ht.t < t1 || s.ht.t > t2) continue;
    any = true;
    observer.estimate(s.q.segment(lay.z_offset(), lay.nz), xhat);
    worst = std::max(worst, (s.q.segment(lay.x_offset(), lay.nx) - xhat).norm());
  }
  if (!any) throw BadWindow("ultimate_bound: no samples in window");
  return worst;
}

double estimate_E(const SimTrace& trace, const PlantModel& plant,
                  const ExogenousSignals& signals) {
  const StateLayout& lay = trace.layout;
  VectorXd u(plant.nu()), v(plant.nv()), dx(plant.nx());
  MatrixXd jac(plant.ny(), plant.nx());
  double worst = 0.0;
  for (const TraceSample& s : trace.samples) {
    signals.u(s.ht.t, u);
    signals.v(s.ht.t, v);
    const auto x = s.q.segment(lay.x_offset(), lay.nx);
    plant.flow(x, u, v, dx);
    plant.output_jacobian(x, jac);
    int off = 0;
    for (int i = 0; i < plant.num_nodes(); ++i) {
      const int w = plant.node_widths()[i];
      worst = std::max(worst, (jac.middleRows(off, w) * dx).norm());
      off += w;
    }
  }
  return worst;
}

double estimate_E_input(const SimTrace& trace, const ExogenousSignals& signals) {
  VectorXd ud(1);
  double worst = 0.0;
  for (const TraceSample& s : trace.samples) {
    signals.udot(s.ht.t, ud);
    worst = std::max(worst, ud.norm());
  }
  return worst;
}

std::vector<bool> detect_stop(const SimTrace& trace, const std::vector<NodeEtmParams>& params,
                              double tail_window) {
  const StateLayout& lay = trace.layout;
  const double t1 = trace.horizon - tail_window;
  std::vector<bool> stopped(lay.num_nodes(), true);
  for (int i = 0; i < lay.num_nodes(); ++i) {
    if (event_count(trace, i, t1, trace.horizon) > 0) {
      stopped[i] = false;
      continue;
    }
    const double threshold = params[i].gamma.inverse(params[i].epsilon);
    for (const TraceSample& s : trace.samples) {
      if (s.ht.t < t1) continue;
      if (s.q.segment(lay.e_offset(i), lay.node_widths[i]).norm() >= threshold) {
        stopped[i] = false;
        break;
      }
    }
  }
  return stopped;
}

double dwell_time_violation(const SimTrace& trace, double tau, int num_channels) {
  // j' - j <= (t' - t)/tau + N for all ordered pairs is equivalent to
  // phi := j - t/tau rising at most N above its running minimum.
  double running_min = std::numeric_limits<double>::infinity();
  double worst = -std::numeric_limits<double>::infinity();
  for (const TraceSample& s : trace.samples) {
    const double phi = static_cast<double>(s.ht.j) - s.ht.t / tau;
    running_min = std::min(running_min, phi);
    worst = std::max(worst, phi - running_min - static_cast<double>(num_channels));
  }
  return worst;
}

Metrics compute_metrics(const SimTrace& trace, const ObserverModel& observer, double t1,
                        double t2, double err_t1, double err_t2) {
  Metrics m;
  const int channels = trace.layout.num_channels();
  for (int c = 0; c < channels; ++c) {
    NodeMetrics nm;
    nm.events = event_count(trace, c, t1, t2);
    const auto gaps = inter_event_times(trace, c);
    if (gaps.empty()) {
      nm.min_iet = std::numeric_limits<double>::infinity();
      nm.mean_iet = 0.0;
    } else {
      nm.min_iet = *std::min_element(gaps.begin(), gaps.end());
      double sum = 0.0;
      for (double g : gaps) sum += g;
      nm.mean_iet = sum / static_cast<double>(gaps.size());
    }
    m.per_channel.push_back(nm);
  }
  m.max_estimation_error = ultimate_bound(trace, observer, err_t1, err_t2);
  m.total_jumps = trace.total_jumps();
  return m;
}

}  // namespace deto
