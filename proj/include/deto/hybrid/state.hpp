#pragma once

#include <Eigen/Dense>
#include <numeric>
#include <string>
#include <vector>

#include "deto/errors.hpp"
#include "deto/hybrid/time.hpp"

namespace deto {

/// Index map into the flat state vector q = (x, z, e, eta[, e_u, eta_u]).
///
/// `e` is partitioned by sensor node (widths sum to n_y). When the input
/// channel is triggered as well, its held-input error e_u and filter state
/// eta_u are appended so the whole closed loop integrates as one ODE.
struct StateLayout {
  int nx = 0;
  int nz = 0;
  std::vector<int> node_widths;  // n_{y_i}, one per sensor node
  int nu_trig = 0;               // input-error width; 0 when input ETM is off

  int ny() const { return std::accumulate(node_widths.begin(), node_widths.end(), 0); }
  int num_nodes() const { return static_cast<int>(node_widths.size()); }
  bool has_input_channel() const { return nu_trig > 0; }
  /// Sensor nodes plus the input channel when active.
  int num_channels() const { return num_nodes() + (has_input_channel() ? 1 : 0); }

  int x_offset() const { return 0; }
  int z_offset() const { return nx; }
  int e_offset() const { return nx + nz; }
  int e_offset(int node) const {
    int off = e_offset();
    for (int i = 0; i < node; ++i) off += node_widths[i];
    return off;
  }
  int eta_offset() const { return e_offset() + ny(); }
  int eu_offset() const { return eta_offset() + num_nodes(); }
  int etau_offset() const { return eu_offset() + nu_trig; }
  int dim() const { return eta_offset() + num_nodes() + (has_input_channel() ? nu_trig + 1 : 0); }
};

/// Value-semantic snapshot of the hybrid state with named views.
struct HybridState {
  StateLayout layout;
  Eigen::VectorXd q;

  HybridState() = default;
  HybridState(StateLayout lay, Eigen::VectorXd vec) : layout(lay), q(std::move(vec)) {
    if (q.size() != layout.dim()) throw BadInput("HybridState: vector does not match layout");
  }

  auto x() const { return q.segment(layout.x_offset(), layout.nx); }
  auto z() const { return q.segment(layout.z_offset(), layout.nz); }
  auto e() const { return q.segment(layout.e_offset(), layout.ny()); }
  auto e(int node) const { return q.segment(layout.e_offset(node), layout.node_widths[node]); }
  double eta(int node) const { return q(layout.eta_offset() + node); }
  auto eta() const { return q.segment(layout.eta_offset(), layout.num_nodes()); }
  auto e_u() const { return q.segment(layout.eu_offset(), layout.nu_trig); }
  double eta_u() const { return q(layout.etau_offset()); }
};

/// One recorded point of a hybrid arc. `ybar` snapshots the channel's held
/// outputs (and `ubar` the held input, when triggered) at the sample.
struct TraceSample {
  HybridTime ht;
  Eigen::VectorXd q;
  Eigen::VectorXd ybar;
  Eigen::VectorXd ubar;
};

/// A logged transmission. `node` is 0-based; the input channel, when active,
/// uses the reserved id `layout.num_nodes()`. `ht.j` is the counter value
/// *after* this jump.
struct TraceEvent {
  HybridTime ht;
  int node = 0;
};

/// Concrete record of a hybrid arc plus its transmission log.
struct SimTrace {
  StateLayout layout;
  std::vector<TraceSample> samples;
  std::vector<TraceEvent> events;

  // meta
  double dt = 0.0;
  double horizon = 0.0;
  std::string config_digest;

  long total_jumps() const { return static_cast<long>(events.size()); }
};

}  // namespace deto
