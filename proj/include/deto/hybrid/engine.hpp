#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "deto/etm/etm.hpp"
#include "deto/hybrid/state.hpp"
#include "deto/network/channel.hpp"
#include "deto/observer/observer.hpp"
#include "deto/plant/plant.hpp"

namespace deto {

struct EngineSettings {
  double tol_event = 1e-9;    // absolute time tolerance of event localization
  double tol_margin = 1e-10;  // margin tolerance for trigger/consistency checks
  int max_jumps_per_instant = 0;  // 0 picks the default 2*channels + 1
};

/// The coupled flow map of plant, observer, network-induced errors and
/// trigger filters, plus the per-channel trigger margins. The state vector
/// follows StateLayout; the observer consumes the held output algebraically
/// as h(x) + m(t) + e (constant along flows by construction) and, when the
/// input channel is triggered, the held input u(t) + e_u.
class ClosedLoop {
public:
  ClosedLoop(const PlantModel& plant, const ObserverModel& observer,
             const ExogenousSignals& signals, std::vector<NodeEtmParams> nodes,
             std::optional<NodeEtmParams> input_etm);

  const StateLayout& layout() const { return layout_; }
  int num_nodes() const { return layout_.num_nodes(); }
  int num_channels() const { return layout_.num_channels(); }
  /// Reserved id of the input channel (== num_nodes()).
  int input_channel_id() const { return layout_.num_nodes(); }

  const PlantModel& plant() const { return plant_; }
  const ObserverModel& observer() const { return observer_; }
  const ExogenousSignals& signals() const { return signals_; }
  const NodeEtmParams& node_params(int node) const { return nodes_[node]; }
  const std::vector<NodeEtmParams>& node_params() const { return nodes_; }
  const std::optional<NodeEtmParams>& input_params() const { return input_etm_; }

  /// dq = F(q, w(t)).
  void flow(double t, const Eigen::Ref<const VectorXd>& q, Eigen::Ref<VectorXd> dq) const;

  /// Trigger margin of a channel at state q; the channel transmits iff >= 0.
  double margin(int channel, const Eigen::Ref<const VectorXd>& q) const;
  double max_margin(const Eigen::Ref<const VectorXd>& q) const;

  /// Measured (noisy) output at time t for state q, the value a transmission
  /// would latch.
  void measured_output(double t, const Eigen::Ref<const VectorXd>& q,
                       Eigen::Ref<VectorXd> y_meas) const;

private:
  const PlantModel& plant_;
  const ObserverModel& observer_;
  const ExogenousSignals& signals_;
  std::vector<NodeEtmParams> nodes_;
  std::optional<NodeEtmParams> input_etm_;
  StateLayout layout_;

  // flow-evaluation scratch (single simulation is single-threaded)
  mutable VectorXd u_, udot_, v_, m_, mdot_, yobs_, yhat_, ubar_eff_;
  mutable MatrixXd jac_;
};

/// One classical RK4 advance of the coupled flow by dt. Exogenous signals
/// are evaluated at the substep times. Throws FiniteEscape if the advanced
/// state has a non-finite component.
class Rk4Stepper {
public:
  explicit Rk4Stepper(const ClosedLoop& loop);
  void step(double t, const Eigen::Ref<const VectorXd>& q, double dt, Eigen::Ref<VectorXd> out);

private:
  const ClosedLoop& loop_;
  VectorXd k1_, k2_, k3_, k4_, tmp_;
};

/// Free-function form used by tests: returns the advanced state.
VectorXd integrate_flow_step(const ClosedLoop& loop, double t, const VectorXd& q, double dt);

struct LocatedEvent {
  double t_offset = 0.0;       // in (0, dt]
  VectorXd q;                  // state at the located time
  std::vector<int> channels;   // every channel with margin >= -tol_margin, ascending
};

/// Bisection on the RK4-reconstructed flow for the earliest trigger crossing
/// in (0, dt]: each candidate time s is reached by a single RK4 step of size
/// s from the step-start state. Reusable across events (owns its scratch).
class EventLocator {
public:
  explicit EventLocator(const ClosedLoop& loop, EngineSettings settings = {});

  /// Returns nullopt when no margin reaches zero across the step (the caller
  /// flows the full step).
  std::optional<LocatedEvent> locate(double t, const Eigen::Ref<const VectorXd>& q, double dt);

private:
  const ClosedLoop& loop_;
  EngineSettings settings_;
  Rk4Stepper stepper_;
  VectorXd q_hi_, q_mid_;
};

/// One-shot convenience wrapper around EventLocator.
std::optional<LocatedEvent> locate_event(const ClosedLoop& loop, double t, const VectorXd& q,
                                         double dt, const EngineSettings& settings);

/// Hybrid run loop with jump-priority semantics: whenever a trigger condition
/// holds, the jump fires before any further flow. Deterministic: simultaneous
/// triggers are resolved in ascending channel id, each reset incrementing j
/// by one with no flow in between.
class HybridSimulator {
public:
  HybridSimulator(const ClosedLoop& loop, EngineSettings settings = {});

  /// Applies the listed channels' resets to q (ascending), latching the
  /// measured output (resp. input) into the channel. Throws InconsistentJump
  /// if a listed channel's condition is violated beyond tol_margin. Returns
  /// the number of jumps applied.
  int apply_jumps(double t, VectorXd& q, const std::vector<int>& channels, ZohChannel& channel,
                  long& j, std::vector<TraceEvent>& events, std::vector<TraceSample>* samples);

  /// Full deterministic run over [0, horizon] with fixed sample step dt.
  SimTrace run(const VectorXd& q0, const VectorXd& ybar0, const VectorXd& ubar0, double horizon,
               double dt, const std::string& config_digest = "");

private:
  const ClosedLoop& loop_;
  EngineSettings settings_;
};

}  // namespace deto
