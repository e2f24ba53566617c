#include "deto/hybrid/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "deto/errors.hpp"

namespace deto {

ClosedLoop::ClosedLoop(const PlantModel& plant, const ObserverModel& observer,
                       const ExogenousSignals& signals, std::vector<NodeEtmParams> nodes,
                       std::optional<NodeEtmParams> input_etm)
    : plant_(plant), observer_(observer), signals_(signals), nodes_(std::move(nodes)),
      input_etm_(std::move(input_etm)) {
  if (static_cast<int>(nodes_.size()) != plant_.num_nodes())
    throw BadInput("ClosedLoop: one parameter set per sensor node required");
  for (const auto& p : nodes_) p.validate();
  if (input_etm_) input_etm_->validate();

  layout_.nx = plant_.nx();
  layout_.nz = observer_.nz();
  layout_.node_widths = plant_.node_widths();
  layout_.nu_trig = input_etm_ ? plant_.nu() : 0;

  u_.resize(plant_.nu());
  udot_.resize(plant_.nu());
  v_.resize(plant_.nv());
  m_.resize(plant_.ny());
  mdot_.resize(plant_.ny());
  yobs_.resize(plant_.ny());
  yhat_.resize(plant_.ny());
  ubar_eff_.resize(plant_.nu());
  jac_.resize(plant_.ny(), plant_.nx());
}

void ClosedLoop::flow(double t, const Eigen::Ref<const VectorXd>& q,
                      Eigen::Ref<VectorXd> dq) const {
  const StateLayout& lay = layout_;
  const auto x = q.segment(lay.x_offset(), lay.nx);
  const auto z = q.segment(lay.z_offset(), lay.nz);
  const auto e = q.segment(lay.e_offset(), lay.ny());

  signals_.u(t, u_);
  signals_.v(t, v_);
  signals_.m(t, m_);
  signals_.mdot(t, mdot_);

  auto dx = dq.segment(lay.x_offset(), lay.nx);
  plant_.flow(x, u_, v_, dx);

  // Held output seen by the observer: h(x) + m + e stays constant on flows.
  plant_.output(x, yobs_);
  yobs_ += m_;
  yobs_ += e;
  observer_.output_estimate(z, yhat_);
  if (lay.has_input_channel()) {
    ubar_eff_ = u_ + q.segment(lay.eu_offset(), lay.nu_trig);
    observer_.flow(z, ubar_eff_, yobs_, yhat_, dq.segment(lay.z_offset(), lay.nz));
  } else {
    observer_.flow(z, u_, yobs_, yhat_, dq.segment(lay.z_offset(), lay.nz));
  }

  // de_i = -(dh_i/dx) f_p - dm_i/dt, reusing the plant flow already in dx.
  plant_.output_jacobian(x, jac_);
  dq.segment(lay.e_offset(), lay.ny()).noalias() = -(jac_ * dx);
  dq.segment(lay.e_offset(), lay.ny()) -= mdot_;

  for (int i = 0; i < lay.num_nodes(); ++i) {
    const double en = q.segment(lay.e_offset(i), lay.node_widths[i]).norm();
    dq(lay.eta_offset() + i) = eta_flow(q(lay.eta_offset() + i), en, nodes_[i]);
  }

  if (lay.has_input_channel()) {
    signals_.udot(t, udot_);
    dq.segment(lay.eu_offset(), lay.nu_trig) = -udot_;
    const double eun = q.segment(lay.eu_offset(), lay.nu_trig).norm();
    dq(lay.etau_offset()) = eta_flow(q(lay.etau_offset()), eun, *input_etm_);
  }
}

double ClosedLoop::margin(int channel, const Eigen::Ref<const VectorXd>& q) const {
  const StateLayout& lay = layout_;
  if (channel < lay.num_nodes()) {
    const double en = q.segment(lay.e_offset(channel), lay.node_widths[channel]).norm();
    return trigger_margin(q(lay.eta_offset() + channel), en, nodes_[channel]);
  }
  const double eun = q.segment(lay.eu_offset(), lay.nu_trig).norm();
  return trigger_margin(q(lay.etau_offset()), eun, *input_etm_);
}

double ClosedLoop::max_margin(const Eigen::Ref<const VectorXd>& q) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (int c = 0; c < num_channels(); ++c) worst = std::max(worst, margin(c, q));
  return worst;
}

void ClosedLoop::measured_output(double t, const Eigen::Ref<const VectorXd>& q,
                                 Eigen::Ref<VectorXd> y_meas) const {
  plant_.output(q.segment(layout_.x_offset(), layout_.nx), y_meas);
  signals_.m(t, m_);
  y_meas += m_;
}

Rk4Stepper::Rk4Stepper(const ClosedLoop& loop) : loop_(loop) {
  const int n = loop.layout().dim();
  k1_.resize(n);
  k2_.resize(n);
  k3_.resize(n);
  k4_.resize(n);
  tmp_.resize(n);
}

void Rk4Stepper::step(double t, const Eigen::Ref<const VectorXd>& q, double dt,
                      Eigen::Ref<VectorXd> out) {
  const double half = 0.5 * dt;
  loop_.flow(t, q, k1_);
  tmp_ = q + half * k1_;
  loop_.flow(t + half, tmp_, k2_);
  tmp_ = q + half * k2_;
  loop_.flow(t + half, tmp_, k3_);
  tmp_ = q + dt * k3_;
  loop_.flow(t + dt, tmp_, k4_);
  out = q + (dt / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
}

VectorXd integrate_flow_step(const ClosedLoop& loop, double t, const VectorXd& q, double dt) {
  if (!(dt > 0.0)) throw BadInput("integrate_flow_step: dt must be positive");
  Rk4Stepper stepper(loop);
  VectorXd out(q.size());
  stepper.step(t, q, dt, out);
  if (!out.allFinite()) throw FiniteEscape(t + dt, 0);
  return out;
}

EventLocator::EventLocator(const ClosedLoop& loop, EngineSettings settings)
    : loop_(loop), settings_(settings), stepper_(loop) {
  q_hi_.resize(loop.layout().dim());
  q_mid_.resize(loop.layout().dim());
}

std::optional<LocatedEvent> EventLocator::locate(double t, const Eigen::Ref<const VectorXd>& q,
                                                 double dt) {
  stepper_.step(t, q, dt, q_hi_);
  if (!(loop_.max_margin(q_hi_) >= 0.0)) return std::nullopt;

  double lo = 0.0, hi = dt;
  while (hi - lo > settings_.tol_event) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // step no longer representable
    stepper_.step(t, q, mid, q_mid_);
    if (loop_.max_margin(q_mid_) >= 0.0) {
      hi = mid;
      q_hi_.swap(q_mid_);
    } else {
      lo = mid;
    }
  }

  LocatedEvent ev;
  ev.t_offset = hi;
  ev.q = q_hi_;
  for (int c = 0; c < loop_.num_channels(); ++c)
    if (loop_.margin(c, q_hi_) >= -settings_.tol_margin) ev.channels.push_back(c);
  return ev;
}

std::optional<LocatedEvent> locate_event(const ClosedLoop& loop, double t, const VectorXd& q,
                                         double dt, const EngineSettings& settings) {
  EventLocator locator(loop, settings);
  return locator.locate(t, q, dt);
}

HybridSimulator::HybridSimulator(const ClosedLoop& loop, EngineSettings settings)
    : loop_(loop), settings_(settings) {
  if (settings_.max_jumps_per_instant <= 0)
    settings_.max_jumps_per_instant = 2 * loop.num_channels() + 1;
}

int HybridSimulator::apply_jumps(double t, VectorXd& q, const std::vector<int>& channels,
                                 ZohChannel& channel, long& j, std::vector<TraceEvent>& events,
                                 std::vector<TraceSample>* samples) {
  if (channels.empty()) throw BadInput("apply_jumps: empty channel set");
  const StateLayout& lay = loop_.layout();

  VectorXd y_meas(lay.ny());
  loop_.measured_output(t, q, y_meas);
  VectorXd u_now(loop_.plant().nu());
  loop_.signals().u(t, u_now);

  int applied = 0;
  for (int c : channels) {
    const double mgn = loop_.margin(c, q);
    if (mgn < -settings_.tol_margin)
      throw InconsistentJump("channel " + std::to_string(c + 1) +
                             " asked to jump with margin " + std::to_string(mgn));
    ++j;
    if (c < lay.num_nodes()) {
      int off = 0;
      for (int i = 0; i < c; ++i) off += lay.node_widths[i];
      q.segment(lay.e_offset(c), lay.node_widths[c]).setZero();
      q(lay.eta_offset() + c) *= loop_.node_params(c).b;
      channel.transmit_output(c, y_meas.segment(off, lay.node_widths[c]), HybridTime{t, j});
    } else {
      q.segment(lay.eu_offset(), lay.nu_trig).setZero();
      q(lay.etau_offset()) *= loop_.input_params()->b;
      channel.transmit_input(u_now, HybridTime{t, j});
    }
    events.push_back(TraceEvent{HybridTime{t, j}, c});
    if (samples)
      samples->push_back(TraceSample{HybridTime{t, j}, q, channel.held_outputs(),
                                     channel.held_input()});
    ++applied;
  }
  return applied;
}

SimTrace HybridSimulator::run(const VectorXd& q0, const VectorXd& ybar0, const VectorXd& ubar0,
                              double horizon, double dt, const std::string& config_digest) {
  if (!(dt > 0.0)) throw BadInput("run: dt must be positive");
  if (!(horizon > 0.0)) throw BadInput("run: horizon must be positive");
  const StateLayout& lay = loop_.layout();
  if (q0.size() != lay.dim()) throw BadInput("run: initial state does not match layout");

  SimTrace trace;
  trace.layout = lay;
  trace.dt = dt;
  trace.horizon = horizon;
  trace.config_digest = config_digest;
  const long steps = static_cast<long>(std::llround(horizon / dt));
  trace.samples.reserve(static_cast<size_t>(steps) + 64);

  ZohChannel channel(lay.node_widths, lay.nu_trig);
  channel.initialize(ybar0, ubar0);

  Rk4Stepper stepper(loop_);
  EventLocator locator(loop_, settings_);
  VectorXd q = q0;
  VectorXd q_next(q.size());
  double t = 0.0;
  long j = 0;
  int jumps_without_flow = 0;

  trace.samples.push_back(TraceSample{HybridTime{t, j}, q, channel.held_outputs(),
                                      channel.held_input()});

  auto drain_jumps_at = [&](double now) {
    // Jump priority: clear every channel whose condition holds before flowing.
    while (loop_.max_margin(q) >= 0.0) {
      std::vector<int> due;
      for (int c = 0; c < loop_.num_channels(); ++c)
        if (loop_.margin(c, q) >= -settings_.tol_margin) due.push_back(c);
      jumps_without_flow += apply_jumps(now, q, due, channel, j, trace.events, &trace.samples);
      if (jumps_without_flow > settings_.max_jumps_per_instant) throw ZenoSuspected(now, j);
    }
  };

  drain_jumps_at(0.0);

  long grid = 0;
  while (grid < steps) {
    const double t_next = (grid + 1 == steps) ? horizon : (static_cast<double>(grid + 1) * dt);
    const double h = t_next - t;
    if (h <= 0.0) {
      ++grid;
      continue;
    }

    stepper.step(t, q, h, q_next);
    if (!q_next.allFinite()) throw FiniteEscape(t_next, j);

    if (loop_.max_margin(q_next) < 0.0) {
      q.swap(q_next);
      t = t_next;
      ++grid;
      jumps_without_flow = 0;
      trace.samples.push_back(TraceSample{HybridTime{t, j}, q, channel.held_outputs(),
                                          channel.held_input()});
      continue;
    }

    const auto ev = locator.locate(t, q, h);
    if (!ev) {  // margin grazed zero inside the step but is negative at both ends
      q.swap(q_next);
      t = t_next;
      ++grid;
      jumps_without_flow = 0;
      trace.samples.push_back(TraceSample{HybridTime{t, j}, q, channel.held_outputs(),
                                          channel.held_input()});
      continue;
    }

    q = ev->q;
    if (!q.allFinite()) throw FiniteEscape(t + ev->t_offset, j);
    t = t + ev->t_offset;
    jumps_without_flow = 0;
    // pre-jump sample, then one sample per reset
    trace.samples.push_back(TraceSample{HybridTime{t, j}, q, channel.held_outputs(),
                                        channel.held_input()});
    jumps_without_flow += apply_jumps(t, q, ev->channels, channel, j, trace.events,
                                      &trace.samples);
    drain_jumps_at(t);
    if (t >= t_next) ++grid;
  }

  return trace;
}

}  // namespace deto
