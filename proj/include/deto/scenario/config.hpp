#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "deto/etm/theorems.hpp"
#include "deto/hybrid/engine.hpp"
#include "deto/observer/certificate.hpp"

namespace deto {

struct NodeConfig {
  double sigma = 0.0;
  double c = 0.0;
  double b = 1.0;
  double epsilon = 1.0;
  KinfFn alpha = KinfFn::linear(1.0);
  KinfFn gamma = KinfFn::quadratic(1.0);
  std::optional<double> d;  // composite-Lyapunov weight; defaults to 2 d*
};

struct InputTriggerConfig {
  bool enabled = false;
  double sigma = 0.0;
  double c = 0.0;
  double b = 1.0;
  double epsilon = 0.5;
  KinfFn alpha = KinfFn::linear(1.0);
  KinfFn gamma = KinfFn::linear(1.0);
};

/// Request to derive the trigger-filter rates and epsilon budget for an
/// exponential decay envelope at a fraction of the certificate rate.
struct Theorem3Config {
  bool enabled = false;
  double decay_fraction = 0.5;  // a_U = fraction * a
  double mu = 1.0;
};

struct SweepRanges {
  int runs = 100;
  std::vector<double> x_low;
  std::vector<double> x_high;
};

struct ScenarioConfig {
  int schema_version = 1;
  std::string name = "scenario";
  std::string plant = "robot-arm";  // or "linear-decay"
  double horizon = 30.0;
  double dt = 1e-3;
  std::uint64_t seed = 1;
  bool enable_u = true;
  bool enable_v = true;
  bool enable_m = true;
  std::vector<double> x0;
  std::vector<double> z0;
  std::vector<double> eta0;
  std::optional<std::vector<double>> ybar0;  // default: output sampled at t=0
  std::vector<NodeConfig> nodes;
  double nu = 0.0;  // 0 = use the minimal admissible budget
  InputTriggerConfig input_trigger;
  Theorem3Config theorem3;
  SweepRanges sweep;
  double c_v = 0.2, c_1 = 0.2, c_2 = 0.2;  // certificate splitting constants

  std::string to_json() const;
  static ScenarioConfig from_json_text(const std::string& text);
  /// FNV-1a hash of the canonical JSON form; pins traces to their config.
  std::string digest() const;
};

/// Validated, executable scenario: models, parameters and theorem reports.
struct Scenario {
  ScenarioConfig config;
  std::shared_ptr<PlantModel> plant;
  std::shared_ptr<ObserverModel> observer;
  std::shared_ptr<ExogenousSignals> signals;
  std::vector<NodeEtmParams> nodes;
  std::optional<NodeEtmParams> input_etm;
  Theorem1Report theorem1;
  std::optional<Theorem3Design> theorem3;
  std::optional<IssCertificate> certificate;
  std::optional<IssGains> gains;
  Eigen::MatrixXd P;       // Lyapunov matrix for V
  std::vector<double> d;   // composite-Lyapunov weights
  VectorXd q0, ybar0, ubar0;
};

/// Parses and fully validates a config file: schema version, node parameter
/// inequalities (with the violated one named), the measurement-noise epsilon
/// floor, and the decay design when requested. Throws ConfigError /
/// ParameterViolation / DecayUnachievable.
ScenarioConfig load_config(const std::string& path);

/// Builds the executable scenario, running every load-time check.
Scenario compile_scenario(const ScenarioConfig& config);

/// Built-in configurations: "baseline" (= "table1-row1"), "table1-row1".."table1-row13",
/// "equilibrium", "settling", "input-trigger", "theorem3", "theorem3-nodist".
ScenarioConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

/// The 13-row parameter-study grid (both disturbance columns are run by the
/// sweep driver for each row).
std::vector<ScenarioConfig> table1_rows();

}  // namespace deto
