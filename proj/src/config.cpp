#include "deto/scenario/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "deto/errors.hpp"
#include "deto/observer/luenberger.hpp"
#include "deto/plant/linear_decay.hpp"
#include "deto/plant/robot_arm.hpp"

namespace deto {

using nlohmann::json;

namespace {

json kinf_to_json(const KinfFn& f) { return json{{"k", f.k}, {"p", f.p}}; }

KinfFn kinf_from_json(const json& j) {
  return KinfFn(j.at("k").get<double>(), j.at("p").get<double>());
}

json node_to_json(const NodeConfig& n) {
  json j{{"sigma", n.sigma}, {"c", n.c},          {"b", n.b},
         {"epsilon", n.epsilon}, {"alpha", kinf_to_json(n.alpha)}, {"gamma", kinf_to_json(n.gamma)}};
  if (n.d) j["d"] = *n.d;
  return j;
}

NodeConfig node_from_json(const json& j) {
  NodeConfig n;
  n.sigma = j.at("sigma").get<double>();
  n.c = j.at("c").get<double>();
  n.b = j.at("b").get<double>();
  n.epsilon = j.at("epsilon").get<double>();
  n.alpha = kinf_from_json(j.at("alpha"));
  n.gamma = kinf_from_json(j.at("gamma"));
  if (j.contains("d") && !j.at("d").is_null()) n.d = j.at("d").get<double>();
  return n;
}

}  // namespace

std::string ScenarioConfig::to_json() const {
  json j;
  j["schema_version"] = schema_version;
  j["name"] = name;
  j["plant"] = plant;
  j["horizon"] = horizon;
  j["dt"] = dt;
  j["seed"] = seed;
  j["signals"] = {{"enable_u", enable_u}, {"enable_v", enable_v}, {"enable_m", enable_m}};
  j["initial"] = {{"x", x0}, {"z", z0}, {"eta", eta0}};
  if (ybar0) j["initial"]["ybar"] = *ybar0;
  j["nodes"] = json::array();
  for (const auto& n : nodes) j["nodes"].push_back(node_to_json(n));
  if (nu > 0.0) j["nu"] = nu;
  j["input_trigger"] = {{"enabled", input_trigger.enabled},
                        {"sigma", input_trigger.sigma},
                        {"c", input_trigger.c},
                        {"b", input_trigger.b},
                        {"epsilon", input_trigger.epsilon},
                        {"alpha", kinf_to_json(input_trigger.alpha)},
                        {"gamma", kinf_to_json(input_trigger.gamma)}};
  j["theorem3"] = {{"enabled", theorem3.enabled},
                   {"decay_fraction", theorem3.decay_fraction},
                   {"mu", theorem3.mu}};
  j["sweep"] = {{"runs", sweep.runs}, {"x_low", sweep.x_low}, {"x_high", sweep.x_high}};
  j["splitting"] = {{"c_v", c_v}, {"c_1", c_1}, {"c_2", c_2}};
  return j.dump(2);
}

ScenarioConfig ScenarioConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    ScenarioConfig c;
    c.schema_version = j.at("schema_version").get<int>();
    if (c.schema_version != 1)
      throw ConfigError("unsupported schema_version " + std::to_string(c.schema_version));
    c.name = j.value("name", std::string("scenario"));
    c.plant = j.value("plant", std::string("robot-arm"));
    c.horizon = j.value("horizon", 30.0);
    c.dt = j.value("dt", 1e-3);
    c.seed = j.value("seed", std::uint64_t{1});
    if (j.contains("signals")) {
      const auto& s = j.at("signals");
      c.enable_u = s.value("enable_u", true);
      c.enable_v = s.value("enable_v", true);
      c.enable_m = s.value("enable_m", true);
    }
    if (j.contains("initial")) {
      const auto& ini = j.at("initial");
      c.x0 = ini.value("x", std::vector<double>{});
      c.z0 = ini.value("z", std::vector<double>{});
      c.eta0 = ini.value("eta", std::vector<double>{});
      if (ini.contains("ybar") && !ini.at("ybar").is_null())
        c.ybar0 = ini.at("ybar").get<std::vector<double>>();
    }
    for (const auto& n : j.at("nodes")) c.nodes.push_back(node_from_json(n));
    c.nu = j.value("nu", 0.0);
    if (j.contains("input_trigger")) {
      const auto& it = j.at("input_trigger");
      c.input_trigger.enabled = it.value("enabled", false);
      c.input_trigger.sigma = it.value("sigma", 0.0);
      c.input_trigger.c = it.value("c", 0.0);
      c.input_trigger.b = it.value("b", 1.0);
      c.input_trigger.epsilon = it.value("epsilon", 0.5);
      if (it.contains("alpha")) c.input_trigger.alpha = kinf_from_json(it.at("alpha"));
      if (it.contains("gamma")) c.input_trigger.gamma = kinf_from_json(it.at("gamma"));
    }
    if (j.contains("theorem3")) {
      const auto& t3 = j.at("theorem3");
      c.theorem3.enabled = t3.value("enabled", false);
      c.theorem3.decay_fraction = t3.value("decay_fraction", 0.5);
      c.theorem3.mu = t3.value("mu", 1.0);
    }
    if (j.contains("sweep")) {
      const auto& sw = j.at("sweep");
      c.sweep.runs = sw.value("runs", 100);
      c.sweep.x_low = sw.value("x_low", std::vector<double>{});
      c.sweep.x_high = sw.value("x_high", std::vector<double>{});
    }
    if (j.contains("splitting")) {
      const auto& sp = j.at("splitting");
      c.c_v = sp.value("c_v", 0.2);
      c.c_1 = sp.value("c_1", 0.2);
      c.c_2 = sp.value("c_2", 0.2);
    }
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config schema violation: ") + e.what());
  }
}

std::string ScenarioConfig::digest() const {
  const std::string text = to_json();
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  ScenarioConfig config = ScenarioConfig::from_json_text(ss.str());
  compile_scenario(config);  // run every load-time check; result discarded
  return config;
}

Scenario compile_scenario(const ScenarioConfig& config) {
  Scenario s;
  s.config = config;

  if (!(config.dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(config.horizon > 0.0)) throw ConfigError("horizon must be positive");

  if (config.plant == "robot-arm") {
    auto plant = std::make_shared<RobotArmPlant>();
    auto observer = std::make_shared<RobotLuenbergerObserver>();
    s.signals = std::make_shared<RobotSignals>(config.enable_u, config.enable_v, config.enable_m);
    s.certificate = robot_arm_certificate();
    s.certificate->c_v = config.c_v;
    s.certificate->c_1 = config.c_1;
    s.certificate->c_2 = config.c_2;
    s.gains = iss_gains(*s.certificate, RobotLuenbergerObserver::gain());
    s.P = s.certificate->P;
    s.plant = plant;
    s.observer = observer;
  } else if (config.plant == "linear-decay") {
    auto plant = std::make_shared<LinearDecayPlant>();
    s.observer = std::make_shared<LinearDecayObserver>(*plant);
    s.signals = std::make_shared<ZeroSignals>(plant->ny());
    s.P = Eigen::MatrixXd::Identity(2, 2);
    s.plant = plant;
  } else {
    throw ConfigError("unknown plant '" + config.plant + "'");
  }

  const int N = s.plant->num_nodes();
  if (static_cast<int>(config.nodes.size()) != N)
    throw ConfigError("plant '" + config.plant + "' needs " + std::to_string(N) +
                      " node parameter sets, got " + std::to_string(config.nodes.size()));

  for (const auto& nc : config.nodes) {
    NodeEtmParams p{nc.sigma, nc.c, nc.b, nc.epsilon, nc.alpha, nc.gamma};
    p.validate();
    s.nodes.push_back(p);
  }

  // Decay design first: it overrides filter rates, epsilons and d-weights.
  if (config.theorem3.enabled) {
    if (!s.gains)
      throw ConfigError("theorem3 design needs a plant with an ISS certificate");
    std::vector<double> sigma_star, c_star;
    for (const auto& n : s.nodes) {
      sigma_star.push_back(n.sigma);
      c_star.push_back(n.c);
    }
    const double a = s.gains->a.k;
    s.theorem3 = design_theorem3(a, config.theorem3.decay_fraction * a, config.theorem3.mu,
                                 sigma_star, c_star);
    for (int i = 0; i < N; ++i) {
      s.nodes[i].alpha = KinfFn::linear(s.theorem3->nodes[i].a_i);
      s.nodes[i].epsilon = s.theorem3->epsilon[i];
    }
  }

  // Theorem-1 validation fixes the d-weights (explicit, designed, or 2 d*).
  {
    std::vector<double> sigma_star, c_star, eps_star, d;
    for (int i = 0; i < N; ++i) {
      sigma_star.push_back(s.nodes[i].sigma);
      c_star.push_back(s.nodes[i].c);
      eps_star.push_back(s.nodes[i].epsilon);
      const double sc = s.nodes[i].sigma * s.nodes[i].c;
      if (!(sc < 1.0))
        throw ParameterViolation("node " + std::to_string(i + 1) +
                                 ": sigma c < 1 violated (sigma c = " + std::to_string(sc) + ")");
      const double d_star = s.nodes[i].sigma / (1.0 - sc);
      double di;
      if (s.theorem3 && !s.theorem3->nodes[i].degenerate) {
        di = s.theorem3->nodes[i].d;
      } else if (config.nodes[i].d) {
        di = *config.nodes[i].d;
      } else if (d_star > 0.0) {
        di = 2.0 * d_star;
      } else {
        // sigma = 0 corner: d* = 0, any positive d works; demand an explicit
        // choice only when the user asked for a designed envelope.
        di = 1.0;
      }
      d.push_back(di);
    }
    s.theorem1 = validate_theorem1(sigma_star, c_star, eps_star, d, config.nu);
    s.d = d;
  }

  // Measurement-noise floor on epsilon.
  if (config.enable_m) {
    const VectorXd bounds = s.signals->noise_bounds();
    for (int i = 0; i < N; ++i) {
      const double floor = noise_floor(s.nodes[i], bounds(i));
      if (bounds(i) > 0.0 && s.nodes[i].epsilon <= floor)
        throw ParameterViolation("node " + std::to_string(i + 1) + ": epsilon = " +
                                 std::to_string(s.nodes[i].epsilon) +
                                 " must exceed the noise floor gamma(2 m) = " +
                                 std::to_string(floor));
    }
  }

  if (config.input_trigger.enabled) {
    NodeEtmParams p{config.input_trigger.sigma, config.input_trigger.c, config.input_trigger.b,
                    config.input_trigger.epsilon, config.input_trigger.alpha,
                    config.input_trigger.gamma};
    p.validate();
    s.input_etm = p;
  }

  // Initial conditions (defaults: x0 = 0, z0 = 0, eta0 = 0, e0 = 0).
  StateLayout lay;
  lay.nx = s.plant->nx();
  lay.nz = s.observer->nz();
  lay.node_widths = s.plant->node_widths();
  lay.nu_trig = s.input_etm ? s.plant->nu() : 0;

  auto fill = [](const std::vector<double>& src, int n, const char* what) {
    if (!src.empty() && static_cast<int>(src.size()) != n)
      throw ConfigError(std::string("initial ") + what + " has wrong length");
    VectorXd v = VectorXd::Zero(n);
    for (size_t k = 0; k < src.size(); ++k) v(static_cast<int>(k)) = src[k];
    return v;
  };
  const VectorXd x0 = fill(config.x0, lay.nx, "x");
  const VectorXd z0 = fill(config.z0, lay.nz, "z");
  const VectorXd eta0 = fill(config.eta0, lay.num_nodes(), "eta");
  for (int i = 0; i < lay.num_nodes(); ++i)
    if (eta0(i) < 0.0) throw ConfigError("initial eta must be nonnegative");

  VectorXd y0(lay.ny());
  s.plant->output(x0, y0);
  VectorXd m0(lay.ny());
  s.signals->m(0.0, m0);
  VectorXd ybar0 = y0 + m0;  // default: first sample transmitted at t = 0, e(0) = 0
  if (config.ybar0) {
    if (static_cast<int>(config.ybar0->size()) != lay.ny())
      throw ConfigError("initial ybar has wrong length");
    for (int k = 0; k < lay.ny(); ++k) ybar0(k) = (*config.ybar0)[k];
  }

  s.q0 = VectorXd::Zero(lay.dim());
  s.q0.segment(lay.x_offset(), lay.nx) = x0;
  s.q0.segment(lay.z_offset(), lay.nz) = z0;
  s.q0.segment(lay.e_offset(), lay.ny()) = ybar0 - y0 - m0;
  s.q0.segment(lay.eta_offset(), lay.num_nodes()) = eta0;

  s.ybar0 = ybar0;
  if (s.input_etm) {
    VectorXd u0(s.plant->nu());
    s.signals->u(0.0, u0);
    s.ubar0 = u0;  // e_u(0) = 0
  } else {
    s.ubar0 = VectorXd();
  }
  return s;
}

std::vector<ScenarioConfig> table1_rows() {
  struct Row {
    double s1, s2, e1, e2, a1, a2, l1, l2;
  };
  const std::vector<Row> rows = {
      {600, 800, 10, 10, 2, 3, 5, 5},     {600, 800, 1, 1, 2, 3, 5, 5},
      {600, 800, 100, 100, 2, 3, 5, 5},   {600, 800, 1000, 1000, 2, 3, 5, 5},
      {0, 0, 10, 10, 2, 3, 5, 5},         {300, 400, 10, 10, 2, 3, 5, 5},
      {950, 950, 10, 10, 2, 3, 5, 5},     {600, 800, 10, 10, 1, 1.5, 5, 5},
      {600, 800, 10, 10, 4, 6, 5, 5},     {600, 800, 10, 10, 10, 10, 5, 5},
      {600, 800, 10, 10, 2, 3, 1, 1},     {600, 800, 10, 10, 2, 3, 10, 10},
      {600, 800, 10, 10, 2, 3, 100, 100}};

  std::vector<ScenarioConfig> configs;
  int idx = 1;
  for (const Row& r : rows) {
    ScenarioConfig c = preset_config("baseline");
    c.name = "table1-row" + std::to_string(idx++);
    c.nodes[0].sigma = r.s1;
    c.nodes[1].sigma = r.s2;
    c.nodes[0].epsilon = r.e1;
    c.nodes[1].epsilon = r.e2;
    c.nodes[0].alpha = KinfFn::linear(r.a1);
    c.nodes[1].alpha = KinfFn::linear(r.a2);
    c.nodes[0].gamma = KinfFn::quadratic(r.l1);
    c.nodes[1].gamma = KinfFn::quadratic(r.l2);
    for (auto& n : c.nodes)
      if (n.sigma == 0.0) n.d = 1.0;  // d* = 0 corner needs an explicit weight
    configs.push_back(c);
  }
  return configs;
}

ScenarioConfig preset_config(const std::string& name) {
  if (name == "baseline" || name == "table1-row1") {
    ScenarioConfig c;
    c.name = name == "baseline" ? "baseline" : "table1-row1";
    c.plant = "robot-arm";
    c.horizon = 30.0;
    c.dt = 1e-3;
    c.seed = 1;
    c.x0 = {3, 2, 3, -2};
    c.z0 = {0, 0, 0, 0};
    c.eta0 = {10, 10};
    NodeConfig n1;
    n1.sigma = 600;
    n1.c = 0.001;
    n1.b = 1.0;
    n1.epsilon = 10;
    n1.alpha = KinfFn::linear(2.0);
    n1.gamma = KinfFn::quadratic(5.0);
    NodeConfig n2 = n1;
    n2.sigma = 800;
    n2.alpha = KinfFn::linear(3.0);
    c.nodes = {n1, n2};
    c.sweep.runs = 100;
    c.sweep.x_low = {0, 0, 0, 0};
    c.sweep.x_high = {20, 10, 20, 10};
    return c;
  }
  if (name.rfind("table1-row", 0) == 0) {
    const int idx = std::stoi(name.substr(10));
    auto rows = table1_rows();
    if (idx < 1 || idx > static_cast<int>(rows.size()))
      throw ConfigError("unknown preset '" + name + "'");
    return rows[static_cast<size_t>(idx - 1)];
  }
  if (name == "equilibrium") {
    ScenarioConfig c;
    c.name = "equilibrium";
    c.plant = "linear-decay";
    c.horizon = 30.0;
    c.x0 = {1.0, -2.0};  // the plant's rest point: outputs constant from t = 0
    c.z0 = {1.0, -2.0};
    c.eta0 = {10, 10};
    c.enable_u = c.enable_v = c.enable_m = false;
    NodeConfig n;
    n.sigma = 0.0;
    n.c = 0.0;
    n.b = 1.0;
    n.epsilon = 10.0;
    n.alpha = KinfFn::linear(2.0);
    n.gamma = KinfFn::quadratic(5.0);
    n.d = 1.0;
    c.nodes = {n, n};
    return c;
  }
  if (name == "settling") {
    ScenarioConfig c = preset_config("equilibrium");
    c.name = "settling";
    c.x0 = {81.0, -62.0};  // 100 units from rest; outputs settle around t = 10
    c.z0 = {0.0, 0.0};
    return c;
  }
  if (name == "input-trigger") {
    ScenarioConfig c = preset_config("baseline");
    c.name = "input-trigger";
    c.input_trigger.enabled = true;
    c.input_trigger.sigma = 0.0;
    c.input_trigger.c = 0.0;
    c.input_trigger.b = 1.0;
    c.input_trigger.epsilon = 0.5;
    c.input_trigger.alpha = KinfFn::linear(1.0);
    c.input_trigger.gamma = KinfFn::linear(1.0);
    return c;
  }
  if (name == "theorem3" || name == "theorem3-nodist") {
    ScenarioConfig c = preset_config("baseline");
    c.name = name;
    c.theorem3.enabled = true;
    c.theorem3.decay_fraction = 0.5;
    c.theorem3.mu = 1.0;
    // The designed epsilon budget sits below the measurement-noise floor, so
    // the envelope scenarios run noise-free; only v is toggled.
    c.enable_m = false;
    if (name == "theorem3-nodist") c.enable_v = false;
    return c;
  }
  throw ConfigError("unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names = {"baseline",       "equilibrium", "settling",
                                    "input-trigger",  "theorem3",    "theorem3-nodist"};
  for (int i = 1; i <= 13; ++i) names.push_back("table1-row" + std::to_string(i));
  return names;
}

}  // namespace deto
