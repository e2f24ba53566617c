#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "deto/etm/etm.hpp"

using namespace deto;

namespace {
NodeEtmParams baseline_node1() {
  NodeEtmParams p;
  p.sigma = 600.0;
  p.c = 0.001;
  p.b = 1.0;
  p.epsilon = 10.0;
  p.alpha = KinfFn::linear(2.0);
  p.gamma = KinfFn::quadratic(5.0);
  return p;
}
}  // namespace

TEST_CASE("eta flow", "[etm]") {
  NodeEtmParams p = baseline_node1();
  CHECK(eta_flow(0.0, 0.0, p) == 0.0);
  CHECK(eta_flow(10.0, 0.0, p) == -20.0);

  p.alpha = KinfFn::linear(1.0);
  p.c = 0.001;
  p.gamma = KinfFn::quadratic(5.0);
  CHECK(eta_flow(0.0, 1.0, p) == Catch::Approx(0.005));
}

TEST_CASE("trigger margin", "[etm]") {
  NodeEtmParams p = baseline_node1();
  // zero error never triggers
  CHECK(trigger_margin(3.0, 0.0, p) < 0.0);
  // boundary: gamma(sqrt(2)) = 10 with eta = 0
  CHECK(trigger_margin(0.0, std::sqrt(2.0), p) == Catch::Approx(0.0).margin(1e-12));
  // sigma = 0 reduces to the static threshold rule
  p.sigma = 0.0;
  for (double eta : {0.0, 1.0, 100.0}) {
    CHECK(trigger_margin(eta, 1.0, p) == Catch::Approx(5.0 - 10.0));
    CHECK((trigger_margin(eta, 1.5, p) >= 0.0) == (p.gamma(1.5) >= p.epsilon));
  }
}

TEST_CASE("tau_min inverts the trigger threshold", "[etm]") {
  NodeEtmParams p = baseline_node1();
  CHECK(tau_min(p, 1.0) == Catch::Approx(std::sqrt(2.0)).epsilon(1e-12));

  p.gamma = KinfFn::linear(1.0);
  p.epsilon = 0.25;
  CHECK(tau_min(p, 2.0) == Catch::Approx(0.125));
  CHECK_THROWS_AS(tau_min(p, 0.0), BadInput);
}

TEST_CASE("average dwell-time constant", "[etm]") {
  CHECK(average_dwell_tau({0.2, 0.1}) == Catch::Approx(0.05));
  CHECK_THROWS_AS(average_dwell_tau({}), BadInput);
}

TEST_CASE("noise floor", "[etm]") {
  NodeEtmParams p = baseline_node1();
  CHECK(noise_floor(p, 0.0) == 0.0);
  CHECK(noise_floor(p, 0.01) == Catch::Approx(0.002));
  p.gamma = KinfFn::linear(1.0);
  CHECK(noise_floor(p, 1.0) == Catch::Approx(2.0));
}

TEST_CASE("parameter validation", "[etm]") {
  NodeEtmParams p = baseline_node1();
  CHECK_NOTHROW(p.validate());
  p.b = 1.5;
  CHECK_THROWS_AS(p.validate(), ParameterViolation);
  p = baseline_node1();
  p.epsilon = 0.0;
  CHECK_THROWS_AS(p.validate(), ParameterViolation);
}
