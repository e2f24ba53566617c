#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "deto/kinf.hpp"

using deto::KinfFn;

TEST_CASE("power-law K-infinity evaluation", "[kinf]") {
  const KinfFn lin = KinfFn::linear(2.0);
  CHECK(lin(0.0) == 0.0);
  CHECK(lin(3.0) == 6.0);

  const KinfFn quad = KinfFn::quadratic(5.0);
  CHECK(quad(0.0) == 0.0);
  CHECK(quad(2.0) == 20.0);
  CHECK(quad(std::sqrt(2.0)) == Catch::Approx(10.0).margin(1e-12));

  const KinfFn frac(3.0, 1.5);
  CHECK(frac(4.0) == Catch::Approx(3.0 * 8.0));
}

TEST_CASE("inverse round-trips within 1e-12 relative", "[kinf]") {
  std::mt19937_64 gen(7);
  auto u01 = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  for (int trial = 0; trial < 2000; ++trial) {
    const double k = 1e-3 + 100.0 * u01();
    const double p = 1.0 + 3.0 * u01();
    const KinfFn f(k, p);
    const double s = 1e-6 + 50.0 * u01();
    CHECK(std::abs(f.inverse(f(s)) - s) <= 1e-12 * s);
    // strictly increasing and unbounded on a coarse grid
    CHECK(f(s) < f(s * 1.5));
  }
}

TEST_CASE("invalid parameters are rejected", "[kinf]") {
  CHECK_THROWS_AS(KinfFn(0.0, 1.0), deto::BadInput);
  CHECK_THROWS_AS(KinfFn(-1.0, 2.0), deto::BadInput);
  CHECK_THROWS_AS(KinfFn(1.0, 0.5), deto::BadInput);
}
