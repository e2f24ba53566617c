#pragma once

#include <cmath>

#include "deto/errors.hpp"

namespace deto {

/// Power-law class-K-infinity function s -> k*s^p (k > 0, p >= 1).
/// Strictly increasing, zero at zero, unbounded; invertible on [0, inf).
struct KinfFn {
  double k = 1.0;
  double p = 1.0;

  KinfFn() = default;
  KinfFn(double k, double p) : k(k), p(p) {
    if (!(k > 0.0)) throw BadInput("KinfFn: coefficient must be positive");
    if (!(p >= 1.0)) throw BadInput("KinfFn: exponent must be >= 1");
  }

  static KinfFn linear(double k) { return KinfFn(k, 1.0); }
  static KinfFn quadratic(double k) { return KinfFn(k, 2.0); }

  double operator()(double s) const {
    return p == 1.0 ? k * s : (p == 2.0 ? k * s * s : k * std::pow(s, p));
  }

  double inverse(double y) const {
    const double r = y / k;
    return p == 1.0 ? r : (p == 2.0 ? std::sqrt(r) : std::pow(r, 1.0 / p));
  }
};

}  // namespace deto
