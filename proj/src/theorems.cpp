#include "deto/etm/theorems.hpp"

#include <algorithm>
#include <string>

#include "deto/errors.hpp"

namespace deto {

namespace {
std::string node_tag(size_t i) { return "node " + std::to_string(i + 1); }
}  // namespace

Theorem1Report validate_theorem1(const std::vector<double>& sigma_star,
                                 const std::vector<double>& c_star,
                                 const std::vector<double>& epsilon_star,
                                 const std::vector<double>& d, double nu_requested) {
  const size_t n = sigma_star.size();
  if (c_star.size() != n || epsilon_star.size() != n || d.size() != n)
    throw BadInput("validate_theorem1: per-node arrays differ in length");

  Theorem1Report report;
  for (size_t i = 0; i < n; ++i) {
    Theorem1Report::Node node;
    node.sigma_star = sigma_star[i];
    node.c_star = c_star[i];
    node.epsilon_star = epsilon_star[i];
    node.d = d[i];

    if (!(node.sigma_star >= 0.0))
      throw ParameterViolation(node_tag(i) + ": sigma* >= 0 violated");
    if (!(node.c_star >= 0.0)) throw ParameterViolation(node_tag(i) + ": c* >= 0 violated");
    if (!(node.epsilon_star > 0.0))
      throw ParameterViolation(node_tag(i) + ": epsilon* > 0 violated");
    const double sc = node.sigma_star * node.c_star;
    if (!(sc < 1.0))
      throw ParameterViolation(node_tag(i) + ": sigma* c* < 1 violated (sigma* c* = " +
                               std::to_string(sc) + ")");

    node.d_star = node.sigma_star / (1.0 - sc);
    node.degenerate = node.sigma_star == 0.0;
    if (!(node.d > node.d_star))
      throw ParameterViolation(node_tag(i) + ": d > d* violated (d = " + std::to_string(node.d) +
                               ", d* = " + std::to_string(node.d_star) + ")");
    node.delta = node.d - node.sigma_star * (1.0 + node.d * node.c_star);
    if (!(node.delta > 0.0))
      throw ParameterViolation(node_tag(i) + ": delta = d - sigma*(1 + d c*) > 0 violated");

    report.nu_min += (1.0 + node.d * node.c_star) * node.epsilon_star;
    report.nodes.push_back(node);
  }

  report.nu = nu_requested > 0.0 ? nu_requested : report.nu_min;
  if (report.nu < report.nu_min)
    throw ParameterViolation("nu >= sum (1 + d_i c*_i) epsilon*_i violated (nu = " +
                             std::to_string(report.nu) + ", minimum = " +
                             std::to_string(report.nu_min) + ")");
  return report;
}

Theorem3Design design_theorem3(double a, double a_U, double mu,
                               const std::vector<double>& sigma_star,
                               const std::vector<double>& c_star) {
  const size_t n = sigma_star.size();
  if (c_star.size() != n) throw BadInput("design_theorem3: per-node arrays differ in length");
  if (!(a > 0.0)) throw BadInput("design_theorem3: certificate rate a must be positive");
  if (!(a_U > 0.0)) throw BadInput("design_theorem3: target rate a_U must be positive");
  if (a_U > a)
    throw DecayUnachievable("requested decay a_U = " + std::to_string(a_U) +
                            " exceeds the certificate rate a = " + std::to_string(a));
  if (!(mu > 0.0)) throw BadInput("design_theorem3: floor mu must be positive");

  Theorem3Design design;
  design.a = a;
  design.a_U = a_U;
  design.mu = mu;

  for (size_t i = 0; i < n; ++i) {
    Theorem3Design::Node node;
    node.sigma_star = sigma_star[i];
    node.c_star = c_star[i];
    const double sc = node.sigma_star * node.c_star;
    if (!(sc < 1.0)) throw ParameterViolation(node_tag(i) + ": sigma* c* < 1 violated");

    // Strict bound a* > a_U / (1 - sigma* c*), taken with 5% headroom.
    node.a_star = 1.05 * a_U / (1.0 - sc);
    node.a_i = node.a_star;
    const double denom = 1.0 - sc - a_U / node.a_star;
    node.degenerate = node.sigma_star == 0.0;
    node.d = node.degenerate ? 0.0 : node.sigma_star / denom;
    if (!node.degenerate && !(node.d > 0.0))
      throw ParameterViolation(node_tag(i) + ": d = sigma*(1 - sigma* c* - a_U/a*)^{-1} > 0 violated");
    design.varsigma = std::max(design.varsigma, node.d * node.c_star);
    design.nodes.push_back(node);
  }

  design.epsilon_budget = a_U * mu / (1.0 + design.varsigma);
  design.epsilon.assign(n, design.epsilon_budget / static_cast<double>(n));
  return design;
}

}  // namespace deto
