#pragma once

#include <vector>

#include "deto/etm/etm.hpp"

namespace deto {

/// Validation report for a full parameter set: the floor d*_i, the margin
/// delta_i it buys, and the practical-stability budget nu the epsilons cost.
/// nu is reported, never enforced at runtime.
struct Theorem1Report {
  struct Node {
    double sigma_star = 0.0;
    double c_star = 0.0;
    double epsilon_star = 0.0;
    double d_star = 0.0;   // sigma* / (1 - sigma* c*)
    double d = 0.0;        // chosen, must exceed d_star
    double delta = 0.0;    // d - sigma* (1 + d c*), must be positive
    bool degenerate = false;  // sigma* = 0 corner: d* = 0, d user-chosen
  };
  std::vector<Node> nodes;
  double nu_min = 0.0;  // sum (1 + d_i c*_i) epsilon*_i
  double nu = 0.0;      // accepted budget (>= nu_min)
};

/// Checks sigma*_i c*_i < 1 and d_i > d*_i for every node and computes the
/// derived quantities. Throws ParameterViolation naming the failed
/// inequality. A non-positive requested nu means "use the minimum".
Theorem1Report validate_theorem1(const std::vector<double>& sigma_star,
                                 const std::vector<double>& c_star,
                                 const std::vector<double>& epsilon_star,
                                 const std::vector<double>& d, double nu_requested = 0.0);

/// Linear-decay design: picks per-node filter rates and an epsilon budget so
/// the composite Lyapunov function contracts at the requested rate a_U with
/// floor mu.
struct Theorem3Design {
  double a = 0.0;    // certificate decay rate
  double a_U = 0.0;  // requested rate, in (0, a]
  double mu = 0.0;
  struct Node {
    double sigma_star = 0.0;
    double c_star = 0.0;
    double a_star = 0.0;  // strict lower bound on the filter rate, with headroom
    double a_i = 0.0;     // chosen filter rate (>= a_star)
    double d = 0.0;       // sigma* (1 - sigma* c* - a_U/a*)^{-1}; 0 at the sigma*=0 corner
    bool degenerate = false;
  };
  std::vector<Node> nodes;
  double varsigma = 0.0;        // max_i d_i c*_i
  double epsilon_budget = 0.0;  // sum of epsilon*_i must not exceed a_U mu / (1 + varsigma)
  std::vector<double> epsilon;  // equal split of the budget
};

/// Throws DecayUnachievable when a_U > a and ParameterViolation when some
/// sigma*_i c*_i >= 1. The strict bound on a*_i carries 5% headroom.
Theorem3Design design_theorem3(double a, double a_U, double mu,
                               const std::vector<double>& sigma_star,
                               const std::vector<double>& c_star);

}  // namespace deto
