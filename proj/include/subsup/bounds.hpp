#pragma once

namespace subsup {

// Closed-form approximation guarantees for the ratio-marginal greedy.
// gamma: weak supermodular curvature of the cost, in [0, 1).
// c:     submodular curvature of the objective, in [0, 1).
// beta:  realized cost over budget, g(S_i) / theta.

// 1 - e^{-(1-gamma)}: objective guarantee at the first overflow.
double bound_main(double gamma);

// (2 - gamma) / (1 - gamma): cap on the overflow factor at the first
// overflowing step.
double bound_overflow_cap(double gamma);

// 1 - e^{-beta (1-gamma)}: guarantee at any step with g(S_i) = beta * theta
// (beta <= 1 under the weak curvature; any beta under the strict one).
double bound_beta(double gamma, double beta);

// 1 - (1 - (1-c)(1-gamma))^{1/(1-c)}: curvature-of-f refinement.
double bound_curv_f(double c, double gamma);

// Guarantee when greedy continues to overflow factor beta_plus >= 1.
// The gamma = 0 singularity is replaced by its analytic limit
// 1 - e^{-(beta_plus - 1)} * c^{1/(1-c)}.
double bound_beyond(double c, double gamma, double beta_plus);

// beta (1 + epsilon / b_star) * b_star: cost guarantee of the dual
// binary-search reduction.
double bound_dual_cost(double beta_primal, double epsilon, double b_star);

}  // namespace subsup
