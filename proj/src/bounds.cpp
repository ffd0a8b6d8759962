#include "subsup/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace subsup {

namespace {

void require_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0))
    throw std::invalid_argument("bounds: gamma must lie in [0, 1)");
}

void require_c(double c) {
  if (!(c >= 0.0 && c < 1.0)) throw std::invalid_argument("bounds: c must lie in [0, 1)");
}

// (1 - (1-c)(1-gamma))^{1/(1-c)}, evaluated in log space; exact 0 at
// c = gamma = 0 where the base vanishes.
double residual_curv_f(double c, double gamma) {
  double x = (1.0 - c) * (1.0 - gamma);  // in (0, 1]
  return std::exp(std::log1p(-x) / (1.0 - c));
}

}  // namespace

double bound_main(double gamma) {
  require_gamma(gamma);
  return -std::expm1(-(1.0 - gamma));
}

double bound_overflow_cap(double gamma) {
  require_gamma(gamma);
  return (2.0 - gamma) / (1.0 - gamma);
}

double bound_beta(double gamma, double beta) {
  require_gamma(gamma);
  if (!(beta > 0.0)) throw std::invalid_argument("bound_beta: beta must be positive");
  return -std::expm1(-beta * (1.0 - gamma));
}

double bound_curv_f(double c, double gamma) {
  require_c(c);
  require_gamma(gamma);
  return 1.0 - residual_curv_f(c, gamma);
}

double bound_beyond(double c, double gamma, double beta_plus) {
  require_c(c);
  require_gamma(gamma);
  if (!(beta_plus >= 1.0)) throw std::invalid_argument("bound_beyond: beta_plus must be >= 1");
  if (gamma == 0.0) {
    // Analytic limit of the ratio term as gamma -> 0.
    double ratio_term = std::exp(-(beta_plus - 1.0));
    return 1.0 - ratio_term * residual_curv_f(c, 0.0);
  }
  double w = (1.0 - gamma) / gamma;
  // ((beta_plus + w) / (1 + w))^{-w}, stable for large w.
  double ratio_term = std::exp(-w * std::log1p((beta_plus - 1.0) / (1.0 + w)));
  return 1.0 - ratio_term * residual_curv_f(c, gamma);
}

double bound_dual_cost(double beta_primal, double epsilon, double b_star) {
  if (!(b_star > 0.0)) throw std::invalid_argument("bound_dual_cost: b_star must be positive");
  return beta_primal * (1.0 + epsilon / b_star) * b_star;
}

}  // namespace subsup
