#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "subsup/curvature.hpp"
#include "subsup/exact.hpp"
#include "subsup/greedy.hpp"

namespace subsup::bench {

struct Curve {
  std::string algorithm;
  GreedyTrace trace;
};

// f value of the largest step with g <= cost; 0 before the first step.
double curve_f_at(const GreedyTrace& trace, double cost);

// Integral of the step function f(cost) from 0 to cost_cap.
double curve_auc(const GreedyTrace& trace, double cost_cap);

struct Violation {
  std::string theorem;
  std::uint64_t instance_seed = 0;
  std::string details;
};

struct BoundAtStep {
  int step = 0;
  double beta = 0.0;
  double bound = 0.0;
};

struct BenchmarkReport {
  nlohmann::json descriptor;
  double theta = 0.0;
  double budget_cap = 0.0;
  std::vector<Curve> curves;
  std::vector<FrontierRow> frontier;  // empty unless requested
  bool has_curvature = false;
  double gamma = 0.0;
  double gamma_strict = 0.0;
  double c_sub = 0.0;
  std::vector<BoundAtStep> rm_bounds;  // bound at each realized beta of the ratio-marginal curve
  std::vector<Violation> violations;

  std::string curves_csv() const;
  nlohmann::json to_json() const;
};

struct ComparisonOptions {
  double theta = 0.0;       // constraint budget (> 0)
  double budget_cap = 0.0;  // run every algorithm until g reaches this (> theta)
  bool with_frontier = false;
  std::uint64_t random_seed = 0;  // seed of the random baseline
  std::vector<Algo> algorithms = {Algo::ratio_marginal, Algo::ratio_fg, Algo::greedy_f,
                                  Algo::greedy_g, Algo::random_pick};
  int curvature_cap = kCurvatureCapDefault;
};

// Runs every algorithm under ContinueTo(budget_cap / theta) on shared
// functions (debate objectives share their scenario batch through the
// SetFunction), optionally attaching the exact Pareto frontier at the
// ratio-marginal curve's realized costs.
BenchmarkReport run_comparison(const SetFunction& f, const SetFunction& g,
                               const ComparisonOptions& opts, nlohmann::json descriptor = {});

struct FuzzParams {
  int n_instances = 200;
  std::uint64_t seed = 1;
  int n_min = 5;
  int n_max = 10;
  double theta_frac_min = 0.05;
  double theta_frac_max = 0.7;
  double tol = 1e-9;
  // Test hook: > 1 tightens every asserted bound so the harness can be shown
  // to detect violations.
  double bound_scale = 1.0;
};

struct FuzzReport {
  std::vector<Violation> violations;     // Theorem Boundary, overflow cap, pre-overflow
                                         // corollary, curvature-of-f bound, recurrence lemma
  std::vector<Violation> informational;  // beyond-overflow bound under the theta-based reading
  int instances = 0;

  nlohmann::json to_json() const;
};

// Random coverage + power-cost instances checked against exact curvatures
// and exact optima. A passing run has an empty violation log.
FuzzReport fuzz_theorems(const FuzzParams& params);

}  // namespace subsup::bench
