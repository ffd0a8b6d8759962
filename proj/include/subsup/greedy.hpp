#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "subsup/set_function.hpp"

namespace subsup {

// When the selection loop stops and which prefix is the answer.
//  - before_overflow: stop before the first step that would exceed theta;
//    the returned set is always feasible.
//  - first_overflow: include the first step with g > theta, then stop.
//  - continue_to: keep selecting until g >= beta_plus * theta or no
//    candidate remains.
struct StopPolicy {
  enum class Kind { before_overflow, first_overflow, continue_to };
  Kind kind = Kind::before_overflow;
  double beta_plus = 0.0;

  static StopPolicy before_overflow() { return {Kind::before_overflow, 0.0}; }
  static StopPolicy first_overflow() { return {Kind::first_overflow, 0.0}; }
  static StopPolicy continue_to(double beta_plus) {
    if (!(beta_plus > 1.0)) throw std::invalid_argument("StopPolicy: beta_plus must exceed 1");
    return {Kind::continue_to, beta_plus};
  }
};

enum class Algo { ratio_marginal, greedy_f, greedy_g, ratio_fg, random_pick };

const char* algo_name(Algo a);

struct GreedyStep {
  int element = -1;
  double f_value = 0.0;  // cumulative objective after this step
  double g_value = 0.0;  // cumulative cost after this step
  double ratio = 0.0;    // selection ratio used at this step
};

struct GreedyTrace {
  std::vector<GreedyStep> steps;
  double theta = 0.0;
  std::vector<int> dropped;  // elements removed in preprocessing
  StopPolicy policy;
  std::size_t returned_prefix = 0;  // steps[0..returned_prefix) form the answer
  int universe = 0;

  Subset returned_set() const {
    Subset s(universe);
    for (std::size_t i = 0; i < returned_prefix; ++i) s.add(steps[i].element);
    return s;
  }

  double final_f() const { return returned_prefix == 0 ? 0.0 : steps[returned_prefix - 1].f_value; }
  double final_g() const { return returned_prefix == 0 ? 0.0 : steps[returned_prefix - 1].g_value; }

  // Index of the first step with g > theta, or steps.size() if none.
  std::size_t overflow_index() const {
    for (std::size_t i = 0; i < steps.size(); ++i)
      if (steps[i].g_value > theta) return i;
    return steps.size();
  }
};

// The ratio-marginal rule: after dropping every element whose singleton cost
// exceeds theta, repeatedly select argmax f(v|S)/g(v|S). Zero-cost positive
// candidates are taken first (largest f-marginal among them); zero-value
// candidates are never selected. Ties fall to the lowest element index.
GreedyTrace run_ratio_marginal(const SetFunction& f, const SetFunction& g, double theta,
                               StopPolicy policy);

// The comparison heuristics, sharing preprocessing, stopping, and
// tie-breaking with the main rule. greedy_f maximizes f(v|S); greedy_g
// minimizes g(v|S); ratio_fg maximizes the total ratio f(S+v)/g(S+v);
// random_pick selects uniformly (deterministic in seed).
GreedyTrace run_baseline(Algo kind, const SetFunction& f, const SetFunction& g, double theta,
                         StopPolicy policy, std::uint64_t seed = 0);

// g(S_step) / theta.
double empirical_beta(const GreedyTrace& trace, std::size_t step);

// CSV with columns: algorithm,step,element,f,g,ratio,beta.
std::string trace_csv(const GreedyTrace& trace, const std::string& algorithm,
                      bool header = true);

}  // namespace subsup
