#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "subsup/greedy.hpp"
#include "subsup/set_function.hpp"

namespace subsup {

// A primal algorithm: budget -> selected set.
using PrimalAlgo = std::function<Subset(double)>;

struct DualConfig {
  double tau = 0.0;      // target objective value
  double epsilon = 0.0;  // binary-search precision; <= 0 means g(V) * 2^-20
  double alpha = 1.0;    // objective discount used in the acceptance test
  PrimalAlgo primal;
};

struct DualProbe {
  double budget = 0.0;
  bool accepted = false;
};

struct DualResult {
  Subset best_set;
  double f_value = 0.0;
  double g_value = 0.0;
  double budget_found = 0.0;
  int iterations = 0;
  std::vector<DualProbe> probes;
  // False when some rejected budget exceeds an accepted one; heuristic
  // primals are not guaranteed monotone, so this is logged rather than
  // asserted.
  bool monotone_accept_pattern = true;
};

// Binary search over budgets wrapping the primal algorithm: accept a probe
// when f(A(B)) >= alpha * tau, tighten R on accept and L on reject, stop
// at R - L <= epsilon. If no probe was ever accepted a final probe at R is
// forced.
DualResult solve_dual(const SetFunction& f, const SetFunction& g, const DualConfig& config);

// Strongest applicable primal alpha: bound_curv_f(c, gamma) when the
// objective curvature is known (and below 1), else bound_main(gamma).
double choose_alpha(double gamma, std::optional<double> c = std::nullopt);

// Ratio-marginal greedy wrapped as a primal algorithm. Budgets too small for
// any single element yield the empty set. The referenced functions must
// outlive the returned callable.
PrimalAlgo primal_greedy(const SetFunction& f, const SetFunction& g,
                         StopPolicy policy = StopPolicy::before_overflow());

// Exhaustive primal oracle (n <= 20).
PrimalAlgo primal_exhaustive(const SetFunction& f, const SetFunction& g);

}  // namespace subsup
