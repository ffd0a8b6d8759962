#include "subsup/dual.hpp"

#include <cmath>
#include <stdexcept>

#include "subsup/bounds.hpp"
#include "subsup/exact.hpp"

namespace subsup {

DualResult solve_dual(const SetFunction& f, const SetFunction& g, const DualConfig& config) {
  if (f.n() != g.n()) throw std::invalid_argument("solve_dual: ground sets differ");
  if (!config.primal) throw std::invalid_argument("solve_dual: no primal algorithm");
  if (!(config.alpha > 0.0 && config.alpha <= 1.0))
    throw std::invalid_argument("solve_dual: alpha must lie in (0, 1]");
  if (config.tau < 0.0) throw std::invalid_argument("solve_dual: tau must be nonnegative");

  Subset full = f.ground().full_set();
  double target = config.alpha * config.tau;
  if (f.value(full) < target)
    throw std::runtime_error("solve_dual: target unreachable (f(V) < alpha * tau)");

  double g_full = g.value(full);
  double epsilon = config.epsilon > 0.0 ? config.epsilon : g_full * 0x1.0p-20;
  if (!(epsilon > 0.0)) epsilon = 0x1.0p-20;

  DualResult result;
  result.best_set = Subset(f.n());
  double lo = 0.0, hi = g_full;
  bool have_accept = false;

  auto probe = [&](double budget) {
    Subset s = config.primal(budget);
    bool ok = f.value(s) >= target;
    result.probes.push_back(DualProbe{budget, ok});
    ++result.iterations;
    if (ok) {
      result.best_set = s;
      result.budget_found = budget;
      have_accept = true;
    }
    return ok;
  };

  while (hi - lo > epsilon) {
    double mid = 0.5 * (lo + hi);
    if (probe(mid))
      hi = mid;
    else
      lo = mid;
  }
  if (!have_accept) {
    // All-reject run: Algorithm 1 leaves the answer undefined, so force a
    // final probe at R.
    if (!probe(hi))
      throw std::runtime_error("solve_dual: primal failure at full budget");
  }

  result.f_value = f.value(result.best_set);
  result.g_value = g.value(result.best_set);

  double max_rejected = -std::numeric_limits<double>::infinity();
  double min_accepted = std::numeric_limits<double>::infinity();
  for (const DualProbe& p : result.probes) {
    if (p.accepted)
      min_accepted = std::min(min_accepted, p.budget);
    else
      max_rejected = std::max(max_rejected, p.budget);
  }
  result.monotone_accept_pattern = !(max_rejected > min_accepted);
  return result;
}

double choose_alpha(double gamma, std::optional<double> c) {
  if (c.has_value() && *c < 1.0) return bound_curv_f(*c, gamma);
  return bound_main(gamma);
}

PrimalAlgo primal_greedy(const SetFunction& f, const SetFunction& g, StopPolicy policy) {
  return [&f, &g, policy](double budget) -> Subset {
    if (!(budget > 0.0)) return Subset(f.n());
    try {
      return run_ratio_marginal(f, g, budget, policy).returned_set();
    } catch (const std::runtime_error&) {
      return Subset(f.n());  // no single element fits this budget
    }
  };
}

PrimalAlgo primal_exhaustive(const SetFunction& f, const SetFunction& g) {
  return [&f, &g](double budget) -> Subset {
    if (!(budget >= 0.0)) return Subset(f.n());
    return primal_opt(f, g, budget).best_set;
  };
}

}  // namespace subsup
