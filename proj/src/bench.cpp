#include "subsup/bench.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "subsup/bounds.hpp"
#include "subsup/csv.hpp"
#include "subsup/families.hpp"
#include "subsup/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace subsup::bench {

double curve_f_at(const GreedyTrace& trace, double cost) {
  double f = 0.0;
  for (const GreedyStep& st : trace.steps) {
    if (st.g_value > cost) break;
    f = st.f_value;
  }
  return f;
}

double curve_auc(const GreedyTrace& trace, double cost_cap) {
  double auc = 0.0;
  double prev_g = 0.0, prev_f = 0.0;
  for (const GreedyStep& st : trace.steps) {
    if (st.g_value >= cost_cap) break;
    if (st.g_value > prev_g) auc += prev_f * (st.g_value - prev_g);
    prev_g = st.g_value;
    prev_f = st.f_value;
  }
  if (cost_cap > prev_g) auc += prev_f * (cost_cap - prev_g);
  return auc;
}

// ---------------------------------------------------------------------------
// run_comparison
// ---------------------------------------------------------------------------

BenchmarkReport run_comparison(const SetFunction& f, const SetFunction& g,
                               const ComparisonOptions& opts, nlohmann::json descriptor) {
  if (!(opts.theta > 0.0)) throw std::invalid_argument("run_comparison: theta must be positive");
  if (!(opts.budget_cap > opts.theta))
    throw std::invalid_argument("run_comparison: budget_cap must exceed theta");

  BenchmarkReport report;
  report.descriptor = std::move(descriptor);
  report.theta = opts.theta;
  report.budget_cap = opts.budget_cap;

  StopPolicy policy = StopPolicy::continue_to(opts.budget_cap / opts.theta);
  for (Algo algo : opts.algorithms) {
    std::uint64_t seed = algo == Algo::random_pick ? opts.random_seed : 0;
    report.curves.push_back(
        Curve{algo_name(algo), run_baseline(algo, f, g, opts.theta, policy, seed)});
  }

  const GreedyTrace* rm = nullptr;
  for (const Curve& c : report.curves)
    if (c.algorithm == algo_name(Algo::ratio_marginal)) rm = &c.trace;

  if (opts.with_frontier) {
    if (!rm) throw std::invalid_argument("run_comparison: frontier requires the ratio-marginal curve");
    std::vector<double> grid;
    for (const GreedyStep& st : rm->steps) grid.push_back(st.g_value);
    report.frontier = pareto_frontier(f, g, grid);
  }

  if (f.n() <= opts.curvature_cap) {
    report.gamma = curvature_supermodular_weak(g, opts.curvature_cap).gamma;
    report.gamma_strict = curvature_supermodular_strict(g, opts.curvature_cap).gamma;
    try {
      report.c_sub = curvature_submodular(f, opts.curvature_cap).c;
    } catch (const std::runtime_error&) {
      report.c_sub = 1.0;  // degenerate objective: no usable curvature
    }
    report.has_curvature = true;
    if (rm) {
      for (std::size_t i = 0; i < rm->steps.size(); ++i) {
        double beta = rm->steps[i].g_value / opts.theta;
        if (beta <= 0.0) continue;
        double gam = beta <= 1.0 ? report.gamma : report.gamma_strict;
        if (gam >= 1.0) continue;
        report.rm_bounds.push_back(
            BoundAtStep{static_cast<int>(i + 1), beta, bound_beta(gam, beta)});
      }
    }
  }
  return report;
}

std::string BenchmarkReport::curves_csv() const {
  std::ostringstream out;
  out << "algorithm,step,element,f,g,ratio,beta\n";
  for (const Curve& c : curves) out << trace_csv(c.trace, c.algorithm, false);
  return out.str();
}

nlohmann::json BenchmarkReport::to_json() const {
  nlohmann::json j;
  j["descriptor"] = descriptor;
  j["theta"] = theta;
  j["budget_cap"] = budget_cap;
  nlohmann::json curves_json = nlohmann::json::array();
  for (const Curve& c : curves) {
    nlohmann::json steps = nlohmann::json::array();
    for (const GreedyStep& st : c.trace.steps)
      steps.push_back({{"element", st.element}, {"f", st.f_value}, {"g", st.g_value},
                       {"ratio", std::isfinite(st.ratio) ? st.ratio : -1.0}});
    curves_json.push_back({{"algorithm", c.algorithm},
                           {"steps", steps},
                           {"dropped", c.trace.dropped},
                           {"auc", curve_auc(c.trace, budget_cap)}});
  }
  j["curves"] = curves_json;
  if (!frontier.empty()) {
    nlohmann::json rows = nlohmann::json::array();
    for (const FrontierRow& r : frontier)
      rows.push_back({{"theta", r.theta}, {"f_opt", r.f_opt}, {"witness_mask", r.witness_mask}});
    j["frontier"] = rows;
  }
  if (has_curvature) {
    j["curvature"] = {{"gamma", gamma}, {"gamma_strict", gamma_strict}, {"c", c_sub}};
    nlohmann::json bounds_json = nlohmann::json::array();
    for (const BoundAtStep& b : rm_bounds)
      bounds_json.push_back({{"step", b.step}, {"beta", b.beta}, {"bound", b.bound}});
    j["rm_bounds"] = bounds_json;
  }
  nlohmann::json viols = nlohmann::json::array();
  for (const Violation& v : violations)
    viols.push_back({{"theorem", v.theorem}, {"seed", v.instance_seed}, {"details", v.details}});
  j["violations"] = viols;
  return j;
}

// ---------------------------------------------------------------------------
// fuzz_theorems
// ---------------------------------------------------------------------------

namespace {

struct InstanceChecks {
  std::vector<Violation> violations;
  std::vector<Violation> informational;
};

void add_violation(InstanceChecks& out, const std::string& theorem, std::uint64_t seed,
                   const std::string& details, const SyntheticInstance& inst) {
  out.violations.push_back(
      Violation{theorem, seed, details + " instance=" + inst.to_json().dump()});
}

GreedyTrace safe_trace(const SetFunction& f, const SetFunction& g, double theta,
                       StopPolicy policy) {
  try {
    return run_ratio_marginal(f, g, theta, policy);
  } catch (const std::runtime_error&) {
    GreedyTrace empty;  // every element alone violates theta
    empty.theta = theta;
    empty.policy = policy;
    empty.universe = f.n();
    return empty;
  }
}

InstanceChecks check_instance(std::uint64_t seed, int n, double theta_frac,
                              const FuzzParams& params) {
  InstanceChecks out;
  SyntheticInstance inst = make_random_instance(seed, n);
  SetFunction f = inst.coverage.to_set_function();
  SetFunction g = inst.cost.to_set_function();

  double gamma = curvature_supermodular_weak(g).gamma;
  double c = 0.0;
  try {
    c = curvature_submodular(f).c;
  } catch (const std::runtime_error&) {
    c = 0.0;  // all-zero objective; every bound below is vacuous
  }
  if (gamma >= 1.0 - 1e-12) return out;  // bounds are undefined at gamma = 1

  double g_total = g.value(g.ground().full_set());
  double theta = theta_frac * g_total;
  if (!(theta > 0.0)) return out;

  ExactResult opt = primal_opt(f, g, theta);
  double f_star = opt.best_value;
  double g_star = g.value(opt.best_set);

  double scale = params.bound_scale;
  double tol = params.tol;
  char buf[256];

  GreedyTrace fo = safe_trace(f, g, theta, StopPolicy::first_overflow());
  std::size_t k = fo.overflow_index();
  bool overflowed = k < fo.steps.size();

  // (a) Theorem Boundary: one of the two guarantees holds at the overflow.
  {
    bool ok;
    if (overflowed) {
      double f_km1 = k == 0 ? 0.0 : fo.steps[k - 1].f_value;
      double f_k = fo.steps[k].f_value;
      double beta = fo.steps[k].g_value / theta;
      ok = f_km1 >= scale * bound_main(gamma) * f_star - tol ||
           f_k >= scale * bound_beta(gamma, beta) * f_star - tol;
    } else {
      ok = fo.final_f() >= scale * bound_main(gamma) * f_star - tol;
    }
    if (!ok) {
      std::snprintf(buf, sizeof(buf), "gamma=%.17g f*=%.17g theta=%.17g", gamma, f_star, theta);
      add_violation(out, "boundary_disjunction", seed, buf, inst);
    }
  }

  // (b) overflow cap g(S_k) <= (2-gamma)/(1-gamma) * theta.
  if (overflowed) {
    double cap = bound_overflow_cap(gamma) * theta / scale;
    if (!(fo.steps[k].g_value <= cap + tol)) {
      std::snprintf(buf, sizeof(buf), "g_k=%.17g cap=%.17g gamma=%.17g theta=%.17g",
                    fo.steps[k].g_value, cap, gamma, theta);
      add_violation(out, "overflow_cap", seed, buf, inst);
    }
  }

  // (c) pre-overflow corollary at every feasible step.
  for (std::size_t i = 0; i < fo.steps.size(); ++i) {
    double gi = fo.steps[i].g_value;
    if (gi > theta) break;
    double beta = gi / theta;
    if (!(beta > 0.0)) continue;
    if (!(fo.steps[i].f_value >= scale * bound_beta(gamma, beta) * f_star - tol)) {
      std::snprintf(buf, sizeof(buf), "step=%zu beta=%.17g f_i=%.17g f*=%.17g", i + 1, beta,
                    fo.steps[i].f_value, f_star);
      add_violation(out, "before_overflow", seed, buf, inst);
    }
  }

  // (d) curvature-of-f bound at the first overflow (bound_main at c -> 1).
  {
    double bcf = c < 1.0 - 1e-12 ? bound_curv_f(c, gamma) : bound_main(gamma);
    double f_k = overflowed ? fo.steps[k].f_value : fo.final_f();
    if (!(f_k >= scale * bcf * f_star - tol)) {
      std::snprintf(buf, sizeof(buf), "c=%.17g gamma=%.17g f_k=%.17g bound=%.17g f*=%.17g", c,
                    gamma, f_k, bcf, f_star);
      add_violation(out, "curv_f", seed, buf, inst);
    }
  }

  // (e) recurrence lemma at every step with g(S_i) <= g(S*).
  {
    double prev_f = 0.0, prev_g = 0.0;
    for (std::size_t i = 0; i < fo.steps.size(); ++i) {
      if (prev_g <= g_star) {
        double df = fo.steps[i].f_value - prev_f;
        double dg = fo.steps[i].g_value - prev_g;
        double lhs = (g_star - (1.0 - c) * (1.0 - gamma) * prev_g) * df;
        double rhs = (f_star - prev_f) * (1.0 - gamma) * dg * scale;
        if (!(lhs >= rhs - tol)) {
          std::snprintf(buf, sizeof(buf), "i=%zu lhs=%.17g rhs=%.17g g*=%.17g", i, lhs, rhs,
                        g_star);
          add_violation(out, "curv_recur", seed, buf, inst);
        }
      }
      prev_f = fo.steps[i].f_value;
      prev_g = fo.steps[i].g_value;
    }
  }

  // Beyond-overflow bound under the theta-based reading; reported separately
  // because the theorem's precondition is ambiguous in that reading.
  if (c < 1.0 - 1e-12) {
    GreedyTrace ct = safe_trace(f, g, theta, StopPolicy::continue_to(3.0));
    for (std::size_t i = 0; i < ct.steps.size(); ++i) {
      double beta_plus = ct.steps[i].g_value / theta;
      if (beta_plus < 1.0) continue;
      double bound = bound_beyond(c, gamma, beta_plus);
      if (!(ct.steps[i].f_value >= scale * bound * f_star - tol)) {
        std::snprintf(buf, sizeof(buf), "step=%zu beta+=%.17g f_i=%.17g bound=%.17g", i + 1,
                      beta_plus, ct.steps[i].f_value, bound);
        out.informational.push_back(Violation{"bound_beyond_theta", seed, buf});
      }
    }
  }

  return out;
}

}  // namespace

FuzzReport fuzz_theorems(const FuzzParams& params) {
  if (params.n_max > kCurvatureCapDefault)
    throw std::invalid_argument("fuzz_theorems: n_max exceeds the exact-curvature cap");
  if (params.n_min < 1 || params.n_min > params.n_max)
    throw std::invalid_argument("fuzz_theorems: bad size range");

  Rng master(params.seed);
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(params.n_instances));
  std::vector<int> sizes(static_cast<std::size_t>(params.n_instances));
  std::vector<double> fracs(static_cast<std::size_t>(params.n_instances));
  for (int i = 0; i < params.n_instances; ++i) {
    seeds[static_cast<std::size_t>(i)] = master.next_u64();
    sizes[static_cast<std::size_t>(i)] = master.uniform_int(params.n_min, params.n_max);
    fracs[static_cast<std::size_t>(i)] =
        master.uniform(params.theta_frac_min, params.theta_frac_max);
  }

  std::vector<InstanceChecks> results(static_cast<std::size_t>(params.n_instances));
  std::int64_t count = params.n_instances;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::int64_t i = 0; i < count; ++i)
    results[static_cast<std::size_t>(i)] =
        check_instance(seeds[static_cast<std::size_t>(i)], sizes[static_cast<std::size_t>(i)],
                       fracs[static_cast<std::size_t>(i)], params);

  FuzzReport report;
  report.instances = params.n_instances;
  for (const InstanceChecks& r : results) {
    report.violations.insert(report.violations.end(), r.violations.begin(), r.violations.end());
    report.informational.insert(report.informational.end(), r.informational.begin(),
                                r.informational.end());
  }
  return report;
}

nlohmann::json FuzzReport::to_json() const {
  nlohmann::json j;
  j["instances"] = instances;
  nlohmann::json viols = nlohmann::json::array();
  for (const Violation& v : violations)
    viols.push_back({{"theorem", v.theorem}, {"seed", v.instance_seed}, {"details", v.details}});
  j["violations"] = viols;
  nlohmann::json infos = nlohmann::json::array();
  for (const Violation& v : informational)
    infos.push_back({{"theorem", v.theorem}, {"seed", v.instance_seed}, {"details", v.details}});
  j["informational"] = infos;
  return j;
}

}  // namespace subsup::bench
