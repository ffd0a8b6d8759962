#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "subsup/families.hpp"
#include "subsup/greedy.hpp"
#include "subsup/rng.hpp"

using namespace subsup;

namespace {

// The worked instance: coverage over A = {1,2}, B = {2,3}, C = {4} with
// g = |S|^2 and theta = 4.
WeightedCoverage toy_coverage() {
  WeightedCoverage cov;
  cov.atom_weights = {1.0, 1.0, 1.0, 1.0};  // elements 1..4
  cov.covers = {{0, 1}, {1, 2}, {3}};
  return cov;
}

SetFunction cardinality_squared(int n) {
  return SetFunction(GroundSet(n), FnKind::cost, [](const Subset& s) {
    double c = s.count();
    return c * c;
  });
}

SetFunction cardinality(int n) {
  return SetFunction(GroundSet(n), FnKind::objective,
                     [](const Subset& s) { return static_cast<double>(s.count()); });
}

std::vector<int> elements_of(const GreedyTrace& trace) {
  std::vector<int> out;
  for (const GreedyStep& st : trace.steps) out.push_back(st.element);
  return out;
}

}  // namespace

TEST_CASE("ratio-marginal on the toy instance") {
  SetFunction f = toy_coverage().to_set_function();
  SetFunction g = cardinality_squared(3);

  GreedyTrace before = run_ratio_marginal(f, g, 4.0, StopPolicy::before_overflow());
  CHECK(elements_of(before) == std::vector<int>{0, 1});
  CHECK(before.steps[0].ratio == doctest::Approx(2.0));
  CHECK(before.steps[1].ratio == doctest::Approx(1.0 / 3.0));
  CHECK(before.final_f() == 3.0);
  CHECK(before.final_g() == 4.0);

  GreedyTrace first = run_ratio_marginal(f, g, 4.0, StopPolicy::first_overflow());
  CHECK(elements_of(first) == std::vector<int>{0, 1, 2});
  CHECK(first.final_g() == 9.0);
  CHECK(first.overflow_index() == 2);
  CHECK(empirical_beta(first, 2) == doctest::Approx(2.25));
}

TEST_CASE("tightness instance: greedy picks v_1..v_k' then stops") {
  TightnessInstance inst = make_tightness(10, 0.5);  // k' = 6
  SetFunction f = inst.objective_fn();
  SetFunction g = inst.cost_fn();
  GreedyTrace trace = run_ratio_marginal(f, g, 10.0, StopPolicy::before_overflow());
  std::vector<int> expect;
  for (int i = 1; i <= 6; ++i) expect.push_back(inst.v_index(i));
  CHECK(elements_of(trace) == expect);
  CHECK(trace.final_g() == 6.0);
  // u was dropped in preprocessing (infinite cost)
  CHECK(std::find(trace.dropped.begin(), trace.dropped.end(), inst.u_index()) !=
        trace.dropped.end());
  // realized ratio matches the closed form
  Subset all_o(inst.n());
  for (int j = 1; j <= 10; ++j) all_o.add(inst.o_index(j));
  double realized = trace.final_f() / f.value(all_o);
  CHECK(realized == doctest::Approx(tightness_expected_ratio(inst)).epsilon(1e-12));
}

TEST_CASE("theta below every singleton cost") {
  SetFunction f = cardinality(3);
  SetFunction g = cardinality(3);
  CHECK_THROWS_WITH_AS(run_ratio_marginal(f, g, 0.5, StopPolicy::before_overflow()),
                       doctest::Contains("empty after preprocessing"), std::runtime_error);
}

TEST_CASE("baselines on the toy instance") {
  SetFunction f = toy_coverage().to_set_function();
  SetFunction g = cardinality_squared(3);

  GreedyTrace gf = run_baseline(Algo::greedy_f, f, g, 4.0, StopPolicy::before_overflow());
  CHECK(gf.steps[0].element == 0);  // A and B tie at marginal 2; index break picks A

  GreedyTrace gg = run_baseline(Algo::greedy_g, f, g, 4.0, StopPolicy::before_overflow());
  CHECK(gg.steps[0].element == 0);  // all g-marginals equal 1

  GreedyTrace r1 = run_baseline(Algo::random_pick, f, g, 4.0, StopPolicy::before_overflow(), 7);
  GreedyTrace r2 = run_baseline(Algo::random_pick, f, g, 4.0, StopPolicy::before_overflow(), 7);
  CHECK(elements_of(r1) == elements_of(r2));
}

TEST_CASE("ratio-fg uses the total ratio, not the marginal one") {
  // disjoint weights A=4, B=3, C=2; modular costs A=2, B=1, C=1
  WeightedCoverage cov;
  cov.atom_weights = {4.0, 3.0, 2.0};
  cov.covers = {{0}, {1}, {2}};
  SetFunction f = cov.to_set_function();
  PowerCost pc{{2.0, 1.0, 1.0}, 1.0};
  SetFunction g = pc.to_set_function();

  // second step: total ratio prefers {B,C} (5/2) over {B,A} (7/3), while the
  // marginal rule ties A and C at ratio 2 and takes the lower index A
  GreedyTrace fg = run_baseline(Algo::ratio_fg, f, g, 4.0, StopPolicy::before_overflow());
  CHECK(elements_of(fg) == std::vector<int>{1, 2, 0});
  GreedyTrace rm = run_ratio_marginal(f, g, 4.0, StopPolicy::before_overflow());
  CHECK(elements_of(rm) == std::vector<int>{1, 0, 2});
}

TEST_CASE("zero-cost positive-gain candidates are taken first") {
  WeightedCoverage cov;
  cov.atom_weights = {1.0, 5.0};
  cov.covers = {{0}, {1}};
  SetFunction f = cov.to_set_function();
  // element 1 has zero cost, element 0 costs 1
  PowerCost pc{{1.0, 0.0}, 1.0};
  SetFunction g = pc.to_set_function();
  GreedyTrace trace = run_ratio_marginal(f, g, 1.0, StopPolicy::before_overflow());
  CHECK(trace.steps[0].element == 1);
  CHECK(std::isinf(trace.steps[0].ratio));
}

TEST_CASE("zero-value candidates are never selected by ratio-marginal") {
  WeightedCoverage cov;
  cov.atom_weights = {1.0};
  cov.covers = {{0}, {0}};  // element 1 duplicates element 0's coverage
  SetFunction f = cov.to_set_function();
  SetFunction g = cardinality(2);
  GreedyTrace trace = run_ratio_marginal(f, g, 2.0, StopPolicy::continue_to(1.5));
  CHECK(elements_of(trace) == std::vector<int>{0});  // the duplicate is skipped
}

TEST_CASE("scale invariance of the selection sequence") {
  Rng rng(5);
  for (int trial = 0; trial < 8; ++trial) {
    SyntheticInstance inst = make_random_instance(100 + trial, 7);
    SetFunction f = inst.coverage.to_set_function();
    SetFunction g = inst.cost.to_set_function();
    double theta = 0.4 * g.value(g.ground().full_set());
    if (theta <= 0.0) continue;

    // power-of-two scalings keep every product bit-identical
    for (double a : {4.0, 0.25}) {
      WeightedCoverage scaled = inst.coverage;
      for (double& w : scaled.atom_weights) w *= a;
      SetFunction fa = scaled.to_set_function();
      GreedyTrace base, scaled_trace;
      try {
        base = run_ratio_marginal(f, g, theta, StopPolicy::first_overflow());
        scaled_trace = run_ratio_marginal(fa, g, theta, StopPolicy::first_overflow());
      } catch (const std::runtime_error&) {
        continue;
      }
      CHECK(elements_of(base) == elements_of(scaled_trace));
    }
    // scaling g rescales theta identically; restrict to exponents where a
    // power-of-two cost scaling is exact in binary64
    if (inst.cost.exponent == 1.0 || inst.cost.exponent == 2.0) {
      double b = 4.0;
      PowerCost gscaled = inst.cost;
      for (double& c : gscaled.unit_costs) c *= b;
      SetFunction gb = gscaled.to_set_function();
      double theta_b = theta * std::pow(b, inst.cost.exponent);
      GreedyTrace base, scaled_trace;
      try {
        base = run_ratio_marginal(f, g, theta, StopPolicy::first_overflow());
        scaled_trace = run_ratio_marginal(f, gb, theta_b, StopPolicy::first_overflow());
      } catch (const std::runtime_error&) {
        continue;
      }
      CHECK(elements_of(base) == elements_of(scaled_trace));
    }
  }
}

TEST_CASE("trace values are nondecreasing and deterministic") {
  for (std::uint64_t seed = 11; seed < 17; ++seed) {
    SyntheticInstance inst = make_random_instance(seed, 8);
    SetFunction f = inst.coverage.to_set_function();
    SetFunction g = inst.cost.to_set_function();
    double theta = 0.5 * g.value(g.ground().full_set());
    GreedyTrace a, b;
    try {
      a = run_ratio_marginal(f, g, theta, StopPolicy::continue_to(2.0));
      b = run_ratio_marginal(f, g, theta, StopPolicy::continue_to(2.0));
    } catch (const std::runtime_error&) {
      continue;
    }
    CHECK(elements_of(a) == elements_of(b));
    double prev_f = 0.0, prev_g = 0.0;
    for (const GreedyStep& st : a.steps) {
      CHECK(st.f_value >= prev_f);
      CHECK(st.g_value >= prev_g);
      prev_f = st.f_value;
      prev_g = st.g_value;
    }
  }
}

TEST_CASE("empirical beta and csv") {
  SetFunction f = toy_coverage().to_set_function();
  SetFunction g = cardinality_squared(3);
  GreedyTrace trace = run_ratio_marginal(f, g, 4.0, StopPolicy::first_overflow());
  CHECK(empirical_beta(trace, 0) == doctest::Approx(0.25));
  CHECK(empirical_beta(trace, 1) == doctest::Approx(1.0));
  CHECK_THROWS_AS(empirical_beta(trace, 9), std::out_of_range);

  std::string csv = trace_csv(trace, "ratio-marginal");
  CHECK(csv.find("algorithm,step,element,f,g,ratio,beta") == 0);
  CHECK(csv.find("ratio-marginal,1,0,") != std::string::npos);
}
