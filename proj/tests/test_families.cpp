#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "subsup/curvature.hpp"
#include "subsup/families.hpp"
#include "subsup/structure.hpp"

using namespace subsup;

TEST_CASE("make_tightness derives epsilon and k_prime") {
  TightnessInstance big = make_tightness(300, 1.0 / 3.0);
  CHECK(big.k_prime == 201);
  CHECK(big.epsilon == doctest::Approx(1.5).epsilon(1e-12));

  TightnessInstance small = make_tightness(10, 0.5);
  CHECK(small.k_prime == 6);
  CHECK(small.epsilon == doctest::Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_WITH_AS(make_tightness(10, 0.0), doctest::Contains("no admissible epsilon"),
                       std::runtime_error);
  CHECK_THROWS_AS(make_tightness(2, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(make_tightness(10, 1.0), std::invalid_argument);
}

TEST_CASE("tightness cost probe points") {
  TightnessInstance inst = make_tightness(10, 0.5);  // k' = 6, epsilon = 2
  SetFunction g = inst.cost_fn();
  int n = inst.n();

  Subset v1(n);
  v1.add(inst.v_index(1));
  CHECK(g.value(v1) == 1.0);

  Subset o3(n);
  o3.add(inst.o_index(3));
  CHECK(g.value(o3) == 1.0);

  Subset all_v(n);
  for (int i = 1; i <= inst.k_prime; ++i) all_v.add(inst.v_index(i));
  CHECK(g.value(all_v) == 6.0);

  Subset v_plus_o = all_v.with(inst.o_index(2));
  CHECK(g.value(v_plus_o) == doctest::Approx(12.0).epsilon(1e-12));  // k + epsilon

  Subset with_u = v1.with(inst.u_index());
  CHECK(g.value(with_u) == std::numeric_limits<double>::infinity());
}

TEST_CASE("tightness coverage identities (normalized)") {
  for (auto [k, gamma] : std::vector<std::pair<int, double>>{{10, 0.5}, {8, 0.5}, {12, 0.25}}) {
    TightnessInstance inst = make_tightness(k, gamma);
    SetFunction f = inst.objective_fn();
    int n = inst.n();
    int kp = inst.k_prime;
    double q = 1.0 - 1.0 / k;

    Subset oj(n);
    oj.add(inst.o_index(1));
    CHECK(f.value(oj) ==
          doctest::Approx(1.0 - std::pow(static_cast<double>(k), -kp)).epsilon(1e-12));

    Subset all_o(n);
    for (int j = 1; j <= k; ++j) all_o.add(inst.o_index(j));
    CHECK(f.value(all_o) ==
          doctest::Approx(k * (1.0 - std::pow(static_cast<double>(k), -kp))).epsilon(1e-12));

    Subset all_v(n);
    for (int i = 1; i <= kp; ++i) all_v.add(inst.v_index(i));
    CHECK(f.value(all_v) == doctest::Approx(k * (1.0 - std::pow(q, kp))).epsilon(1e-12));

    Subset u(n);
    u.add(inst.u_index());
    CHECK(f.value(u) ==
          doctest::Approx(std::pow(q, kp) - std::pow(static_cast<double>(k), -kp)).epsilon(1e-12));

    // f(v_i) is strictly decreasing in i: the greedy order is forced
    double prev = 2.0;
    for (int i = 1; i <= kp; ++i) {
      Subset vi(n);
      vi.add(inst.v_index(i));
      double val = f.value(vi);
      CHECK(val == doctest::Approx(std::pow(q, i - 1)).epsilon(1e-12));
      CHECK(val < prev);
      prev = val;
    }
  }
}

TEST_CASE("tightness expected ratio closed form") {
  TightnessInstance inst300 = make_tightness(300, 1.0 / 3.0);
  // independent naive evaluation of (1 - (1-1/k)^k') / (1 - k^-k')
  double naive = (1.0 - std::pow(1.0 - 1.0 / 300.0, 201)) / (1.0 - std::pow(300.0, -201));
  double val = tightness_expected_ratio(inst300);
  CHECK(val == doctest::Approx(naive).epsilon(1e-12));
  CHECK(std::fabs(val - 0.4888619) < 1e-4);
  // within 0.01 of the k -> infinity asymptote 1 - e^{-(1-gamma)}
  CHECK(std::fabs(val - (1.0 - std::exp(-2.0 / 3.0))) < 0.01);

  TightnessInstance inst10 = make_tightness(10, 0.5);
  double naive10 = (1.0 - std::pow(0.9, 6)) / (1.0 - 1e-6);
  CHECK(tightness_expected_ratio(inst10) == doctest::Approx(naive10).epsilon(1e-12));
  CHECK(std::fabs(tightness_expected_ratio(inst10) - 0.46856) < 1e-4);

  // growing k walks the ratio toward the 1 - e^{-(1-gamma)} asymptote
  double asymptote = 1.0 - std::exp(-2.0 / 3.0);
  double at_600 = tightness_expected_ratio(make_tightness(600, 1.0 / 3.0));
  CHECK(std::fabs(at_600 - asymptote) < std::fabs(val - asymptote));
}

TEST_CASE("small tightness cost is supermodular on the sub-ground-set") {
  TightnessInstance inst = make_tightness(8, 0.5);  // k' = 5, epsilon = 2, jump = 4
  CHECK(inst.k_prime == 5);
  CHECK(inst.jump == doctest::Approx(4.0).epsilon(1e-12));
  SetFunction g = inst.cost_fn_sub_ground();
  StructureReport rep = check_structure(g);
  CHECK(rep.monotone);
  CHECK(rep.supermodular);

  // The probe pair (T = V_{k'}, S = {o_1}) realizes the ratio k'/(k+eps-1)
  // behind the construction's target curvature.
  int kp = inst.k_prime;
  Subset all_v(kp + 1);
  for (int i = 0; i < kp; ++i) all_v.add(i);
  Subset o1(kp + 1);
  o1.add(kp);
  double probe_ratio = g.value(all_v) / (g.value(all_v.union_with(o1)) - g.value(o1));
  CHECK(probe_ratio == doctest::Approx(kp / (8.0 + inst.epsilon - 1.0)).epsilon(1e-12));

  // The exhaustive weak curvature is attained by a smaller split of V_{k'}:
  // T of size ceil((k'+1)/2) against S = (V \ T) + o_1, giving
  // gamma = jump / (jump + ceil((k'+1)/2)). It upper-bounds the probe value.
  WeakCurvature weak = curvature_supermodular_weak(g);
  int t_star = (kp + 2) / 2;
  CHECK(weak.gamma == doctest::Approx(inst.jump / (inst.jump + t_star)).epsilon(1e-12));
  CHECK(weak.gamma >= 1.0 - probe_ratio - 1e-12);
}

TEST_CASE("random instances are deterministic and well-formed") {
  SyntheticInstance a = make_random_instance(1, 6);
  SyntheticInstance b = make_random_instance(1, 6);
  CHECK(a.coverage.atom_weights == b.coverage.atom_weights);
  CHECK(a.coverage.covers == b.coverage.covers);
  CHECK(a.cost.unit_costs == b.cost.unit_costs);
  CHECK(a.cost.exponent == b.cost.exponent);

  SyntheticInstance c = make_random_instance(2, 6);
  CHECK(a.cost.unit_costs != c.cost.unit_costs);

  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    SyntheticInstance inst = make_random_instance(seed, 5);
    StructureReport fs = check_structure(inst.coverage.to_set_function());
    CHECK(fs.monotone);
    CHECK(fs.submodular);
    StructureReport gs = check_structure(inst.cost.to_set_function());
    CHECK(gs.monotone);
    CHECK(gs.supermodular);
    if (inst.cost.exponent == 1.0)
      CHECK(curvature_supermodular_weak(inst.cost.to_set_function()).gamma <= 1e-12);
  }

  CHECK_THROWS_AS(make_random_instance(1, 17), std::invalid_argument);
}

TEST_CASE("instance json round trip") {
  SyntheticInstance inst = make_random_instance(7, 5);
  nlohmann::json j = inst.to_json();
  SyntheticInstance back = SyntheticInstance::from_json(j);
  CHECK(back.n == inst.n);
  CHECK(back.coverage.atom_weights == inst.coverage.atom_weights);
  CHECK(back.coverage.covers == inst.coverage.covers);
  CHECK(back.cost.unit_costs == inst.cost.unit_costs);
  CHECK(back.cost.exponent == inst.cost.exponent);
}
