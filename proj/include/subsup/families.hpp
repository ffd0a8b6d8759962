#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "subsup/set_function.hpp"

namespace subsup {

// Weighted max-cover objective: f(S) = total weight of atoms covered by at
// least one element of S. Grounded, monotone, submodular by construction.
struct WeightedCoverage {
  std::vector<double> atom_weights;
  std::vector<std::vector<int>> covers;  // per element: atom indices

  int n() const { return static_cast<int>(covers.size()); }
  int atom_count() const { return static_cast<int>(atom_weights.size()); }
  double total_weight() const;

  SetFunction to_set_function(std::vector<std::string> labels = {}) const;

  nlohmann::json to_json() const;
  static WeightedCoverage from_json(const nlohmann::json& j);
};

// g(S) = (sum of unit costs in S)^p. Grounded, monotone; supermodular for
// p >= 1, modular at p = 1.
struct PowerCost {
  std::vector<double> unit_costs;
  double exponent = 1.0;

  int n() const { return static_cast<int>(unit_costs.size()); }
  SetFunction to_set_function() const;

  nlohmann::json to_json() const;
  static PowerCost from_json(const nlohmann::json& j);
};

// g(S) = offset * [S nonempty] + number of edges induced by S.
struct EdgeCountCost {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;
  double offset = 0.0;

  SetFunction to_set_function() const;
};

// The adversarial weighted max-cover instance with a supermodular jump cost.
// Ground set: v_1..v_{k'} (indices 0..k'-1), o_1..o_k (k'..k'+k-1), u (k'+k).
// All coverage weights are stored normalized by k^{k'}.
struct TightnessInstance {
  int k = 0;
  double gamma = 0.0;  // target curvature the construction was built for
  double epsilon = 0.0;
  int k_prime = 0;
  double jump = 0.0;  // k + epsilon - k' - 1, the supermodular jump coefficient
  WeightedCoverage objective;

  int n() const { return k_prime + k + 1; }
  int u_index() const { return k_prime + k; }
  int v_index(int i) const { return i - 1; }            // i in 1..k'
  int o_index(int j) const { return k_prime + j - 1; }  // j in 1..k

  double cost_of(const Subset& s) const;

  SetFunction objective_fn() const;
  SetFunction cost_fn() const;

  // The jump cost restricted to {v_1..v_{k'}, o_1}; small enough for the
  // exhaustive structure and curvature kernels.
  SetFunction cost_fn_sub_ground() const;

  nlohmann::json to_json() const;
};

// Builds the instance with the smallest epsilon in (0, 2] making
// k' = (k + epsilon)(1 - gamma) a positive integer below k.
// Throws "no admissible epsilon" when none exists.
TightnessInstance make_tightness(int k, double gamma);

// Closed-form greedy/optimal ratio (1 - (1-1/k)^{k'}) / (1 - k^{-k'}).
double tightness_expected_ratio(const TightnessInstance& inst);

struct RandomInstanceParams {
  int atom_min = 0;  // <= 0 means n
  int atom_max = 0;  // <= 0 means 3n
  double weight_min = 0.1;
  double weight_max = 1.0;
  double cover_prob = 0.35;
  double cost_min = 0.2;
  double cost_max = 1.0;
  std::vector<double> exponents = {1.0, 1.5, 2.0};
};

// Random coverage objective + power cost pair; the fuzzing substrate.
struct SyntheticInstance {
  std::uint64_t seed = 0;
  int n = 0;
  WeightedCoverage coverage;
  PowerCost cost;

  nlohmann::json to_json() const;
  static SyntheticInstance from_json(const nlohmann::json& j);
};

SyntheticInstance make_random_instance(std::uint64_t seed, int n,
                                       const RandomInstanceParams& params = {});

}  // namespace subsup
