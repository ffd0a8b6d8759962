#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "subsup/set_function.hpp"

namespace subsup::debate {

// Participant bitmask: bits 0..m-1 are the selectable agents, bit m is
// agent-0 (the fixed evaluator). 128 bits cover pools up to m = 120.
using AgentMask = unsigned __int128;

inline AgentMask mask_bit(int i) { return AgentMask{1} << i; }
inline bool mask_test(AgentMask m, int i) { return (m >> i) & 1; }
inline int mask_popcount(AgentMask m) {
  return __builtin_popcountll(static_cast<std::uint64_t>(m)) +
         __builtin_popcountll(static_cast<std::uint64_t>(m >> 64));
}

inline constexpr int kMaxAgents = 120;

struct Agent {
  double accuracy = 0.5;  // p_i: fraction of questions answered correctly up front
  double openness = 0.5;  // q_i: chance of adopting a correct answer per round
  double cost_in = 1.0;   // price per input token
  double cost_out = 2.0;  // price per output token
};

struct AgentPool {
  std::vector<Agent> agents;  // selectable agents, ids 0..m-1
  Agent agent0;               // the evaluator; participant bit m
  int questions = 0;

  int m() const { return static_cast<int>(agents.size()); }
  const Agent& participant(int pid) const {
    return pid == m() ? agent0 : agents[static_cast<std::size_t>(pid)];
  }

  nlohmann::json to_json() const;
  static AgentPool from_json(const nlohmann::json& j);
};

enum class ViewModel { global_view, local_view };

const char* view_name(ViewModel v);
ViewModel view_from_name(const std::string& name);

struct GenParams {
  double p_min = 0.2, p_max = 0.8;    // selectable accuracy range
  double p0_min = 0.2, p0_max = 0.5;  // agent-0 accuracy range
  double q_min = 0.3, q_max = 0.9;
  double cost_in_min = 0.5, cost_in_max = 2.0;
  double out_factor_min = 2.0, out_factor_max = 4.0;  // cost_out = factor * cost_in
  double price_accuracy_mix = 0.7;  // 1: price rank order equals accuracy rank order
  bool equal_prices = false;        // fixed cost_in = 1, cost_out = 2 for every agent

  nlohmann::json to_json() const;
  static GenParams from_json(const nlohmann::json& j);
};

struct DebateConfig {
  int m = 15;
  int T = 100;
  int rounds = 2;
  ViewModel view = ViewModel::global_view;
  int peer_count = 3;
  double prompt_tokens = 200.0;
  double output_tokens = 100.0;
  int n_scenarios = 50;
  std::uint64_t seed = 1;
  GenParams gen;

  void validate() const;

  nlohmann::json to_json() const;
  static DebateConfig from_json(const nlohmann::json& j);
};

// All randomness of one debate run, pre-sampled so the objective is a
// deterministic function of the selected set.
struct DebateScenario {
  std::vector<AgentMask> initial_correct;  // [T]
  std::vector<AgentMask> coins;            // [T * rounds], index q*rounds + t
  std::vector<AgentMask> peers;            // [(m+1) * rounds], empty for global view
};

AgentPool generate_pool(const DebateConfig& config, std::uint64_t seed);

std::vector<DebateScenario> sample_scenarios(const AgentPool& pool, const DebateConfig& config);

// Mean over scenarios of the number of questions agent-0 answers correctly
// after the configured rounds with participants S + {agent-0}, grounded by
// subtracting the S = {} baseline. S ranges over the selectable agents;
// subsets over the (m+1)-sized participant universe are rejected if they
// name agent-0.
double objective_value(const Subset& s, const AgentPool& pool,
                       const std::vector<DebateScenario>& scenarios, const DebateConfig& config);

// Token expenditure of the workflow with participants S + {agent-0}, minus
// the S = {} baseline. Deterministic; no sampling.
double cost_value(const Subset& s, const AgentPool& pool, const DebateConfig& config);

// SetFunction handles over the m selectable agents; these own copies of the
// pool/scenarios via shared state.
SetFunction objective_fn(const AgentPool& pool, std::vector<DebateScenario> scenarios,
                         const DebateConfig& config);
SetFunction cost_fn(const AgentPool& pool, const DebateConfig& config);

}  // namespace subsup::debate
