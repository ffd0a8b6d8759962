#include "subsup/debate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "subsup/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace subsup::debate {

const char* view_name(ViewModel v) {
  return v == ViewModel::global_view ? "global" : "local";
}

ViewModel view_from_name(const std::string& name) {
  if (name == "global") return ViewModel::global_view;
  if (name == "local") return ViewModel::local_view;
  throw std::invalid_argument("unknown view model: " + name);
}

void DebateConfig::validate() const {
  if (m < 1 || m > kMaxAgents) throw std::invalid_argument("DebateConfig: m out of range");
  if (T < 1) throw std::invalid_argument("DebateConfig: T must be >= 1");
  if (rounds < 1) throw std::invalid_argument("DebateConfig: rounds must be >= 1");
  if (n_scenarios < 1) throw std::invalid_argument("DebateConfig: n_scenarios must be >= 1");
  if (view == ViewModel::local_view && (peer_count < 1 || peer_count > m))
    throw std::invalid_argument("DebateConfig: peer_count must lie in [1, m]");
  if (prompt_tokens < 0.0 || output_tokens < 0.0)
    throw std::invalid_argument("DebateConfig: token counts must be nonnegative");
}

// ---------------------------------------------------------------------------
// Pool generation
// ---------------------------------------------------------------------------

AgentPool generate_pool(const DebateConfig& config, std::uint64_t seed) {
  config.validate();
  const GenParams& gp = config.gen;
  Rng rng(seed);
  AgentPool pool;
  pool.questions = config.T;
  int m = config.m;
  pool.agents.resize(static_cast<std::size_t>(m));

  for (Agent& a : pool.agents) a.accuracy = rng.uniform(gp.p_min, gp.p_max);
  for (Agent& a : pool.agents) a.openness = rng.uniform(gp.q_min, gp.q_max);
  pool.agent0.accuracy = rng.uniform(gp.p0_min, gp.p0_max);
  pool.agent0.openness = rng.uniform(gp.q_min, gp.q_max);

  if (gp.equal_prices) {
    for (Agent& a : pool.agents) {
      a.cost_in = 1.0;
      a.cost_out = 2.0;
    }
    pool.agent0.cost_in = 1.0;
    pool.agent0.cost_out = 2.0;
    return pool;
  }

  // Raw prices are resorted so their rank order follows a mix of the
  // accuracy rank and an independent noise rank.
  std::vector<double> raw_in(static_cast<std::size_t>(m));
  for (double& c : raw_in) c = rng.uniform(gp.cost_in_min, gp.cost_in_max);
  std::vector<double> noise(static_cast<std::size_t>(m));
  for (double& x : noise) x = rng.uniform();

  std::vector<int> acc_rank(static_cast<std::size_t>(m)), noise_rank(static_cast<std::size_t>(m));
  {
    std::vector<int> idx(static_cast<std::size_t>(m));
    std::iota(idx.begin(), idx.end(), 0);
    auto by_key = [&](const std::vector<double>& key) {
      std::vector<int> ord = idx;
      std::sort(ord.begin(), ord.end(), [&](int a, int b) {
        if (key[static_cast<std::size_t>(a)] != key[static_cast<std::size_t>(b)])
          return key[static_cast<std::size_t>(a)] < key[static_cast<std::size_t>(b)];
        return a < b;
      });
      std::vector<int> rank(static_cast<std::size_t>(m));
      for (int r = 0; r < m; ++r) rank[static_cast<std::size_t>(ord[static_cast<std::size_t>(r)])] = r;
      return rank;
    };
    std::vector<double> acc(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) acc[static_cast<std::size_t>(i)] = pool.agents[static_cast<std::size_t>(i)].accuracy;
    acc_rank = by_key(acc);
    noise_rank = by_key(noise);
  }

  std::vector<double> sorted_in = raw_in;
  std::sort(sorted_in.begin(), sorted_in.end());
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  double mix = gp.price_accuracy_mix;
  std::vector<double> key(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    key[static_cast<std::size_t>(i)] = mix * acc_rank[static_cast<std::size_t>(i)] +
                                       (1.0 - mix) * noise_rank[static_cast<std::size_t>(i)];
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (key[static_cast<std::size_t>(a)] != key[static_cast<std::size_t>(b)])
      return key[static_cast<std::size_t>(a)] < key[static_cast<std::size_t>(b)];
    return a < b;
  });
  for (int r = 0; r < m; ++r)
    pool.agents[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])].cost_in =
        sorted_in[static_cast<std::size_t>(r)];

  for (Agent& a : pool.agents)
    a.cost_out = a.cost_in * rng.uniform(gp.out_factor_min, gp.out_factor_max);
  pool.agent0.cost_in = rng.uniform(gp.cost_in_min, gp.cost_in_max);
  pool.agent0.cost_out = pool.agent0.cost_in * rng.uniform(gp.out_factor_min, gp.out_factor_max);
  return pool;
}

// ---------------------------------------------------------------------------
// Scenario sampling
// ---------------------------------------------------------------------------

std::vector<DebateScenario> sample_scenarios(const AgentPool& pool, const DebateConfig& config) {
  config.validate();
  if (pool.m() != config.m || pool.questions != config.T)
    throw std::invalid_argument("sample_scenarios: pool does not match config");

  int m = config.m, T = config.T, rounds = config.rounds;
  Rng master(config.seed);
  std::vector<std::uint64_t> child_seeds(static_cast<std::size_t>(config.n_scenarios));
  for (std::uint64_t& s : child_seeds) s = master.next_u64();

  std::vector<DebateScenario> scenarios(static_cast<std::size_t>(config.n_scenarios));
  std::int64_t count = config.n_scenarios;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::int64_t si = 0; si < count; ++si) {
    Rng rng(child_seeds[static_cast<std::size_t>(si)]);
    DebateScenario& sc = scenarios[static_cast<std::size_t>(si)];
    sc.initial_correct.assign(static_cast<std::size_t>(T), AgentMask{0});
    sc.coins.assign(static_cast<std::size_t>(T) * rounds, AgentMask{0});

    for (int pid = 0; pid <= m; ++pid) {
      const Agent& agent = pool.participant(pid);
      int initially = static_cast<int>(std::floor(agent.accuracy * T));
      for (int q : rng.sample_without_replacement(T, initially))
        sc.initial_correct[static_cast<std::size_t>(q)] |= mask_bit(pid);
    }
    for (int pid = 0; pid <= m; ++pid) {
      const Agent& agent = pool.participant(pid);
      for (int q = 0; q < T; ++q)
        for (int t = 0; t < rounds; ++t)
          if (rng.bernoulli(agent.openness))
            sc.coins[static_cast<std::size_t>(q) * rounds + t] |= mask_bit(pid);
    }
    if (config.view == ViewModel::local_view) {
      sc.peers.assign(static_cast<std::size_t>(m + 1) * rounds, AgentMask{0});
      for (int pid = 0; pid <= m; ++pid) {
        for (int t = 0; t < rounds; ++t) {
          // peer ids drawn from the participant space without self
          for (int j : rng.sample_without_replacement(m, config.peer_count)) {
            int peer = j >= pid ? j + 1 : j;
            sc.peers[static_cast<std::size_t>(pid) * rounds + t] |= mask_bit(peer);
          }
        }
      }
    }
  }
  return scenarios;
}

// ---------------------------------------------------------------------------
// Objective
// ---------------------------------------------------------------------------

namespace {

AgentMask participant_mask(const Subset& s, int m) {
  if (s.universe_size() == m + 1) {
    if (s.contains(m))
      throw std::invalid_argument("debate objective/cost: S must not contain agent-0's id");
  } else if (s.universe_size() != m) {
    throw std::invalid_argument("debate objective/cost: subset universe must be m or m+1");
  }
  AgentMask p = mask_bit(m);  // agent-0 always participates
  s.for_each([&](int v) {
    if (v < m) p |= mask_bit(v);
  });
  return p;
}

// Raw count of questions agent-0 ends correct on, summed over scenarios.
// Integer accumulation keeps parallel and serial results identical.
long long raw_correct_count(AgentMask participants, const AgentPool& pool,
                            const std::vector<DebateScenario>& scenarios,
                            const DebateConfig& config) {
  int m = pool.m(), T = config.T, rounds = config.rounds;
  bool global = config.view == ViewModel::global_view;
  long long total = 0;
  std::int64_t n_scen = static_cast<std::int64_t>(scenarios.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : total)
#endif
  for (std::int64_t si = 0; si < n_scen; ++si) {
    const DebateScenario& sc = scenarios[static_cast<std::size_t>(si)];
    long long count = 0;
    for (int q = 0; q < T; ++q) {
      AgentMask correct = sc.initial_correct[static_cast<std::size_t>(q)] & participants;
      if (mask_test(correct, m)) {
        ++count;
        continue;
      }
      if (correct == 0) continue;  // no participant ever holds the right answer
      for (int t = 0; t < rounds; ++t) {
        AgentMask coin = sc.coins[static_cast<std::size_t>(q) * rounds + t];
        AgentMask newly = 0;
        if (global) {
          // someone was correct last round, so every incorrect participant
          // gets its acceptance coin
          newly = participants & ~correct & coin;
        } else {
          AgentMask incorrect = participants & ~correct;
          while (incorrect) {
            AgentMask low = incorrect & (~incorrect + 1);
            int pid = low > AgentMask{0xFFFFFFFFFFFFFFFFull}
                          ? 64 + __builtin_ctzll(static_cast<std::uint64_t>(low >> 64))
                          : __builtin_ctzll(static_cast<std::uint64_t>(low));
            incorrect ^= low;
            if (!mask_test(coin, pid)) continue;
            if (sc.peers[static_cast<std::size_t>(pid) * rounds + t] & correct) newly |= low;
          }
        }
        correct |= newly;
        if (mask_test(correct, m)) break;
      }
      if (mask_test(correct, m)) ++count;
    }
    total += count;
  }
  return total;
}

}  // namespace

double objective_value(const Subset& s, const AgentPool& pool,
                       const std::vector<DebateScenario>& scenarios, const DebateConfig& config) {
  if (scenarios.empty()) throw std::invalid_argument("objective_value: no scenarios");
  int m = pool.m();
  AgentMask p = participant_mask(s, m);
  long long raw = raw_correct_count(p, pool, scenarios, config);
  long long base = raw_correct_count(mask_bit(m), pool, scenarios, config);
  return static_cast<double>(raw - base) / static_cast<double>(scenarios.size());
}

// ---------------------------------------------------------------------------
// Cost
// ---------------------------------------------------------------------------

namespace {

double raw_token_cost(AgentMask participants, const AgentPool& pool, const DebateConfig& config) {
  int m = pool.m();
  int np = mask_popcount(participants);
  double r = config.rounds;
  double total = 0.0;
  for (int pid = 0; pid <= m; ++pid) {
    if (!mask_test(participants, pid)) continue;
    const Agent& agent = pool.participant(pid);
    double input_tokens = r * config.prompt_tokens + (r - 1.0) * (np - 1) * config.output_tokens;
    double output_tokens = r * config.output_tokens;
    total += input_tokens * agent.cost_in + output_tokens * agent.cost_out;
  }
  return total;
}

}  // namespace

double cost_value(const Subset& s, const AgentPool& pool, const DebateConfig& config) {
  int m = pool.m();
  AgentMask p = participant_mask(s, m);
  return raw_token_cost(p, pool, config) - raw_token_cost(mask_bit(m), pool, config);
}

// ---------------------------------------------------------------------------
// SetFunction handles
// ---------------------------------------------------------------------------

SetFunction objective_fn(const AgentPool& pool, std::vector<DebateScenario> scenarios,
                         const DebateConfig& config) {
  struct Shared {
    AgentPool pool;
    std::vector<DebateScenario> scenarios;
    DebateConfig config;
    long long base = 0;  // agent-0 solo correctness count, subtracted for grounding
  };
  auto shared = std::make_shared<Shared>(Shared{pool, std::move(scenarios), config, 0});
  shared->base = raw_correct_count(mask_bit(config.m), shared->pool, shared->scenarios, config);
  return SetFunction(GroundSet(config.m), FnKind::objective, [shared](const Subset& s) {
    AgentMask p = participant_mask(s, shared->config.m);
    long long raw = raw_correct_count(p, shared->pool, shared->scenarios, shared->config);
    return static_cast<double>(raw - shared->base) /
           static_cast<double>(shared->scenarios.size());
  });
}

SetFunction cost_fn(const AgentPool& pool, const DebateConfig& config) {
  struct Shared {
    AgentPool pool;
    DebateConfig config;
  };
  auto shared = std::make_shared<Shared>(Shared{pool, config});
  return SetFunction(GroundSet(config.m), FnKind::cost, [shared](const Subset& s) {
    return cost_value(s, shared->pool, shared->config);
  });
}

// ---------------------------------------------------------------------------
// JSON round-trips
// ---------------------------------------------------------------------------

namespace {

nlohmann::json agent_to_json(const Agent& a) {
  return nlohmann::json{
      {"p", a.accuracy}, {"q", a.openness}, {"cost_in", a.cost_in}, {"cost_out", a.cost_out}};
}

Agent agent_from_json(const nlohmann::json& j) {
  Agent a;
  a.accuracy = j.at("p").get<double>();
  a.openness = j.at("q").get<double>();
  a.cost_in = j.at("cost_in").get<double>();
  a.cost_out = j.at("cost_out").get<double>();
  return a;
}

}  // namespace

nlohmann::json AgentPool::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const Agent& a : agents) list.push_back(agent_to_json(a));
  return nlohmann::json{{"agents", list}, {"agent0", agent_to_json(agent0)}, {"questions", questions}};
}

AgentPool AgentPool::from_json(const nlohmann::json& j) {
  AgentPool pool;
  for (const auto& a : j.at("agents")) pool.agents.push_back(agent_from_json(a));
  pool.agent0 = agent_from_json(j.at("agent0"));
  pool.questions = j.at("questions").get<int>();
  return pool;
}

nlohmann::json GenParams::to_json() const {
  return nlohmann::json{{"p_min", p_min},
                        {"p_max", p_max},
                        {"p0_min", p0_min},
                        {"p0_max", p0_max},
                        {"q_min", q_min},
                        {"q_max", q_max},
                        {"cost_in_min", cost_in_min},
                        {"cost_in_max", cost_in_max},
                        {"out_factor_min", out_factor_min},
                        {"out_factor_max", out_factor_max},
                        {"price_accuracy_mix", price_accuracy_mix},
                        {"equal_prices", equal_prices}};
}

GenParams GenParams::from_json(const nlohmann::json& j) {
  GenParams g;
  g.p_min = j.value("p_min", g.p_min);
  g.p_max = j.value("p_max", g.p_max);
  g.p0_min = j.value("p0_min", g.p0_min);
  g.p0_max = j.value("p0_max", g.p0_max);
  g.q_min = j.value("q_min", g.q_min);
  g.q_max = j.value("q_max", g.q_max);
  g.cost_in_min = j.value("cost_in_min", g.cost_in_min);
  g.cost_in_max = j.value("cost_in_max", g.cost_in_max);
  g.out_factor_min = j.value("out_factor_min", g.out_factor_min);
  g.out_factor_max = j.value("out_factor_max", g.out_factor_max);
  g.price_accuracy_mix = j.value("price_accuracy_mix", g.price_accuracy_mix);
  g.equal_prices = j.value("equal_prices", g.equal_prices);
  return g;
}

nlohmann::json DebateConfig::to_json() const {
  return nlohmann::json{{"m", m},
                        {"T", T},
                        {"rounds", rounds},
                        {"view", view_name(view)},
                        {"peer_count", peer_count},
                        {"prompt_tokens", prompt_tokens},
                        {"output_tokens", output_tokens},
                        {"n_scenarios", n_scenarios},
                        {"seed", seed},
                        {"gen", gen.to_json()}};
}

DebateConfig DebateConfig::from_json(const nlohmann::json& j) {
  DebateConfig c;
  c.m = j.value("m", c.m);
  c.T = j.value("T", c.T);
  c.rounds = j.value("rounds", c.rounds);
  c.view = view_from_name(j.value("view", std::string("global")));
  c.peer_count = j.value("peer_count", c.peer_count);
  c.prompt_tokens = j.value("prompt_tokens", c.prompt_tokens);
  c.output_tokens = j.value("output_tokens", c.output_tokens);
  c.n_scenarios = j.value("n_scenarios", c.n_scenarios);
  c.seed = j.value("seed", c.seed);
  if (j.contains("gen")) c.gen = GenParams::from_json(j.at("gen"));
  return c;
}

}  // namespace subsup::debate
