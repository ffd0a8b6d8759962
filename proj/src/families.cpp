#include "subsup/families.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "subsup/rng.hpp"

namespace subsup {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------------------
// WeightedCoverage
// ---------------------------------------------------------------------------

double WeightedCoverage::total_weight() const {
  double w = 0.0;
  for (double a : atom_weights) w += a;
  return w;
}

SetFunction WeightedCoverage::to_set_function(std::vector<std::string> labels) const {
  struct Data {
    std::vector<double> weights;
    std::vector<std::vector<int>> covers;
    std::vector<std::vector<int>> coverers;       // atom -> covering elements
    std::vector<std::uint64_t> atom_masks;        // only when n <= 64
  };
  auto data = std::make_shared<Data>();
  data->weights = atom_weights;
  data->covers = covers;
  data->coverers.resize(atom_weights.size());
  int nn = n();
  for (int v = 0; v < nn; ++v) {
    for (int a : covers[static_cast<std::size_t>(v)]) {
      if (a < 0 || a >= atom_count())
        throw std::invalid_argument("WeightedCoverage: atom index out of range");
      data->coverers[static_cast<std::size_t>(a)].push_back(v);
    }
  }
  if (nn <= 64) {
    data->atom_masks.assign(atom_weights.size(), 0);
    for (std::size_t a = 0; a < data->coverers.size(); ++a)
      for (int v : data->coverers[a]) data->atom_masks[a] |= std::uint64_t{1} << v;
  }

  auto eval = [data](const Subset& s) -> double {
    double total = 0.0;
    if (!data->atom_masks.empty()) {
      std::uint64_t mask = s.low_mask();
      for (std::size_t a = 0; a < data->weights.size(); ++a)
        if (data->atom_masks[a] & mask) total += data->weights[a];
      return total;
    }
    std::vector<char> covered(data->weights.size(), 0);
    s.for_each([&](int v) {
      for (int a : data->covers[static_cast<std::size_t>(v)]) covered[static_cast<std::size_t>(a)] = 1;
    });
    for (std::size_t a = 0; a < data->weights.size(); ++a)
      if (covered[a]) total += data->weights[a];
    return total;
  };

  SetFunction fn(GroundSet(nn, std::move(labels)), FnKind::objective, eval);
  // Direct marginal: weight of v's atoms not covered by any other member.
  fn.set_marginal_fn([data](int v, const Subset& s) -> double {
    double gain = 0.0;
    for (int a : data->covers[static_cast<std::size_t>(v)]) {
      bool already = false;
      for (int w : data->coverers[static_cast<std::size_t>(a)]) {
        if (w != v && s.contains(w)) {
          already = true;
          break;
        }
      }
      if (!already) gain += data->weights[static_cast<std::size_t>(a)];
    }
    return gain;
  });
  return fn;
}

nlohmann::json WeightedCoverage::to_json() const {
  return nlohmann::json{{"atom_weights", atom_weights}, {"covers", covers}};
}

WeightedCoverage WeightedCoverage::from_json(const nlohmann::json& j) {
  WeightedCoverage c;
  c.atom_weights = j.at("atom_weights").get<std::vector<double>>();
  c.covers = j.at("covers").get<std::vector<std::vector<int>>>();
  return c;
}

// ---------------------------------------------------------------------------
// PowerCost
// ---------------------------------------------------------------------------

namespace {

double power_of_sum(double sum, double p) {
  if (p == 1.0) return sum;
  if (p == 2.0) return sum * sum;
  return std::pow(sum, p);
}

}  // namespace

SetFunction PowerCost::to_set_function() const {
  if (exponent < 1.0) throw std::invalid_argument("PowerCost: exponent must be >= 1");
  auto costs = std::make_shared<std::vector<double>>(unit_costs);
  double p = exponent;
  auto sum_of = [costs](const Subset& s) {
    double sum = 0.0;
    s.for_each([&](int v) { sum += (*costs)[static_cast<std::size_t>(v)]; });
    return sum;
  };
  SetFunction fn(GroundSet(n()), FnKind::cost,
                 [sum_of, p](const Subset& s) { return power_of_sum(sum_of(s), p); });
  fn.set_marginal_fn([costs, sum_of, p](int v, const Subset& s) {
    double sum = sum_of(s);
    return power_of_sum(sum + (*costs)[static_cast<std::size_t>(v)], p) - power_of_sum(sum, p);
  });
  return fn;
}

nlohmann::json PowerCost::to_json() const {
  return nlohmann::json{{"unit_costs", unit_costs}, {"exponent", exponent}};
}

PowerCost PowerCost::from_json(const nlohmann::json& j) {
  PowerCost c;
  c.unit_costs = j.at("unit_costs").get<std::vector<double>>();
  c.exponent = j.at("exponent").get<double>();
  return c;
}

// ---------------------------------------------------------------------------
// EdgeCountCost
// ---------------------------------------------------------------------------

SetFunction EdgeCountCost::to_set_function() const {
  if (vertex_count < 1) throw std::invalid_argument("EdgeCountCost: empty vertex set");
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count || u == v)
      throw std::invalid_argument("EdgeCountCost: bad edge");
  }
  auto edge_list = std::make_shared<std::vector<std::pair<int, int>>>(edges);
  double off = offset;
  return SetFunction(GroundSet(vertex_count), FnKind::cost,
                     [edge_list, off](const Subset& s) -> double {
                       double total = s.empty() ? 0.0 : off;
                       for (auto [u, v] : *edge_list)
                         if (s.contains(u) && s.contains(v)) total += 1.0;
                       return total;
                     });
}

// ---------------------------------------------------------------------------
// TightnessInstance
// ---------------------------------------------------------------------------

TightnessInstance make_tightness(int k, double gamma) {
  if (k < 3) throw std::invalid_argument("make_tightness: k must be >= 3");
  if (!(gamma >= 0.0 && gamma < 1.0))
    throw std::invalid_argument("make_tightness: gamma must lie in [0, 1)");

  // Smallest epsilon in (0, 2] with k' = (k + epsilon)(1 - gamma) a positive
  // integer below k; epsilon grows with k', so scan k' upward.
  double one_minus = 1.0 - gamma;
  int lo = std::max(1, static_cast<int>(std::floor(k * one_minus)) - 1);
  int hi = static_cast<int>(std::ceil((k + 2.0) * one_minus)) + 1;
  int k_prime = -1;
  double epsilon = 0.0;
  for (int cand = lo; cand <= hi; ++cand) {
    double eps = cand / one_minus - k;
    if (eps > 0.0 && eps <= 2.0 && cand >= 1 && cand < k) {
      k_prime = cand;
      epsilon = eps;
      break;
    }
  }
  if (k_prime < 0)
    throw std::runtime_error("make_tightness: no admissible epsilon for k=" + std::to_string(k) +
                             ", gamma=" + std::to_string(gamma));

  TightnessInstance inst;
  inst.k = k;
  inst.gamma = gamma;
  inst.epsilon = epsilon;
  inst.k_prime = k_prime;
  inst.jump = (k + epsilon) - k_prime - 1.0;

  // Atoms: (i, j) shared between v_i and o_j for i in 1..k', j in 1..k, each
  // of normalized weight q^{i-1} / k with q = 1 - 1/k; one private atom per
  // o_j of weight q^{k'} - k^{-k'}; u duplicates o_1's private atom.
  double q = 1.0 - 1.0 / k;
  int shared_atoms = k_prime * k;
  WeightedCoverage& cov = inst.objective;
  cov.atom_weights.resize(static_cast<std::size_t>(shared_atoms + k));
  for (int i = 1; i <= k_prime; ++i) {
    double w = std::pow(q, i - 1) / k;
    for (int j = 1; j <= k; ++j)
      cov.atom_weights[static_cast<std::size_t>((i - 1) * k + (j - 1))] = w;
  }
  double private_weight = std::pow(q, k_prime) - std::pow(static_cast<double>(k), -k_prime);
  for (int j = 1; j <= k; ++j)
    cov.atom_weights[static_cast<std::size_t>(shared_atoms + j - 1)] = private_weight;

  cov.covers.resize(static_cast<std::size_t>(inst.n()));
  for (int i = 1; i <= k_prime; ++i) {
    auto& list = cov.covers[static_cast<std::size_t>(inst.v_index(i))];
    list.reserve(static_cast<std::size_t>(k));
    for (int j = 1; j <= k; ++j) list.push_back((i - 1) * k + (j - 1));
  }
  for (int j = 1; j <= k; ++j) {
    auto& list = cov.covers[static_cast<std::size_t>(inst.o_index(j))];
    list.reserve(static_cast<std::size_t>(k_prime + 1));
    for (int i = 1; i <= k_prime; ++i) list.push_back((i - 1) * k + (j - 1));
    list.push_back(shared_atoms + j - 1);
  }
  cov.covers[static_cast<std::size_t>(inst.u_index())].push_back(shared_atoms);  // o_1's private atom
  return inst;
}

double TightnessInstance::cost_of(const Subset& s) const {
  if (s.contains(u_index())) return kInf;
  double base = s.count();
  if (jump > 0.0 && s.contains_all_in_range(0, k_prime)) {
    int in_o = s.count_in_range(k_prime, k_prime + k);
    base += jump * in_o;
  }
  return base;
}

SetFunction TightnessInstance::objective_fn() const {
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n()));
  for (int i = 1; i <= k_prime; ++i) labels.push_back("v" + std::to_string(i));
  for (int j = 1; j <= k; ++j) labels.push_back("o" + std::to_string(j));
  labels.push_back("u");
  return objective.to_set_function(std::move(labels));
}

SetFunction TightnessInstance::cost_fn() const {
  TightnessInstance copy = *this;
  copy.objective = WeightedCoverage{};  // the cost only needs the parameters
  return SetFunction(GroundSet(n()), FnKind::cost,
                     [copy](const Subset& s) { return copy.cost_of(s); });
}

SetFunction TightnessInstance::cost_fn_sub_ground() const {
  // Elements 0..k'-1 are v_1..v_{k'}; element k' is o_1.
  int kp = k_prime;
  double j = jump;
  return SetFunction(GroundSet(kp + 1), FnKind::cost, [kp, j](const Subset& s) -> double {
    double base = s.count();
    if (s.contains(kp) && s.contains_all_in_range(0, kp)) base += j;
    return base;
  });
}

double tightness_expected_ratio(const TightnessInstance& inst) {
  double k = inst.k;
  double num = -std::expm1(inst.k_prime * std::log1p(-1.0 / k));
  double den = -std::expm1(-inst.k_prime * std::log(k));
  return num / den;
}

nlohmann::json TightnessInstance::to_json() const {
  return nlohmann::json{{"k", k},           {"gamma", gamma}, {"epsilon", epsilon},
                        {"k_prime", k_prime}, {"jump", jump},   {"objective", objective.to_json()}};
}

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

SyntheticInstance make_random_instance(std::uint64_t seed, int n,
                                       const RandomInstanceParams& params) {
  if (n < 1 || n > 16) throw std::invalid_argument("make_random_instance: n must lie in [1, 16]");
  if (params.exponents.empty())
    throw std::invalid_argument("make_random_instance: no exponents configured");

  Rng rng(seed);
  SyntheticInstance inst;
  inst.seed = seed;
  inst.n = n;

  int atom_min = params.atom_min > 0 ? params.atom_min : n;
  int atom_max = params.atom_max > 0 ? params.atom_max : 3 * n;
  int atoms = rng.uniform_int(atom_min, std::max(atom_min, atom_max));

  inst.coverage.atom_weights.resize(static_cast<std::size_t>(atoms));
  for (int a = 0; a < atoms; ++a)
    inst.coverage.atom_weights[static_cast<std::size_t>(a)] =
        rng.uniform(params.weight_min, params.weight_max);
  inst.coverage.covers.resize(static_cast<std::size_t>(n));
  bool any_cover = false;
  for (int v = 0; v < n; ++v) {
    for (int a = 0; a < atoms; ++a) {
      if (rng.bernoulli(params.cover_prob)) {
        inst.coverage.covers[static_cast<std::size_t>(v)].push_back(a);
        any_cover = true;
      }
    }
  }
  if (!any_cover) inst.coverage.covers[0].push_back(0);  // avoid the all-zero objective

  inst.cost.unit_costs.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v)
    inst.cost.unit_costs[static_cast<std::size_t>(v)] =
        rng.uniform(params.cost_min, params.cost_max);
  inst.cost.exponent =
      params.exponents[static_cast<std::size_t>(rng.below(params.exponents.size()))];
  return inst;
}

nlohmann::json SyntheticInstance::to_json() const {
  return nlohmann::json{
      {"type", "synthetic"}, {"seed", seed}, {"n", n}, {"coverage", coverage.to_json()},
      {"power_cost", cost.to_json()}};
}

SyntheticInstance SyntheticInstance::from_json(const nlohmann::json& j) {
  SyntheticInstance inst;
  inst.seed = j.value("seed", std::uint64_t{0});
  inst.n = j.at("n").get<int>();
  inst.coverage = WeightedCoverage::from_json(j.at("coverage"));
  inst.cost = PowerCost::from_json(j.at("power_cost"));
  return inst;
}

}  // namespace subsup
