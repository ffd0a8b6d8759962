// Command-line front end: instance generation, optimization runs, theorem
// fuzzing, dual solving, curvature reports, and the tightness demonstration.
//
// Exit codes: 0 success, 1 violation/infeasible, 2 config error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "subsup/bench.hpp"
#include "subsup/bounds.hpp"
#include "subsup/csv.hpp"
#include "subsup/curvature.hpp"
#include "subsup/debate.hpp"
#include "subsup/dual.hpp"
#include "subsup/exact.hpp"
#include "subsup/families.hpp"
#include "subsup/greedy.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fs = std::filesystem;
using nlohmann::json;
using namespace subsup;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitConfig = 2;

std::string hash8(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%08llx", static_cast<unsigned long long>(h & 0xFFFFFFFFull));
  return buf;
}

void write_text(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file " + path);
  json j;
  in >> j;
  return j;
}

// Pre-scan for --config so file values become defaults that explicit flags
// then override.
json prescan_config(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--config") return load_config_file(argv[i + 1]);
  }
  return json::object();
}

struct GlobalOpts {
  std::string out_dir = "out";
  int workers = 0;
  std::string config_path;
};

void apply_workers(int workers) {
#ifdef _OPENMP
  if (workers > 0) omp_set_num_threads(workers);
#else
  (void)workers;
#endif
}

// Synthetic-instance source shared by several subcommands.
struct InstanceOpts {
  std::string instance_path;
  std::uint64_t seed = 1;
  int n = 8;

  void fill(const json& cfg) {
    instance_path = cfg.value("instance", instance_path);
    seed = cfg.value("seed", seed);
    n = cfg.value("n", n);
  }

  json to_json() const {
    return json{{"instance", instance_path}, {"seed", seed}, {"n", n}};
  }

  SyntheticInstance load() const {
    if (!instance_path.empty()) return SyntheticInstance::from_json(load_config_file(instance_path));
    return make_random_instance(seed, n);
  }
};

json witness_pair_json(const PairWitness& w) {
  return json{{"s_mask", w.s}, {"t_mask", w.t}, {"ratio", w.ratio}};
}

json witness_elem_json(const ElementWitness& w) {
  return json{{"v", w.v}, {"s_mask", w.s}, {"ratio", w.ratio}};
}

int run_bounds(const json& cfg_in, const GlobalOpts& global, double gamma, double c, double beta,
               double beta_plus) {
  json resolved = {{"subcommand", "bounds"}, {"gamma", gamma}, {"c", c},
                   {"beta", beta},           {"beta_plus", beta_plus}};
  (void)cfg_in;
  std::cout << "bound                value\n";
  std::cout << "main                 " << fmt_g17(bound_main(gamma)) << "\n";
  std::cout << "overflow_cap         " << fmt_g17(bound_overflow_cap(gamma)) << "\n";
  std::cout << "beta                 " << fmt_g17(bound_beta(gamma, beta)) << "\n";
  std::cout << "curv_f               " << fmt_g17(bound_curv_f(c, gamma)) << "\n";
  std::cout << "beyond               " << fmt_g17(bound_beyond(c, gamma, beta_plus)) << "\n";
  write_text(fs::path(global.out_dir) / ("bounds_" + hash8(resolved.dump()) + ".config.json"),
             resolved.dump(2) + "\n");
  return kExitOk;
}

int run_curvature(const GlobalOpts& global, const InstanceOpts& source, int cap) {
  SyntheticInstance inst = source.load();
  SetFunction f = inst.coverage.to_set_function();
  SetFunction g = inst.cost.to_set_function();
  if (f.n() > cap)
    throw std::invalid_argument("curvature: instance size " + std::to_string(f.n()) +
                                " exceeds cap " + std::to_string(cap));
  CurvatureReport rep = curvature_report(f, g, cap);

  json out = {{"gamma", rep.weak.gamma},
              {"gamma_witness", witness_pair_json(rep.weak.witness)},
              {"gamma_strict", rep.strict.gamma},
              {"gamma_strict_witness", witness_elem_json(rep.strict.witness)},
              {"c", rep.sub.c},
              {"c_witness", witness_elem_json(rep.sub.witness)}};
  std::cout << "gamma        = " << fmt_g17(rep.weak.gamma) << "  (S=" << rep.weak.witness.s
            << ", T=" << rep.weak.witness.t << ")\n";
  std::cout << "gamma_strict = " << fmt_g17(rep.strict.gamma) << "  (v=" << rep.strict.witness.v
            << ", S=" << rep.strict.witness.s << ")\n";
  std::cout << "c            = " << fmt_g17(rep.sub.c) << "  (v=" << rep.sub.witness.v
            << ", S=" << rep.sub.witness.s << ")\n";

  json resolved = source.to_json();
  resolved["subcommand"] = "curvature";
  resolved["cap"] = cap;
  std::string stem = "curvature_seed" + std::to_string(source.seed) + "_" + hash8(resolved.dump());
  write_text(fs::path(global.out_dir) / (stem + ".json"), out.dump(2) + "\n");
  write_text(fs::path(global.out_dir) / (stem + ".config.json"), resolved.dump(2) + "\n");
  std::cout << "report: " << (fs::path(global.out_dir) / (stem + ".json")).string() << "\n";
  return kExitOk;
}

int run_tightness(const GlobalOpts& global, int k, double gamma) {
  TightnessInstance inst = make_tightness(k, gamma);
  SetFunction f = inst.objective_fn();
  SetFunction g = inst.cost_fn();
  GreedyTrace trace = run_ratio_marginal(f, g, static_cast<double>(k),
                                         StopPolicy::before_overflow());

  Subset optimal(inst.n());
  for (int j = 1; j <= k; ++j) optimal.add(inst.o_index(j));
  double realized = trace.final_f() / f.value(optimal);
  double closed = tightness_expected_ratio(inst);
  double asymptote = bound_main(gamma);

  std::cout << "k=" << k << " gamma=" << fmt_g17(gamma) << " epsilon=" << fmt_g17(inst.epsilon)
            << " k'=" << inst.k_prime << "\n";
  std::cout << "greedy selected " << trace.steps.size() << " elements, g="
            << fmt_g17(trace.final_g()) << "\n";
  std::cout << "realized ratio   = " << fmt_g17(realized) << "\n";
  std::cout << "closed-form ratio = " << fmt_g17(closed) << "\n";
  std::cout << "asymptotic bound  = " << fmt_g17(asymptote) << "\n";

  json resolved = {{"subcommand", "tightness"}, {"k", k}, {"gamma", gamma}};
  json out = {{"k", k},
              {"gamma", gamma},
              {"epsilon", inst.epsilon},
              {"k_prime", inst.k_prime},
              {"realized_ratio", realized},
              {"closed_form_ratio", closed},
              {"asymptote", asymptote},
              {"selected", trace.steps.size()}};
  std::string stem = "tightness_k" + std::to_string(k) + "_" + hash8(resolved.dump());
  write_text(fs::path(global.out_dir) / (stem + ".json"), out.dump(2) + "\n");
  write_text(fs::path(global.out_dir) / (stem + ".config.json"), resolved.dump(2) + "\n");
  return kExitOk;
}

int run_dual(const GlobalOpts& global, const InstanceOpts& source, double tau,
             const std::string& alpha_arg, double epsilon, const std::string& primal_kind,
             const std::string& policy_name) {
  SyntheticInstance inst = source.load();
  SetFunction f = inst.coverage.to_set_function();
  SetFunction g = inst.cost.to_set_function();

  StopPolicy policy = policy_name == "first" ? StopPolicy::first_overflow()
                                             : StopPolicy::before_overflow();
  double alpha;
  if (alpha_arg == "auto") {
    if (f.n() > kCurvatureCapDefault)
      throw std::invalid_argument("dual: --alpha auto needs exact curvature (n <= 12)");
    double gamma = curvature_supermodular_weak(g).gamma;
    if (gamma >= 1.0) throw std::runtime_error("dual: cost curvature is 1, no guarantee applies");
    double c = curvature_submodular(f).c;
    alpha = choose_alpha(gamma, c < 1.0 ? std::optional<double>(c) : std::nullopt);
  } else {
    alpha = std::stod(alpha_arg);
  }

  DualConfig cfg;
  cfg.tau = tau;
  cfg.epsilon = epsilon;
  cfg.alpha = alpha;
  cfg.primal = primal_kind == "exact" ? primal_exhaustive(f, g) : primal_greedy(f, g, policy);
  DualResult res = solve_dual(f, g, cfg);

  json out = {{"set", res.best_set.members()},
              {"f", res.f_value},
              {"g", res.g_value},
              {"budget_found", res.budget_found},
              {"iterations", res.iterations},
              {"alpha", alpha},
              {"monotone_accept_pattern", res.monotone_accept_pattern}};
  std::cout << out.dump(2) << "\n";

  json resolved = source.to_json();
  resolved["subcommand"] = "dual";
  resolved["tau"] = tau;
  resolved["alpha"] = alpha_arg;
  resolved["epsilon"] = epsilon;
  resolved["primal"] = primal_kind;
  resolved["policy"] = policy_name;
  std::string stem = "dual_seed" + std::to_string(source.seed) + "_" + hash8(resolved.dump());
  write_text(fs::path(global.out_dir) / (stem + ".json"), out.dump(2) + "\n");
  write_text(fs::path(global.out_dir) / (stem + ".config.json"), resolved.dump(2) + "\n");
  return kExitOk;
}

int run_verify(const GlobalOpts& global, int instances, std::uint64_t seed, int n_min, int n_max,
               bool corrupt) {
  bench::FuzzParams params;
  params.n_instances = instances;
  params.seed = seed;
  params.n_min = n_min;
  params.n_max = n_max;
  if (corrupt) params.bound_scale = 1.5;
  bench::FuzzReport report = bench::fuzz_theorems(params);

  json resolved = {{"subcommand", "verify"}, {"instances", instances}, {"seed", seed},
                   {"n_min", n_min},         {"n_max", n_max},         {"corrupt", corrupt}};
  std::string stem = "verify_seed" + std::to_string(seed) + "_" + hash8(resolved.dump());
  fs::path log_path = fs::path(global.out_dir) / (stem + ".json");
  write_text(log_path, report.to_json().dump(2) + "\n");
  write_text(fs::path(global.out_dir) / (stem + ".config.json"), resolved.dump(2) + "\n");

  std::cout << "instances: " << report.instances << "\n";
  std::cout << "violations: " << report.violations.size() << "\n";
  std::cout << "informational: " << report.informational.size() << "\n";
  std::cout << "log: " << log_path.string() << "\n";
  return report.violations.empty() ? kExitOk : kExitInfeasible;
}

struct BenchOpts {
  bool use_debate = false;
  bool use_synthetic = false;
  std::uint64_t seed = 1;
  double theta_frac = 0.25;
  double cap_frac = 0.5;
  double theta_abs = 0.0;  // overrides fraction when > 0
  double cap_abs = 0.0;
  bool with_opt = false;
  int n = 8;  // synthetic
  debate::DebateConfig debate_cfg;

  void fill(const json& cfg) {
    use_debate = cfg.value("debate", use_debate);
    use_synthetic = cfg.value("synthetic", use_synthetic);
    seed = cfg.value("seed", seed);
    theta_frac = cfg.value("theta_frac", theta_frac);
    cap_frac = cfg.value("cap_frac", cap_frac);
    theta_abs = cfg.value("theta", theta_abs);
    cap_abs = cfg.value("budget_cap", cap_abs);
    with_opt = cfg.value("with_opt", with_opt);
    n = cfg.value("n", n);
    if (cfg.contains("debate_config"))
      debate_cfg = debate::DebateConfig::from_json(cfg.at("debate_config"));
  }

  json to_json() const {
    return json{{"subcommand", "bench"},
                {"debate", use_debate},
                {"synthetic", use_synthetic},
                {"seed", seed},
                {"theta_frac", theta_frac},
                {"cap_frac", cap_frac},
                {"theta", theta_abs},
                {"budget_cap", cap_abs},
                {"with_opt", with_opt},
                {"n", n},
                {"debate_config", debate_cfg.to_json()}};
  }
};

int run_bench(const GlobalOpts& global, BenchOpts& opts) {
  if (opts.use_debate == opts.use_synthetic)
    throw std::invalid_argument("bench: pass exactly one of --debate / --synthetic");

  std::optional<SetFunction> f, g;
  json descriptor;
  json instance_json;
  std::string kind;
  if (opts.use_debate) {
    opts.debate_cfg.seed = opts.seed;
    opts.debate_cfg.validate();
    debate::AgentPool pool = debate::generate_pool(opts.debate_cfg, opts.seed);
    auto scenarios = debate::sample_scenarios(pool, opts.debate_cfg);
    f.emplace(debate::objective_fn(pool, scenarios, opts.debate_cfg));
    g.emplace(debate::cost_fn(pool, opts.debate_cfg));
    descriptor = {{"kind", "debate"}, {"config", opts.debate_cfg.to_json()},
                  {"pool", pool.to_json()}};
    kind = std::string("debate_") + debate::view_name(opts.debate_cfg.view) + "_m" +
           std::to_string(opts.debate_cfg.m) + "_T" + std::to_string(opts.debate_cfg.T) + "_r" +
           std::to_string(opts.debate_cfg.rounds);
  } else {
    SyntheticInstance inst = make_random_instance(opts.seed, opts.n);
    f.emplace(inst.coverage.to_set_function());
    g.emplace(inst.cost.to_set_function());
    instance_json = inst.to_json();
    descriptor = {{"kind", "synthetic"}, {"instance", instance_json}};
    kind = "synthetic_n" + std::to_string(opts.n);
  }

  double g_total = g->value(g->ground().full_set());
  bench::ComparisonOptions copts;
  copts.theta = opts.theta_abs > 0.0 ? opts.theta_abs : opts.theta_frac * g_total;
  copts.budget_cap = opts.cap_abs > 0.0 ? opts.cap_abs : opts.cap_frac * g_total;
  copts.with_frontier = opts.with_opt;
  copts.random_seed = opts.seed;
  if (opts.with_opt && f->n() > kExactCap)
    throw std::invalid_argument("bench: --with-opt needs n <= 20");

  bench::BenchmarkReport report = bench::run_comparison(*f, *g, copts, descriptor);

  json resolved = opts.to_json();
  std::string stem = "bench_" + kind + "_seed" + std::to_string(opts.seed) + "_" +
                     hash8(resolved.dump());
  fs::path csv_path = fs::path(global.out_dir) / (stem + ".csv");
  fs::path json_path = fs::path(global.out_dir) / (stem + ".json");
  write_text(csv_path, report.curves_csv());
  write_text(json_path, report.to_json().dump(2) + "\n");
  if (opts.with_opt)
    write_text(fs::path(global.out_dir) / (stem + "_frontier.csv"), frontier_csv(report.frontier));
  if (!instance_json.is_null())
    write_text(fs::path(global.out_dir) / (stem + "_instance.json"), instance_json.dump(2) + "\n");
  write_text(fs::path(global.out_dir) / (stem + ".config.json"), resolved.dump(2) + "\n");

  std::cout << "curves: " << csv_path.string() << "\n";
  std::cout << "report: " << json_path.string() << "\n";
  for (const bench::Curve& c : report.curves)
    std::cout << c.algorithm << ": steps=" << c.trace.steps.size()
              << " f=" << fmt_g17(c.trace.final_f()) << " g=" << fmt_g17(c.trace.final_g())
              << " auc=" << fmt_g17(bench::curve_auc(c.trace, report.budget_cap)) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"greedy submodular maximization under supermodular cost constraints"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand name

  GlobalOpts global;
  app.add_option("--out", global.out_dir, "output directory");
  app.add_option("--workers", global.workers, "worker threads (0 = all)");
  app.add_option("--config", global.config_path, "JSON config file; flags override its values");

  json cfg;
  try {
    cfg = prescan_config(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  // bounds ------------------------------------------------------------------
  auto* bounds_cmd = app.add_subcommand("bounds", "closed-form guarantee table");
  double gamma = cfg.value("gamma", 0.0);
  double c_curv = cfg.value("c", 0.0);
  double beta = cfg.value("beta", 1.0);
  double beta_plus = cfg.value("beta_plus", 1.0);
  bounds_cmd->add_option("--gamma", gamma, "weak supermodular curvature in [0,1)");
  bounds_cmd->add_option("--c", c_curv, "submodular curvature in [0,1)");
  bounds_cmd->add_option("--beta", beta, "realized cost over budget");
  bounds_cmd->add_option("--beta-plus", beta_plus, "overflow factor >= 1");

  // curvature ---------------------------------------------------------------
  auto* curv_cmd = app.add_subcommand("curvature", "exact curvature report for an instance");
  InstanceOpts curv_src;
  curv_src.fill(cfg);
  int curv_cap = cfg.value("cap", kCurvatureCapDefault);
  curv_cmd->add_option("--instance", curv_src.instance_path, "synthetic instance JSON file");
  curv_cmd->add_option("--seed", curv_src.seed, "generator seed");
  curv_cmd->add_option("--n", curv_src.n, "ground set size");
  curv_cmd->add_option("--cap", curv_cap, "enumeration cap");

  // tightness ---------------------------------------------------------------
  auto* tight_cmd = app.add_subcommand("tightness", "adversarial instance demonstration");
  int tight_k = cfg.value("k", 300);
  double tight_gamma = cfg.value("gamma", 1.0 / 3.0);
  tight_cmd->add_option("--k", tight_k, "budget (and |O|)");
  tight_cmd->add_option("--gamma", tight_gamma, "target curvature in (0,1)");

  // dual --------------------------------------------------------------------
  auto* dual_cmd = app.add_subcommand("dual", "cost minimization via binary search");
  InstanceOpts dual_src;
  dual_src.fill(cfg);
  double dual_tau = cfg.value("tau", 1.0);
  std::string dual_alpha = cfg.value("alpha", std::string("1.0"));
  double dual_eps = cfg.value("epsilon", 0.0);
  std::string dual_primal = cfg.value("primal", std::string("greedy"));
  std::string dual_policy = cfg.value("policy", std::string("before"));
  dual_cmd->add_option("--instance", dual_src.instance_path, "synthetic instance JSON file");
  dual_cmd->add_option("--seed", dual_src.seed, "generator seed");
  dual_cmd->add_option("--n", dual_src.n, "ground set size");
  dual_cmd->add_option("--tau", dual_tau, "target objective value");
  dual_cmd->add_option("--alpha", dual_alpha, "acceptance discount, or 'auto'");
  dual_cmd->add_option("--epsilon", dual_eps, "budget precision (0 = g(V)/2^20)");
  dual_cmd->add_option("--primal", dual_primal, "greedy | exact")
      ->check(CLI::IsMember({"greedy", "exact"}));
  dual_cmd->add_option("--policy", dual_policy, "before | first")
      ->check(CLI::IsMember({"before", "first"}));

  // verify ------------------------------------------------------------------
  auto* verify_cmd = app.add_subcommand("verify", "fuzz every theorem against exact oracles");
  int verify_instances = cfg.value("instances", 200);
  std::uint64_t verify_seed = cfg.value("seed", std::uint64_t{1});
  int verify_nmin = cfg.value("n_min", 5);
  int verify_nmax = cfg.value("n_max", 10);
  bool verify_corrupt = cfg.value("corrupt", false);
  verify_cmd->add_option("--instances", verify_instances, "instance count");
  verify_cmd->add_option("--seed", verify_seed, "fuzzer seed");
  verify_cmd->add_option("--n-min", verify_nmin, "smallest ground set");
  verify_cmd->add_option("--n-max", verify_nmax, "largest ground set (<= 12)");
  verify_cmd->add_flag("--self-test-corrupt", verify_corrupt,
                       "tighten bounds to prove the harness detects violations")
      ->group("");

  // bench -------------------------------------------------------------------
  auto* bench_cmd = app.add_subcommand("bench", "algorithm comparison curves");
  BenchOpts bopts;
  bopts.fill(cfg);
  std::string bench_view = cfg.value("view", std::string("global"));
  bench_cmd->add_flag("--debate", bopts.use_debate, "debate-simulator instance");
  bench_cmd->add_flag("--synthetic", bopts.use_synthetic, "random coverage + power cost");
  bench_cmd->add_option("--seed", bopts.seed, "instance seed");
  bench_cmd->add_option("--n", bopts.n, "synthetic ground set size");
  bench_cmd->add_option("--m", bopts.debate_cfg.m, "selectable agents");
  bench_cmd->add_option("--T", bopts.debate_cfg.T, "questions");
  bench_cmd->add_option("--rounds", bopts.debate_cfg.rounds, "debate rounds");
  bench_cmd->add_option("--view", bench_view, "global | local")
      ->check(CLI::IsMember({"global", "local"}));
  bench_cmd->add_option("--peer-count", bopts.debate_cfg.peer_count, "peers per agent per round");
  bench_cmd->add_option("--scenarios", bopts.debate_cfg.n_scenarios, "Monte-Carlo scenarios");
  bench_cmd->add_option("--prompt-tokens", bopts.debate_cfg.prompt_tokens, "prompt tokens");
  bench_cmd->add_option("--output-tokens", bopts.debate_cfg.output_tokens, "output tokens");
  bench_cmd->add_flag("--equal-prices", bopts.debate_cfg.gen.equal_prices,
                      "uniform token prices");
  bench_cmd->add_option("--theta-frac", bopts.theta_frac, "theta as a fraction of g(V)");
  bench_cmd->add_option("--cap-frac", bopts.cap_frac, "budget cap as a fraction of g(V)");
  bench_cmd->add_option("--theta", bopts.theta_abs, "absolute theta (overrides fraction)");
  bench_cmd->add_option("--budget-cap", bopts.cap_abs, "absolute cap (overrides fraction)");
  bench_cmd->add_flag("--with-opt", bopts.with_opt, "attach the exact Pareto frontier");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitConfig;
  }

  apply_workers(global.workers);

  try {
    if (bounds_cmd->parsed()) return run_bounds(cfg, global, gamma, c_curv, beta, beta_plus);
    if (curv_cmd->parsed()) return run_curvature(global, curv_src, curv_cap);
    if (tight_cmd->parsed()) return run_tightness(global, tight_k, tight_gamma);
    if (dual_cmd->parsed())
      return run_dual(global, dual_src, dual_tau, dual_alpha, dual_eps, dual_primal, dual_policy);
    if (verify_cmd->parsed())
      return run_verify(global, verify_instances, verify_seed, verify_nmin, verify_nmax,
                        verify_corrupt);
    if (bench_cmd->parsed()) {
      bopts.debate_cfg.view = debate::view_from_name(bench_view);
      return run_bench(global, bopts);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  }
  return kExitConfig;
}
