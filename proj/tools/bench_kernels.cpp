// Timing comparison of the OpenMP kernels against their serial references.
// The two paths must agree bit for bit; this target reports the speedups.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "subsup/curvature.hpp"
#include "subsup/debate.hpp"
#include "subsup/exact.hpp"
#include "subsup/families.hpp"
#include "subsup/structure.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace subsup;

namespace {

double time_ms(const std::function<void()>& fn) {
  auto start = std::chrono::steady_clock::now();
  fn();
  auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

void row(const std::string& name, double serial_ms, double parallel_ms, bool equal) {
  std::printf("%-28s %10.1f ms %10.1f ms   x%.2f   %s\n", name.c_str(), serial_ms, parallel_ms,
              parallel_ms > 0 ? serial_ms / parallel_ms : 0.0, equal ? "match" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (no OpenMP)\n");
#endif
  std::printf("%-28s %13s %13s\n", "kernel", "serial", "parallel");

  {
    SyntheticInstance inst = make_random_instance(7, 12);
    SetFunction g = inst.cost.to_set_function();
    WeakCurvature ws{}, wp{};
    double ts = time_ms([&] { ws = curvature_supermodular_weak_serial(g); });
    double tp = time_ms([&] { wp = curvature_supermodular_weak(g); });
    row("weak curvature (n=12)", ts, tp,
        ws.gamma == wp.gamma && ws.witness.s == wp.witness.s && ws.witness.t == wp.witness.t);
  }

  {
    SyntheticInstance inst = make_random_instance(11, 14);
    SetFunction f = inst.coverage.to_set_function();
    StructureReport rs{}, rp{};
    double ts = time_ms([&] { rs = check_structure_serial(f, 14); });
    double tp = time_ms([&] { rp = check_structure(f, 14); });
    row("structure check (n=14)", ts, tp,
        rs.monotone == rp.monotone && rs.submodular == rp.submodular &&
            rs.supermodular == rp.supermodular);
  }

  {
    SyntheticInstance inst = make_random_instance(13, 16);
    SetFunction f = inst.coverage.to_set_function();
    SetFunction g = inst.cost.to_set_function();
    double theta = 0.4 * g.value(g.ground().full_set());
    ExactResult es{}, ep{};
    double ts = time_ms([&] { es = primal_opt_serial(f, g, theta); });
    double tp = time_ms([&] { ep = primal_opt(f, g, theta); });
    row("exhaustive primal (n=16)", ts, tp,
        es.best_value == ep.best_value && es.best_set == ep.best_set);
  }

  {
    debate::DebateConfig cfg;
    cfg.m = 14;
    cfg.T = 100;
    cfg.rounds = 2;
    cfg.view = debate::ViewModel::local_view;
    cfg.n_scenarios = 50;
    cfg.seed = 3;
    debate::AgentPool pool = debate::generate_pool(cfg, cfg.seed);
    auto scenarios = debate::sample_scenarios(pool, cfg);
    SetFunction f = debate::objective_fn(pool, scenarios, cfg);
    Subset half(cfg.m);
    for (int v = 0; v < cfg.m; v += 2) half.add(v);
    // the scenario loop reduces integer counts, so thread count cannot
    // change the value; compare 1 thread against the default
    double vs = 0.0, vp = 0.0;
#ifdef _OPENMP
    int max_threads = omp_get_max_threads();
    omp_set_num_threads(1);
#endif
    double ts = time_ms([&] {
      for (int i = 0; i < 40; ++i) vs = f.value_uncached(half);
    });
#ifdef _OPENMP
    omp_set_num_threads(max_threads);
#endif
    double tp = time_ms([&] {
      for (int i = 0; i < 40; ++i) vp = f.value_uncached(half);
    });
    row("debate objective (m=14)", ts, tp, vs == vp);
  }

  return 0;
}
