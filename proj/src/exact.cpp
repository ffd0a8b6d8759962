#include "subsup/exact.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "subsup/csv.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace subsup {

namespace {

void check_inputs(const SetFunction& f, const SetFunction& g) {
  if (f.n() != g.n()) throw std::invalid_argument("exact: ground sets differ");
  if (f.n() > kExactCap)
    throw std::invalid_argument("exact: ground set exceeds enumeration cap of " +
                                std::to_string(kExactCap));
}

struct PrimalBest {
  double f = -1.0;
  double g = 0.0;
  std::uint64_t mask = 0;
  bool found = false;

  // Larger value wins; ties toward smaller cost, then smaller mask.
  bool before(const PrimalBest& o) const {
    if (!found) return false;
    if (!o.found) return true;
    if (f != o.f) return f > o.f;
    if (g != o.g) return g < o.g;
    return mask < o.mask;
  }
};

struct DualBest {
  double g = 0.0;
  double f = 0.0;
  std::uint64_t mask = 0;
  bool found = false;

  bool before(const DualBest& o) const {
    if (!found) return false;
    if (!o.found) return true;
    if (g != o.g) return g < o.g;
    if (f != o.f) return f > o.f;
    return mask < o.mask;
  }
};

ExactResult primal_from(const PrimalBest& best, std::int64_t feasible, std::int64_t total, int n) {
  ExactResult res;
  res.best_set = best.found ? Subset::from_mask(best.mask, n) : Subset(n);
  res.best_value = best.found ? best.f : 0.0;
  res.feasible_count = feasible;
  res.enumerated = total;
  return res;
}

template <bool Parallel>
ExactResult primal_impl(const SetFunction& f, const SetFunction& g, double theta) {
  check_inputs(f, g);
  if (theta < 0.0) throw std::invalid_argument("primal_opt: theta must be nonnegative");
  int n = f.n();
  std::vector<double> f_tab = Parallel ? build_value_table(f) : build_value_table_serial(f);
  std::vector<double> g_tab = Parallel ? build_value_table(g) : build_value_table_serial(g);
  std::int64_t total = std::int64_t{1} << n;
  PrimalBest best;
  std::int64_t feasible = 0;
#ifdef _OPENMP
#pragma omp parallel if (Parallel)
  {
    PrimalBest local;
    std::int64_t local_count = 0;
#pragma omp for schedule(static) nowait
    for (std::int64_t m = 0; m < total; ++m) {
      if (g_tab[static_cast<std::size_t>(m)] <= theta) {
        ++local_count;
        PrimalBest cand{f_tab[static_cast<std::size_t>(m)], g_tab[static_cast<std::size_t>(m)],
                        static_cast<std::uint64_t>(m), true};
        if (cand.before(local)) local = cand;
      }
    }
#pragma omp critical(subsup_exact_primal)
    {
      feasible += local_count;
      if (local.before(best)) best = local;
    }
  }
#else
  for (std::int64_t m = 0; m < total; ++m) {
    if (g_tab[static_cast<std::size_t>(m)] <= theta) {
      ++feasible;
      PrimalBest cand{f_tab[static_cast<std::size_t>(m)], g_tab[static_cast<std::size_t>(m)],
                      static_cast<std::uint64_t>(m), true};
      if (cand.before(best)) best = cand;
    }
  }
#endif
  return primal_from(best, feasible, total, n);
}

template <bool Parallel>
ExactResult dual_impl(const SetFunction& f, const SetFunction& g, double tau) {
  check_inputs(f, g);
  int n = f.n();
  std::vector<double> f_tab = Parallel ? build_value_table(f) : build_value_table_serial(f);
  std::vector<double> g_tab = Parallel ? build_value_table(g) : build_value_table_serial(g);
  std::int64_t total = std::int64_t{1} << n;
  if (tau > f_tab[static_cast<std::size_t>(total - 1)])
    throw std::runtime_error("dual_opt: infeasible, tau exceeds f(V)");
  DualBest best;
  std::int64_t feasible = 0;
#ifdef _OPENMP
#pragma omp parallel if (Parallel)
  {
    DualBest local;
    std::int64_t local_count = 0;
#pragma omp for schedule(static) nowait
    for (std::int64_t m = 0; m < total; ++m) {
      if (f_tab[static_cast<std::size_t>(m)] >= tau) {
        ++local_count;
        DualBest cand{g_tab[static_cast<std::size_t>(m)], f_tab[static_cast<std::size_t>(m)],
                      static_cast<std::uint64_t>(m), true};
        if (cand.before(local)) local = cand;
      }
    }
#pragma omp critical(subsup_exact_dual)
    {
      feasible += local_count;
      if (local.before(best)) best = local;
    }
  }
#else
  for (std::int64_t m = 0; m < total; ++m) {
    if (f_tab[static_cast<std::size_t>(m)] >= tau) {
      ++feasible;
      DualBest cand{g_tab[static_cast<std::size_t>(m)], f_tab[static_cast<std::size_t>(m)],
                    static_cast<std::uint64_t>(m), true};
      if (cand.before(best)) best = cand;
    }
  }
#endif
  ExactResult res;
  res.best_set = best.found ? Subset::from_mask(best.mask, n) : Subset(n);
  res.best_value = best.found ? best.g : 0.0;
  res.feasible_count = feasible;
  res.enumerated = total;
  return res;
}

std::vector<FrontierRow> frontier_impl(const SetFunction& f, const SetFunction& g,
                                       const std::vector<double>& grid, bool parallel) {
  check_inputs(f, g);
  int n = f.n();
  std::vector<double> f_tab = parallel ? build_value_table(f) : build_value_table_serial(f);
  std::vector<double> g_tab = parallel ? build_value_table(g) : build_value_table_serial(g);
  std::size_t total = std::size_t{1} << n;

  std::vector<std::uint32_t> order(total);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (g_tab[a] != g_tab[b]) return g_tab[a] < g_tab[b];
    return a < b;
  });

  // Running best under the primal tie-breaking, indexed by sorted position.
  std::vector<PrimalBest> prefix(total);
  PrimalBest run;
  for (std::size_t i = 0; i < total; ++i) {
    std::uint32_t m = order[i];
    PrimalBest cand{f_tab[m], g_tab[m], m, true};
    if (cand.before(run)) run = cand;
    prefix[i] = run;
  }
  std::vector<double> sorted_g(total);
  for (std::size_t i = 0; i < total; ++i) sorted_g[i] = g_tab[order[i]];

  std::vector<FrontierRow> rows;
  rows.reserve(grid.size());
  for (double theta : grid) {
    auto it = std::upper_bound(sorted_g.begin(), sorted_g.end(), theta);
    FrontierRow row;
    row.theta = theta;
    if (it != sorted_g.begin()) {
      const PrimalBest& best = prefix[static_cast<std::size_t>(it - sorted_g.begin()) - 1];
      row.f_opt = best.f;
      row.witness_mask = best.mask;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

ExactResult primal_opt(const SetFunction& f, const SetFunction& g, double theta) {
  return primal_impl<true>(f, g, theta);
}
ExactResult primal_opt_serial(const SetFunction& f, const SetFunction& g, double theta) {
  return primal_impl<false>(f, g, theta);
}

ExactResult dual_opt(const SetFunction& f, const SetFunction& g, double tau) {
  return dual_impl<true>(f, g, tau);
}
ExactResult dual_opt_serial(const SetFunction& f, const SetFunction& g, double tau) {
  return dual_impl<false>(f, g, tau);
}

std::vector<FrontierRow> pareto_frontier(const SetFunction& f, const SetFunction& g,
                                         const std::vector<double>& grid) {
  return frontier_impl(f, g, grid, true);
}
std::vector<FrontierRow> pareto_frontier_serial(const SetFunction& f, const SetFunction& g,
                                                const std::vector<double>& grid) {
  return frontier_impl(f, g, grid, false);
}

std::string frontier_csv(const std::vector<FrontierRow>& rows, bool header) {
  std::ostringstream out;
  if (header) out << "theta,f_opt,witness_mask\n";
  for (const FrontierRow& r : rows)
    out << fmt_g17(r.theta) << ',' << fmt_g17(r.f_opt) << ',' << r.witness_mask << '\n';
  return out.str();
}

}  // namespace subsup
