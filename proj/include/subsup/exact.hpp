#pragma once

#include <cstdint>
#include <vector>

#include "subsup/set_function.hpp"

namespace subsup {

inline constexpr int kExactCap = 20;  // hard cap on exhaustive enumeration

struct ExactResult {
  Subset best_set;
  double best_value = 0.0;  // f at the optimum (primal) or g (dual)
  std::int64_t feasible_count = 0;
  std::int64_t enumerated = 0;  // always 2^n
};

// max f(S) s.t. g(S) <= theta, by full enumeration. Ties break toward
// smaller cost, then smaller bitmask.
ExactResult primal_opt(const SetFunction& f, const SetFunction& g, double theta);
ExactResult primal_opt_serial(const SetFunction& f, const SetFunction& g, double theta);

// min g(S) s.t. f(S) >= tau. Throws "infeasible" when tau > f(V). Ties
// break toward larger value, then smaller bitmask.
ExactResult dual_opt(const SetFunction& f, const SetFunction& g, double tau);
ExactResult dual_opt_serial(const SetFunction& f, const SetFunction& g, double tau);

struct FrontierRow {
  double theta = 0.0;
  double f_opt = 0.0;
  std::uint64_t witness_mask = 0;
};

// One enumeration pass, then the best f within each threshold. Duplicate
// thresholds produce duplicate rows.
std::vector<FrontierRow> pareto_frontier(const SetFunction& f, const SetFunction& g,
                                         const std::vector<double>& grid);
std::vector<FrontierRow> pareto_frontier_serial(const SetFunction& f, const SetFunction& g,
                                                const std::vector<double>& grid);

std::string frontier_csv(const std::vector<FrontierRow>& rows, bool header = true);

}  // namespace subsup
