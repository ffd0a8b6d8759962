#include "subsup/curvature.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace subsup {

namespace {

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

void check_cap(const SetFunction& fn, int cap, const char* what) {
  if (fn.n() > cap)
    throw std::invalid_argument(std::string(what) + ": ground set exceeds cap of " +
                                std::to_string(cap));
}

void check_grounded(const std::vector<double>& table, const char* what) {
  if (table[0] != 0.0) throw std::invalid_argument(std::string(what) + ": function not grounded");
}

struct PairBest {
  double ratio = 1.0;
  std::uint64_t s = 0;
  std::uint64_t t = 0;
  bool found = false;

  bool before(const PairBest& o) const {
    if (!found) return false;
    if (!o.found) return true;
    if (ratio != o.ratio) return ratio < o.ratio;
    if (s != o.s) return s < o.s;
    return t < o.t;
  }
};

// Minimum of g(T)/g(T|S) over T in [1, total) for one fixed S.
PairBest scan_weak_s(const std::vector<double>& table, std::uint64_t s, std::uint64_t total) {
  PairBest best;
  double gs = table[s];
  for (std::uint64_t t = 1; t < total; ++t) {
    double gt = table[t];
    if (gt < gs) continue;
    double den = table[s | t] - gs;
    if (den <= 0.0) continue;
    double ratio = gt / den;
    if (!best.found || ratio < best.ratio) best = {ratio, s, t, true};
  }
  return best;
}

struct ElemBest {
  double ratio = 1.0;
  std::uint64_t s = 0;
  int v = -1;
  bool found = false;

  bool before(const ElemBest& o) const {
    if (!found) return false;
    if (!o.found) return true;
    if (ratio != o.ratio) return ratio < o.ratio;
    if (s != o.s) return s < o.s;
    return v < o.v;
  }
};

}  // namespace

WeakCurvature curvature_supermodular_weak_serial(const SetFunction& g, int cap) {
  check_cap(g, cap, "curvature_supermodular_weak");
  std::vector<double> table = build_value_table_serial(g);
  check_grounded(table, "curvature_supermodular_weak");
  std::uint64_t total = std::uint64_t{1} << g.n();
  PairBest best;
  for (std::uint64_t s = 0; s < total; ++s) {
    PairBest local = scan_weak_s(table, s, total);
    if (local.before(best)) best = local;
  }
  WeakCurvature out;
  if (best.found) {
    out.gamma = clamp01(1.0 - best.ratio);
    out.witness = {best.s, best.t, best.ratio};
  }
  return out;
}

WeakCurvature curvature_supermodular_weak(const SetFunction& g, int cap) {
  check_cap(g, cap, "curvature_supermodular_weak");
  std::vector<double> table = build_value_table(g);
  check_grounded(table, "curvature_supermodular_weak");
  std::int64_t total = std::int64_t{1} << g.n();
  PairBest best;
#ifdef _OPENMP
#pragma omp parallel
  {
    PairBest local_best;
#pragma omp for schedule(static) nowait
    for (std::int64_t s = 0; s < total; ++s) {
      PairBest local =
          scan_weak_s(table, static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(total));
      if (local.before(local_best)) local_best = local;
    }
#pragma omp critical(subsup_curv_weak_merge)
    if (local_best.before(best)) best = local_best;
  }
#else
  for (std::int64_t s = 0; s < total; ++s) {
    PairBest local =
        scan_weak_s(table, static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(total));
    if (local.before(best)) best = local;
  }
#endif
  WeakCurvature out;
  if (best.found) {
    out.gamma = clamp01(1.0 - best.ratio);
    out.witness = {best.s, best.t, best.ratio};
  }
  return out;
}

namespace {

ElemBest scan_strict_s(const std::vector<double>& table, std::uint64_t s, int n) {
  ElemBest best;
  double gs = table[s];
  for (int v = 0; v < n; ++v) {
    std::uint64_t bit = std::uint64_t{1} << v;
    if (s & bit) continue;
    double den = table[s | bit] - gs;
    if (den <= 0.0) continue;
    double ratio = table[bit] / den;
    if (!best.found || ratio < best.ratio) best = {ratio, s, v, true};
  }
  return best;
}

ElemBest scan_submodular_s(const std::vector<double>& table, std::uint64_t s, int n) {
  ElemBest best;
  double fs = table[s];
  for (int v = 0; v < n; ++v) {
    std::uint64_t bit = std::uint64_t{1} << v;
    if (s & bit) continue;
    double fv = table[bit];
    if (fv <= 0.0) continue;
    double ratio = (table[s | bit] - fs) / fv;
    if (!best.found || ratio < best.ratio) best = {ratio, s, v, true};
  }
  return best;
}

template <class Scan>
ElemBest elementwise_min_serial(const std::vector<double>& table, int n, Scan scan) {
  std::uint64_t total = std::uint64_t{1} << n;
  ElemBest best;
  for (std::uint64_t s = 0; s < total; ++s) {
    ElemBest local = scan(table, s, n);
    if (local.before(best)) best = local;
  }
  return best;
}

template <class Scan>
ElemBest elementwise_min_parallel(const std::vector<double>& table, int n, Scan scan) {
  std::int64_t total = std::int64_t{1} << n;
  ElemBest best;
#ifdef _OPENMP
#pragma omp parallel
  {
    ElemBest local_best;
#pragma omp for schedule(static) nowait
    for (std::int64_t s = 0; s < total; ++s) {
      ElemBest local = scan(table, static_cast<std::uint64_t>(s), n);
      if (local.before(local_best)) local_best = local;
    }
#pragma omp critical(subsup_curv_elem_merge)
    if (local_best.before(best)) best = local_best;
  }
#else
  for (std::int64_t s = 0; s < total; ++s) {
    ElemBest local = scan(table, static_cast<std::uint64_t>(s), n);
    if (local.before(best)) best = local;
  }
#endif
  return best;
}

StrictCurvature strict_from(const ElemBest& best) {
  StrictCurvature out;
  if (best.found) {
    out.gamma = clamp01(1.0 - best.ratio);
    out.witness = {best.v, best.s, best.ratio};
  }
  return out;
}

}  // namespace

StrictCurvature curvature_supermodular_strict_serial(const SetFunction& g, int cap) {
  check_cap(g, cap, "curvature_supermodular_strict");
  std::vector<double> table = build_value_table_serial(g);
  check_grounded(table, "curvature_supermodular_strict");
  return strict_from(elementwise_min_serial(table, g.n(), scan_strict_s));
}

StrictCurvature curvature_supermodular_strict(const SetFunction& g, int cap) {
  check_cap(g, cap, "curvature_supermodular_strict");
  std::vector<double> table = build_value_table(g);
  check_grounded(table, "curvature_supermodular_strict");
  return strict_from(elementwise_min_parallel(table, g.n(), scan_strict_s));
}

namespace {

SubmodularCurvature submodular_from(const ElemBest& best, const std::vector<double>& table, int n) {
  bool any_positive = false;
  for (int v = 0; v < n && !any_positive; ++v)
    any_positive = table[std::uint64_t{1} << v] > 0.0;
  if (!any_positive)
    throw std::runtime_error("curvature_submodular: degenerate objective (f(v) = 0 for all v)");
  SubmodularCurvature out;
  if (best.found) {
    out.c = clamp01(1.0 - best.ratio);
    out.witness = {best.v, best.s, best.ratio};
  }
  return out;
}

}  // namespace

SubmodularCurvature curvature_submodular_serial(const SetFunction& f, int cap) {
  check_cap(f, cap, "curvature_submodular");
  std::vector<double> table = build_value_table_serial(f);
  check_grounded(table, "curvature_submodular");
  return submodular_from(elementwise_min_serial(table, f.n(), scan_submodular_s), table, f.n());
}

SubmodularCurvature curvature_submodular(const SetFunction& f, int cap) {
  check_cap(f, cap, "curvature_submodular");
  std::vector<double> table = build_value_table(f);
  check_grounded(table, "curvature_submodular");
  return submodular_from(elementwise_min_parallel(table, f.n(), scan_submodular_s), table, f.n());
}

CurvatureReport curvature_report(const SetFunction& f, const SetFunction& g, int cap) {
  CurvatureReport rep;
  rep.weak = curvature_supermodular_weak(g, cap);
  rep.strict = curvature_supermodular_strict(g, cap);
  rep.sub = curvature_submodular(f, cap);
  return rep;
}

}  // namespace subsup
