#include "subsup/structure.hpp"

#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace subsup {

namespace {

struct TripleKey {
  std::uint64_t b = 0;
  std::uint64_t a = 0;
  int e = 0;
  bool found = false;

  bool before(const TripleKey& other) const {
    if (!found) return false;
    if (!other.found) return true;
    if (b != other.b) return b < other.b;
    if (a != other.a) return a < other.a;
    return e < other.e;
  }
};

struct PerB {
  TripleKey mono, sub, super;
};

// Scans every A subseteq B, e outside B for one fixed B; A ascending, e inner
// ascending. Records the first violating triple per property.
PerB scan_b(const std::vector<double>& table, int n, std::uint64_t b, double tol) {
  PerB out;
  std::uint64_t full = (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  double fb = table[b];
  std::uint64_t a = 0;
  while (true) {
    double fa = table[a];
    std::uint64_t outside = full & ~b;
    std::uint64_t rest = outside;
    while (rest) {
      int e = __builtin_ctzll(rest);
      rest &= rest - 1;
      std::uint64_t bit = std::uint64_t{1} << e;
      double marg_a = table[a | bit] - fa;
      double marg_b = table[b | bit] - fb;
      if (!out.mono.found && marg_b < -tol) out.mono = {b, a, e, true};
      if (!out.sub.found && marg_a < marg_b - tol) out.sub = {b, a, e, true};
      if (!out.super.found && marg_a > marg_b + tol) out.super = {b, a, e, true};
      if (out.mono.found && out.sub.found && out.super.found) return out;
    }
    if (a == b) break;
    a = (a - b) & b;  // next subset of b in ascending order
  }
  return out;
}

StructureReport assemble(const PerB& best) {
  StructureReport rep;
  if (best.mono.found) {
    rep.monotone = false;
    rep.monotone_witness = StructureWitness{best.mono.a, best.mono.b, best.mono.e};
  }
  if (best.sub.found) {
    rep.submodular = false;
    rep.submodular_witness = StructureWitness{best.sub.a, best.sub.b, best.sub.e};
  }
  if (best.super.found) {
    rep.supermodular = false;
    rep.supermodular_witness = StructureWitness{best.super.a, best.super.b, best.super.e};
  }
  return rep;
}

void merge_key(TripleKey& into, const TripleKey& from) {
  if (from.before(into)) into = from;
}

void check_cap(const SetFunction& fn, int cap) {
  if (fn.n() > cap)
    throw std::invalid_argument("check_structure: ground set exceeds cap of " +
                                std::to_string(cap));
}

}  // namespace

StructureReport check_structure_serial(const SetFunction& fn, int cap, double tol) {
  check_cap(fn, cap);
  int n = fn.n();
  std::vector<double> table = build_value_table_serial(fn);
  std::uint64_t total = std::uint64_t{1} << n;
  PerB best;
  for (std::uint64_t b = 0; b < total; ++b) {
    PerB local = scan_b(table, n, b, tol);
    merge_key(best.mono, local.mono);
    merge_key(best.sub, local.sub);
    merge_key(best.super, local.super);
    if (best.mono.found && best.sub.found && best.super.found) break;
  }
  return assemble(best);
}

StructureReport check_structure(const SetFunction& fn, int cap, double tol) {
  check_cap(fn, cap);
  int n = fn.n();
  std::vector<double> table = build_value_table(fn);
  std::int64_t total = std::int64_t{1} << n;
  PerB best;
#ifdef _OPENMP
#pragma omp parallel
  {
    PerB local_best;
#pragma omp for schedule(static) nowait
    for (std::int64_t b = 0; b < total; ++b) {
      PerB local = scan_b(table, n, static_cast<std::uint64_t>(b), tol);
      merge_key(local_best.mono, local.mono);
      merge_key(local_best.sub, local.sub);
      merge_key(local_best.super, local.super);
    }
#pragma omp critical(subsup_structure_merge)
    {
      merge_key(best.mono, local_best.mono);
      merge_key(best.sub, local_best.sub);
      merge_key(best.super, local_best.super);
    }
  }
#else
  for (std::int64_t b = 0; b < total; ++b) {
    PerB local = scan_b(table, n, static_cast<std::uint64_t>(b), tol);
    merge_key(best.mono, local.mono);
    merge_key(best.sub, local.sub);
    merge_key(best.super, local.super);
  }
#endif
  return assemble(best);
}

}  // namespace subsup
