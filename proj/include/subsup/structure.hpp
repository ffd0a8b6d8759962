#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "subsup/set_function.hpp"

namespace subsup {

// Violating triple for one structural property: A subseteq B, e not in B.
struct StructureWitness {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  int e = -1;
};

struct StructureReport {
  bool monotone = true;
  bool submodular = true;
  bool supermodular = true;
  std::optional<StructureWitness> monotone_witness;
  std::optional<StructureWitness> submodular_witness;  // for monotone: a unused
  std::optional<StructureWitness> supermodular_witness;
};

inline constexpr int kStructureCapDefault = 16;
inline constexpr double kStructureTol = 1e-9;

// Exhaustive check of monotonicity and the diminishing/increasing returns
// inequalities over every (A, B, e) with A subseteq B and e outside B.
// Witnesses are the lexicographically first violations in (B, A, e) order.
StructureReport check_structure(const SetFunction& fn, int cap = kStructureCapDefault,
                                double tol = kStructureTol);
StructureReport check_structure_serial(const SetFunction& fn, int cap = kStructureCapDefault,
                                       double tol = kStructureTol);

}  // namespace subsup
