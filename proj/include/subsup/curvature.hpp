#pragma once

#include <cstdint>

#include "subsup/set_function.hpp"

namespace subsup {

inline constexpr int kCurvatureCapDefault = 12;

// Minimizing pair for the weak curvature: gamma = 1 - g(T)/g(T|S).
struct PairWitness {
  std::uint64_t s = 0;
  std::uint64_t t = 0;
  double ratio = 1.0;
};

// Minimizing pair for the singleton-based curvatures.
struct ElementWitness {
  int v = -1;
  std::uint64_t s = 0;
  double ratio = 1.0;
};

struct WeakCurvature {
  double gamma = 0.0;
  PairWitness witness;
};

struct StrictCurvature {
  double gamma = 0.0;
  ElementWitness witness;
};

struct SubmodularCurvature {
  double c = 0.0;
  ElementWitness witness;
};

// gamma = 1 - min over ordered pairs (S, T), T nonempty, g(T) >= g(S),
// g(T|S) > 0, of g(T) / (g(T u S) - g(S)); clamped to [0, 1]. The witness
// is the first minimizing pair in (S, T) lexicographic order.
WeakCurvature curvature_supermodular_weak(const SetFunction& g, int cap = kCurvatureCapDefault);
WeakCurvature curvature_supermodular_weak_serial(const SetFunction& g,
                                                 int cap = kCurvatureCapDefault);

// gamma' = 1 - min over (v, S), v not in S, g(v|S) > 0, of g(v)/g(v|S).
StrictCurvature curvature_supermodular_strict(const SetFunction& g, int cap = kCurvatureCapDefault);
StrictCurvature curvature_supermodular_strict_serial(const SetFunction& g,
                                                     int cap = kCurvatureCapDefault);

// c = 1 - min over (v, S), v not in S, f(v) > 0, of f(v|S)/f(v).
// Rejects objectives with f(v) = 0 for every singleton.
SubmodularCurvature curvature_submodular(const SetFunction& f, int cap = kCurvatureCapDefault);
SubmodularCurvature curvature_submodular_serial(const SetFunction& f,
                                                int cap = kCurvatureCapDefault);

struct CurvatureReport {
  WeakCurvature weak;
  StrictCurvature strict;
  SubmodularCurvature sub;
};

// Convenience bundle for an (objective, cost) instance.
CurvatureReport curvature_report(const SetFunction& f, const SetFunction& g,
                                 int cap = kCurvatureCapDefault);

}  // namespace subsup
