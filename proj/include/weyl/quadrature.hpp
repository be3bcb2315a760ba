#pragma once

// Integration over sub-level sets {f < level} of functions that grow at
// infinity. The set is bounded by ray bisection, then integrated either by
// nested composite Gauss-Legendre (pieces split at detected boundary
// crossings) or by uniform Monte Carlo over the bounding cube.

#include <cstdint>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "weyl/types.hpp"

namespace weyl::quadrature {

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

// Newton iteration on the Legendre three-term recurrence.
GaussLegendreRule gauss_legendre(int order);

struct ClosedForm {};

struct TensorRule {
  int samples_per_axis = 256;  // crossing-detection samples per line
  int order = 64;              // Gauss-Legendre nodes per smooth piece
};

struct MonteCarloRule {
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 1;
};

using Method = std::variant<ClosedForm, TensorRule, MonteCarloRule>;

// Tensor rule for d <= 2, Monte Carlo beyond.
Method default_method(int dimension);

struct Estimate {
  double value = 0.0;
  double standard_error = 0.0;  // zero for deterministic rules
};

enum class Integrand {
  indicator,      // 1{f < level}
  negative_part,  // (f - level)_- = max(level - f, 0)
};

// Half-width R of a cube [-R, R]^d containing {f < level}, from bisection
// along the 2d axis rays and the 2^d diagonals, inflated by 10%. Returns 0
// when no ray meets the set and f(0) >= level.
// Throws DivergenceError if some ray stays below level out to 2^64.
double bounding_radius(const Evaluator& f, int dimension, double level);

// Integral over R^d of the chosen integrand. ClosedForm is rejected with
// ArgumentError: closed forms are symbol-specific and live in symbols.
Estimate integrate_sublevel(const Evaluator& f, int dimension, double level,
                            Integrand integrand, const Method& method);

}  // namespace weyl::quadrature
