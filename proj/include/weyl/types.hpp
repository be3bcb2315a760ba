#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace weyl {

using Point = std::vector<double>;

// Scalar field on R^d; the span length is the dimension.
using Evaluator = std::function<double(std::span<const double>)>;

inline double norm(std::span<const double> p) {
  double acc = 0.0;
  for (double v : p) acc += v * v;
  return std::sqrt(acc);
}

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace weyl
