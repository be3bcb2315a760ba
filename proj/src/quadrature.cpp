#include "weyl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <string>

#include "weyl/errors.hpp"

namespace weyl::quadrature {

namespace {

const GaussLegendreRule& cached_rule(int order) {
  static std::mutex mutex;
  static std::map<int, GaussLegendreRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, gauss_legendre(order)).first;
  return it->second;
}

// Integral of g over [-R, R] where g >= 0 and g > 0 exactly on the set being
// integrated. The line is sampled uniformly (plus t = 0, where builtin
// symbols have their kinks), every change of sign(g > 0) between neighbouring
// samples is bisected to a breakpoint, and each piece on which g > 0 is
// integrated with Gauss-Legendre.
template <class G>
double integrate_line(G&& g, double radius, const TensorRule& rule) {
  const int samples = std::max(rule.samples_per_axis, 3);
  std::vector<double> ts;
  ts.reserve(samples + 1);
  for (int i = 0; i < samples; ++i) ts.push_back(-radius + 2.0 * radius * i / (samples - 1));
  ts.push_back(0.0);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  std::vector<bool> inside(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) inside[i] = g(ts[i]) > 0.0;
  if (inside.front() || inside.back())
    throw DivergenceError("sub-level set reaches the boundary of its bounding cube (R = " +
                          std::to_string(radius) + ")");

  std::vector<double> breaks{-radius, 0.0, radius};
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    if (inside[i] == inside[i + 1]) continue;
    double lo = ts[i], hi = ts[i + 1];
    const bool lo_inside = inside[i];
    for (int it = 0; it < 200 && hi - lo > 1e-15 * radius; ++it) {
      const double mid = 0.5 * (lo + hi);
      if ((g(mid) > 0.0) == lo_inside)
        lo = mid;
      else
        hi = mid;
    }
    breaks.push_back(0.5 * (lo + hi));
  }
  std::sort(breaks.begin(), breaks.end());

  const GaussLegendreRule& gl = cached_rule(rule.order);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i], b = breaks[i + 1];
    if (!(b > a)) continue;
    const double half = 0.5 * (b - a), centre = 0.5 * (a + b);
    if (!(g(centre) > 0.0)) continue;
    double piece = 0.0;
    for (std::size_t k = 0; k < gl.nodes.size(); ++k) piece += gl.weights[k] * g(centre + half * gl.nodes[k]);
    total += half * piece;
  }
  return total;
}

double integrand_value(Integrand integrand, double f, double level) {
  if (!std::isfinite(f)) throw EvaluationError("non-finite integrand value");
  if (integrand == Integrand::indicator) return f < level ? 1.0 : 0.0;
  return f < level ? level - f : 0.0;
}

double tensor_integral(const Evaluator& f, int dimension, double level, Integrand integrand,
                       double radius, const TensorRule& rule) {
  Point x(dimension, 0.0);
  // Recursion over axes: the line function at axis k is the integral over
  // the remaining axes, which vanishes exactly off the projected set.
  std::function<double(int)> level_integral = [&](int axis) -> double {
    if (axis == dimension - 1) {
      return integrate_line(
          [&](double t) {
            x[axis] = t;
            return integrand_value(integrand, f(x), level);
          },
          radius, rule);
    }
    return integrate_line(
        [&](double t) {
          x[axis] = t;
          const double inner = level_integral(axis + 1);
          x[axis] = t;
          return inner;
        },
        radius, rule);
  };
  return level_integral(0);
}

Estimate monte_carlo_integral(const Evaluator& f, int dimension, double level, Integrand integrand,
                              double radius, const MonteCarloRule& rule) {
  if (rule.samples < 2) throw ArgumentError("Monte Carlo needs at least two samples");
  std::mt19937_64 rng(rule.seed);
  std::uniform_real_distribution<double> uniform(-radius, radius);
  Point x(dimension);
  double mean = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < rule.samples; ++i) {
    for (double& xi : x) xi = uniform(rng);
    const double v = integrand_value(integrand, f(x), level);
    const double delta = v - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (v - mean);
  }
  const double n = static_cast<double>(rule.samples);
  const double cube = std::pow(2.0 * radius, dimension);
  const double variance = m2 / (n - 1.0);
  return {cube * mean, cube * std::sqrt(variance / n)};
}

}  // namespace

GaussLegendreRule gauss_legendre(int order) {
  if (order < 1) throw ArgumentError("Gauss-Legendre order must be positive");
  GaussLegendreRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= order; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = order * (x * p1 - p0) / (x * x - 1.0);
    rule.nodes[order - 1 - i] = x;
    rule.weights[order - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

Method default_method(int dimension) {
  if (dimension <= 2) return TensorRule{};
  return MonteCarloRule{};
}

double bounding_radius(const Evaluator& f, int dimension, double level) {
  if (dimension < 1) throw ArgumentError("dimension must be positive");
  std::vector<Point> rays;
  for (int i = 0; i < dimension; ++i) {
    for (double sign : {1.0, -1.0}) {
      Point u(dimension, 0.0);
      u[i] = sign;
      rays.push_back(std::move(u));
    }
  }
  if (dimension > 1) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(dimension));
    for (unsigned mask = 0; mask < (1u << dimension); ++mask) {
      Point u(dimension);
      for (int i = 0; i < dimension; ++i) u[i] = ((mask >> i) & 1u) ? -scale : scale;
      rays.push_back(std::move(u));
    }
  }

  Point x(dimension);
  auto value_at = [&](const Point& u, double r) {
    for (int i = 0; i < dimension; ++i) x[i] = r * u[i];
    const double v = f(x);
    if (!std::isfinite(v)) throw EvaluationError("non-finite value during ray bisection");
    return v;
  };

  constexpr int kMinExp = -60, kMaxExp = 64;
  double reach = 0.0;
  for (const Point& u : rays) {
    int last_inside = kMinExp - 1;
    for (int k = kMinExp; k <= kMaxExp; ++k)
      if (value_at(u, std::ldexp(1.0, k)) < level) last_inside = k;
    if (last_inside == kMaxExp)
      throw DivergenceError("sub-level set {f < " + std::to_string(level) +
                            "} is not bounded along a sampled ray");
    if (last_inside < kMinExp) continue;
    double lo = std::ldexp(1.0, last_inside), hi = std::ldexp(1.0, last_inside + 1);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (value_at(u, mid) < level)
        lo = mid;
      else
        hi = mid;
    }
    reach = std::max(reach, hi);
  }
  return 1.1 * reach;
}

Estimate integrate_sublevel(const Evaluator& f, int dimension, double level, Integrand integrand,
                            const Method& method) {
  if (std::holds_alternative<ClosedForm>(method))
    throw ArgumentError("closed form is not a quadrature method");
  const double radius = bounding_radius(f, dimension, level);
  if (radius == 0.0) return {0.0, 0.0};
  if (const auto* tensor = std::get_if<TensorRule>(&method))
    return {tensor_integral(f, dimension, level, integrand, radius, *tensor), 0.0};
  return monte_carlo_integral(f, dimension, level, integrand, radius, std::get<MonteCarloRule>(method));
}

}  // namespace weyl::quadrature
