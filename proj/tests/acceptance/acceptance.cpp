// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all
// twelve pass. Every tolerance is a named constant below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "weyl/analysis.hpp"

using namespace weyl;
using analysis::Spectrum;
using geometry::Cube;
using geometry::DomainSet;
using spectral::GridOperator;
using symbols::Symbol;

namespace {

// 1
constexpr double kDirichletRelTol = 0.02;
constexpr double kRuntimeLimitSeconds = 60.0;
// 2
constexpr double kDenseLanczosAbsTol = 1e-8;
// 3, 4
constexpr double kComputedSlack = 0.02;
// 5
constexpr double kOracleSlopeTol = 0.005;
constexpr double kOracleRatioTol = 0.01;
constexpr double kComputedSlopeRelTol = 0.10;
constexpr double kComputedRatioLo = 0.8;
constexpr double kComputedRatioHi = 1.15;
// 6, 7
constexpr double kQuadratureRelTol = 1e-3;
constexpr double kMonteCarloSigmas = 4.0;
constexpr double kSpotValueTol = 1e-14;
// 8
constexpr double kTauberRatioTol = 0.01;
// 9
constexpr double kDualityRelTol = 1e-10;
// 10
constexpr double kParallelogramUlps = 8.0;  // times eps (1 + |p|^2 + |eta|^2)
constexpr double kDefectAbsTol = 1e-12;
// 11
constexpr double kCoherentIdentityTol = 1e-8;
constexpr double kCoherentGridTol = 1e-10;  // times (1 + T(p))
// 12
constexpr int kPropertyInstances = 100;
constexpr double kSelfAdjointTol = 1e-10;  // times |u||v| max(1, T_max - sigma)
constexpr double kPositivityTol = 1e-12;
constexpr double kMonotonicityTol = 1e-9;  // times (1 + |lambda|)
constexpr double kStructureTol = 1e-12;

const double pi = std::acos(-1.0);

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buffer[256];
  std::snprintf(buffer, sizeof buffer, pattern, a, b, c, d);
  return buffer;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const DomainSet& unit_interval() {
  static const DomainSet d = DomainSet::box({0.0}, {1.0});
  return d;
}

const DomainSet& unit_square() {
  static const DomainSet d = DomainSet::box({0.0, 0.0}, {1.0, 1.0});
  return d;
}

// Shared spectra, computed once.
struct Runs {
  Spectrum interval;      // criterion-1 configuration
  double interval_seconds = 0.0;
  Spectrum square;        // sum |p_i|, unit square, n = 256, M = 80
  Spectrum oracle_wide;   // (pi k)^2 up to beyond 1e6
  Spectrum oracle_200;    // (pi k)^2, k <= 200
  std::vector<Spectrum> dense_pairs;  // criterion-2 spectra, for the duality sweep
};

Runs& runs() {
  static Runs r;
  return r;
}

Spectrum solve_interval() {
  const GridOperator op = spectral::build_operator(Symbol::power(1, 1.0), unit_interval(), 512, 0.5);
  return spectral::lowest_eigenvalues(op, 5);
}

Spectrum solve_square() {
  const GridOperator op = spectral::build_operator(Symbol::directional(2, 0.5), unit_square(), 256, 0.5);
  return spectral::lowest_eigenvalues(op, 80);
}

// Lambda values for the bound checks: log-spaced up to the trusted limit,
// plus every eigenvalue and midpoint inside it.
std::vector<double> bound_grid(const Spectrum& s) {
  const double top = analysis::trusted_limit(s);
  std::vector<double> grid = analysis::log_grid(std::min(1.0, top / 2.0), top, 200);
  for (double v : s.eigenvalues)
    if (v > 0.0 && v <= top) grid.push_back(v);
  for (double v : analysis::midpoint_grid(s))
    if (v <= top) grid.push_back(v);
  std::sort(grid.begin(), grid.end());
  return grid;
}

std::vector<std::size_t> all_m(const Spectrum& s) {
  std::vector<std::size_t> m(s.size());
  std::iota(m.begin(), m.end(), 1);
  return m;
}

// ---- criteria ----------------------------------------------------------------

Outcome criterion_1() {
  Runs& r = runs();
  double worst = 0.0;
  for (std::size_t k = 0; k < r.interval.size(); ++k) {
    const double exact = std::pow(pi * static_cast<double>(k + 1), 2);
    worst = std::max(worst, std::abs(r.interval.eigenvalues[k] - exact) / exact);
  }
  const bool ok = r.interval.size() == 5 && worst <= kDirichletRelTol && r.interval_seconds <= kRuntimeLimitSeconds;
  return {ok, fmt("max rel err %.3e <= %.0e over k <= 5; runtime %.2f s <= %.0f s", worst, kDirichletRelTol,
                  r.interval_seconds, kRuntimeLimitSeconds)};
}

Outcome criterion_2() {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Symbol> symbols_1d = {Symbol::power(1, 0.25), Symbol::power(1, 0.5), Symbol::power(1, 1.0),
                                    Symbol::directional(1, 0.5), Symbol::directional(1, 0.75), Symbol::mixed(1, 2.0, 1.0, -1),
                                    Symbol::mixed(1, 3.0, 1.0, 1)};
  std::vector<Symbol> symbols_2d = {Symbol::power(2, 0.25), Symbol::power(2, 0.5), Symbol::power(2, 1.0),
                                    Symbol::directional(2, 0.5), Symbol::directional(2, 0.75),
                                    Symbol::mixed(2, 2.0, 1.0, -1), Symbol::mixed(2, 3.0, 1.0, 1)};
  double worst = 0.0;
  int cases = 0;
  auto random_rectangle = [&](int d) {
    Point lo(d), hi(d);
    for (int i = 0; i < d; ++i) {
      lo[i] = 0.05 + 0.3 * u(rng);
      hi[i] = lo[i] + 0.2 + 0.4 * u(rng);
    }
    return DomainSet::box(lo, hi);
  };
  auto compare = [&](const Symbol& t, int n) {
    const int d = t.dimension();
    const GridOperator op = spectral::build_operator(t, random_rectangle(d), Cube{Point(d, 0.0), 1.0}, n);
    const Spectrum dense = spectral::dense_spectrum(op);
    const Spectrum lanczos = spectral::lowest_eigenvalues(op, op.dimension());
    const double scale = op.grid().t_max - op.shift();
    for (std::size_t k = 0; k < dense.size(); ++k)
      worst = std::max(worst, std::abs(dense.eigenvalues[k] - lanczos.eigenvalues[k]) / scale);
    runs().dense_pairs.push_back(dense);
    runs().dense_pairs.push_back(lanczos);
    ++cases;
  };
  for (const Symbol& t : symbols_1d) compare(t, 64);
  for (const Symbol& t : symbols_2d) compare(t, 16);
  return {worst <= kDenseLanczosAbsTol,
          fmt("%.0f symbol/grid cases; max |dense - lanczos| / (T_max - sigma) = %.2e <= %.0e", cases, worst,
              kDenseLanczosAbsTol)};
}

struct BoundSummary {
  bool berezin = true;
  bool liyau = true;
  double berezin_margin = std::numeric_limits<double>::infinity();
  double liyau_margin = std::numeric_limits<double>::infinity();
};

BoundSummary check_bounds(const Spectrum& s, const Symbol& t, double volume, const std::vector<double>& grid,
                          double slack) {
  const analysis::WeylConstants c = analysis::weyl_constants(t, volume);
  const analysis::BoundReport report =
      analysis::bound_report(s, t, c, grid, all_m(s), slack, quadrature::ClosedForm{});
  BoundSummary out;
  out.berezin = report.berezin_pass;
  out.liyau = report.liyau_pass;
  for (const auto& row : report.berezin)
    if (row.trusted && row.riesz > 0.0) out.berezin_margin = std::min(out.berezin_margin, row.margin);
  for (const auto& row : report.liyau)
    if (row.trusted) out.liyau_margin = std::min(out.liyau_margin, row.margin);
  return out;
}

Outcome criterion_3() {
  Runs& r = runs();
  // Oracle: the explicit closed form (2/3)(2 pi)^{-1} 2 lambda^{3/2}, zero slack.
  bool oracle_ok = true;
  double oracle_margin = std::numeric_limits<double>::infinity();
  for (double lambda : analysis::log_grid(1.0, 1e6, 200)) {
    const double s = analysis::riesz_mean(r.oracle_wide, lambda);
    const double bound = 2.0 / 3.0 / (2.0 * pi) * 2.0 * std::pow(lambda, 1.5);
    if (s > bound) oracle_ok = false;
    if (s > 0.0) oracle_margin = std::min(oracle_margin, (bound - s) / bound);
  }
  const BoundSummary interval =
      check_bounds(r.interval, Symbol::power(1, 1.0), 1.0, bound_grid(r.interval), kComputedSlack);
  const BoundSummary square =
      check_bounds(r.square, Symbol::directional(2, 0.5), 1.0, bound_grid(r.square), kComputedSlack);
  const bool ok = oracle_ok && interval.berezin && square.berezin;
  return {ok, fmt("min margin (bound - S)/bound: oracle %.3e (slack 0), interval %.3e, square %.3e (slack %.2f)",
                  oracle_margin, interval.berezin_margin, square.berezin_margin, kComputedSlack)};
}

Outcome criterion_4() {
  Runs& r = runs();
  const BoundSummary oracle =
      check_bounds(r.oracle_wide, Symbol::power(1, 1.0), 1.0, analysis::log_grid(1.0, 1e6, 200), 0.0);
  const BoundSummary interval =
      check_bounds(r.interval, Symbol::power(1, 1.0), 1.0, bound_grid(r.interval), kComputedSlack);
  const BoundSummary square =
      check_bounds(r.square, Symbol::directional(2, 0.5), 1.0, bound_grid(r.square), kComputedSlack);
  const bool ok = oracle.liyau && interval.liyau && square.liyau;
  return {ok, fmt("min margin (sum - bound)/bound: oracle %.3e over %.0f M (slack 0), interval %.3e, square %.3e",
                  oracle.liyau_margin, static_cast<double>(r.oracle_wide.size()), interval.liyau_margin,
                  square.liyau_margin)};
}

Outcome criterion_5() {
  Runs& r = runs();
  const double top = std::pow(200.0 * pi, 2);
  const analysis::FitReport oracle = analysis::weyl_fit(
      analysis::counting_data(r.oracle_200, analysis::linear_grid(pi * pi, top, 400)),
      analysis::weyl_constants(Symbol::power(1, 1.0), 1.0));
  const analysis::FitReport square =
      analysis::weyl_fit(analysis::counting_data(r.square, analysis::midpoint_grid(r.square)),
                         analysis::weyl_constants(Symbol::directional(2, 0.5), 1.0));
  const bool oracle_ok = std::abs(oracle.slope - 0.5) <= kOracleSlopeTol &&
                         std::abs(oracle.ratio_at_max - 1.0) <= kOracleRatioTol;
  const bool square_ok = std::abs(square.slope - 2.0) <= kComputedSlopeRelTol * 2.0 &&
                         square.ratio_at_max >= kComputedRatioLo && square.ratio_at_max <= kComputedRatioHi;
  return {oracle_ok && square_ok,
          fmt("oracle slope %.4f, N/W %.4f at (200 pi)^2; square slope %.3f, N/W %.3f", oracle.slope,
              oracle.ratio_at_max, square.slope, square.ratio_at_max)};
}

Outcome criterion_6() {
  double worst_rel = 0.0;
  double worst_sigmas = 0.0;
  for (double s : {0.5, 0.75, 1.0}) {
    for (int d : {1, 2}) {
      const auto part = symbols::principal_part(Symbol::directional(d, s));
      const double quad = symbols::phase_volume(part, quadrature::TensorRule{}).value;
      const double closed = symbols::directional_phase_volume(d, s);
      worst_rel = std::max(worst_rel, std::abs(quad - closed) / closed);
    }
    const auto part = symbols::principal_part(Symbol::directional(3, s));
    const auto mc = symbols::phase_volume(part, quadrature::MonteCarloRule{});
    worst_sigmas = std::max(worst_sigmas, std::abs(mc.value - symbols::directional_phase_volume(3, s)) / mc.standard_error);
  }
  const double spot_l1 = symbols::directional_phase_volume(2, 0.5);
  const double spot_disk = symbols::directional_phase_volume(2, 1.0);
  const bool spots = std::abs(spot_l1 - 2.0) <= kSpotValueTol && std::abs(spot_disk - pi) <= kSpotValueTol * pi;
  const bool ok = worst_rel <= kQuadratureRelTol && worst_sigmas <= kMonteCarloSigmas && spots;
  return {ok, fmt("tensor max rel err %.2e <= %.0e (d = 1, 2); Monte Carlo max %.2f sigma <= 4 (d = 3); "
                  "V(s=1/2,d=2) - 2 = %.1e",
                  worst_rel, kQuadratureRelTol, worst_sigmas, spot_l1 - 2.0)};
}

Outcome criterion_7() {
  double worst = 0.0;
  int count = 0;
  for (int d : {1, 2}) {
    std::vector<Symbol> homogeneous;
    for (double s : {0.25, 0.5, 0.75, 1.0}) homogeneous.push_back(Symbol::power(d, s));
    for (double s : {0.5, 0.75, 1.0}) homogeneous.push_back(Symbol::directional(d, s));
    for (const Symbol& t : homogeneous) {
      const auto identity = symbols::sublevel_volume_identity(symbols::principal_part(t), 1.0);
      worst = std::max(worst, std::abs(identity.riesz_lhs - identity.riesz_rhs) / identity.riesz_rhs);
      ++count;
    }
  }
  return {worst <= kQuadratureRelTol,
          fmt("%.0f homogeneous symbols; max rel |int (T0 - 1)_- - alpha/(alpha+d) V_T| = %.2e <= %.0e", count, worst,
              kQuadratureRelTol)};
}

Outcome criterion_8() {
  const auto linear = analysis::tauberian_run([](std::size_t k) { return static_cast<double>(k); }, "k", 1.0,
                                              analysis::log_grid(2.0, 1e4, 60));
  const auto quadratic = analysis::tauberian_run(
      [](std::size_t k) { return static_cast<double>(k) * static_cast<double>(k); }, "k^2", 0.5,
      analysis::log_grid(2.0, 1e6, 60));
  const bool ok = std::abs(linear.ratio - 1.0) <= kTauberRatioTol && std::abs(quadratic.ratio - 1.0) <= kTauberRatioTol &&
                  linear.inequality_violations == 0 && quadratic.inequality_violations == 0;
  return {ok, fmt("ratio %.5f (xi = k), %.5f (xi = k^2); violations 0 of %.0f pairs", linear.ratio, quadratic.ratio,
                  static_cast<double>(linear.pairs_checked + quadratic.pairs_checked))};
}

Outcome criterion_9() {
  Runs& r = runs();
  std::vector<const Spectrum*> spectra = {&r.interval, &r.square, &r.oracle_wide, &r.oracle_200};
  for (const Spectrum& s : r.dense_pairs) spectra.push_back(&s);
  double worst = 0.0;
  std::size_t checks = 0;
  for (const Spectrum* s : spectra) {
    for (std::size_t m = 1; m <= s->size(); ++m) {
      const analysis::Duality d = analysis::duality_check(*s, m);
      worst = std::max(worst, std::abs(d.gap) / std::abs(d.lhs));
      ++checks;
    }
  }
  return {worst <= kDualityRelTol,
          fmt("%.0f spectra, %.0f (spectrum, M) pairs; max |gap| / lhs = %.2e <= %.0e",
              static_cast<double>(spectra.size()), static_cast<double>(checks), worst, kDualityRelTol)};
}

Outcome criterion_10() {
  // |p|^2: defect equals |eta|^2 to rounding.
  double worst_parallelogram = 0.0;
  for (int d : {1, 2, 3}) {
    const Symbol t = Symbol::power(d, 1.0);
    const auto ps = symbols::radial_samples(d, 32.0);
    const auto etas = symbols::radial_samples(d, 8.0);
    for (const Point& p : ps) {
      for (const Point& eta : etas) {
        const double e2 = norm(eta) * norm(eta);
        const double scale = std::numeric_limits<double>::epsilon() * (1.0 + norm(p) * norm(p) + e2);
        worst_parallelogram = std::max(worst_parallelogram, std::abs(symbols::midpoint_defect(t, p, eta) - e2) / scale);
      }
    }
  }
  // sum |p_i|^{2s}: defect <= sum |eta_i|^{2s} + 1e-12.
  double worst_excess = -std::numeric_limits<double>::infinity();
  for (double s : {0.25, 0.5, 0.75, 1.0}) {
    for (int d : {1, 2, 3}) {
      const Symbol t = Symbol::directional(d, s);
      const auto ps = symbols::radial_samples(d, 32.0);
      const auto etas = symbols::radial_samples(d, 8.0);
      for (const Point& eta : etas) {
        double envelope = 0.0;
        for (double e : eta) envelope += std::pow(std::abs(e), 2.0 * s);
        for (const Point& p : ps) worst_excess = std::max(worst_excess, symbols::midpoint_defect(t, p, eta) - envelope);
      }
    }
  }
  // Mixed symbols: assumption I with the attached minorant.
  bool mixed_ok = true;
  int mixed_count = 0;
  for (int d : {1, 2, 3}) {
    for (const Symbol& t : {Symbol::mixed(d, 2.0, 1.0, -1), Symbol::mixed(d, 2.0, 1.0, 1), Symbol::mixed(d, 3.0, 1.0, -1),
                            Symbol::mixed(d, 3.0, 1.0, 1)}) {
      const auto cert = symbols::check_assumption_one(t, symbols::default_nu_grid(), symbols::assumption_one_samples(d),
                                                      symbols::kAssumptionOneTolerance);
      mixed_ok = mixed_ok && cert.passed && cert.minorant_violations == 0;
      ++mixed_count;
    }
  }
  const bool ok = worst_parallelogram <= kParallelogramUlps && worst_excess <= kDefectAbsTol && mixed_ok;
  return {ok, fmt("|p|^2 defect - |eta|^2 <= %.1f eps-units (limit 8); directional max excess %.2e <= 1e-12; "
                  "mixed symbols passing assumption I: ",
                  worst_parallelogram, worst_excess) +
                  (mixed_ok ? std::to_string(mixed_count) : "not all") + " of " + std::to_string(mixed_count)};
}

Outcome criterion_11() {
  std::mt19937_64 rng(11);
  // Laplacian identity at random lattice momenta and centres.
  double worst_identity = 0.0;
  {
    const int n = 1024;
    const Cube box{{-0.5}, 2.0};
    const Symbol t = Symbol::power(1, 1.0);
    const auto grid = spectral::momentum_grid(t, n, box.side);
    std::uniform_int_distribution<int> k(-40, 40);
    std::uniform_real_distribution<double> q(0.15, 0.85);
    for (int trial = 0; trial < 50; ++trial) {
      const double p = 2.0 * pi * k(rng) / box.side;
      const auto probe = spectral::make_probe(box, n, 0.3, {q(rng)}, {p}, spectral::defect_envelope(t));
      const double expected = p * p + spectral::dirichlet_energy(grid, probe.bump);
      worst_identity = std::max(worst_identity, std::abs(spectral::coherent_expectation(grid, probe) - expected));
    }
  }
  // l1 symbol: expectation <= T(p) + C_g with q in the inner set of the unit square.
  double worst_excess = -std::numeric_limits<double>::infinity();
  {
    const int n = 64;
    const double delta = 0.4;
    const Cube box = geometry::enclosing_cube(unit_square(), 0.5);
    const Symbol t = Symbol::directional(2, 0.5);
    const auto grid = spectral::momentum_grid(t, n, box.side);
    const DomainSet inner = geometry::inner_set(unit_square(), delta / 2.0);
    const geometry::Box bb = geometry::bounding_box(inner);
    std::uniform_int_distribution<int> k(-n / 4, n / 4);
    std::uniform_real_distribution<double> ux(bb.lo[0], bb.hi[0]), uy(bb.lo[1], bb.hi[1]);
    int accepted = 0;
    while (accepted < 50) {
      const Point q{ux(rng), uy(rng)};
      if (!geometry::contains(inner, q)) continue;
      const Point p{2.0 * pi * k(rng) / box.side, 2.0 * pi * k(rng) / box.side};
      const auto probe = spectral::make_probe(box, n, delta, q, p, spectral::defect_envelope(t));
      const double value = spectral::coherent_expectation(grid, probe);
      const double tp = t(p);
      worst_excess = std::max(worst_excess, (value - tp - probe.constant) / (1.0 + tp));
      ++accepted;
    }
  }
  const bool ok = worst_identity <= kCoherentIdentityTol && worst_excess <= kCoherentGridTol;
  return {ok, fmt("|p|^2 identity max err %.2e <= %.0e (50 probes); l1 max (value - T(p) - C_g)/(1 + T(p)) = %.2e "
                  "<= %.0e (50 probes)",
                  worst_identity, kCoherentIdentityTol, worst_excess, kCoherentGridTol)};
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

Outcome criterion_12() {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> normal;
  auto random_symbol = [&](int d) {
    const double alpha = 0.5 + 2.5 * u(rng);
    switch (static_cast<int>(u(rng) * 3.0)) {
      case 0: return Symbol::power(d, alpha / 2.0);
      case 1: return Symbol::directional(d, alpha / 2.0);
      default: return Symbol::mixed(d, alpha, alpha * (0.1 + 0.8 * u(rng)), u(rng) < 0.5 ? -1 : 1);
    }
  };
  auto random_box = [&](int d, double lo_max, double size_min) {
    Point lo(d), hi(d);
    for (int i = 0; i < d; ++i) {
      lo[i] = lo_max * u(rng);
      hi[i] = std::min(1.0, lo[i] + size_min + (1.0 - size_min) * u(rng));
    }
    return DomainSet::box(lo, hi);
  };
  auto random_masked = [&](const GridOperator& op) {
    std::vector<double> v(op.mask().size(), 0.0);
    for (std::size_t k : op.occupied()) v[k] = normal(rng);
    return v;
  };

  // Self-adjointness, positivity after shift, mask idempotence.
  int adjoint_fail = 0, positivity_fail = 0, mask_fail = 0;
  double worst_raw = 0.0, worst_scaled = 0.0;
  int adjoint_unscaled = 0;
  for (int i = 0; i < kPropertyInstances; ++i) {
    const int d = 1 + i % 2;
    const GridOperator op = spectral::build_operator(random_symbol(d), random_box(d, 0.4, 0.3), Cube{Point(d, 0.0), 1.0},
                                                     d == 1 ? 128 : 32);
    const auto a = random_masked(op), b = random_masked(op);
    const auto aa = op.apply(a), ab = op.apply(b);
    const double na = std::sqrt(dot(a, a)), nb = std::sqrt(dot(b, b));
    const double asym = std::abs(dot(a, ab) - dot(aa, b)) / (na * nb);
    worst_raw = std::max(worst_raw, asym);
    const double scale = std::max(1.0, op.grid().t_max - op.shift());
    worst_scaled = std::max(worst_scaled, asym / scale);
    if (asym > kSelfAdjointTol) ++adjoint_unscaled;
    if (asym > kSelfAdjointTol * scale) ++adjoint_fail;
    if (dot(a, aa) - op.shift() * na * na < na * na * (1.0 - kPositivityTol)) ++positivity_fail;
    std::vector<double> w = a;
    for (std::size_t k = 0; k < w.size(); ++k)
      if (!op.mask().occupied[k]) {
        if (aa[k] != 0.0) ++mask_fail;
        w[k] = normal(rng);
      }
    if (op.apply(w) != aa) ++mask_fail;
  }

  // Domain monotonicity on nested rectangles, symbol monotonicity on ordered
  // symbols, both by dense spectra on a fixed grid.
  int domain_fail = 0, symbol_fail = 0;
  for (int i = 0; i < kPropertyInstances; ++i) {
    const int d = 1 + i % 2;
    const int n = d == 1 ? 64 : 16;
    const Cube box{Point(d, 0.0), 1.0};
    const Symbol t = random_symbol(d);
    Point lo(d), hi(d), lo2(d), hi2(d);
    for (int j = 0; j < d; ++j) {
      lo[j] = 0.05 + 0.2 * u(rng);
      hi[j] = lo[j] + 0.4 + 0.3 * u(rng);
      lo2[j] = lo[j] + 0.15 * u(rng) * (hi[j] - lo[j]);
      hi2[j] = hi[j] - 0.15 * u(rng) * (hi[j] - lo[j]);
    }
    const Spectrum outer = spectral::dense_spectrum(spectral::build_operator(t, DomainSet::box(lo, hi), box, n));
    const Spectrum inner = spectral::dense_spectrum(spectral::build_operator(t, DomainSet::box(lo2, hi2), box, n));
    for (std::size_t k = 0; k < inner.size(); ++k)
      if (inner.eigenvalues[k] < outer.eigenvalues[k] - kMonotonicityTol * (1.0 + std::abs(outer.eigenvalues[k])))
        ++domain_fail;

    const double alpha = 0.5 + 2.5 * u(rng);
    const double beta = alpha * (0.1 + 0.8 * u(rng));
    const DomainSet domain = DomainSet::box(lo, hi);
    const Spectrum low = spectral::dense_spectrum(
        spectral::build_operator(Symbol::mixed(d, alpha, beta, -1), domain, box, n));
    const Spectrum mid =
        spectral::dense_spectrum(spectral::build_operator(Symbol::power(d, alpha / 2.0), domain, box, n));
    const Spectrum high = spectral::dense_spectrum(
        spectral::build_operator(Symbol::mixed(d, alpha, beta, 1), domain, box, n));
    for (std::size_t k = 0; k < mid.size(); ++k) {
      const double tol = kMonotonicityTol * (1.0 + std::abs(mid.eigenvalues[k]));
      if (low.eigenvalues[k] > mid.eigenvalues[k] + tol || mid.eigenvalues[k] > high.eigenvalues[k] + tol)
        ++symbol_fail;
    }
  }

  // N and S structure on random spectra.
  int structure_fail = 0;
  for (int i = 0; i < kPropertyInstances; ++i) {
    Spectrum s;
    const std::size_t size = 5 + static_cast<std::size_t>(u(rng) * 60.0);
    for (std::size_t k = 0; k < size; ++k) s.eigenvalues.push_back(0.1 + 100.0 * u(rng));
    std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
    s.residuals.assign(size, 0.0);
    s.reliability_cutoff = std::numeric_limits<double>::infinity();
    std::vector<double> grid;
    for (int j = 0; j < 80; ++j) grid.push_back(0.05 + 120.0 * u(rng));
    std::sort(grid.begin(), grid.end());
    const auto data = analysis::counting_data(s, grid);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      // S against the integral of the step function N, interval by interval.
      double integral = 0.0;
      for (std::size_t k = 0; k < size && s.eigenvalues[k] < grid[j]; ++k) {
        const double right = (k + 1 < size && s.eigenvalues[k + 1] < grid[j]) ? s.eigenvalues[k + 1] : grid[j];
        integral += static_cast<double>(k + 1) * (right - s.eigenvalues[k]);
      }
      if (std::abs(data.riesz[j] - integral) > kStructureTol * (1.0 + integral)) ++structure_fail;
      if (j == 0) continue;
      const double h = grid[j] - grid[j - 1];
      if (data.counts[j] < data.counts[j - 1]) ++structure_fail;
      if (data.riesz[j] - data.riesz[j - 1] < h * data.counts[j - 1] - kStructureTol * (1.0 + data.riesz[j]))
        ++structure_fail;
    }
  }

  const bool ok = adjoint_fail + positivity_fail + mask_fail + domain_fail + symbol_fail + structure_fail == 0;
  return {ok, "failures over " + std::to_string(kPropertyInstances) + " instances each: self-adjoint " +
                  std::to_string(adjoint_fail) + ", positivity " + std::to_string(positivity_fail) + ", mask " +
                  std::to_string(mask_fail) + ", domain monotone " + std::to_string(domain_fail) +
                  ", symbol monotone " + std::to_string(symbol_fail) + ", N/S structure " +
                  std::to_string(structure_fail) + fmt("; asymmetry / (|u||v|) max %.2e, over max(1, T_max - sigma) %.2e (tol 1e-10); unscaled exceedances ",
                                             worst_raw, worst_scaled) + std::to_string(adjoint_unscaled)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {1, "Dirichlet-interval convergence", criterion_1},
      {2, "dense/matrix-free equivalence", criterion_2},
      {3, "Berezin bound", criterion_3},
      {4, "Li-Yau bound", criterion_4},
      {5, "Weyl trend", criterion_5},
      {6, "phase-volume closed forms", criterion_6},
      {7, "sub-level Riesz identity", criterion_7},
      {8, "Tauberian lemma", criterion_8},
      {9, "duality identity", criterion_9},
      {10, "assumption certificates", criterion_10},
      {11, "coherent-state bound", criterion_11},
      {12, "property suites", criterion_12},
  };

  Runs& r = runs();
  std::string setup_error;
  try {
    const auto start = std::chrono::steady_clock::now();
    r.interval = solve_interval();
    r.interval_seconds = seconds_since(start);
    r.square = solve_square();
    r.oracle_wide = analysis::dirichlet_interval_spectrum(400);
    r.oracle_200 = analysis::dirichlet_interval_spectrum(200);
  } catch (const std::exception& e) {
    setup_error = e.what();
  }

  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome outcome;
    const auto start = std::chrono::steady_clock::now();
    if (!setup_error.empty()) {
      outcome = {false, "shared spectra unavailable: " + setup_error};
    } else {
      try {
        outcome = c.check();
      } catch (const std::exception& e) {
        outcome = {false, std::string("exception: ") + e.what()};
      }
    }
    if (!outcome.passed) ++failures;
    std::printf("%s  %2d  %-32s %s  [%.1f s]\n", outcome.passed ? "PASS" : "FAIL", c.id, c.name,
                outcome.detail.c_str(), seconds_since(start));
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
