#include "weyl/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "weyl/errors.hpp"

namespace weyl::analysis {

namespace {

void require_positive_lambda(double lambda, const char* where) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw ArgumentError(std::string(where) + " needs a finite lambda > 0");
}

double two_pi_power(double exponent) { return std::pow(2.0 * kPi, exponent); }

}  // namespace

std::size_t counting_function(const Spectrum& spectrum, double lambda) {
  require_positive_lambda(lambda, "counting_function");
  const auto& ev = spectrum.eigenvalues;
  return static_cast<std::size_t>(std::lower_bound(ev.begin(), ev.end(), lambda) - ev.begin());
}

double riesz_mean(const Spectrum& spectrum, double lambda) {
  const std::size_t count = counting_function(spectrum, lambda);
  double sum = 0.0;
  for (std::size_t k = 0; k < count; ++k) sum += lambda - spectrum.eigenvalues[k];
  return sum;
}

double partial_sum(const Spectrum& spectrum, std::size_t m) {
  if (m > spectrum.size()) throw ArgumentError("partial_sum: M exceeds the computed spectrum");
  double sum = 0.0;
  for (std::size_t k = 0; k < m; ++k) sum += spectrum.eigenvalues[k];
  return sum;
}

Spectrum dirichlet_interval_spectrum(std::size_t count, double length) {
  if (count == 0 || !(length > 0.0)) throw ArgumentError("dirichlet_interval_spectrum: invalid parameters");
  Spectrum spectrum;
  spectrum.eigenvalues.reserve(count);
  for (std::size_t k = 1; k <= count; ++k) {
    const double p = kPi * static_cast<double>(k) / length;
    spectrum.eigenvalues.push_back(p * p);
  }
  spectrum.residuals.assign(count, 0.0);
  spectrum.reliability_cutoff = std::numeric_limits<double>::infinity();
  spectrum.info.method = "oracle";
  return spectrum;
}

double trusted_limit(const Spectrum& spectrum) {
  if (spectrum.eigenvalues.empty()) return 0.0;
  return std::min(spectrum.reliability_cutoff, spectrum.eigenvalues.back());
}

double domain_volume(const geometry::DomainSet& domain) {
  try {
    return geometry::volume(domain, quadrature::ClosedForm{}).value;
  } catch (const UnsupportedError&) {
    return geometry::volume(domain, quadrature::MonteCarloRule{}).value;
  }
}

WeylConstants weyl_constants(const symbols::Symbol& symbol, double volume) {
  if (!(volume > 0.0)) throw ArgumentError("weyl_constants: domain volume must be positive");
  const symbols::PrincipalPart part = symbols::principal_part(symbol);
  WeylConstants c;
  c.dimension = part.dimension;
  c.alpha = part.alpha;
  c.volume = volume;
  c.phase_volume = symbols::resolve_phase_volume(part);
  c.homogeneous = symbol.homogeneous();
  return c;
}

WeylConstants weyl_constants(const symbols::Symbol& symbol, const geometry::DomainSet& domain) {
  if (symbol.dimension() != domain.dimension())
    throw ArgumentError("symbol and domain dimensions differ");
  return weyl_constants(symbol, domain_volume(domain));
}

double weyl_term(const WeylConstants& c, double lambda) {
  require_positive_lambda(lambda, "weyl_term");
  return two_pi_power(-c.dimension) * c.volume * c.phase_volume * std::pow(lambda, c.dimension / c.alpha);
}

double weyl_term(const symbols::Symbol& symbol, const geometry::DomainSet& domain, double lambda) {
  return weyl_term(weyl_constants(symbol, domain), lambda);
}

double berezin_bound(const symbols::Symbol& symbol, double volume, double lambda, const symbols::Method& method) {
  require_positive_lambda(lambda, "berezin_bound");
  if (!(volume > 0.0)) throw ArgumentError("berezin_bound: domain volume must be positive");
  return volume * two_pi_power(-symbol.dimension()) * symbols::riesz_integral(symbol, lambda, method).value;
}

double berezin_bound(const symbols::Symbol& symbol, const geometry::DomainSet& domain, double lambda,
                     const symbols::Method& method) {
  if (symbol.dimension() != domain.dimension())
    throw ArgumentError("symbol and domain dimensions differ");
  return berezin_bound(symbol, domain_volume(domain), lambda, method);
}

double liyau_bound(const WeylConstants& c, std::size_t m) {
  if (m == 0) throw ArgumentError("liyau_bound needs M >= 1");
  if (!c.homogeneous) throw UnsupportedError("liyau_bound needs a homogeneous symbol");
  const double d = c.dimension;
  const double a = c.alpha;
  return d / (d + a) * two_pi_power(a) * std::pow(c.volume * c.phase_volume, -a / d) *
         std::pow(static_cast<double>(m), 1.0 + a / d);
}

double liyau_bound(const symbols::Symbol& symbol, const geometry::DomainSet& domain, std::size_t m) {
  return liyau_bound(weyl_constants(symbol, domain), m);
}

Duality duality_check(const Spectrum& spectrum, std::size_t m) {
  const auto& ev = spectrum.eigenvalues;
  if (m == 0 || m > ev.size()) throw ArgumentError("duality_check: M must lie in [1, spectrum size]");
  Duality out;
  out.lhs = partial_sum(spectrum, m);
  // M L - S(L) at breakpoints L = lambda_j, with S advanced incrementally:
  // S(lambda_{j+1}) = S(lambda_j) + #{k : lambda_k < lambda_{j+1}} (lambda_{j+1} - lambda_j).
  double s = 0.0;
  out.rhs = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < ev.size(); ++j) {
    if (j > 0) {
      const auto below = static_cast<std::size_t>(std::lower_bound(ev.begin(), ev.end(), ev[j]) - ev.begin());
      s += static_cast<double>(below) * (ev[j] - ev[j - 1]);
    }
    const double value = static_cast<double>(m) * ev[j] - s;
    if (value > out.rhs) {
      out.rhs = value;
      out.argmax = ev[j];
    }
  }
  out.gap = out.lhs - out.rhs;
  return out;
}

// ---- Tauberian lemma ------------------------------------------------------

TauberianRun tauberian_run(const SequenceGenerator& xi, const std::string& description, double a,
                           const std::vector<double>& lambda_grid) {
  if (!(a > 0.0)) throw ArgumentError("tauberian_run needs a > 0");
  if (lambda_grid.empty()) throw ArgumentError("tauberian_run needs a nonempty grid");
  for (double lambda : lambda_grid) require_positive_lambda(lambda, "tauberian_run");
  std::vector<double> grid = lambda_grid;
  std::sort(grid.begin(), grid.end());
  const double top = grid.back();

  constexpr std::size_t kMaxTerms = 100'000'000;
  Spectrum sequence;
  double previous = 0.0;
  for (std::size_t k = 1;; ++k) {
    if (k > kMaxTerms) throw ArgumentError("tauberian_run: sequence does not exceed the grid within 1e8 terms");
    const double value = xi(k);
    if (!(value > 0.0) || !std::isfinite(value))
      throw ArgumentError("tauberian_run: xi_" + std::to_string(k) + " is not a positive number");
    if (value < previous) throw ArgumentError("tauberian_run: sequence decreases at k = " + std::to_string(k));
    previous = value;
    sequence.eigenvalues.push_back(value);
    if (value >= top) break;
  }
  sequence.reliability_cutoff = std::numeric_limits<double>::infinity();

  TauberianRun run;
  run.generator = description;
  run.a = a;
  run.lambdas = grid;
  std::vector<double> s_values;
  std::vector<double> n_values;
  for (double lambda : grid) {
    const double s = riesz_mean(sequence, lambda);
    const double n = static_cast<double>(counting_function(sequence, lambda));
    s_values.push_back(s);
    n_values.push_back(n);
    run.riesz_scaled.push_back(s * std::pow(lambda, -a - 1.0));
    run.counting_scaled.push_back(n * std::pow(lambda, -a));
  }
  run.riesz_constant = run.riesz_scaled.back();
  run.counting_constant = run.counting_scaled.back();
  run.ratio = run.counting_constant / ((a + 1.0) * run.riesz_constant);

  // S(L + h) - S(L) >= h N(L) for every ordered pair; a violation must exceed
  // the rounding of the three summands.
  constexpr double kRounding = 64.0 * std::numeric_limits<double>::epsilon();
  run.worst_inequality = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      const double h = grid[j] - grid[i];
      const double slack = s_values[j] - s_values[i] - h * n_values[i];
      const double scale = std::abs(s_values[j]) + std::abs(s_values[i]) + h * n_values[i];
      const double scaled = scale > 0.0 ? slack / scale : 0.0;
      run.worst_inequality = std::min(run.worst_inequality, scaled);
      ++run.pairs_checked;
      if (scaled < -kRounding) ++run.inequality_violations;
    }
  }
  if (run.pairs_checked == 0) run.worst_inequality = 0.0;
  return run;
}

// ---- grids, counting data and fits -----------------------------------------

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
  if (count < 2 || !(lo > 0.0) || !(hi > lo)) throw ArgumentError("linear_grid needs 0 < lo < hi and count >= 2");
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i)
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  grid.back() = hi;
  return grid;
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (count < 2 || !(lo > 0.0) || !(hi > lo)) throw ArgumentError("log_grid needs 0 < lo < hi and count >= 2");
  std::vector<double> grid(count);
  const double step = std::log(hi / lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) grid[i] = lo * std::exp(step * static_cast<double>(i));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

std::vector<double> midpoint_grid(const Spectrum& spectrum) {
  std::vector<double> grid;
  const auto& ev = spectrum.eigenvalues;
  for (std::size_t k = 1; k < ev.size(); ++k) {
    if (ev[k] - ev[k - 1] > 1e-12 * (1.0 + std::abs(ev[k]))) {
      const double mid = 0.5 * (ev[k - 1] + ev[k]);
      if (mid > 0.0) grid.push_back(mid);
    }
  }
  return grid;
}

CountingData counting_data(const Spectrum& spectrum, const std::vector<double>& lambda_grid) {
  CountingData data;
  const double limit = trusted_limit(spectrum);
  data.lambdas = lambda_grid;
  std::sort(data.lambdas.begin(), data.lambdas.end());
  for (double lambda : data.lambdas) {
    data.counts.push_back(counting_function(spectrum, lambda));
    data.riesz.push_back(riesz_mean(spectrum, lambda));
    data.trusted.push_back(lambda <= limit);
  }
  return data;
}

std::string to_csv(const CountingData& data) {
  std::string out = "Lambda,N,S,trusted\n";
  char line[128];
  for (std::size_t i = 0; i < data.lambdas.size(); ++i) {
    std::snprintf(line, sizeof line, "%.17g,%zu,%.17g,%s\n", data.lambdas[i], data.counts[i], data.riesz[i],
                  data.trusted[i] ? "true" : "false");
    out += line;
  }
  return out;
}

FitReport weyl_fit(const CountingData& data, const WeylConstants& c) {
  std::vector<double> x;
  std::vector<double> y;
  FitReport fit;
  for (std::size_t i = 0; i < data.lambdas.size(); ++i) {
    if (!data.trusted[i] || data.counts[i] < 5) continue;
    x.push_back(std::log(data.lambdas[i]));
    y.push_back(std::log(static_cast<double>(data.counts[i])));
    if (data.lambdas[i] >= fit.lambda_max) {
      fit.lambda_max = data.lambdas[i];
      fit.ratio_at_max = static_cast<double>(data.counts[i]) / weyl_term(c, data.lambdas[i]);
    }
  }
  if (x.size() < 10)
    throw InsufficientDataError("weyl_fit needs at least 10 trusted points with N >= 5, got " +
                                std::to_string(x.size()));
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw InsufficientDataError("weyl_fit: trusted points share one lambda");
  fit.slope = sxy / sxx;
  fit.constant = std::exp(my - fit.slope * mx);
  fit.slope_target = c.dimension / c.alpha;
  fit.constant_target = two_pi_power(-c.dimension) * c.volume * c.phase_volume;
  fit.points = x.size();
  return fit;
}

nlohmann::json to_json(const FitReport& fit) {
  return {{"slope", fit.slope},
          {"slope_target", fit.slope_target},
          {"constant", fit.constant},
          {"constant_target", fit.constant_target},
          {"ratio_at_max", fit.ratio_at_max},
          {"lambda_max", fit.lambda_max},
          {"points", fit.points}};
}

// ---- bound report ------------------------------------------------------------

BoundReport bound_report(const Spectrum& spectrum, const symbols::Symbol& symbol, const WeylConstants& c,
                         const std::vector<double>& lambda_grid, const std::vector<std::size_t>& m_grid,
                         double slack, const symbols::Method& method) {
  if (lambda_grid.empty() || m_grid.empty()) throw ArgumentError("bound_report needs nonempty grids");
  if (spectrum.eigenvalues.empty()) throw ArgumentError("bound_report needs a nonempty spectrum");
  if (!(slack >= 0.0)) throw ArgumentError("bound_report needs slack >= 0");
  BoundReport report;
  report.trusted_limit = trusted_limit(spectrum);
  report.slack = slack;
  report.berezin_pass = true;
  report.liyau_pass = true;
  report.duality_pass = true;

  std::vector<double> lambdas = lambda_grid;
  std::sort(lambdas.begin(), lambdas.end());
  for (double lambda : lambdas) {
    BerezinRow b;
    b.lambda = lambda;
    b.riesz = riesz_mean(spectrum, lambda);
    b.bound = berezin_bound(symbol, c.volume, lambda, method);
    b.margin = (b.bound - b.riesz) / b.bound;
    b.trusted = lambda <= report.trusted_limit;
    if (b.trusted && b.riesz > b.bound * (1.0 + slack)) report.berezin_pass = false;
    report.berezin.push_back(b);

    WeylRow w;
    w.lambda = lambda;
    w.count = counting_function(spectrum, lambda);
    w.weyl = weyl_term(c, lambda);
    w.ratio = static_cast<double>(w.count) / w.weyl;
    w.trusted = b.trusted;
    report.weyl.push_back(w);
  }

  std::vector<std::size_t> ms;
  for (std::size_t m : m_grid)
    if (m >= 1 && m <= spectrum.size()) ms.push_back(m);
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  if (ms.empty()) throw ArgumentError("bound_report: no M in the grid lies within the spectrum");
  for (std::size_t m : ms) {
    if (c.homogeneous) {
      LiYauRow l;
      l.m = m;
      l.sum = partial_sum(spectrum, m);
      l.bound = liyau_bound(c, m);
      l.margin = (l.sum - l.bound) / l.bound;
      l.trusted = spectrum.eigenvalues[m - 1] <= report.trusted_limit;
      if (l.trusted && l.sum < l.bound * (1.0 - slack)) report.liyau_pass = false;
      report.liyau.push_back(l);
    }
    const Duality dual = duality_check(spectrum, m);
    report.duality.push_back({m, dual.lhs, dual.rhs, dual.gap});
    if (std::abs(dual.gap) > report.duality_tolerance * std::abs(dual.lhs)) report.duality_pass = false;
  }
  return report;
}

nlohmann::json to_json(const BoundReport& report) {
  nlohmann::json berezin = nlohmann::json::array();
  for (const auto& r : report.berezin)
    berezin.push_back(
        {{"lambda", r.lambda}, {"S", r.riesz}, {"bound", r.bound}, {"margin", r.margin}, {"trusted", r.trusted}});
  nlohmann::json liyau = nlohmann::json::array();
  for (const auto& r : report.liyau)
    liyau.push_back({{"M", r.m}, {"sum", r.sum}, {"bound", r.bound}, {"margin", r.margin}, {"trusted", r.trusted}});
  nlohmann::json weyl = nlohmann::json::array();
  for (const auto& r : report.weyl)
    weyl.push_back(
        {{"lambda", r.lambda}, {"N", r.count}, {"W", r.weyl}, {"ratio", r.ratio}, {"trusted", r.trusted}});
  nlohmann::json duality = nlohmann::json::array();
  for (const auto& r : report.duality)
    duality.push_back({{"M", r.m}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"gap", r.gap}});
  return {{"berezin", berezin},
          {"liyau", liyau},
          {"weyl", weyl},
          {"duality", duality},
          {"trusted_limit", report.trusted_limit},
          {"slack", report.slack},
          {"duality_tolerance", report.duality_tolerance},
          {"berezin_pass", report.berezin_pass},
          {"liyau_pass", report.liyau_pass},
          {"duality_pass", report.duality_pass}};
}

BoundReport bound_report_from_json(const nlohmann::json& j) {
  try {
    BoundReport report;
    for (const auto& r : j.at("berezin"))
      report.berezin.push_back({r.at("lambda").get<double>(), r.at("S").get<double>(), r.at("bound").get<double>(),
                                r.at("margin").get<double>(), r.at("trusted").get<bool>()});
    for (const auto& r : j.at("liyau"))
      report.liyau.push_back({r.at("M").get<std::size_t>(), r.at("sum").get<double>(), r.at("bound").get<double>(),
                              r.at("margin").get<double>(), r.at("trusted").get<bool>()});
    for (const auto& r : j.at("weyl"))
      report.weyl.push_back({r.at("lambda").get<double>(), r.at("N").get<std::size_t>(), r.at("W").get<double>(),
                             r.at("ratio").get<double>(), r.at("trusted").get<bool>()});
    for (const auto& r : j.at("duality"))
      report.duality.push_back({r.at("M").get<std::size_t>(), r.at("lhs").get<double>(), r.at("rhs").get<double>(),
                                r.at("gap").get<double>()});
    // JSON has no infinity; an oracle spectrum's unbounded limit is written as null.
    const auto& limit = j.at("trusted_limit");
    report.trusted_limit = limit.is_null() ? std::numeric_limits<double>::infinity() : limit.get<double>();
    report.slack = j.at("slack").get<double>();
    report.duality_tolerance = j.at("duality_tolerance").get<double>();
    report.berezin_pass = j.at("berezin_pass").get<bool>();
    report.liyau_pass = j.at("liyau_pass").get<bool>();
    report.duality_pass = j.at("duality_pass").get<bool>();
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bound report: ") + e.what());
  }
}

}  // namespace weyl::analysis
