#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "svg_plot.hpp"
#include "weyl/analysis.hpp"
#include "weyl/errors.hpp"

namespace weyl::cli {

namespace fs = std::filesystem;
using analysis::Spectrum;

namespace {

// N/W windows at the largest trusted lambda. The asymptotic statement has no
// rate, so these finite-lambda windows are an engineering choice.
constexpr double kOracleRatioWindow = 0.01;
constexpr double kComputedRatioLo = 0.8;
constexpr double kComputedRatioHi = 1.15;

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot write '" + path.string() + "'");
  file << text;
  if (!file) throw Error("write to '" + path.string() + "' failed");
}

void write_json(const fs::path& path, const nlohmann::json& j) { write_text(path, j.dump(2) + "\n"); }

fs::path prepare_output(const RunConfig& config) {
  const fs::path dir(config.output);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());
  return dir;
}

nlohmann::json spectrum_header(const RunConfig& config, const geometry::Cube& cube, const spectral::MomentumGrid& grid) {
  return {{"schema_version", kSchemaVersion},
          {"symbol", config.symbol_spec},
          {"domain", config.domain_spec},
          {"n", config.grid.n},
          {"L", cube.side},
          {"pad", config.grid.pad},
          {"sigma", grid.t_min - 1.0},
          {"tol", config.solver.tol},
          {"T_max", grid.t_max},
          {"reliability_cutoff", grid.t_max / 4.0},
          {"M", config.solver.m},
          {"seed", config.seed}};
}

std::string staircase_svg(const Spectrum& spectrum, const std::optional<analysis::WeylConstants>& constants) {
  Plot plot;
  plot.title = "Counting function N(lambda)";
  plot.x_label = "lambda";
  plot.y_label = "N(lambda)";
  Series stairs{"N (computed)", "#1f5fa8", {}, SeriesStyle::staircase, false};
  const auto& ev = spectrum.eigenvalues;
  if (!ev.empty()) {
    stairs.points.emplace_back(ev.front(), 0.0);
    for (std::size_t k = 0; k < ev.size(); ++k) stairs.points.emplace_back(ev[k], static_cast<double>(k + 1));
  }
  plot.series.push_back(stairs);
  if (constants && !ev.empty() && ev.back() > 0.0) {
    Series weyl{"Weyl term W", "#c0392b", {}, SeriesStyle::line, true};
    const double lo = std::max(ev.front(), ev.back() * 1e-3);
    for (const double lambda : analysis::linear_grid(lo, ev.back(), 200))
      weyl.points.emplace_back(lambda, analysis::weyl_term(*constants, lambda));
    plot.series.push_back(weyl);
  }
  if (std::isfinite(spectrum.reliability_cutoff) && !ev.empty() && spectrum.reliability_cutoff <= ev.back())
    plot.markers.push_back({"T_max/4", spectrum.reliability_cutoff});
  return render_svg(plot);
}

struct ComputedSpectrum {
  Spectrum spectrum;
  nlohmann::json header;
};

// Solves, writes spectrum.csv, spectrum.json and staircase.svg. On
// non-convergence the metadata is marked failed and the error rethrown.
ComputedSpectrum compute_and_write_spectrum(const RunConfig& config, const fs::path& dir, std::ostream& out) {
  const geometry::Cube cube = geometry::enclosing_cube(*config.domain, config.grid.pad);
  const spectral::GridOperator op = spectral::build_operator(config.symbol, *config.domain, cube, config.grid.n);
  nlohmann::json header = spectrum_header(config, cube, op.grid());
  spectral::LanczosOptions options;
  options.tolerance = config.solver.tol;
  options.seed = config.seed;
  options.max_passes = config.solver.max_passes;
  Spectrum spectrum;
  try {
    spectrum = spectral::lowest_eigenvalues(op, config.solver.m, options);
  } catch (const ConvergenceError& e) {
    header["status"] = "failed";
    header["error"] = e.what();
    header["best_residuals"] = e.best_residuals();
    write_text(dir / "spectrum.csv", "k,lambda,residual,trusted\n");
    write_json(dir / "spectrum.json", header);
    throw;
  }
  header["status"] = "ok";
  header["solver"] = {{"method", spectrum.info.method},
                      {"matvecs", spectrum.info.matvecs},
                      {"passes", spectrum.info.passes},
                      {"occupied_cells", op.dimension()}};
  write_text(dir / "spectrum.csv", spectral::to_csv(spectrum));
  write_json(dir / "spectrum.json", header);
  std::optional<analysis::WeylConstants> constants;
  try {
    constants = analysis::weyl_constants(config.symbol, *config.domain);
  } catch (const Error&) {
    constants.reset();
  }
  write_text(dir / "staircase.svg", staircase_svg(spectrum, constants));
  out << "spectrum: " << spectrum.size() << " eigenvalues, lambda_1 = " << spectrum.eigenvalues.front()
      << ", lambda_M = " << spectrum.eigenvalues.back() << ", T_max/4 = " << spectrum.reliability_cutoff << " ("
      << spectrum.info.matvecs << " matvecs)\n";
  return {spectrum, header};
}

Spectrum oracle_spectrum(const RunConfig& config) {
  const auto kind = config.symbol.kind();
  if (config.symbol.dimension() != 1 || kind != symbols::SymbolKind::power || config.symbol.s() != 1.0)
    throw ValidationError("--oracle dirichlet-interval needs the symbol {kind: power, d: 1, s: 1}");
  const geometry::Box box = geometry::bounding_box(*config.domain);
  const double length = box.hi[0] - box.lo[0];
  if (std::abs(analysis::domain_volume(*config.domain) - length) > 1e-12 * length)
    throw ValidationError("--oracle dirichlet-interval needs a single interval domain");
  return analysis::dirichlet_interval_spectrum(config.solver.m, length);
}

std::vector<double> lambda_grid(const LambdaGridSpec& spec, const Spectrum& spectrum) {
  const double hi = spec.hi.value_or(analysis::trusted_limit(spectrum));
  double lo = 0.0;
  if (spec.lo) {
    lo = *spec.lo;
  } else {
    const auto first = std::find_if(spectrum.eigenvalues.begin(), spectrum.eigenvalues.end(),
                                    [](double v) { return v > 0.0; });
    lo = first == spectrum.eigenvalues.end() ? hi / 100.0 : *first;
    if (!(lo < hi)) lo = hi / 100.0;
  }
  if (!(hi > 0.0) || !(lo < hi))
    throw InsufficientDataError("lambda grid is empty: trusted range [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
  if (spec.rule == "linear") return analysis::linear_grid(lo, hi, spec.count);
  if (spec.rule == "log") return analysis::log_grid(lo, hi, spec.count);
  std::vector<double> grid;
  for (double v : analysis::midpoint_grid(spectrum))
    if (v >= lo && v <= hi) grid.push_back(v);
  if (grid.empty()) throw InsufficientDataError("no eigenvalue midpoints inside the trusted range");
  return grid;
}

std::vector<std::size_t> m_grid(const MGridSpec& spec, std::size_t size) {
  std::vector<std::size_t> grid;
  if (spec.rule == "all" || spec.count >= size) {
    for (std::size_t m = 1; m <= size; ++m) grid.push_back(m);
    return grid;
  }
  for (std::size_t i = 0; i < spec.count; ++i) {
    const double t = spec.count == 1 ? 1.0 : static_cast<double>(i) / static_cast<double>(spec.count - 1);
    grid.push_back(1 + static_cast<std::size_t>(std::llround(t * static_cast<double>(size - 1))));
  }
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

std::string berezin_svg(const analysis::BoundReport& report) {
  Plot plot;
  plot.title = "Riesz mean against the Berezin bound";
  plot.x_label = "lambda";
  plot.y_label = "S(lambda)";
  plot.log_x = true;
  plot.log_y = true;
  Series s{"S (computed)", "#1f5fa8", {}, SeriesStyle::line, false};
  Series b{"Berezin bound", "#c0392b", {}, SeriesStyle::line, true};
  for (const auto& row : report.berezin) {
    s.points.emplace_back(row.lambda, row.riesz);
    b.points.emplace_back(row.lambda, row.bound);
  }
  plot.series = {s, b};
  if (std::isfinite(report.trusted_limit)) plot.markers.push_back({"trusted limit", report.trusted_limit});
  return render_svg(plot);
}

std::string ratio_svg(const analysis::BoundReport& report) {
  Plot plot;
  plot.title = "N / W against lambda";
  plot.x_label = "lambda";
  plot.y_label = "N(lambda) / W(lambda)";
  Series r{"N / W", "#1f5fa8", {}, SeriesStyle::line, false};
  Series one{"1", "#777777", {}, SeriesStyle::line, true};
  for (const auto& row : report.weyl) r.points.emplace_back(row.lambda, row.ratio);
  if (!report.weyl.empty()) {
    one.points.emplace_back(report.weyl.front().lambda, 1.0);
    one.points.emplace_back(report.weyl.back().lambda, 1.0);
  }
  plot.series = {r, one};
  if (std::isfinite(report.trusted_limit)) plot.markers.push_back({"trusted limit", report.trusted_limit});
  return render_svg(plot);
}

}  // namespace

Spectrum load_spectrum_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open spectrum '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line != "k,lambda,residual,trusted")
    throw ValidationError("spectrum '" + path + "': expected header k,lambda,residual,trusted");
  Spectrum spectrum;
  spectrum.reliability_cutoff = std::numeric_limits<double>::infinity();
  spectrum.info.method = "loaded";
  std::size_t expected = 1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string k, lambda, residual, trusted;
    if (!std::getline(row, k, ',') || !std::getline(row, lambda, ',') || !std::getline(row, residual, ',') ||
        !std::getline(row, trusted))
      throw ValidationError("spectrum '" + path + "': malformed row '" + line + "'");
    try {
      if (std::stoull(k) != expected) throw ValidationError("spectrum '" + path + "': rows out of order at k = " + k);
      const double value = std::stod(lambda);
      if (!spectrum.eigenvalues.empty() && value < spectrum.eigenvalues.back())
        throw ValidationError("spectrum '" + path + "': eigenvalues not ascending at k = " + k);
      spectrum.eigenvalues.push_back(value);
      spectrum.residuals.push_back(std::stod(residual));
    } catch (const std::logic_error&) {
      throw ValidationError("spectrum '" + path + "': unreadable number in row '" + line + "'");
    }
    ++expected;
  }
  if (spectrum.eigenvalues.empty()) throw ValidationError("spectrum '" + path + "' has no eigenvalues");
  return spectrum;
}

int cmd_spectrum(const RunConfig& config, std::ostream& out) {
  const fs::path dir = prepare_output(config);
  compute_and_write_spectrum(config, dir, out);
  return kExitPass;
}

int cmd_verify(const RunConfig& config, bool oracle, std::ostream& out) {
  const fs::path dir = prepare_output(config);
  Spectrum spectrum;
  if (oracle) {
    spectrum = oracle_spectrum(config);
  } else if (config.spectrum_csv) {
    spectrum = load_spectrum_csv(*config.spectrum_csv);
    const geometry::Cube cube = geometry::enclosing_cube(*config.domain, config.grid.pad);
    spectrum.reliability_cutoff = spectral::momentum_grid(config.symbol, config.grid.n, cube.side).t_max / 4.0;
  } else {
    spectrum = compute_and_write_spectrum(config, dir, out).spectrum;
  }

  const analysis::WeylConstants constants = analysis::weyl_constants(config.symbol, *config.domain);
  const symbols::Method method = constants.homogeneous ? symbols::Method{quadrature::ClosedForm{}}
                                                       : quadrature::default_method(constants.dimension);
  const double slack = oracle ? 0.0 : config.analysis.slack;

  int code = kExitPass;
  std::vector<double> grid;
  try {
    grid = lambda_grid(config.analysis.lambda_grid, spectrum);
  } catch (const InsufficientDataError& e) {
    write_json(dir / "weyl_fit.json",
               {{"schema_version", kSchemaVersion}, {"status", "insufficient_data"}, {"error", e.what()}});
    throw;
  }
  const analysis::BoundReport report = analysis::bound_report(
      spectrum, config.symbol, constants, grid, m_grid(config.analysis.m_grid, spectrum.size()), slack, method);
  nlohmann::json bounds = analysis::to_json(report);
  bounds["schema_version"] = kSchemaVersion;
  bounds["source"] = oracle ? "oracle:dirichlet-interval" : (config.spectrum_csv ? "csv" : "computed");
  write_json(dir / "bounds.json", bounds);
  write_text(dir / "counting.csv", analysis::to_csv(analysis::counting_data(spectrum, grid)));
  write_text(dir / "berezin.svg", berezin_svg(report));
  write_text(dir / "weyl_ratio.svg", ratio_svg(report));
  out << "verify: berezin " << (report.berezin_pass ? "pass" : "FAIL") << ", li-yau "
      << (report.liyau_pass ? "pass" : "FAIL") << ", duality " << (report.duality_pass ? "pass" : "FAIL") << "\n";
  if (!report.passed()) code = kExitChecksFailed;

  try {
    const analysis::FitReport fit = analysis::weyl_fit(analysis::counting_data(spectrum, grid), constants);
    nlohmann::json j = analysis::to_json(fit);
    const double lo = oracle ? 1.0 - kOracleRatioWindow : kComputedRatioLo;
    const double hi = oracle ? 1.0 + kOracleRatioWindow : kComputedRatioHi;
    j["schema_version"] = kSchemaVersion;
    j["status"] = "ok";
    j["ratio_window"] = {{"lo", lo},
                         {"hi", hi},
                         {"note", "engineering choice at finite lambda; the limit statement gives no rate"}};
    j["ratio_in_window"] = fit.ratio_at_max >= lo && fit.ratio_at_max <= hi;
    write_json(dir / "weyl_fit.json", j);
    out << "weyl fit: slope " << fit.slope << " (target " << fit.slope_target << "), N/W at max "
        << fit.ratio_at_max << "\n";
  } catch (const InsufficientDataError& e) {
    write_json(dir / "weyl_fit.json",
               {{"schema_version", kSchemaVersion}, {"status", "insufficient_data"}, {"error", e.what()}});
    throw;
  }
  return code;
}

int cmd_symbol_audit(const RunConfig& config, std::ostream& out) {
  const fs::path dir = prepare_output(config);
  const symbols::Symbol& symbol = config.symbol;
  const int d = symbol.dimension();

  const std::vector<double> nu = symbols::default_nu_grid();
  const std::vector<Point> p_one = symbols::assumption_one_samples(d);
  const symbols::AssumptionCertificate one =
      symbols::check_assumption_one(symbol, nu, p_one, symbols::kAssumptionOneTolerance);

  const std::vector<Point> p_two = symbols::radial_samples(d, 32.0);
  const std::vector<Point> eta = symbols::radial_samples(d, 8.0);
  const symbols::AssumptionCertificate two =
      symbols::check_assumption_two(symbol, p_two, eta, symbols::analytic_defect_constants(symbol));

  const symbols::PrincipalPart part = symbols::principal_part(symbol);
  const quadrature::Method method = quadrature::default_method(d);
  nlohmann::json volume;
  try {
    const quadrature::Estimate quad = symbols::phase_volume(part, method);
    volume["quadrature"] = quad.value;
    volume["standard_error"] = quad.standard_error;
    volume["method"] = std::holds_alternative<quadrature::MonteCarloRule>(method) ? "monte_carlo" : "tensor";
    if (part.phase_volume) {
      const double closed = *part.phase_volume;
      volume["closed_form"] = closed;
      volume["relative_difference"] = std::abs(quad.value - closed) / closed;
      volume["agrees"] = quad.standard_error > 0.0 ? std::abs(quad.value - closed) <= 4.0 * quad.standard_error
                                                   : std::abs(quad.value - closed) <= 1e-3 * closed;
    } else {
      volume["closed_form"] = nullptr;
    }
  } catch (const DivergenceError& e) {
    volume["error"] = e.what();
  }

  nlohmann::json j = {{"schema_version", kSchemaVersion},
                      {"symbol", config.symbol_spec},
                      {"alpha", part.alpha},
                      {"assumption_one", symbols::to_json(one)},
                      {"assumption_two", symbols::to_json(two)},
                      {"phase_volume", volume}};
  write_json(dir / "certificates.json", j);
  out << "symbol-audit: assumption I " << (one.passed ? "pass" : "FAIL") << " (worst " << one.worst_case
      << "), assumption II " << (two.passed ? "pass" : "FAIL") << " (worst " << two.worst_case << ")\n";
  return one.passed && two.passed ? kExitPass : kExitChecksFailed;
}

int run_command(Command command, const CommandOptions& options, std::ostream& out, std::ostream& err) {
  try {
    const bool oracle = options.oracle_dirichlet_interval;
    if (oracle && command != Command::verify) throw ValidationError("--oracle is only valid for verify");
    RunConfig config = load_run_config(options.config_path, command, oracle);
    if (options.out) config.output = *options.out;
    if (options.seed) config.seed = *options.seed;
    switch (command) {
      case Command::spectrum:
        return cmd_spectrum(config, out);
      case Command::verify:
        return cmd_verify(config, oracle, out);
      case Command::symbol_audit:
        return cmd_symbol_audit(config, out);
    }
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ConvergenceError& e) {
    err << "solver failure: " << e.what() << "\n";
    return kExitSolverFailure;
  } catch (const InsufficientDataError& e) {
    err << "insufficient data: " << e.what() << "\n";
    return kExitInsufficientData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitOtherError;
  }
  return kExitOtherError;
}

}  // namespace weyl::cli
