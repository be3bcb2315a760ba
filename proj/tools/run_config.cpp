#include "run_config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "weyl/errors.hpp"

namespace weyl::cli {

namespace {

constexpr std::size_t kMaxGridPoints = std::size_t{1} << 24;

void reject_unknown_keys(const nlohmann::json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + " must be an object");
  for (const auto& item : j.items())
    if (!allowed.count(item.key())) throw ValidationError(where + ": unknown key '" + item.key() + "'");
}

double positive_number(const nlohmann::json& j, const char* key, const std::string& where) {
  const auto& v = j.at(key);
  if (!v.is_number() || !(v.get<double>() > 0.0) || !std::isfinite(v.get<double>()))
    throw ValidationError(where + "." + key + " must be a positive number");
  return v.get<double>();
}

std::size_t positive_count(const nlohmann::json& j, const char* key, const std::string& where) {
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 1)
    throw ValidationError(where + "." + key + " must be a positive integer");
  return static_cast<std::size_t>(v.get<long long>());
}

GridSpec parse_grid(const nlohmann::json& j) {
  reject_unknown_keys(j, {"n", "pad"}, "grid");
  GridSpec grid;
  if (j.contains("n")) {
    const std::size_t n = positive_count(j, "n", "grid");
    if (n < 4 || (n & (n - 1)) != 0 || n > (std::size_t{1} << 20))
      throw ValidationError("grid.n must be a power of two between 4 and 2^20, got " + std::to_string(n));
    grid.n = static_cast<int>(n);
  }
  if (j.contains("pad")) {
    const auto& v = j.at("pad");
    if (!v.is_number() || !(v.get<double>() >= 0.0) || !std::isfinite(v.get<double>()))
      throw ValidationError("grid.pad must be a nonnegative number");
    grid.pad = v.get<double>();
  }
  return grid;
}

SolverSpec parse_solver(const nlohmann::json& j) {
  reject_unknown_keys(j, {"M", "tol", "max_passes"}, "solver");
  SolverSpec solver;
  if (j.contains("M")) solver.m = positive_count(j, "M", "solver");
  if (j.contains("tol")) {
    solver.tol = positive_number(j, "tol", "solver");
    if (solver.tol >= 1.0) throw ValidationError("solver.tol must be below 1");
  }
  if (j.contains("max_passes")) solver.max_passes = static_cast<int>(positive_count(j, "max_passes", "solver"));
  return solver;
}

AnalysisSpec parse_analysis(const nlohmann::json& j) {
  reject_unknown_keys(j, {"lambda_grid", "m_grid", "slack"}, "analysis");
  AnalysisSpec analysis;
  if (j.contains("lambda_grid")) {
    const auto& g = j.at("lambda_grid");
    reject_unknown_keys(g, {"rule", "count", "lo", "hi"}, "analysis.lambda_grid");
    auto& spec = analysis.lambda_grid;
    if (g.contains("rule")) {
      if (!g.at("rule").is_string()) throw ValidationError("analysis.lambda_grid.rule must be a string");
      spec.rule = g.at("rule").get<std::string>();
      if (spec.rule != "linear" && spec.rule != "log" && spec.rule != "midpoints")
        throw ValidationError("analysis.lambda_grid.rule must be linear, log or midpoints, got '" + spec.rule + "'");
    }
    if (g.contains("count")) {
      spec.count = positive_count(g, "count", "analysis.lambda_grid");
      if (spec.count < 2) throw ValidationError("analysis.lambda_grid.count must be at least 2");
    }
    if (g.contains("lo")) spec.lo = positive_number(g, "lo", "analysis.lambda_grid");
    if (g.contains("hi")) spec.hi = positive_number(g, "hi", "analysis.lambda_grid");
    if (spec.lo && spec.hi && !(*spec.hi > *spec.lo))
      throw ValidationError("analysis.lambda_grid needs lo < hi");
  }
  if (j.contains("m_grid")) {
    const auto& g = j.at("m_grid");
    reject_unknown_keys(g, {"rule", "count"}, "analysis.m_grid");
    if (g.contains("rule")) {
      if (!g.at("rule").is_string()) throw ValidationError("analysis.m_grid.rule must be a string");
      analysis.m_grid.rule = g.at("rule").get<std::string>();
      if (analysis.m_grid.rule != "all" && analysis.m_grid.rule != "linear")
        throw ValidationError("analysis.m_grid.rule must be all or linear, got '" + analysis.m_grid.rule + "'");
    }
    if (g.contains("count")) analysis.m_grid.count = positive_count(g, "count", "analysis.m_grid");
  }
  if (j.contains("slack")) {
    const auto& v = j.at("slack");
    if (!v.is_number() || !(v.get<double>() >= 0.0) || !(v.get<double>() < 1.0))
      throw ValidationError("analysis.slack must lie in [0, 1)");
    analysis.slack = v.get<double>();
  }
  return analysis;
}

}  // namespace

RunConfig parse_run_config(const nlohmann::json& j, Command command, bool oracle) {
  reject_unknown_keys(j,
                      {"schema_version", "symbol", "domain", "grid", "solver", "analysis", "spectrum_csv", "output",
                       "seed"},
                      "config");
  if (j.contains("schema_version") &&
      (!j.at("schema_version").is_number_integer() || j.at("schema_version").get<int>() != kSchemaVersion))
    throw ValidationError("config.schema_version must be " + std::to_string(kSchemaVersion));

  RunConfig config;
  if (!j.contains("symbol")) throw ValidationError("config needs a 'symbol' object");
  config.symbol_spec = j.at("symbol");
  config.symbol = symbols::symbol_from_json(config.symbol_spec);
  if (command == Command::symbol_audit && !config.symbol.degree())
    throw ValidationError("symbol-audit needs a symbol with a declared degree alpha");

  if (j.contains("grid")) config.grid = parse_grid(j.at("grid"));
  if (j.contains("solver")) config.solver = parse_solver(j.at("solver"));
  if (j.contains("analysis")) config.analysis = parse_analysis(j.at("analysis"));
  if (j.contains("spectrum_csv")) {
    if (!j.at("spectrum_csv").is_string()) throw ValidationError("config.spectrum_csv must be a path string");
    config.spectrum_csv = j.at("spectrum_csv").get<std::string>();
  }
  if (j.contains("output")) {
    if (!j.at("output").is_string()) throw ValidationError("config.output must be a path string");
    config.output = j.at("output").get<std::string>();
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw ValidationError("config.seed must be a nonnegative integer");
    config.seed = j.at("seed").get<std::uint64_t>();
  }

  if (j.contains("domain")) {
    config.domain_spec = j.at("domain");
    config.domain = geometry::domain_from_json(config.domain_spec);
  }
  if (command == Command::symbol_audit) return config;

  if (!config.domain) throw ValidationError("config needs a 'domain' object");
  const int d = config.symbol.dimension();
  if (config.domain->dimension() != d)
    throw ValidationError("symbol dimension " + std::to_string(d) + " differs from domain dimension " +
                          std::to_string(config.domain->dimension()));
  std::size_t points = 1;
  for (int axis = 0; axis < d; ++axis) points *= static_cast<std::size_t>(config.grid.n);
  if (points > kMaxGridPoints)
    throw ValidationError("grid.n^d = " + std::to_string(points) + " exceeds the limit of 2^24 points");
  if (!config.spectrum_csv && !oracle) {
    try {
      const geometry::GridMask mask =
          geometry::rasterize(*config.domain, geometry::enclosing_cube(*config.domain, config.grid.pad), config.grid.n);
      if (config.solver.m > mask.occupied_count)
        throw ValidationError("solver.M = " + std::to_string(config.solver.m) + " exceeds the " +
                              std::to_string(mask.occupied_count) + " occupied grid cells");
    } catch (const DegenerateDomainError& e) {
      throw ValidationError(std::string("domain: ") + e.what());
    }
  }
  return config;
}

RunConfig load_run_config(const std::string& path, Command command, bool oracle) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_run_config(j, command, oracle);
}

}  // namespace weyl::cli
