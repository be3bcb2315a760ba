#pragma once

// RunConfig: the single JSON document shared by every weyl-lab command.
//
//   {
//     "schema_version": 1,
//     "symbol":   {"kind": "power", "d": 1, "s": 1},
//     "domain":   {"shape": "box", "lo": [0], "hi": [1]},
//     "grid":     {"n": 512, "pad": 0.5},
//     "solver":   {"M": 5, "tol": 1e-8, "max_passes": 12},
//     "analysis": {"lambda_grid": {"rule": "linear", "count": 200, "lo": 1, "hi": 1e4},
//                  "m_grid": {"rule": "all"}, "slack": 0.02},
//     "spectrum_csv": "prior/spectrum.csv",
//     "output": "out",
//     "seed": 1
//   }
//
// Only "symbol" is required for symbol-audit; spectrum and verify also need
// "domain". Everything else has the defaults shown in the structs below.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "weyl/geometry.hpp"
#include "weyl/symbols.hpp"

namespace weyl::cli {

inline constexpr int kSchemaVersion = 1;

enum class Command { spectrum, verify, symbol_audit };

struct GridSpec {
  int n = 256;
  double pad = 0.5;
};

struct SolverSpec {
  std::size_t m = 20;
  double tol = 1e-8;
  int max_passes = 12;
};

struct LambdaGridSpec {
  std::string rule = "linear";  // linear | log | midpoints
  std::size_t count = 200;
  std::optional<double> lo;     // default: lowest positive eigenvalue
  std::optional<double> hi;     // default: trusted limit of the spectrum
};

struct MGridSpec {
  std::string rule = "all";  // all | linear
  std::size_t count = 50;
};

struct AnalysisSpec {
  LambdaGridSpec lambda_grid;
  MGridSpec m_grid;
  double slack = 0.02;
};

struct RunConfig {
  nlohmann::json symbol_spec;
  nlohmann::json domain_spec;
  symbols::Symbol symbol = symbols::Symbol::power(1, 1.0);
  std::optional<geometry::DomainSet> domain;
  GridSpec grid;
  SolverSpec solver;
  AnalysisSpec analysis;
  std::optional<std::string> spectrum_csv;
  std::string output = "out";
  std::uint64_t seed = 1;
};

// Parses and validates everything the command will touch, including a
// rasterization of the domain so that M can be checked against the number of
// occupied cells (skipped for oracle runs and loaded spectra). Throws
// ValidationError on the first problem found.
RunConfig parse_run_config(const nlohmann::json& j, Command command, bool oracle = false);
RunConfig load_run_config(const std::string& path, Command command, bool oracle = false);

}  // namespace weyl::cli
