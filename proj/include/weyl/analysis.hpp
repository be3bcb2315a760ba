#pragma once

// Spectral statistics and the asymptotic and universal bounds they are
// compared against: counting function N, Riesz mean S, the Weyl term, the
// Berezin-type bound on S, the Li-Yau bound on partial sums, the Legendre
// duality between them, the Tauberian lemma, and log-log Weyl fits.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "weyl/geometry.hpp"
#include "weyl/spectral.hpp"
#include "weyl/symbols.hpp"

namespace weyl::analysis {

using spectral::Spectrum;

// #{k : lambda_k < lambda}. Throws ArgumentError for lambda <= 0.
std::size_t counting_function(const Spectrum& spectrum, double lambda);

// sum_k (lambda - lambda_k)_+. Throws ArgumentError for lambda <= 0.
double riesz_mean(const Spectrum& spectrum, double lambda);

// lambda_1 + ... + lambda_M.
double partial_sum(const Spectrum& spectrum, std::size_t m);

// lambda_k = (pi k / length)^2, k = 1..count, with an unbounded
// reliability cutoff.
Spectrum dirichlet_interval_spectrum(std::size_t count, double length = 1.0);

// Largest lambda at which N and S from the spectrum are complete and
// reliable: min(reliability cutoff, largest computed eigenvalue).
double trusted_limit(const Spectrum& spectrum);

// |Omega| by closed form, falling back to 10^6-sample Monte Carlo (seed 1)
// when the tree cannot be certified.
double domain_volume(const geometry::DomainSet& domain);

struct WeylConstants {
  int dimension = 0;
  double alpha = 0.0;
  double volume = 0.0;        // |Omega|
  double phase_volume = 0.0;  // V_T
  bool homogeneous = false;   // T == T0, enabling the Riesz closed form
};

WeylConstants weyl_constants(const symbols::Symbol& symbol, double volume);
WeylConstants weyl_constants(const symbols::Symbol& symbol, const geometry::DomainSet& domain);

// (2 pi)^{-d} |Omega| V_T lambda^{d/alpha}.
double weyl_term(const WeylConstants& c, double lambda);
double weyl_term(const symbols::Symbol& symbol, const geometry::DomainSet& domain, double lambda);

// |Omega| (2 pi)^{-d} int (T(p) - lambda)_- dp.
double berezin_bound(const symbols::Symbol& symbol, double volume, double lambda, const symbols::Method& method);
double berezin_bound(const symbols::Symbol& symbol, const geometry::DomainSet& domain, double lambda,
                     const symbols::Method& method);

// (d/(d+alpha)) (2 pi)^alpha (|Omega| V_T)^{-alpha/d} M^{1+alpha/d}.
double liyau_bound(const WeylConstants& c, std::size_t m);
double liyau_bound(const symbols::Symbol& symbol, const geometry::DomainSet& domain, std::size_t m);

struct Duality {
  double lhs = 0.0;     // lambda_1 + ... + lambda_M
  double rhs = 0.0;     // max over breakpoints of M lambda - S(lambda)
  double gap = 0.0;     // lhs - rhs
  double argmax = 0.0;  // breakpoint attaining rhs
};

// Throws ArgumentError unless 1 <= M <= spectrum.size().
Duality duality_check(const Spectrum& spectrum, std::size_t m);

// ---- Tauberian lemma ------------------------------------------------------

struct TauberianRun {
  std::string generator;
  double a = 0.0;
  std::vector<double> lambdas;
  std::vector<double> riesz_scaled;     // lambda^{-a-1} S(lambda)
  std::vector<double> counting_scaled;  // lambda^{-a} N(lambda)
  double riesz_constant = 0.0;          // A, at the largest lambda
  double counting_constant = 0.0;       // N constant at the largest lambda
  double ratio = 0.0;                   // counting_constant / ((a+1) A)
  std::size_t pairs_checked = 0;
  std::size_t inequality_violations = 0;
  double worst_inequality = 0.0;        // min over pairs of S(L+h) - S(L) - h N(L), scaled
};

// xi_k for k = 1, 2, ...; must be positive, non-decreasing and exceed the
// largest grid value within 10^8 terms, otherwise ArgumentError.
using SequenceGenerator = std::function<double(std::size_t)>;

TauberianRun tauberian_run(const SequenceGenerator& xi, const std::string& description, double a,
                           const std::vector<double>& lambda_grid);

// ---- grids, counting data and fits -----------------------------------------

std::vector<double> linear_grid(double lo, double hi, std::size_t count);
std::vector<double> log_grid(double lo, double hi, std::size_t count);

// Midpoints between consecutive distinct eigenvalues.
std::vector<double> midpoint_grid(const Spectrum& spectrum);

struct CountingData {
  std::vector<double> lambdas;
  std::vector<std::size_t> counts;
  std::vector<double> riesz;
  std::vector<bool> trusted;  // lambda <= trusted_limit
};

CountingData counting_data(const Spectrum& spectrum, const std::vector<double>& lambda_grid);

// Lambda,N,S,trusted
std::string to_csv(const CountingData& data);

struct FitReport {
  double slope = 0.0;
  double slope_target = 0.0;     // d / alpha
  double constant = 0.0;         // exp(intercept) of the log-log fit
  double constant_target = 0.0;  // (2 pi)^{-d} |Omega| V_T
  double ratio_at_max = 0.0;     // N / W at the largest trusted lambda
  double lambda_max = 0.0;
  std::size_t points = 0;
};

// Unweighted least squares of log N on log lambda over trusted points with
// N >= 5. Throws InsufficientDataError with fewer than 10 such points.
FitReport weyl_fit(const CountingData& data, const WeylConstants& c);

nlohmann::json to_json(const FitReport& fit);

// ---- bound report ------------------------------------------------------------

struct BerezinRow {
  double lambda = 0.0;
  double riesz = 0.0;
  double bound = 0.0;
  double margin = 0.0;  // (bound - S) / bound
  bool trusted = false;
};

struct LiYauRow {
  std::size_t m = 0;
  double sum = 0.0;
  double bound = 0.0;
  double margin = 0.0;  // (sum - bound) / bound
  bool trusted = false;
};

struct WeylRow {
  double lambda = 0.0;
  std::size_t count = 0;
  double weyl = 0.0;
  double ratio = 0.0;  // N / W
  bool trusted = false;
};

struct DualityRow {
  std::size_t m = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
};

struct BoundReport {
  std::vector<BerezinRow> berezin;
  std::vector<LiYauRow> liyau;
  std::vector<WeylRow> weyl;
  std::vector<DualityRow> duality;
  double trusted_limit = 0.0;
  double slack = 0.0;                // Berezin and Li-Yau
  double duality_tolerance = 1e-10;  // relative to lhs
  bool berezin_pass = false;
  bool liyau_pass = false;
  bool duality_pass = false;

  bool passed() const noexcept { return berezin_pass && liyau_pass && duality_pass; }
};

// Rows for every grid point; pass flags consider trusted rows only. A
// Berezin row passes when S <= bound (1 + slack), a Li-Yau row when
// sum >= bound (1 - slack), a duality row when |gap| <= 1e-10 lhs. M grid
// values beyond the spectrum are dropped. Throws ArgumentError on empty grids.
BoundReport bound_report(const Spectrum& spectrum, const symbols::Symbol& symbol, const WeylConstants& c,
                         const std::vector<double>& lambda_grid, const std::vector<std::size_t>& m_grid,
                         double slack, const symbols::Method& method);

nlohmann::json to_json(const BoundReport& report);
BoundReport bound_report_from_json(const nlohmann::json& j);

}  // namespace weyl::analysis
