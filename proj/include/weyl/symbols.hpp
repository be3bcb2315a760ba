#pragma once

// Fourier symbols T(p), their homogeneous principal parts, phase-space
// volumes and Riesz-mean integrals, and sampled certificates for the two
// structural assumptions the asymptotics rely on:
//
//   I.  nu^{-alpha} T(nu p) -> T0(p) with T0 homogeneous of degree alpha and
//       |{T0 < 1}| finite, plus an optional minorant Tm with
//       Tm(p) <= nu^{-alpha} T(nu p) for nu >= nu0 and Tm >= 1 for |p| >= R0.
//   II. sup_p [ (T(p+eta) + T(p-eta))/2 - T(p) ] <= C0 (1 + |eta|)^N.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "weyl/quadrature.hpp"
#include "weyl/types.hpp"

namespace weyl::symbols {

enum class SymbolKind {
  power,        // |p|^{2s}
  directional,  // sum_i |p_i|^{2s}
  mixed,        // |p|^alpha + sign |p|^beta, 0 < beta < alpha
  user,
};

struct Minorant {
  Evaluator evaluate;
  double radius = 1.0;  // minorant >= 1 for |p| >= radius
  double nu0 = 1.0;     // minorant(p) <= nu^{-alpha} T(nu p) for nu >= nu0
};

// A user symbol must declare its degree and principal part to be analysed;
// without them only evaluate() is available.
struct UserSymbol {
  Evaluator evaluate;
  std::optional<double> alpha;
  Evaluator principal;
  std::optional<Minorant> minorant;
  bool homogeneous = false;  // evaluate == principal
  std::string description = "user";
};

class Symbol {
 public:
  static Symbol power(int dimension, double s);
  static Symbol directional(int dimension, double s);
  static Symbol mixed(int dimension, double alpha, double beta, int sign);
  static Symbol user(int dimension, UserSymbol spec);

  SymbolKind kind() const noexcept { return kind_; }
  int dimension() const noexcept { return dimension_; }
  double s() const noexcept { return s_; }
  double beta() const noexcept { return beta_; }
  int sign() const noexcept { return sign_; }

  // Declared homogeneity degree; empty for a user symbol without one.
  std::optional<double> degree() const;

  // T == T0.
  bool homogeneous() const noexcept;

  // Throws EvaluationError naming p when the value is not finite.
  double operator()(std::span<const double> p) const;

  // Unchecked value, for inner loops over points already known to be finite.
  double value(std::span<const double> p) const;

  std::string describe() const;

  const UserSymbol* user_spec() const noexcept { return user_.get(); }

 private:
  Symbol(SymbolKind kind, int dimension) : kind_(kind), dimension_(dimension) {}

  SymbolKind kind_;
  int dimension_;
  double s_ = 0.0;      // power/directional exponent parameter
  double alpha_ = 0.0;  // mixed leading exponent, or 2s
  double beta_ = 0.0;
  int sign_ = 1;
  std::shared_ptr<const UserSymbol> user_;
};

double evaluate(const Symbol& symbol, std::span<const double> p);

enum class ClosedForm {
  none,
  euclidean,    // T0 = |p|^alpha: {T0 < 1} is the unit ball
  directional,  // T0 = sum |p_i|^{2s}
};

struct PrincipalPart {
  int dimension = 0;
  double alpha = 0.0;
  Evaluator evaluate;
  std::optional<double> phase_volume;  // V_T, filled when a closed form exists
  std::optional<Minorant> minorant;
  ClosedForm closed_form = ClosedForm::none;
  double s = 0.0;  // exponent parameter of the directional closed form
};

PrincipalPart principal_part(const Symbol& symbol);

using quadrature::Estimate;
using Method = quadrature::Method;

// Volume of the unit ball in R^d.
double unit_ball_volume(int dimension);

// (2 Gamma(1 + 1/2s))^d / Gamma(1 + d/2s).
double directional_phase_volume(int dimension, double s);

// V_T = |{T0 < 1}|.
Estimate phase_volume(const PrincipalPart& principal, const Method& method);

// V_T by closed form when available, otherwise the dimension's default
// quadrature.
double resolve_phase_volume(const PrincipalPart& principal);

// |{T0 < level}| by quadrature (closed form rejected).
Estimate sublevel_volume(const PrincipalPart& principal, double level, const Method& method);

// Integral over R^d of (T(p) - lambda)_-. The closed form needs a
// homogeneous symbol: (alpha / (d + alpha)) V_T lambda^{1 + d/alpha}.
Estimate riesz_integral(const Symbol& symbol, double lambda, const Method& method);
Estimate riesz_integral(const PrincipalPart& principal, double lambda, const Method& method);

// Both sides of |{T0 < L}| = V_T L^{d/alpha} and of
// int (T0 - 1)_- = alpha/(alpha+d) V_T, each side computed independently.
struct VolumeIdentity {
  double scaling_lhs = 0.0;  // quadrature |{T0 < lambda}|
  double scaling_rhs = 0.0;  // V_T lambda^{d/alpha}
  double riesz_lhs = 0.0;    // quadrature int (T0 - 1)_-
  double riesz_rhs = 0.0;    // alpha/(alpha+d) V_T
};

VolumeIdentity sublevel_volume_identity(const PrincipalPart& principal, double lambda);

// ---- assumption certificates ------------------------------------------------

enum class Assumption { one, two };

struct DefectConstants {
  double c0 = 0.0;
  int exponent = 0;
};

struct AssumptionCertificate {
  Assumption assumption = Assumption::one;
  std::string sample_grid;
  double worst_case = 0.0;
  std::optional<DefectConstants> constants;  // assumption II only
  bool passed = false;
  double tolerance = 0.0;
  std::size_t samples_used = 0;
  std::string note;

  // Assumption I detail.
  std::vector<double> nu_grid;
  std::vector<double> deviation_by_nu;  // max_p |nu^{-a} T(nu p) - T0(p)|
  double homogeneity_defect = 0.0;      // max relative |T0(nu p) - nu^a T0(p)|
  std::size_t minorant_violations = 0;

  // Assumption II detail.
  double growth_exponent = 0.0;  // fitted log-log slope of the defect envelope
};

// Points on a radial-angular lattice: the origin plus `radii` equispaced radii
// in (0, max_radius] times `directions` angles in every coordinate plane.
std::vector<Point> radial_samples(int dimension, double max_radius, int radii = 64, int directions = 16);

// Assumption I p-samples: radial lattice with |p| <= 2, which contains
// {T0 < 1} for every builtin symbol with d <= 3. The absolute deviation
// |p|^beta nu^{beta - alpha} grows with |p|, so the |p| <= 32 grid used for
// assumption II would need nu far beyond 2^12 to reach 1e-3.
std::vector<Point> assumption_one_samples(int dimension);

// nu = 2^k, k = 0..12.
std::vector<double> default_nu_grid();

inline constexpr double kAssumptionOneTolerance = 1e-3;

AssumptionCertificate check_assumption_one(const Symbol& symbol, std::span<const double> nu_grid,
                                           std::span<const Point> p_samples, double tolerance);

// Same, against an explicitly supplied principal part.
AssumptionCertificate check_assumption_one(const Symbol& symbol, const PrincipalPart& principal,
                                           std::span<const double> nu_grid,
                                           std::span<const Point> p_samples, double tolerance);

// (T(p+eta) + T(p-eta))/2 - T(p).
double midpoint_defect(const Symbol& symbol, std::span<const double> p, std::span<const double> eta);

AssumptionCertificate check_assumption_two(const Symbol& symbol, std::span<const Point> p_samples,
                                           std::span<const Point> eta_samples,
                                           std::optional<DefectConstants> constants = std::nullopt);

// Closed-form envelope of the midpoint defect where one is known:
// |p|^{2s}, s <= 1: defect <= |eta|^{2s}, giving (C0, N) = (1, ceil 2s);
// sum |p_i|^{2s}, s <= 1: defect <= sum |eta_i|^{2s}, giving (d, ceil 2s).
std::optional<DefectConstants> analytic_defect_constants(const Symbol& symbol);

std::string to_string(SymbolKind kind);

// {kind: "power"|"directional", d, s}, {kind: "mixed", d, alpha, beta, sign}
// or {kind: "user", d, alpha, base: <builtin spec>}. A user symbol evaluates
// its base and takes the base's principal part, with alpha as declared; it
// counts as homogeneous only when the base is and the degrees agree. Throws
// ValidationError on any malformed field.
Symbol symbol_from_json(const nlohmann::json& j);

// {assumption, worst_case, C0, N, passed, samples_used} plus the recorded detail.
nlohmann::json to_json(const AssumptionCertificate& certificate);

}  // namespace weyl::symbols
