#include "weyl/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "weyl/errors.hpp"

namespace weyl::symbols {

namespace {

// |x|^e with the exponents that occur most often evaluated exactly.
double abs_pow(double x, double e) {
  const double a = std::abs(x);
  if (e == 1.0) return a;
  if (e == 2.0) return a * a;
  return std::pow(a, e);
}

double squared_norm(std::span<const double> p) {
  double acc = 0.0;
  for (double v : p) acc += v * v;
  return acc;
}

std::string format_point(std::span<const double> p) {
  std::ostringstream out;
  out.precision(17);
  out << '(';
  for (std::size_t i = 0; i < p.size(); ++i) out << (i ? ", " : "") << p[i];
  out << ')';
  return out.str();
}

void require_dimension(int dimension) {
  if (dimension < 1) throw ArgumentError("symbol dimension must be positive");
}

Evaluator as_evaluator(const Symbol& symbol) {
  return [symbol](std::span<const double> p) { return symbol(p); };
}

}  // namespace

Symbol Symbol::power(int dimension, double s) {
  require_dimension(dimension);
  if (!(s > 0.0)) throw ArgumentError("power symbol needs s > 0");
  Symbol symbol(SymbolKind::power, dimension);
  symbol.s_ = s;
  symbol.alpha_ = 2.0 * s;
  return symbol;
}

Symbol Symbol::directional(int dimension, double s) {
  require_dimension(dimension);
  if (!(s > 0.0)) throw ArgumentError("directional symbol needs s > 0");
  Symbol symbol(SymbolKind::directional, dimension);
  symbol.s_ = s;
  symbol.alpha_ = 2.0 * s;
  return symbol;
}

Symbol Symbol::mixed(int dimension, double alpha, double beta, int sign) {
  require_dimension(dimension);
  if (!(beta > 0.0 && beta < alpha)) throw ArgumentError("mixed symbol needs 0 < beta < alpha");
  if (sign != 1 && sign != -1) throw ArgumentError("mixed symbol sign must be +1 or -1");
  Symbol symbol(SymbolKind::mixed, dimension);
  symbol.alpha_ = alpha;
  symbol.beta_ = beta;
  symbol.sign_ = sign;
  return symbol;
}

Symbol Symbol::user(int dimension, UserSymbol spec) {
  require_dimension(dimension);
  if (!spec.evaluate) throw ArgumentError("user symbol needs an evaluator");
  if (spec.alpha && !(*spec.alpha > 0.0)) throw ArgumentError("declared degree must be positive");
  Symbol symbol(SymbolKind::user, dimension);
  if (spec.alpha) symbol.alpha_ = *spec.alpha;
  symbol.user_ = std::make_shared<const UserSymbol>(std::move(spec));
  return symbol;
}

std::optional<double> Symbol::degree() const {
  if (kind_ == SymbolKind::user) return user_->alpha;
  return alpha_;
}

bool Symbol::homogeneous() const noexcept {
  switch (kind_) {
    case SymbolKind::power:
    case SymbolKind::directional:
      return true;
    case SymbolKind::mixed:
      return false;
    case SymbolKind::user:
      return user_->homogeneous;
  }
  return false;
}

double Symbol::value(std::span<const double> p) const {
  switch (kind_) {
    case SymbolKind::power:
      return s_ == 1.0 ? squared_norm(p) : std::pow(squared_norm(p), s_);
    case SymbolKind::directional: {
      double acc = 0.0;
      for (double v : p) acc += abs_pow(v, alpha_);
      return acc;
    }
    case SymbolKind::mixed: {
      const double r = std::sqrt(squared_norm(p));
      return abs_pow(r, alpha_) + sign_ * abs_pow(r, beta_);
    }
    case SymbolKind::user:
      return user_->evaluate(p);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double Symbol::operator()(std::span<const double> p) const {
  const double v = value(p);
  if (!std::isfinite(v))
    throw EvaluationError("symbol " + describe() + " is not finite at p = " + format_point(p));
  return v;
}

std::string Symbol::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case SymbolKind::power:
      out << "|p|^" << alpha_;
      break;
    case SymbolKind::directional:
      out << "sum_i |p_i|^" << alpha_;
      break;
    case SymbolKind::mixed:
      out << "|p|^" << alpha_ << (sign_ > 0 ? " + " : " - ") << "|p|^" << beta_;
      break;
    case SymbolKind::user:
      out << user_->description;
      break;
  }
  out << " (d = " << dimension_ << ")";
  return out.str();
}

double evaluate(const Symbol& symbol, std::span<const double> p) { return symbol(p); }

std::string to_string(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::power:
      return "power";
    case SymbolKind::directional:
      return "directional";
    case SymbolKind::mixed:
      return "mixed";
    case SymbolKind::user:
      return "user";
  }
  return "unknown";
}

PrincipalPart principal_part(const Symbol& symbol) {
  PrincipalPart part;
  part.dimension = symbol.dimension();
  const int d = symbol.dimension();
  switch (symbol.kind()) {
    case SymbolKind::power:
      part.alpha = 2.0 * symbol.s();
      part.evaluate = as_evaluator(symbol);
      part.closed_form = ClosedForm::euclidean;
      part.s = symbol.s();
      part.phase_volume = unit_ball_volume(d);
      break;
    case SymbolKind::directional:
      part.alpha = 2.0 * symbol.s();
      part.evaluate = as_evaluator(symbol);
      part.closed_form = ClosedForm::directional;
      part.s = symbol.s();
      part.phase_volume = directional_phase_volume(d, symbol.s());
      break;
    case SymbolKind::mixed: {
      const double alpha = *symbol.degree();
      const double beta = symbol.beta();
      part.alpha = alpha;
      part.evaluate = [alpha](std::span<const double> p) { return abs_pow(norm(p), alpha); };
      part.closed_form = ClosedForm::euclidean;
      part.s = alpha / 2.0;
      part.phase_volume = unit_ball_volume(d);
      if (symbol.sign() > 0) {
        // |p|^a <= |p|^a + nu^{b-a} |p|^b for every nu.
        part.minorant = Minorant{part.evaluate, 1.0, 1.0};
      } else {
        // T itself: nu^{-a} T(nu p) = |p|^a - nu^{b-a} |p|^b >= T(p) once nu >= 1,
        // and r^a - r^b = r^b (r^{a-b} - 1) >= 1 for r >= max(1, 2^{1/(a-b)}).
        const double radius = std::max(1.0, std::pow(2.0, 1.0 / (alpha - beta)));
        part.minorant = Minorant{as_evaluator(symbol), radius, 1.0};
      }
      break;
    }
    case SymbolKind::user: {
      const UserSymbol& spec = *symbol.user_spec();
      if (!spec.alpha) throw UnsupportedError("user symbol " + spec.description + " declares no degree alpha");
      if (!spec.principal)
        throw UnsupportedError("user symbol " + spec.description + " declares no principal part");
      part.alpha = *spec.alpha;
      part.evaluate = spec.principal;
      part.minorant = spec.minorant;
      break;
    }
  }
  return part;
}

double unit_ball_volume(int dimension) {
  return std::pow(kPi, dimension / 2.0) / std::tgamma(1.0 + dimension / 2.0);
}

double directional_phase_volume(int dimension, double s) {
  return std::pow(2.0 * std::tgamma(1.0 + 1.0 / (2.0 * s)), dimension) /
         std::tgamma(1.0 + dimension / (2.0 * s));
}

Estimate phase_volume(const PrincipalPart& principal, const Method& method) {
  if (std::holds_alternative<quadrature::ClosedForm>(method)) {
    switch (principal.closed_form) {
      case ClosedForm::euclidean:
        return {unit_ball_volume(principal.dimension), 0.0};
      case ClosedForm::directional:
        return {directional_phase_volume(principal.dimension, principal.s), 0.0};
      case ClosedForm::none:
        throw UnsupportedError("no closed-form phase volume for this principal part");
    }
  }
  return quadrature::integrate_sublevel(principal.evaluate, principal.dimension, 1.0,
                                        quadrature::Integrand::indicator, method);
}

double resolve_phase_volume(const PrincipalPart& principal) {
  if (principal.phase_volume) return *principal.phase_volume;
  return phase_volume(principal, quadrature::default_method(principal.dimension)).value;
}

Estimate sublevel_volume(const PrincipalPart& principal, double level, const Method& method) {
  if (!(level > 0.0)) throw ArgumentError("sub-level must be positive");
  return quadrature::integrate_sublevel(principal.evaluate, principal.dimension, level,
                                        quadrature::Integrand::indicator, method);
}

namespace {

double homogeneous_riesz(double alpha, int d, double volume, double lambda) {
  return alpha / (d + alpha) * volume * std::pow(lambda, 1.0 + d / alpha);
}

}  // namespace

Estimate riesz_integral(const Symbol& symbol, double lambda, const Method& method) {
  if (!(lambda > 0.0)) throw ArgumentError("riesz_integral needs lambda > 0");
  if (std::holds_alternative<quadrature::ClosedForm>(method)) {
    if (!symbol.homogeneous())
      throw UnsupportedError("closed-form Riesz integral needs a homogeneous symbol, got " + symbol.describe());
    const PrincipalPart part = principal_part(symbol);
    return {homogeneous_riesz(part.alpha, part.dimension, resolve_phase_volume(part), lambda), 0.0};
  }
  return quadrature::integrate_sublevel(as_evaluator(symbol), symbol.dimension(), lambda,
                                        quadrature::Integrand::negative_part, method);
}

Estimate riesz_integral(const PrincipalPart& principal, double lambda, const Method& method) {
  if (!(lambda > 0.0)) throw ArgumentError("riesz_integral needs lambda > 0");
  if (std::holds_alternative<quadrature::ClosedForm>(method))
    return {homogeneous_riesz(principal.alpha, principal.dimension, resolve_phase_volume(principal), lambda), 0.0};
  return quadrature::integrate_sublevel(principal.evaluate, principal.dimension, lambda,
                                        quadrature::Integrand::negative_part, method);
}

VolumeIdentity sublevel_volume_identity(const PrincipalPart& principal, double lambda) {
  if (!(lambda > 0.0)) throw ArgumentError("sublevel_volume_identity needs lambda > 0");
  const Method method = quadrature::default_method(principal.dimension);
  const double volume = resolve_phase_volume(principal);
  VolumeIdentity identity;
  identity.scaling_lhs = sublevel_volume(principal, lambda, method).value;
  identity.scaling_rhs = volume * std::pow(lambda, principal.dimension / principal.alpha);
  identity.riesz_lhs = quadrature::integrate_sublevel(principal.evaluate, principal.dimension, 1.0,
                                                      quadrature::Integrand::negative_part, method)
                           .value;
  identity.riesz_rhs = principal.alpha / (principal.alpha + principal.dimension) * volume;
  return identity;
}

// ---- certificates ---------------------------------------------------------

std::vector<Point> radial_samples(int dimension, double max_radius, int radii, int directions) {
  if (dimension < 1 || radii < 1 || directions < 1 || !(max_radius > 0.0))
    throw ArgumentError("radial_samples: invalid lattice parameters");
  std::vector<Point> units;
  if (dimension == 1) {
    units = {{1.0}, {-1.0}};
  } else {
    for (int i = 0; i < dimension; ++i) {
      for (int j = i + 1; j < dimension; ++j) {
        for (int m = 0; m < directions; ++m) {
          const double angle = 2.0 * kPi * m / directions;
          Point u(dimension, 0.0);
          u[i] = std::cos(angle);
          u[j] = std::sin(angle);
          units.push_back(std::move(u));
        }
      }
    }
  }
  std::vector<Point> samples;
  samples.reserve(1 + units.size() * radii);
  samples.emplace_back(dimension, 0.0);
  for (int k = 1; k <= radii; ++k) {
    const double r = max_radius * k / radii;
    for (const Point& u : units) {
      Point p(dimension);
      for (int i = 0; i < dimension; ++i) p[i] = r * u[i];
      samples.push_back(std::move(p));
    }
  }
  return samples;
}

std::vector<Point> assumption_one_samples(int dimension) { return radial_samples(dimension, 2.0); }

std::vector<double> default_nu_grid() {
  std::vector<double> grid;
  for (int k = 0; k <= 12; ++k) grid.push_back(std::ldexp(1.0, k));
  return grid;
}

AssumptionCertificate check_assumption_one(const Symbol& symbol, std::span<const double> nu_grid,
                                           std::span<const Point> p_samples, double tolerance) {
  return check_assumption_one(symbol, principal_part(symbol), nu_grid, p_samples, tolerance);
}

AssumptionCertificate check_assumption_one(const Symbol& symbol, const PrincipalPart& principal,
                                           std::span<const double> nu_grid,
                                           std::span<const Point> p_samples, double tolerance) {
  if (nu_grid.empty() || p_samples.empty()) throw ArgumentError("assumption I check needs nonempty samples");
  for (std::size_t j = 0; j < nu_grid.size(); ++j) {
    if (!(nu_grid[j] > 0.0) || (j > 0 && !(nu_grid[j] > nu_grid[j - 1])))
      throw ArgumentError("nu grid must be positive and strictly increasing");
  }
  if (principal.minorant && nu_grid.back() < principal.minorant->nu0)
    throw ArgumentError("nu grid does not reach the minorant threshold nu0");

  const double alpha = principal.alpha;
  const int d = symbol.dimension();
  AssumptionCertificate cert;
  cert.assumption = Assumption::one;
  cert.tolerance = tolerance;
  cert.nu_grid.assign(nu_grid.begin(), nu_grid.end());
  cert.deviation_by_nu.assign(nu_grid.size(), 0.0);

  Point scaled(d);
  double max_radius = 0.0;
  for (const Point& p : p_samples) {
    if (static_cast<int>(p.size()) != d) throw ArgumentError("sample dimension mismatch");
    max_radius = std::max(max_radius, norm(p));
    const double t0 = principal.evaluate(p);
    if (!std::isfinite(t0)) throw EvaluationError("principal part is not finite at a sample point");
    const double minorant = principal.minorant ? principal.minorant->evaluate(p) : 0.0;
    if (principal.minorant && norm(p) >= principal.minorant->radius && minorant < 1.0 - 1e-12)
      ++cert.minorant_violations;
    for (std::size_t j = 0; j < nu_grid.size(); ++j) {
      const double nu = nu_grid[j];
      for (int i = 0; i < d; ++i) scaled[i] = nu * p[i];
      const double nu_alpha = std::pow(nu, alpha);
      const double rescaled = symbol(scaled) / nu_alpha;
      cert.deviation_by_nu[j] = std::max(cert.deviation_by_nu[j], std::abs(rescaled - t0));

      const double t0_scaled = principal.evaluate(scaled);
      cert.homogeneity_defect =
          std::max(cert.homogeneity_defect, std::abs(t0_scaled - nu_alpha * t0) / (nu_alpha * (1.0 + std::abs(t0))));

      if (principal.minorant && nu >= principal.minorant->nu0 &&
          minorant > rescaled + 1e-12 * (1.0 + std::abs(rescaled)))
        ++cert.minorant_violations;
    }
  }
  cert.worst_case = cert.deviation_by_nu.back();
  cert.samples_used = p_samples.size() * nu_grid.size();
  cert.passed = cert.worst_case <= tolerance && cert.homogeneity_defect <= 1e-12 && cert.minorant_violations == 0;

  std::ostringstream grid;
  grid << "p: " << p_samples.size() << " points, |p| <= " << max_radius << "; nu: " << nu_grid.size()
       << " scales in [" << nu_grid.front() << ", " << nu_grid.back() << "]";
  cert.sample_grid = grid.str();
  cert.note = "sampled certificate; the tolerance at the largest nu is a heuristic stand-in for the limit";
  if (principal.minorant) cert.note += "; minorant checked for nu >= nu0";
  return cert;
}

double midpoint_defect(const Symbol& symbol, std::span<const double> p, std::span<const double> eta) {
  const std::size_t d = p.size();
  if (eta.size() != d) throw ArgumentError("midpoint_defect: dimension mismatch");
  Point plus(d), minus(d);
  for (std::size_t i = 0; i < d; ++i) {
    plus[i] = p[i] + eta[i];
    minus[i] = p[i] - eta[i];
  }
  const double defect = 0.5 * (symbol(plus) + symbol(minus)) - symbol(p);
  if (!std::isfinite(defect)) throw EvaluationError("midpoint defect is not finite");
  return defect;
}

AssumptionCertificate check_assumption_two(const Symbol& symbol, std::span<const Point> p_samples,
                                           std::span<const Point> eta_samples,
                                           std::optional<DefectConstants> constants) {
  if (p_samples.empty() || eta_samples.empty()) throw ArgumentError("assumption II check needs nonempty samples");
  const int d = symbol.dimension();
  for (const Point& p : p_samples)
    if (static_cast<int>(p.size()) != d) throw ArgumentError("sample dimension mismatch");

  std::vector<double> base(p_samples.size());
  for (std::size_t i = 0; i < p_samples.size(); ++i) base[i] = symbol(p_samples[i]);

  std::vector<double> envelope(eta_samples.size());
  std::vector<double> radius(eta_samples.size());
  Point plus(d), minus(d);
  double max_p = 0.0, max_eta = 0.0;
  for (const Point& p : p_samples) max_p = std::max(max_p, norm(p));
  for (std::size_t e = 0; e < eta_samples.size(); ++e) {
    const Point& eta = eta_samples[e];
    if (static_cast<int>(eta.size()) != d) throw ArgumentError("sample dimension mismatch");
    radius[e] = norm(eta);
    max_eta = std::max(max_eta, radius[e]);
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p_samples.size(); ++i) {
      const Point& p = p_samples[i];
      for (int k = 0; k < d; ++k) {
        plus[k] = p[k] + eta[k];
        minus[k] = p[k] - eta[k];
      }
      const double defect = 0.5 * (symbol(plus) + symbol(minus)) - base[i];
      if (!std::isfinite(defect)) throw EvaluationError("midpoint defect is not finite");
      worst = std::max(worst, defect);
    }
    envelope[e] = worst;
  }

  AssumptionCertificate cert;
  cert.assumption = Assumption::two;
  cert.worst_case = *std::max_element(envelope.begin(), envelope.end());
  cert.samples_used = p_samples.size() * eta_samples.size();
  cert.tolerance = 1e-12;

  // Growth exponent: log-log slope of the per-shell maximum over the outer
  // half of the eta range.
  std::map<double, double> shells;
  for (std::size_t e = 0; e < eta_samples.size(); ++e) {
    if (radius[e] <= 0.0) continue;
    const double key = std::round(radius[e] * 1e9) / 1e9;
    auto [it, inserted] = shells.emplace(key, envelope[e]);
    if (!inserted) it->second = std::max(it->second, envelope[e]);
  }
  std::vector<double> xs, ys;
  for (const auto& [r, value] : shells) {
    if (r >= 0.5 * max_eta && value > 0.0) {
      xs.push_back(std::log(r));
      ys.push_back(std::log(value));
    }
  }
  if (xs.size() >= 2) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    cert.growth_exponent = denom > 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
  }

  auto bound_holds = [&](const DefectConstants& c) {
    for (std::size_t e = 0; e < eta_samples.size(); ++e) {
      const double bound = c.c0 * std::pow(1.0 + radius[e], c.exponent);
      if (envelope[e] > bound + 1e-12 * (1.0 + bound)) return false;
    }
    return true;
  };

  if (constants) {
    cert.constants = constants;
    cert.passed = bound_holds(*constants);
    cert.note = "sampled certificate against supplied constants";
  } else {
    // Smallest polynomial class consistent with the observed growth, then
    // the least C0 covering every sample in that class.
    const int exponent = std::clamp(static_cast<int>(std::ceil(cert.growth_exponent - 0.05)), 0, 8);
    double c0 = 0.0;
    for (std::size_t e = 0; e < eta_samples.size(); ++e)
      c0 = std::max(c0, envelope[e] / std::pow(1.0 + radius[e], exponent));
    cert.constants = DefectConstants{c0, exponent};
    cert.passed = std::isfinite(cert.growth_exponent) && cert.growth_exponent <= 8.05 && bound_holds(*cert.constants);
    cert.note = "sampled certificate with fitted constants (smallest N, then least C0)";
  }

  std::ostringstream grid;
  grid << "p: " << p_samples.size() << " points, |p| <= " << max_p << "; eta: " << eta_samples.size()
       << " points, |eta| <= " << max_eta;
  cert.sample_grid = grid.str();
  return cert;
}

std::optional<DefectConstants> analytic_defect_constants(const Symbol& symbol) {
  if (symbol.s() > 1.0) return std::nullopt;
  const int exponent = static_cast<int>(std::ceil(2.0 * symbol.s()));
  if (symbol.kind() == SymbolKind::power) return DefectConstants{1.0, exponent};
  if (symbol.kind() == SymbolKind::directional)
    return DefectConstants{static_cast<double>(symbol.dimension()), exponent};
  return std::nullopt;
}

// ---- serialization -------------------------------------------------------

namespace {

double number_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw ValidationError(std::string("symbol spec: '") + key + "' must be a number");
  return j.at(key).get<double>();
}

int integer_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer())
    throw ValidationError(std::string("symbol spec: '") + key + "' must be an integer");
  return j.at(key).get<int>();
}

Symbol builtin_from_json(const nlohmann::json& j, const std::string& kind, int d) {
  if (kind == "power") return Symbol::power(d, number_field(j, "s"));
  if (kind == "directional") return Symbol::directional(d, number_field(j, "s"));
  if (kind == "mixed")
    return Symbol::mixed(d, number_field(j, "alpha"), number_field(j, "beta"), integer_field(j, "sign"));
  throw ValidationError("symbol spec: unknown kind '" + kind + "'");
}

}  // namespace

Symbol symbol_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("symbol spec must be an object");
  if (!j.contains("kind") || !j.at("kind").is_string()) throw ValidationError("symbol spec: 'kind' must be a string");
  const std::string kind = j.at("kind").get<std::string>();
  const int d = integer_field(j, "d");
  if (d < 1 || d > 3) throw ValidationError("symbol spec: 'd' must be 1, 2 or 3");
  try {
    if (kind != "user") return builtin_from_json(j, kind, d);
    if (!j.contains("alpha")) throw ValidationError("user symbol spec needs a declared degree 'alpha'");
    const double alpha = number_field(j, "alpha");
    if (!j.contains("base") || !j.at("base").is_object())
      throw ValidationError("user symbol spec needs a 'base' symbol object");
    const nlohmann::json& base_spec = j.at("base");
    if (!base_spec.contains("kind") || !base_spec.at("kind").is_string())
      throw ValidationError("user symbol base: 'kind' must be a string");
    const std::string base_kind = base_spec.at("kind").get<std::string>();
    if (base_kind == "user") throw ValidationError("user symbol base must be a builtin kind");
    if (integer_field(base_spec, "d") != d) throw ValidationError("user symbol base has a different dimension");
    const Symbol base = builtin_from_json(base_spec, base_kind, d);
    const PrincipalPart part = principal_part(base);
    UserSymbol spec;
    spec.evaluate = [base](std::span<const double> p) { return base(p); };
    spec.alpha = alpha;
    spec.principal = part.evaluate;
    spec.homogeneous = base.homogeneous() && alpha == part.alpha;
    std::ostringstream description;
    const std::string base_text = base.describe();
    description << "user[alpha = " << alpha << "] " << base_text.substr(0, base_text.rfind(" (d = "));
    spec.description = description.str();
    return Symbol::user(d, std::move(spec));
  } catch (const ArgumentError& e) {
    throw ValidationError(std::string("symbol spec: ") + e.what());
  }
}

nlohmann::json to_json(const AssumptionCertificate& certificate) {
  nlohmann::json j;
  j["assumption"] = certificate.assumption == Assumption::one ? "I" : "II";
  j["worst_case"] = certificate.worst_case;
  j["C0"] = certificate.constants ? nlohmann::json(certificate.constants->c0) : nlohmann::json(nullptr);
  j["N"] = certificate.constants ? nlohmann::json(certificate.constants->exponent) : nlohmann::json(nullptr);
  j["passed"] = certificate.passed;
  j["samples_used"] = certificate.samples_used;
  j["sample_grid"] = certificate.sample_grid;
  j["tolerance"] = certificate.tolerance;
  j["note"] = certificate.note;
  if (certificate.assumption == Assumption::one) {
    j["nu_grid"] = certificate.nu_grid;
    j["deviation_by_nu"] = certificate.deviation_by_nu;
    j["homogeneity_defect"] = certificate.homogeneity_defect;
    j["minorant_violations"] = certificate.minorant_violations;
  } else {
    j["growth_exponent"] = certificate.growth_exponent;
  }
  return j;
}

}  // namespace weyl::symbols
