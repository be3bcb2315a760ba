#pragma once

// The masked Fourier multiplier A = chi F^{-1} T F chi on a periodic cubic
// box, applied matrix-free with FFTW, its lowest eigenvalues by Lanczos, a
// dense oracle for small grids, and coherent-state expectations.

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "weyl/geometry.hpp"
#include "weyl/symbols.hpp"

namespace weyl::spectral {

// Integer frequency of FFT index j on an n-point axis: j for j < n/2, else j - n.
inline int frequency(int j, int n) { return j < n / 2 ? j : j - n; }

// Momentum lattice p_k = 2 pi k / L, k in {-n/2, ..., n/2 - 1}, stored in FFT
// order (row-major, last axis fastest), with the symbol sampled on it.
struct MomentumGrid {
  int dimension = 0;
  int n = 0;
  double side = 0.0;
  std::vector<double> symbol_values;
  double t_min = 0.0;
  double t_max = 0.0;

  std::size_t size() const noexcept { return symbol_values.size(); }
  double momentum(int j) const;
  Point momentum_at(std::size_t index) const;
};

// Throws EvaluationError naming the lattice point where T is not finite.
MomentumGrid momentum_grid(const symbols::Symbol& symbol, int n, double side);

class GridOperator {
 public:
  GridOperator(geometry::GridMask mask, MomentumGrid grid);

  const geometry::GridMask& mask() const noexcept { return mask_; }
  const MomentumGrid& grid() const noexcept { return grid_; }

  // sigma = min lattice T - 1, so A - sigma >= 1 on masked functions.
  double shift() const noexcept { return grid_.t_min - 1.0; }

  // Grid indices of occupied cells, ascending.
  const std::vector<std::size_t>& occupied() const noexcept { return occupied_; }
  std::size_t dimension() const noexcept { return occupied_.size(); }

  // Full-grid action: u is masked first, the result vanishes off the mask.
  // Throws ArgumentError on a size mismatch. Safe to call concurrently.
  std::vector<double> apply(std::span<const double> u) const;

  // Action on the coordinates of occupied cells (length dimension()).
  void apply_occupied(std::span<const double> x, std::span<double> y) const;

 private:
  struct Plans;
  geometry::GridMask mask_;
  MomentumGrid grid_;
  std::vector<double> multiplier_;  // half-complex, symmetrized, divided by n^d
  std::vector<std::size_t> occupied_;
  std::shared_ptr<Plans> plans_;
};

// Cube = enclosing_cube(domain, pad), i.e. side = longest bounding-box side
// times (1 + 2 pad).
GridOperator build_operator(const symbols::Symbol& symbol, const geometry::DomainSet& domain, int n, double pad);
GridOperator build_operator(const symbols::Symbol& symbol, const geometry::DomainSet& domain,
                            const geometry::Cube& box, int n);

struct SolverInfo {
  std::string method;  // "lanczos" or "dense"
  std::size_t matvecs = 0;
  int passes = 0;
  double tolerance = 0.0;
  int n = 0;
  double side = 0.0;
  double sigma = 0.0;
  double t_max = 0.0;
  double asymmetry_defect = 0.0;  // dense only
};

struct Spectrum {
  std::vector<double> eigenvalues;  // ascending
  std::vector<double> residuals;    // ||A v - lambda v|| with ||v|| = 1
  double reliability_cutoff = 0.0;  // T_max / 4
  SolverInfo info;

  std::size_t size() const noexcept { return eigenvalues.size(); }
  bool trusted(std::size_t k) const { return eigenvalues.at(k) <= reliability_cutoff; }
};

// Groups of consecutive eigenvalues within 1e-6 (1 + |lambda|) of their
// neighbour, as (first index, count).
std::vector<std::pair<std::size_t, std::size_t>> multiplets(const Spectrum& spectrum);

struct LanczosOptions {
  double tolerance = 1e-8;
  std::uint64_t seed = 1;
  int max_passes = 12;
};

// M smallest eigenvalues by Lanczos with full reorthogonalization on A - sigma
// and deflated restarts. A pair (theta + sigma, v) is accepted when
// ||(A - sigma) v - theta v|| <= tol theta. Each pass is capped at 10 M + 200
// steps. Throws ArgumentError for M outside [1, dimension()] and
// ConvergenceError (with the best residuals) when fewer than M pairs converge.
Spectrum lowest_eigenvalues(const GridOperator& op, std::size_t count, const LanczosOptions& options = {});

inline constexpr std::size_t kDenseLimit = 4096;

// Full spectrum of the assembled occupied x occupied matrix, symmetrized.
Spectrum dense_spectrum(const GridOperator& op);

struct CoherentProbe {
  std::vector<double> bump;  // g on the full grid, sum g^2 h^d = 1
  Point wave_vector;         // p
  Point center;              // q
  double radius = 0.0;       // support radius of g, delta / 2
  double constant = 0.0;     // C_g
};

// Smooth bump exp(-1 / (1 - r^2 / R^2)) about q with R = delta / 2, sampled
// at cell centres and normalized in the discrete L2 norm. The constant is
// C_g = sum_k E(eta_k) |g^_k|^2 / sum_k |g^_k|^2 for the defect envelope E.
// Throws ArgumentError if the support leaves the box.
CoherentProbe make_probe(const geometry::Cube& box, int n, double delta, Point center, Point wave_vector,
                         const Evaluator& envelope);

// Envelope E(eta) bounding the midpoint defect of the symbol: |eta|^{2s} for
// |p|^{2s} and sum |eta_i|^{2s} for sum |p_i|^{2s} (s <= 1); otherwise
// C0 (1 + |eta|)^N from the given constants. Throws UnsupportedError when no
// envelope is known.
Evaluator defect_envelope(const symbols::Symbol& symbol,
                          std::optional<symbols::DefectConstants> constants = std::nullopt);

// <F, A F> for F(x) = e^{i p.x} g(x - q) on the periodic grid, computed as
// h^d / n^d sum_k T(p_k) |DFT(F)_k|^2 (no mask).
double coherent_expectation(const MomentumGrid& grid, const CoherentProbe& probe);

// sum_k |p_k|^2 |g^_k|^2 h^d / n^d: the spectral Dirichlet energy of g.
double dirichlet_energy(const MomentumGrid& grid, std::span<const double> g);

// CSV with columns k, lambda, residual, trusted (k from 1).
std::string to_csv(const Spectrum& spectrum);

}  // namespace weyl::spectral
