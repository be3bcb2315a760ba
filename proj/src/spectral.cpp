#include "weyl/spectral.hpp"

#include <fftw3.h>
#include <lapacke.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <random>

#include "weyl/errors.hpp"

namespace weyl::spectral {

namespace {

// FFTW planning and plan destruction are not thread-safe; execution with
// the new-array interface is.
std::mutex& planner_mutex() {
  static std::mutex mutex;
  return mutex;
}

std::size_t power(int n, int d) {
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(n);
  return total;
}

struct FftwDeleter {
  void operator()(void* p) const { fftw_free(p); }
};

template <class T>
std::unique_ptr<T[], FftwDeleter> fftw_buffer(std::size_t count) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(count, 1)));
  if (!p) throw std::bad_alloc();
  return std::unique_ptr<T[], FftwDeleter>(p);
}

// Forward complex DFT of a full grid, planned and executed once.
std::vector<std::complex<double>> dft(std::vector<std::complex<double>> data, int n, int d) {
  const std::size_t total = data.size();
  auto buffer = fftw_buffer<fftw_complex>(total);
  std::vector<int> dims(d, n);
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft(d, dims.data(), buffer.get(), buffer.get(), FFTW_FORWARD, FFTW_ESTIMATE);
  }
  for (std::size_t i = 0; i < total; ++i) {
    buffer[i][0] = data[i].real();
    buffer[i][1] = data[i].imag();
  }
  fftw_execute(plan);
  for (std::size_t i = 0; i < total; ++i) data[i] = {buffer[i][0], buffer[i][1]};
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
  return data;
}

double squared_momentum(const MomentumGrid& grid, std::size_t index) {
  const Point p = grid.momentum_at(index);
  double acc = 0.0;
  for (double v : p) acc += v * v;
  return acc;
}

}  // namespace

double MomentumGrid::momentum(int j) const { return 2.0 * kPi * frequency(j, n) / side; }

Point MomentumGrid::momentum_at(std::size_t index) const {
  Point p(dimension);
  for (int i = dimension - 1; i >= 0; --i) {
    p[i] = momentum(static_cast<int>(index % n));
    index /= n;
  }
  return p;
}

MomentumGrid momentum_grid(const symbols::Symbol& symbol, int n, double side) {
  if (n < 2 || (n & (n - 1)) != 0) throw ArgumentError("grid resolution must be a power of two >= 2");
  if (!(side > 0.0)) throw ArgumentError("box side must be positive");
  MomentumGrid grid;
  grid.dimension = symbol.dimension();
  grid.n = n;
  grid.side = side;
  const std::size_t total = power(n, grid.dimension);
  grid.symbol_values.resize(total);
  for (std::size_t k = 0; k < total; ++k) grid.symbol_values[k] = symbol(grid.momentum_at(k));
  const auto [lo, hi] = std::minmax_element(grid.symbol_values.begin(), grid.symbol_values.end());
  grid.t_min = *lo;
  grid.t_max = *hi;
  return grid;
}

struct GridOperator::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  std::size_t real_size = 0;
  std::size_t complex_size = 0;

  Plans(int n, int d) {
    std::vector<int> dims(d, n);
    real_size = power(n, d);
    complex_size = real_size / n * (n / 2 + 1);
    auto real = fftw_buffer<double>(real_size);
    auto spec = fftw_buffer<fftw_complex>(complex_size);
    std::lock_guard lock(planner_mutex());
    forward = fftw_plan_dft_r2c(d, dims.data(), real.get(), spec.get(), FFTW_ESTIMATE);
    backward = fftw_plan_dft_c2r(d, dims.data(), spec.get(), real.get(), FFTW_ESTIMATE);
  }
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
  }
  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;
};

GridOperator::GridOperator(geometry::GridMask mask, MomentumGrid grid) : mask_(std::move(mask)), grid_(std::move(grid)) {
  if (mask_.dimension != grid_.dimension || mask_.n != grid_.n || std::abs(mask_.box.side - grid_.side) > 1e-12 * grid_.side)
    throw ArgumentError("mask and momentum grid describe different boxes");
  if (mask_.occupied_count == 0) throw DegenerateDomainError("operator mask is empty");
  for (std::size_t k = 0; k < mask_.size(); ++k)
    if (mask_.occupied[k]) occupied_.push_back(k);

  const int n = grid_.n, d = grid_.dimension;
  plans_ = std::make_shared<Plans>(n, d);
  const int half = n / 2 + 1;
  const double scale = 1.0 / static_cast<double>(plans_->real_size);
  multiplier_.resize(plans_->complex_size);
  std::vector<int> idx(d, 0);
  for (std::size_t c = 0; c < plans_->complex_size; ++c) {
    std::size_t rest = c;
    idx[d - 1] = static_cast<int>(rest % half);
    rest /= half;
    for (int i = d - 2; i >= 0; --i) {
      idx[i] = static_cast<int>(rest % n);
      rest /= n;
    }
    std::size_t full = 0, mirror = 0;
    for (int i = 0; i < d; ++i) {
      full = full * n + idx[i];
      mirror = mirror * n + (n - idx[i]) % n;
    }
    multiplier_[c] = 0.5 * (grid_.symbol_values[full] + grid_.symbol_values[mirror]) * scale;
  }
}

std::vector<double> GridOperator::apply(std::span<const double> u) const {
  if (u.size() != mask_.size()) throw ArgumentError("grid function size does not match the operator grid");
  std::vector<double> x(occupied_.size()), y(occupied_.size());
  for (std::size_t i = 0; i < occupied_.size(); ++i) x[i] = u[occupied_[i]];
  apply_occupied(x, y);
  std::vector<double> out(mask_.size(), 0.0);
  for (std::size_t i = 0; i < occupied_.size(); ++i) out[occupied_[i]] = y[i];
  return out;
}

void GridOperator::apply_occupied(std::span<const double> x, std::span<double> y) const {
  if (x.size() != occupied_.size() || y.size() != occupied_.size())
    throw ArgumentError("coordinate vector size does not match the occupied cell count");
  auto real = fftw_buffer<double>(plans_->real_size);
  auto spec = fftw_buffer<fftw_complex>(plans_->complex_size);
  std::fill(real.get(), real.get() + plans_->real_size, 0.0);
  for (std::size_t i = 0; i < occupied_.size(); ++i) real[occupied_[i]] = x[i];
  fftw_execute_dft_r2c(plans_->forward, real.get(), spec.get());
  for (std::size_t c = 0; c < plans_->complex_size; ++c) {
    spec[c][0] *= multiplier_[c];
    spec[c][1] *= multiplier_[c];
  }
  fftw_execute_dft_c2r(plans_->backward, spec.get(), real.get());
  for (std::size_t i = 0; i < occupied_.size(); ++i) y[i] = real[occupied_[i]];
}

GridOperator build_operator(const symbols::Symbol& symbol, const geometry::DomainSet& domain, int n, double pad) {
  return build_operator(symbol, domain, geometry::enclosing_cube(domain, pad), n);
}

GridOperator build_operator(const symbols::Symbol& symbol, const geometry::DomainSet& domain,
                            const geometry::Cube& box, int n) {
  if (symbol.dimension() != domain.dimension()) throw ArgumentError("symbol and domain differ in dimension");
  MomentumGrid grid = momentum_grid(symbol, n, box.side);
  return GridOperator(geometry::rasterize(domain, box, n), std::move(grid));
}

std::vector<std::pair<std::size_t, std::size_t>> multiplets(const Spectrum& spectrum) {
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  const auto& ev = spectrum.eigenvalues;
  for (std::size_t k = 0; k < ev.size(); ++k) {
    if (!groups.empty() && ev[k] - ev[k - 1] <= 1e-6 * (1.0 + std::abs(ev[k])))
      ++groups.back().second;
    else
      groups.emplace_back(k, 1);
  }
  return groups;
}

namespace {

struct Tridiagonal {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

Tridiagonal tridiagonal_eigen(const std::vector<double>& alpha, const std::vector<double>& beta, int m) {
  std::vector<double> diag(alpha.begin(), alpha.begin() + m);
  std::vector<double> off(std::max(m, 1), 0.0);
  for (int i = 0; i + 1 < m; ++i) off[i] = beta[i];
  Tridiagonal out;
  out.values.resize(m);
  out.vectors.resize(m, m);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(m));
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'A', m, diag.data(), off.data(), 0.0, 0.0, 0, 0, 0.0,
                                         &found, out.values.data(), out.vectors.data(), m, support.data());
  if (info != 0 || found != m) throw ConvergenceError("tridiagonal eigensolver failed", {});
  return out;
}

class Lanczos {
 public:
  Lanczos(const GridOperator& op, std::size_t count, const LanczosOptions& options)
      : op_(op), count_(count), options_(options), dim_(op.dimension()), sigma_(op.shift()),
        scale_(op.grid().t_max - op.shift()), rng_(options.seed), locked_(dim_, 0) {}

  Spectrum run() {
    int passes = 0;
    std::vector<double> best;
    while (true) {
      bool exhausted = false;
      while (passes < options_.max_passes) {
        ++passes;
        const std::size_t before = locked_.cols();
        const bool verifying = before >= count_;
        best = pass(exhausted);
        if (exhausted) break;
        if (verifying && static_cast<std::size_t>(locked_.cols()) == before) break;
      }
      if (static_cast<std::size_t>(locked_.cols()) < count_) throw failure(best);

      const Spectrum spectrum = rayleigh_ritz(passes);
      if (spectrum.size() >= count_) return spectrum;
      if (passes >= options_.max_passes) throw failure(best);
    }
  }

 private:
  ConvergenceError failure(const std::vector<double>& best) const {
    return ConvergenceError("Lanczos: " + std::to_string(locked_.cols()) + " of " + std::to_string(count_) +
                                " eigenpairs converged within the iteration cap",
                            best);
  }

  void apply_shifted(const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    op_.apply_occupied(std::span<const double>(x.data(), dim_), std::span<double>(y.data(), dim_));
    y -= sigma_ * x;
    ++matvecs_;
  }

  void orthogonalize(Eigen::VectorXd& w, const Eigen::MatrixXd& basis, Eigen::Index columns) const {
    for (int twice = 0; twice < 2; ++twice) {
      if (locked_.cols() > 0) w.noalias() -= locked_ * (locked_.transpose() * w);
      if (columns > 0) w.noalias() -= basis.leftCols(columns) * (basis.leftCols(columns).transpose() * w);
    }
  }

  void lock(const Eigen::VectorXd& y, double theta) {
    Eigen::VectorXd v = y;
    orthogonalize(v, Eigen::MatrixXd(), 0);
    const double nrm = v.norm();
    if (nrm < 0.5) return;  // already represented in the locked space
    locked_.conservativeResize(Eigen::NoChange, locked_.cols() + 1);
    locked_.col(locked_.cols() - 1) = v / nrm;
    locked_theta_.push_back(theta);
  }

  struct Ritz {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
  };

  // Eigenpairs of the leading m x m block of the projected matrix; the
  // tridiagonal solver is used while no restart has happened.
  static Ritz ritz_pairs(const Eigen::MatrixXd& h, Eigen::Index m, bool tridiagonal) {
    if (tridiagonal) {
      std::vector<double> alpha(m), beta(m, 0.0);
      for (Eigen::Index i = 0; i < m; ++i) {
        alpha[i] = h(i, i);
        if (i + 1 < m) beta[i] = h(i + 1, i);
      }
      Tridiagonal t = tridiagonal_eigen(alpha, beta, static_cast<int>(m));
      return {std::move(t.values), std::move(t.vectors)};
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.topLeftCorner(m, m));
    return {solver.eigenvalues(), solver.eigenvectors()};
  }

  // One thick-restarted Lanczos run from a fresh random start orthogonal to
  // the locked vectors. Each cycle builds a Krylov basis of at most
  // 10 M + 200 vectors; on restart the lowest Ritz vectors and the residual
  // direction are kept. Returns relative residual estimates of the lowest
  // Ritz pairs.
  std::vector<double> pass(bool& exhausted) {
    const std::size_t locked = locked_.cols();
    const std::size_t need = count_ > locked ? count_ - locked : 0;
    double cutoff = 0.0;
    if (need == 0) {
      std::vector<double> sorted = locked_theta_;
      std::sort(sorted.begin(), sorted.end());
      cutoff = sorted[count_ - 1] * (1.0 + 1e-9);
    }
    const Eigen::Index cap =
        static_cast<Eigen::Index>(std::min<std::size_t>(10 * count_ + 200, dim_ - locked));
    if (cap <= 0) {
      exhausted = true;
      return {};
    }

    Eigen::VectorXd v(dim_);
    std::normal_distribution<double> normal;
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = normal(rng_);
    const double start = v.norm();
    orthogonalize(v, Eigen::MatrixXd(), 0);
    if (v.norm() < 1e-8 * start) {
      exhausted = true;
      return {};
    }

    Eigen::MatrixXd basis(dim_, cap + 1);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(cap + 1, cap + 1);
    basis.col(0) = v / v.norm();
    Eigen::VectorXd w(dim_), coef;
    Eigen::Index kept = 0;  // Ritz vectors carried over from the last restart
    std::vector<double> best;

    for (int cycle = 0; cycle < kMaxCycles; ++cycle) {
      const bool tridiagonal = kept == 0;
      Eigen::Index next_check = tridiagonal ? 10 : kept + std::max<Eigen::Index>(1, (cap - kept) / 2);
      for (Eigen::Index j = kept; j < cap; ++j) {
        apply_shifted(basis.col(j), w);
        // Three-term recurrence first, then full reorthogonalization, repeated
        // when it removes a large part of w.
        const double alpha = basis.col(j).dot(w);
        w -= alpha * basis.col(j);
        if (j > 0) w -= h(j - 1, j) * basis.col(j - 1);
        coef = Eigen::VectorXd::Zero(j + 1);
        for (int sweep = 0; sweep < 2; ++sweep) {
          const double before = w.norm();
          const Eigen::VectorXd c = basis.leftCols(j + 1).transpose() * w;
          w.noalias() -= basis.leftCols(j + 1) * c;
          coef += c;
          if (locked_.cols() > 0) w.noalias() -= locked_ * (locked_.transpose() * w);
          if (w.norm() > 0.7 * before) break;
        }
        coef[j] += alpha;
        if (j > 0) coef[j - 1] += h(j - 1, j);
        for (Eigen::Index i = 0; i <= j; ++i) h(i, j) = h(j, i) = coef[i];
        const double beta = w.norm();
        h(j + 1, j) = h(j, j + 1) = beta;

        const Eigen::Index steps = j + 1;
        const bool breakdown = beta <= 1e-12 * scale_;
        const bool last = steps == cap || breakdown;
        if (breakdown) h(j + 1, j) = h(j, j + 1) = 0.0;
        if (last || steps >= next_check) {
          next_check = tridiagonal ? steps + std::max<Eigen::Index>(5, steps / 10) : cap;
          const Ritz ritz = ritz_pairs(h, steps, tridiagonal);
          std::vector<double> residual(steps);
          std::vector<bool> converged(steps);
          for (Eigen::Index i = 0; i < steps; ++i) {
            residual[i] = breakdown ? 0.0 : beta * std::abs(ritz.vectors(steps - 1, i));
            converged[i] = residual[i] <= options_.tolerance * ritz.values[i];
          }
          best.clear();
          for (Eigen::Index i = 0; i < std::min<Eigen::Index>(steps, count_); ++i)
            best.push_back(residual[i] / ritz.values[i]);

          // Targets: the lowest `need` Ritz pairs, or when verifying, every
          // Ritz value below the M-th locked one (and at least the lowest).
          Eigen::Index targets = 0;
          if (need > 0) {
            targets = std::min<Eigen::Index>(need, steps);
          } else {
            while (targets < steps && ritz.values[targets] < cutoff) ++targets;
          }
          const Eigen::Index watched = std::max<Eigen::Index>(targets, 1);
          const bool done = (need == 0 || targets == static_cast<Eigen::Index>(need)) &&
                            std::all_of(converged.begin(), converged.begin() + watched, [](bool c) { return c; });
          const bool final_cycle = cycle + 1 == kMaxCycles || breakdown || steps == dim_ - static_cast<Eigen::Index>(locked);
          if (done || (last && final_cycle)) {
            for (Eigen::Index i = 0; i < targets; ++i)
              if (converged[i]) lock(basis.leftCols(steps) * ritz.vectors.col(i), ritz.values[i]);
            return best;
          }
          if (last) {
            // Thick restart: keep the lowest Ritz vectors plus the residual direction.
            kept = std::min<Eigen::Index>(steps - 1, std::max<Eigen::Index>(watched + 10, steps / 3));
            const Eigen::MatrixXd rotated = basis.leftCols(steps) * ritz.vectors.leftCols(kept);
            basis.leftCols(kept) = rotated;
            basis.col(kept) = w / beta;
            h.setZero();
            for (Eigen::Index i = 0; i < kept; ++i) {
              h(i, i) = ritz.values[i];
              h(kept, i) = h(i, kept) = beta * ritz.vectors(steps - 1, i);
            }
            break;
          }
        }
        basis.col(j + 1) = w / beta;
      }
    }
    return best;
  }

  // Rotates the locked space to exact Ritz pairs and keeps those meeting
  // the residual contract.
  Spectrum rayleigh_ritz(int passes) {
    const Eigen::Index m = locked_.cols();
    Eigen::MatrixXd image(dim_, m);
    Eigen::VectorXd y(dim_);
    for (Eigen::Index i = 0; i < m; ++i) {
      apply_shifted(locked_.col(i), y);
      image.col(i) = y;
    }
    Eigen::MatrixXd projected = locked_.transpose() * image;
    projected = 0.5 * (projected + projected.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(projected);
    const Eigen::MatrixXd vectors = locked_ * solver.eigenvectors();
    const Eigen::MatrixXd images = image * solver.eigenvectors();

    Spectrum spectrum;
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < m; ++i) {
      const double theta = solver.eigenvalues()[i];
      const double residual = (images.col(i) - theta * vectors.col(i)).norm();
      if (residual <= options_.tolerance * theta) {
        keep.push_back(i);
        if (spectrum.size() < count_) {
          spectrum.eigenvalues.push_back(theta + sigma_);
          spectrum.residuals.push_back(residual);
        }
      } else if (spectrum.size() < count_) {
        break;  // a gap in the lowest pairs: refine before reporting
      }
    }
    if (spectrum.size() < count_) {
      Eigen::MatrixXd kept(dim_, static_cast<Eigen::Index>(keep.size()));
      locked_theta_.clear();
      for (std::size_t c = 0; c < keep.size(); ++c) {
        kept.col(c) = vectors.col(keep[c]);
        locked_theta_.push_back(solver.eigenvalues()[keep[c]]);
      }
      locked_ = kept;
      return {};
    }
    spectrum.reliability_cutoff = op_.grid().t_max / 4.0;
    spectrum.info = SolverInfo{"lanczos", matvecs_, passes, options_.tolerance, op_.grid().n, op_.grid().side,
                               sigma_, op_.grid().t_max, 0.0};
    return spectrum;
  }

  const GridOperator& op_;
  std::size_t count_;
  LanczosOptions options_;
  Eigen::Index dim_;
  double sigma_;
  double scale_;
  std::mt19937_64 rng_;
  Eigen::MatrixXd locked_;
  std::vector<double> locked_theta_;
  std::size_t matvecs_ = 0;
  static constexpr int kMaxCycles = 50;
};

}  // namespace

Spectrum lowest_eigenvalues(const GridOperator& op, std::size_t count, const LanczosOptions& options) {
  if (count < 1 || count > op.dimension())
    throw ArgumentError("requested " + std::to_string(count) + " eigenvalues of a " +
                        std::to_string(op.dimension()) + "-dimensional operator");
  if (!(options.tolerance > 0.0)) throw ArgumentError("tolerance must be positive");
  return Lanczos(op, count, options).run();
}

Spectrum dense_spectrum(const GridOperator& op) {
  const std::size_t m = op.dimension();
  if (m > kDenseLimit) throw ArgumentError("dense oracle limited to " + std::to_string(kDenseLimit) + " occupied cells");
  Eigen::MatrixXd a(m, m);
  std::vector<double> e(m, 0.0), col(m);
  for (std::size_t j = 0; j < m; ++j) {
    e[j] = 1.0;
    op.apply_occupied(e, col);
    e[j] = 0.0;
    for (std::size_t i = 0; i < m; ++i) a(i, j) = col[i];
  }
  const double defect = (a - a.transpose()).cwiseAbs().maxCoeff();
  a = 0.5 * (a + a.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  Spectrum spectrum;
  for (std::size_t k = 0; k < m; ++k) {
    const double lambda = solver.eigenvalues()[k];
    spectrum.eigenvalues.push_back(lambda);
    spectrum.residuals.push_back((a * solver.eigenvectors().col(k) - lambda * solver.eigenvectors().col(k)).norm());
  }
  spectrum.reliability_cutoff = op.grid().t_max / 4.0;
  spectrum.info = SolverInfo{"dense", m, 0, 0.0, op.grid().n, op.grid().side, op.shift(), op.grid().t_max, defect};
  return spectrum;
}

CoherentProbe make_probe(const geometry::Cube& box, int n, double delta, Point center, Point wave_vector,
                         const Evaluator& envelope) {
  const int d = static_cast<int>(box.origin.size());
  if (static_cast<int>(center.size()) != d || static_cast<int>(wave_vector.size()) != d)
    throw ArgumentError("probe centre and wave vector must match the box dimension");
  if (!(delta > 0.0)) throw ArgumentError("probe needs delta > 0");
  const double radius = 0.5 * delta;
  for (int i = 0; i < d; ++i)
    if (center[i] - radius < box.origin[i] || center[i] + radius > box.origin[i] + box.side)
      throw ArgumentError("probe support is clipped by the box");

  geometry::GridMask cells;  // only used for cell centres
  cells.dimension = d;
  cells.n = n;
  cells.box = box;
  const std::size_t total = power(n, d);
  const double h = box.side / n;
  CoherentProbe probe;
  probe.bump.assign(total, 0.0);
  double mass = 0.0;
  for (std::size_t k = 0; k < total; ++k) {
    const Point x = cells.cell_center(k);
    double r2 = 0.0;
    for (int i = 0; i < d; ++i) r2 += (x[i] - center[i]) * (x[i] - center[i]);
    const double t = r2 / (radius * radius);
    if (t < 1.0) {
      probe.bump[k] = std::exp(-1.0 / (1.0 - t));
      mass += probe.bump[k] * probe.bump[k];
    }
  }
  if (!(mass > 0.0)) throw ArgumentError("probe support contains no cell centre");
  const double normalize = 1.0 / std::sqrt(mass * std::pow(h, d));
  for (double& g : probe.bump) g *= normalize;

  std::vector<std::complex<double>> data(probe.bump.begin(), probe.bump.end());
  const auto spectrum = dft(std::move(data), n, d);
  MomentumGrid lattice;
  lattice.dimension = d;
  lattice.n = n;
  lattice.side = box.side;
  double weighted = 0.0, norm2 = 0.0;
  for (std::size_t k = 0; k < total; ++k) {
    const double w = std::norm(spectrum[k]);
    weighted += envelope(lattice.momentum_at(k)) * w;
    norm2 += w;
  }
  probe.constant = weighted / norm2;
  probe.wave_vector = std::move(wave_vector);
  probe.center = std::move(center);
  probe.radius = radius;
  return probe;
}

Evaluator defect_envelope(const symbols::Symbol& symbol, std::optional<symbols::DefectConstants> constants) {
  using symbols::SymbolKind;
  const double s = symbol.s();
  if (symbol.kind() == SymbolKind::power && s <= 1.0)
    return [s](std::span<const double> eta) { return std::pow(norm(eta), 2.0 * s); };
  if (symbol.kind() == SymbolKind::directional && s <= 1.0)
    return [s](std::span<const double> eta) {
      double acc = 0.0;
      for (double v : eta) acc += std::pow(std::abs(v), 2.0 * s);
      return acc;
    };
  if (constants) {
    const auto c = *constants;
    return [c](std::span<const double> eta) { return c.c0 * std::pow(1.0 + norm(eta), c.exponent); };
  }
  throw UnsupportedError("no defect envelope known for " + symbol.describe());
}

double coherent_expectation(const MomentumGrid& grid, const CoherentProbe& probe) {
  const int d = grid.dimension, n = grid.n;
  if (probe.bump.size() != grid.size() || static_cast<int>(probe.wave_vector.size()) != d)
    throw ArgumentError("probe does not match the momentum grid");
  const double h = grid.side / n;
  std::vector<std::complex<double>> f(grid.size());
  std::vector<int> idx(d);
  for (std::size_t k = 0; k < f.size(); ++k) {
    std::size_t rest = k;
    double phase = 0.0;
    for (int i = d - 1; i >= 0; --i) {
      phase += probe.wave_vector[i] * (static_cast<double>(rest % n) + 0.5) * h;
      rest /= n;
    }
    f[k] = std::polar(probe.bump[k], phase);
  }
  f = dft(std::move(f), n, d);
  double acc = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) acc += grid.symbol_values[k] * std::norm(f[k]);
  return acc * std::pow(h, d) / static_cast<double>(grid.size());
}

double dirichlet_energy(const MomentumGrid& grid, std::span<const double> g) {
  if (g.size() != grid.size()) throw ArgumentError("grid function does not match the momentum grid");
  const auto spec = dft(std::vector<std::complex<double>>(g.begin(), g.end()), grid.n, grid.dimension);
  double acc = 0.0;
  for (std::size_t k = 0; k < spec.size(); ++k) acc += squared_momentum(grid, k) * std::norm(spec[k]);
  return acc * std::pow(grid.side / grid.n, grid.dimension) / static_cast<double>(grid.size());
}

std::string to_csv(const Spectrum& spectrum) {
  std::string out = "k,lambda,residual,trusted\n";
  char line[128];
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    std::snprintf(line, sizeof line, "%zu,%.17g,%.6e,%s\n", k + 1, spectrum.eigenvalues[k], spectrum.residuals[k],
                  spectrum.trusted(k) ? "true" : "false");
    out += line;
  }
  return out;
}

}  // namespace weyl::spectral
