#pragma once

// The operator K f(z) = integral f(x) Phi(x) exp(-x z / (2 pi i hbar)) dx:
// evaluation on symbolic test vectors, on sampled grids, and the checks of
// unitarity, the intertwining identities and the fifth-power relation.

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "qpent/qtorus.hpp"
#include "qpent/specfun.hpp"
#include "qpent/wspace.hpp"

namespace qpent::kop {

/// Uniform grid x_k = -L + k * (2L/N), k = 0..N-1.
struct GridSpec {
  double half_width = 40.0;
  std::size_t size = 4096;

  double spacing() const { return 2.0 * half_width / static_cast<double>(size); }
  double point(std::size_t k) const { return -half_width + static_cast<double>(k) * spacing(); }
  /// (2L, 2N): same spacing, twice the window.
  GridSpec doubled() const { return {2.0 * half_width, 2 * size}; }
  void validate() const;
};

struct GridFunction {
  GridSpec spec;
  std::vector<cplx> values;

  static GridFunction sample(const wspace::WVector& v, const GridSpec& spec);
  /// Trapezoid L2 norm.
  double norm() const;
};

/// Trapezoid inner product sum f_k conj(g_k) dx on a shared grid.
cplx grid_inner(const GridFunction& f, const GridFunction& g);

/// max |f| over the outer `band` points on either side, relative to max |f|.
double boundary_ratio(const GridFunction& f, std::size_t band = 8);

struct KConfig {
  double hbar = 1.0;
  /// Tolerance of each Phi evaluation and of the K integral on W.
  specfun::QuadratureConfig quad{0.0, 0.0, 1e-10, 200000};
  /// Divide the output by 2 pi sqrt(hbar). By Plancherel ||K f|| equals
  /// 2 pi sqrt(hbar) ||f||, so this is the normalization that makes K unitary.
  bool rescale = true;
  /// apply_K_grid rejects inputs whose edge band exceeds this fraction of
  /// the peak.
  double boundary_tol = 1e-12;
  /// Use the chirp-z factorization for grid transforms when available.
  bool fast_path = false;

  void validate() const;
};

/// Evaluates K. Keeps a cache of Phi values on the dyadic lattice used by the
/// W quadrature and per-grid tables; instances are safe to share across threads.
class KOperator {
 public:
  explicit KOperator(KConfig cfg);

  const KConfig& config() const { return cfg_; }
  /// 1 / (2 pi sqrt(hbar)) when rescaling, else 1.
  double scale() const;

  /// scale() * K v at each z (Gaussian dominance needs |Im z| moderate). Adaptive
  /// trapezoid on nested dyadic lattices; the relative error measured against
  /// integral |integrand| is at most quad.rel_tol. Gaussian terms centred more
  /// than one unit off the real axis (such as X^{+-1} w) are integrated along
  /// a horizontal line through the pole-free strip of Phi closest to their
  /// centre, which avoids cancellation of order e^{a (Im centre)^2 / 2}.
  std::vector<cplx> apply_to_W(const wspace::WVector& v, std::span<const cplx> z) const;

  /// Discrete K on the grid: (Kf)(x_j) = sum_k f_k Phi(x_k) e^{i x_k x_j/(2 pi hbar)} dx.
  /// Throws BoundaryLeak when f is not decayed at the edges.
  GridFunction apply_grid(const GridFunction& f) const;
  /// Batched form; all inputs must share one grid. `boundary_tol` overrides
  /// the configured edge tolerance (the chained fifth-power check uses a
  /// looser one).
  std::vector<GridFunction> apply_grid(std::span<const GridFunction> fs, double boundary_tol) const;
  std::vector<GridFunction> apply_grid_direct(std::span<const GridFunction> fs) const;
  /// Chirp-z (Bluestein) evaluation of the same sum in O(N log N); throws
  /// Error when the library was built without FFTW.
  std::vector<GridFunction> apply_grid_fast(std::span<const GridFunction> fs) const;

  /// Phi on the grid points, computed once per grid.
  const std::vector<cplx>& phi_table(const GridSpec& spec) const;
  /// Phi at a lattice point key * 2^-20.
  cplx phi_at_key(std::int64_t key) const;
  /// Phi at key * 2^-20 + i * line / 2, for a line inside the strip.
  cplx phi_at_key(std::int64_t key, int line) const;

 private:
  KConfig cfg_;
  specfun::PhiParams params_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::int64_t, cplx> lattice_;
  mutable std::map<int, std::unordered_map<std::int64_t, cplx>> offset_lattice_;
  mutable std::vector<std::pair<GridSpec, std::shared_ptr<std::vector<cplx>>>> tables_;
};

/// Convenience wrappers around a temporary KOperator.
std::vector<cplx> apply_K_to_W(const wspace::WVector& v, std::span<const cplx> z, const KConfig& cfg);
GridFunction apply_K_grid(const GridFunction& f, const KConfig& cfg);

/// ||U v|| / ||v|| for the unitary U = K / (2 pi sqrt(hbar)), with the image
/// norm integrated over an adaptively widened and refined z-window.
double unitarity_ratio(const KOperator& K, const wspace::WVector& v);

/// ||U f|| / ||f|| on the grid, U = K / (2 pi sqrt(hbar)).
double grid_unitarity_ratio(const KOperator& K, const GridFunction& f);

/// Relative L2 residual on `grid` of basic identity idx:
///   1: K (1 + qY) X w = Y K w
///   2: K Y^{-1} w = X K w
///   3: K X^{-1} w = Y^{-1} (1 + q X^{-1}) K w
double intertwine_basic(int idx, const KOperator& K, const wspace::WVector& w, const GridSpec& grid = {20.0, 1024});

/// Relative L2 residual of K gamma(A)^ w = A^ K w. Throws NonMember when
/// gamma(A) is not defined.
double intertwine_general(const qtorus::ModularSum& A, const KOperator& K, const wspace::WVector& w,
                          const GridSpec& grid = {20.0, 1024});

struct PentagonOptions {
  GridSpec grid{40.0, 4096};
  /// Edge tolerance for the intermediate images in the chain.
  double chain_boundary_tol = 1e-4;
};

struct PentagonResult {
  cplx lambda{0.0, 0.0};
  double abs_lambda_deviation = 0.0;  // | |lambda| - 1 |
  double max_residual = 0.0;          // max_i ||K^5 v_i - lambda_i v_i|| / ||v_i||
  double spread = 0.0;                // max_{i,j} |lambda_i - lambda_j| / |lambda|
  double max_boundary = 0.0;          // largest edge ratio seen in the chain
  std::vector<cplx> lambdas;
  std::vector<double> residuals;
};

/// Applies U = K / (2 pi sqrt(hbar)) five times to each sample (the first
/// time on the symbolic vector, then on the grid) and fits U^5 v = lambda v.
PentagonResult pentagon_check(std::span<const wspace::WVector> samples, const KOperator& K,
                              const PentagonOptions& opt = {});

}  // namespace qpent::kop
