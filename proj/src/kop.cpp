#include "qpent/kop.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#ifdef QPENT_HAVE_FFTW
#include <fftw3.h>
#endif

#include "qpent/parallel.hpp"

namespace qpent::kop {

namespace {

constexpr double pi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

// Dyadic lattice of the W quadrature: level l has spacing kBaseStep / 2^l and
// Phi values are cached under the key x * 2^kKeyBits.
constexpr double kBaseStep = 0.125;
constexpr int kKeyBits = 20;
constexpr int kMaxLevel = 16;
constexpr int kReanchor = 32;
// Off-axis integration lines are Im x = line / kLineSteps.
constexpr double kLineSteps = 2.0;
// Terms whose centre is at most this far off the real axis stay on it.
constexpr double kOffAxisThreshold = 1.0;
// Distance kept between an integration line and the edge of the strip.
constexpr double kStripMargin = 0.75;

std::int64_t key_of(double x) { return std::llround(std::ldexp(x, kKeyBits)); }

bool is_lattice_point(double x) {
  const double s = std::ldexp(x, kKeyBits);
  return std::abs(s) < 9e15 && s == std::nearbyint(s);
}

}  // namespace

void GridSpec::validate() const {
  if (!(half_width > 0.0) || size < 2) throw Error("GridSpec needs L > 0 and N >= 2");
}

GridFunction GridFunction::sample(const wspace::WVector& v, const GridSpec& spec) {
  spec.validate();
  GridFunction f{spec, std::vector<cplx>(spec.size)};
  for (std::size_t k = 0; k < spec.size; ++k) f.values[k] = wspace::evaluate(v, cplx{spec.point(k), 0.0});
  return f;
}

double GridFunction::norm() const {
  double s = 0.0;
  for (const cplx& v : values) s += std::norm(v);
  return std::sqrt(s * spec.spacing());
}

cplx grid_inner(const GridFunction& f, const GridFunction& g) {
  if (f.values.size() != g.values.size()) throw Error("grid_inner: grids differ");
  cplx s{0.0, 0.0};
  for (std::size_t k = 0; k < f.values.size(); ++k) s += f.values[k] * std::conj(g.values[k]);
  return s * f.spec.spacing();
}

double boundary_ratio(const GridFunction& f, std::size_t band) {
  double peak = 0.0, edge = 0.0;
  const std::size_t n = f.values.size();
  band = std::min(band, n / 2);
  for (std::size_t k = 0; k < n; ++k) {
    const double a = std::abs(f.values[k]);
    peak = std::max(peak, a);
    if (k < band || k + band >= n) edge = std::max(edge, a);
  }
  return peak == 0.0 ? 0.0 : edge / peak;
}

void KConfig::validate() const {
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw Error("KConfig.hbar must be a positive real");
  if (!(boundary_tol > 0.0)) throw Error("KConfig.boundary_tol must be positive");
  quad.validate(specfun::PhiParams(hbar));
}

KOperator::KOperator(KConfig cfg) : cfg_(cfg), params_(cfg.hbar) { cfg_.validate(); }

double KOperator::scale() const { return cfg_.rescale ? 1.0 / (2.0 * pi * std::sqrt(cfg_.hbar)) : 1.0; }

cplx KOperator::phi_at_key(std::int64_t key) const {
  {
    std::lock_guard lock(mu_);
    auto it = lattice_.find(key);
    if (it != lattice_.end()) return it->second;
  }
  const cplx v = specfun::phi_integral(std::ldexp(static_cast<double>(key), -kKeyBits), params_, cfg_.quad);
  std::lock_guard lock(mu_);
  lattice_.emplace(key, v);
  return v;
}

cplx KOperator::phi_at_key(std::int64_t key, int line) const {
  if (line == 0) return phi_at_key(key);
  {
    std::lock_guard lock(mu_);
    const auto& m = offset_lattice_[line];
    auto it = m.find(key);
    if (it != m.end()) return it->second;
  }
  const cplx x{std::ldexp(static_cast<double>(key), -kKeyBits), line / kLineSteps};
  const cplx v = specfun::phi_integral(x, params_, cfg_.quad);
  std::lock_guard lock(mu_);
  offset_lattice_[line].emplace(key, v);
  return v;
}

const std::vector<cplx>& KOperator::phi_table(const GridSpec& spec) const {
  spec.validate();
  {
    std::lock_guard lock(mu_);
    for (const auto& [s, t] : tables_)
      if (s.half_width == spec.half_width && s.size == spec.size) return *t;
  }
  auto table = std::make_shared<std::vector<cplx>>(spec.size);
  parallel_for(spec.size, [&](std::size_t k) {
    const double x = spec.point(k);
    (*table)[k] = is_lattice_point(x) ? phi_at_key(key_of(x)) : specfun::phi_integral(x, params_, cfg_.quad);
  });
  std::lock_guard lock(mu_);
  tables_.emplace_back(spec, table);
  return *table;
}

// ------------------------------------------------------------- K on W

namespace {

// Bounding window of |v(x)| e^{-x t/(2 pi hbar)} outside which every term is
// below e^{-depth} of its own peak.
std::pair<double, double> integration_window(const wspace::WVector& v, double t, double hbar, double depth) {
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (const auto& term : v.terms()) {
    const double slope = term.b.real() - t / (2.0 * pi * hbar);
    const double centre = slope / term.a;
    const double deg = static_cast<double>(term.P.size() - 1);
    double R = std::sqrt(2.0 * depth / term.a);
    for (int it = 0; it < 2; ++it) R = std::sqrt(2.0 * (depth + deg * std::log(1.0 + std::abs(centre) + R)) / term.a);
    if (first || centre - R < lo) lo = centre - R;
    if (first || centre + R > hi) hi = centre + R;
    first = false;
  }
  return {std::floor(lo / kBaseStep) * kBaseStep, std::ceil(hi / kBaseStep) * kBaseStep};
}

// Values g = v Phi on the nodes of each lattice level over a fixed window,
// computed the first time a level is needed.
class LatticeSamples {
 public:
  LatticeSamples(const KOperator& K, const wspace::WVector& v, double lo, double hi, int line = 0)
      : K_(K),
        v_(v),
        lo_(lo),
        line_(line),
        base_count_(static_cast<std::size_t>(std::llround((hi - lo) / kBaseStep))) {}

  double lo() const { return lo_; }
  std::size_t base_count() const { return base_count_; }

  // Level 0: nodes lo + k h0, k = 0..base_count. Level l > 0: the new nodes
  // lo + (2k+1) h0/2^l, k = 0..base_count 2^{l-1} - 1.
  const std::vector<cplx>& level(int l) {
    std::lock_guard lock(mu_);
    while (static_cast<int>(levels_.size()) <= l) {
      const int L = static_cast<int>(levels_.size());
      const double h = std::ldexp(kBaseStep, -L);
      const std::size_t n = L == 0 ? base_count_ + 1 : base_count_ << (L - 1);
      std::vector<cplx> g(n);
      parallel_for(n, [&](std::size_t k) {
        const double x = L == 0 ? lo_ + static_cast<double>(k) * h : lo_ + static_cast<double>(2 * k + 1) * h;
        g[k] = wspace::evaluate(v_, cplx{x, line_ / kLineSteps}) * K_.phi_at_key(key_of(x), line_);
      });
      levels_.push_back(std::move(g));
    }
    return levels_[static_cast<std::size_t>(l)];
  }

 private:
  const KOperator& K_;
  const wspace::WVector& v_;
  double lo_;
  int line_;
  std::size_t base_count_;
  std::mutex mu_;
  std::deque<std::vector<cplx>> levels_;  // stable references while growing
};

struct Partial {
  cplx sum{0.0, 0.0};
  double abs_sum = 0.0;
};

// sum over nodes x = x0 + k step, k in [k0, k1), of g[k] e^{i x z c}.
Partial kernel_sum(const std::vector<cplx>& g, std::size_t k0, std::size_t k1, double x0, double step, cplx zc) {
  Partial p;
  if (k1 <= k0) return p;
  const cplx w = std::exp(I * step * zc);
  cplx e{0.0, 0.0};
  for (std::size_t k = k0; k < k1; ++k) {
    if ((k - k0) % kReanchor == 0) e = std::exp(I * (x0 + static_cast<double>(k) * step) * zc);
    const cplx term = g[k] * e;
    p.sum += term;
    p.abs_sum += std::abs(term);
    e *= w;
  }
  return p;
}

// Unscaled K v(z) with the x-integral taken along Im x = line / kLineSteps.
std::vector<cplx> integrate_on_line(const KOperator& K, const wspace::WVector& v, std::span<const cplx> z, int line) {
  std::vector<cplx> out(z.size(), cplx{0.0, 0.0});
  if (v.is_zero() || z.empty()) return out;
  const double hbar = K.config().hbar;
  const double c = 1.0 / (2.0 * pi * hbar);
  const double tol = K.config().quad.rel_tol;
  // |Phi(t + i y)| grows like e^{|t y| c}; widening the kernel slope by |y|
  // keeps the windows conservative.
  const double y = line / kLineSteps;
  const double depth = std::log(1.0 / tol) + 30.0;

  double t_min = z[0].imag(), t_max = z[0].imag();
  for (const cplx& s : z) {
    t_min = std::min(t_min, s.imag());
    t_max = std::max(t_max, s.imag());
  }
  const auto w1 = integration_window(v, t_min - std::abs(y), hbar, depth);
  const auto w2 = integration_window(v, t_max + std::abs(y), hbar, depth);
  const double LO = std::min(w1.first, w2.first), HI = std::max(w1.second, w2.second);
  LatticeSamples samples(K, v, LO, HI, line);

  double max_im_b = 0.0;
  for (const auto& term : v.terms())
    max_im_b = std::max(max_im_b, std::abs(term.b.imag()) + term.a * std::abs(y));

  parallel_for(z.size(), [&](std::size_t j) {
    const cplx zj = z[j];
    const cplx zc = zj * c;
    const auto lo_w = integration_window(v, zj.imag() - std::abs(y), hbar, depth);
    const auto hi_w = integration_window(v, zj.imag() + std::abs(y), hbar, depth);
    const double lo = std::min(lo_w.first, hi_w.first), hi = std::max(lo_w.second, hi_w.second);
    const std::size_t i0 = static_cast<std::size_t>(std::llround((std::max(lo, LO) - LO) / kBaseStep));
    const std::size_t i1 = static_cast<std::size_t>(std::llround((std::min(hi, HI) - LO) / kBaseStep));
    const double freq = std::abs(zj.real()) * c + max_im_b + std::max(std::abs(LO), std::abs(HI)) * c + 1.0;
    const int l_min = std::max(0, static_cast<int>(std::ceil(std::log2(kBaseStep * freq))));

    // Trapezoid at level l_min over [lo, hi], then refine by halving.
    cplx T{0.0, 0.0};
    double S = 0.0;
    {
      Partial acc;
      const Partial base = kernel_sum(samples.level(0), i0, i1 + 1, LO, kBaseStep, zc);
      acc.sum += base.sum;
      acc.abs_sum += base.abs_sum;
      for (int l = 1; l <= l_min; ++l) {
        const std::size_t m = std::size_t{1} << (l - 1);
        const Partial p = kernel_sum(samples.level(l), i0 * m, i1 * m, LO + std::ldexp(kBaseStep, -l),
                                     std::ldexp(kBaseStep, 1 - l), zc);
        acc.sum += p.sum;
        acc.abs_sum += p.abs_sum;
      }
      const double h = std::ldexp(kBaseStep, -l_min);
      // e^{i x zc} at x = t + i y is e^{i t zc} e^{-y zc}.
      const cplx line_factor = std::exp(-y * zc);
      T = acc.sum * h * line_factor;
      S = acc.abs_sum * h * std::abs(line_factor);
    }
    for (int l = l_min + 1;; ++l) {
      if (l > kMaxLevel)
        throw QuadratureNonConvergence("K integral did not converge by step halving at z = (" +
                                       std::to_string(zj.real()) + ", " + std::to_string(zj.imag()) + ")");
      const std::size_t m = std::size_t{1} << (l - 1);
      const double h = std::ldexp(kBaseStep, -l);
      const Partial p = kernel_sum(samples.level(l), i0 * m, i1 * m, LO + h, 2.0 * h, zc);
      const cplx line_factor = std::exp(-y * zc);
      const cplx T_new = 0.5 * T + p.sum * h * line_factor;
      const double S_new = 0.5 * S + p.abs_sum * h * std::abs(line_factor);
      const bool done = std::abs(T_new - T) <= tol * S_new;
      T = T_new;
      S = S_new;
      if (done) break;
    }
    out[j] = T;
  });
  return out;
}

}  // namespace

std::vector<cplx> KOperator::apply_to_W(const wspace::WVector& v, std::span<const cplx> z) const {
  std::vector<cplx> out(z.size(), cplx{0.0, 0.0});
  if (v.is_zero() || z.empty()) return out;
  const double limit = params_.strip_half_width() - kStripMargin;
  std::map<int, std::vector<wspace::GaussianTerm>> groups;
  for (const auto& term : v.terms()) {
    const double centre = term.b.imag() / term.a;
    int line = 0;
    if (std::abs(centre) > kOffAxisThreshold && limit > 0.0)
      line = static_cast<int>(std::trunc(std::clamp(centre, -limit, limit) * kLineSteps));
    groups[line].push_back(term);
  }
  for (auto& [line, terms] : groups) {
    const auto part = integrate_on_line(*this, wspace::WVector(std::move(terms)), z, line);
    for (std::size_t j = 0; j < z.size(); ++j) out[j] += part[j] * scale();
  }
  return out;
}


// ------------------------------------------------------------- K on grids

std::vector<GridFunction> KOperator::apply_grid(std::span<const GridFunction> fs, double boundary_tol) const {
  if (fs.empty()) return {};
  for (const auto& f : fs) {
    if (f.spec.half_width != fs[0].spec.half_width || f.spec.size != fs[0].spec.size)
      throw Error("apply_grid: batched inputs must share a grid");
    if (f.values.size() != f.spec.size) throw Error("apply_grid: value count does not match the grid");
    const double r = boundary_ratio(f);
    if (r > boundary_tol)
      throw BoundaryLeak("grid function is not decayed at the boundary: edge/peak = " + std::to_string(r));
  }
  return cfg_.fast_path ? apply_grid_fast(fs) : apply_grid_direct(fs);
}

GridFunction KOperator::apply_grid(const GridFunction& f) const {
  return apply_grid(std::span<const GridFunction>(&f, 1), cfg_.boundary_tol).front();
}

std::vector<GridFunction> KOperator::apply_grid_direct(std::span<const GridFunction> fs) const {
  if (fs.empty()) return {};
  const GridSpec spec = fs[0].spec;
  const std::size_t N = spec.size, S = fs.size();
  const std::vector<cplx>& phi = phi_table(spec);
  const double c = 1.0 / (2.0 * pi * cfg_.hbar);
  const double dx = spec.spacing();
  // g[k * S + s] = f_s(x_k) Phi(x_k): sample-major inner loop.
  std::vector<cplx> g(N * S);
  for (std::size_t k = 0; k < N; ++k)
    for (std::size_t s = 0; s < S; ++s) g[k * S + s] = fs[s].values[k] * phi[k];

  std::vector<GridFunction> out(S, GridFunction{spec, std::vector<cplx>(N)});
  const double factor = dx * scale();
  parallel_for(N, [&](std::size_t j) {
    const double zj = spec.point(j);
    const cplx w = std::polar(1.0, dx * zj * c);
    std::vector<cplx> acc(S, cplx{0.0, 0.0});
    cplx e{0.0, 0.0};
    for (std::size_t k = 0; k < N; ++k) {
      if (k % kReanchor == 0) e = std::polar(1.0, spec.point(k) * zj * c);
      const cplx* gk = &g[k * S];
      for (std::size_t s = 0; s < S; ++s) acc[s] += gk[s] * e;
      e *= w;
    }
    for (std::size_t s = 0; s < S; ++s) out[s].values[j] = acc[s] * factor;
  });
  return out;
}

std::vector<GridFunction> KOperator::apply_grid_fast(std::span<const GridFunction> fs) const {
#ifdef QPENT_HAVE_FFTW
  if (fs.empty()) return {};
  const GridSpec spec = fs[0].spec;
  const std::size_t N = spec.size;
  std::size_t M = 1;
  while (M < 2 * N) M <<= 1;
  const std::vector<cplx>& phi = phi_table(spec);
  const double c = 1.0 / (2.0 * pi * cfg_.hbar);
  const double L = spec.half_width, dx = spec.spacing();

  // x_k z_j = L^2 - L dx (j + k) + dx^2 (j^2 + k^2 - (j - k)^2) / 2
  auto chirp = [&](double k) { return std::polar(1.0, c * (-L * dx * k + 0.5 * dx * dx * k * k)); };

  static std::mutex plan_mu;  // FFTW planning is not thread-safe
  std::vector<cplx> bufA(M), bufB(M);
  fftw_plan fwdA, fwdB, inv;
  {
    std::lock_guard lock(plan_mu);
    auto* a = reinterpret_cast<fftw_complex*>(bufA.data());
    auto* b = reinterpret_cast<fftw_complex*>(bufB.data());
    fwdA = fftw_plan_dft_1d(static_cast<int>(M), a, a, FFTW_FORWARD, FFTW_ESTIMATE);
    fwdB = fftw_plan_dft_1d(static_cast<int>(M), b, b, FFTW_FORWARD, FFTW_ESTIMATE);
    inv = fftw_plan_dft_1d(static_cast<int>(M), a, a, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  std::fill(bufB.begin(), bufB.end(), cplx{0.0, 0.0});
  for (std::size_t m = 0; m < N; ++m) {
    const cplx b = std::polar(1.0, -0.5 * c * dx * dx * static_cast<double>(m) * static_cast<double>(m));
    bufB[m] = b;
    if (m > 0) bufB[M - m] = b;
  }
  fftw_execute(fwdB);
  const std::vector<cplx> B = bufB;

  std::vector<GridFunction> out;
  out.reserve(fs.size());
  const double factor = dx * scale() / static_cast<double>(M);
  for (const auto& f : fs) {
    std::fill(bufA.begin(), bufA.end(), cplx{0.0, 0.0});
    for (std::size_t k = 0; k < N; ++k) bufA[k] = f.values[k] * phi[k] * chirp(static_cast<double>(k));
    fftw_execute(fwdA);
    for (std::size_t m = 0; m < M; ++m) bufA[m] *= B[m];
    fftw_execute(inv);
    GridFunction g{spec, std::vector<cplx>(N)};
    const cplx global = std::polar(1.0, c * L * L);
    for (std::size_t j = 0; j < N; ++j) g.values[j] = bufA[j] * chirp(static_cast<double>(j)) * global * factor;
    out.push_back(std::move(g));
  }
  {
    std::lock_guard lock(plan_mu);
    fftw_destroy_plan(fwdA);
    fftw_destroy_plan(fwdB);
    fftw_destroy_plan(inv);
  }
  return out;
#else
  (void)fs;
  throw Error("this build has no FFTW; the fast grid path is unavailable");
#endif
}

std::vector<cplx> apply_K_to_W(const wspace::WVector& v, std::span<const cplx> z, const KConfig& cfg) {
  return KOperator(cfg).apply_to_W(v, z);
}

GridFunction apply_K_grid(const GridFunction& f, const KConfig& cfg) { return KOperator(cfg).apply_grid(f); }

// ------------------------------------------------------------- checks

namespace {

double l2_on(const std::vector<cplx>& values, double h) {
  double s = 0.0;
  for (const cplx& v : values) s += std::norm(v);
  return std::sqrt(s * h);
}

std::vector<cplx> grid_points(const GridSpec& grid, cplx offset = 0.0) {
  std::vector<cplx> z(grid.size);
  for (std::size_t j = 0; j < grid.size; ++j) z[j] = grid.point(j) + offset;
  return z;
}

double relative_residual(const std::vector<cplx>& lhs, const std::vector<cplx>& rhs) {
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < lhs.size(); ++j) {
    num += std::norm(lhs[j] - rhs[j]);
    den += std::norm(rhs[j]);
  }
  return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

}  // namespace

double unitarity_ratio(const KOperator& K, const wspace::WVector& v) {
  const double vn = wspace::norm(v);
  if (!(vn > 1e-10)) throw DegenerateSample("unitarity_ratio: ||v|| < 1e-10");
  const double unit = 1.0 / (2.0 * pi * std::sqrt(K.config().hbar) * K.scale());
  // Widen the window until the edges are negligible, then halve the step
  // until the trapezoid norm settles.
  double Z = 16.0, h = 0.25;
  for (;;) {
    const std::vector<cplx> edge{cplx{-Z, 0.0}, cplx{Z, 0.0}};
    std::vector<cplx> centre(33);
    for (int i = 0; i <= 32; ++i) centre[std::size_t(i)] = -Z + 2.0 * Z * i / 32.0;
    const auto e = K.apply_to_W(v, edge);
    const auto m = K.apply_to_W(v, centre);
    double peak = 0.0;
    for (const cplx& x : m) peak = std::max(peak, std::abs(x));
    if (std::max(std::abs(e[0]), std::abs(e[1])) < 1e-9 * peak) break;
    Z *= 1.5;
    if (Z > 1e4) throw NumericalError("unitarity_ratio: image does not decay");
  }
  double prev = -1.0;
  for (int it = 0; it < 8; ++it, h *= 0.5) {
    const std::size_t n = static_cast<std::size_t>(std::llround(2.0 * Z / h)) + 1;
    std::vector<cplx> z(n);
    for (std::size_t j = 0; j < n; ++j) z[j] = -Z + static_cast<double>(j) * h;
    const double nk = l2_on(K.apply_to_W(v, z), h) * unit;
    if (prev >= 0.0 && std::abs(nk - prev) <= 1e-10 * nk) return nk / vn;
    prev = nk;
  }
  return prev / vn;
}

double grid_unitarity_ratio(const KOperator& K, const GridFunction& f) {
  const double fn = f.norm();
  if (!(fn > 1e-10)) throw DegenerateSample("grid_unitarity_ratio: ||f|| < 1e-10");
  const double unit = 1.0 / (2.0 * pi * std::sqrt(K.config().hbar) * K.scale());
  return K.apply_grid(f).norm() * unit / fn;
}

double intertwine_basic(int idx, const KOperator& K, const wspace::WVector& w, const GridSpec& grid) {
  grid.validate();
  const double hbar = K.config().hbar;
  const cplx q = std::exp(I * pi * hbar);
  const cplx step = 2.0 * pi * I * hbar;
  const std::vector<cplx> z = grid_points(grid);
  std::vector<cplx> lhs, rhs(z.size());
  switch (idx) {
    case 1: {
      // K (1 + qY) X w = Y K w
      const wspace::WVector xw = wspace::op_X(w, hbar);
      lhs = K.apply_to_W(xw + q * wspace::op_Y(xw), z);
      const auto kw = K.apply_to_W(w, z);
      for (std::size_t j = 0; j < z.size(); ++j) rhs[j] = std::exp(z[j]) * kw[j];
      break;
    }
    case 2: {
      // K Y^{-1} w = X K w
      lhs = K.apply_to_W(wspace::op_Y(w, -1), z);
      rhs = K.apply_to_W(w, grid_points(grid, step));
      break;
    }
    case 3: {
      // K X^{-1} w = Y^{-1} (1 + q X^{-1}) K w
      lhs = K.apply_to_W(wspace::op_X(w, hbar, -1), z);
      const auto kw = K.apply_to_W(w, z);
      const auto kw_shift = K.apply_to_W(w, grid_points(grid, -step));
      for (std::size_t j = 0; j < z.size(); ++j) rhs[j] = std::exp(-z[j]) * (kw[j] + q * kw_shift[j]);
      break;
    }
    default:
      throw Error("intertwine_basic: idx must be 1, 2 or 3");
  }
  return relative_residual(lhs, rhs);
}

double intertwine_general(const qtorus::ModularSum& A, const KOperator& K, const wspace::WVector& w,
                          const GridSpec& grid) {
  grid.validate();
  const double hbar = K.config().hbar;
  const cplx q = std::exp(I * pi * hbar), qv = std::exp(I * pi / hbar);
  const std::vector<cplx> z = grid_points(grid);

  const qtorus::ModularSum gA = qtorus::apply_gamma_modular(A);
  const std::vector<cplx> lhs = K.apply_to_W(wspace::apply_modular(gA, w, hbar), z);

  // A^ acts on F = K w: X^m Y^n (x) Xv^k Yv^l maps F(z) to
  // e^{(n + l/hbar)(z + s)} F(z + s) with s = 2 pi i (hbar m + k).
  std::vector<std::pair<std::pair<int, int>, std::vector<cplx>>> shifted;  // (m, k) -> K w(z + s)
  auto kw_at = [&](int m, int k) -> const std::vector<cplx>& {
    for (const auto& [key, vals] : shifted)
      if (key == std::pair{m, k}) return vals;
    const cplx s = 2.0 * pi * I * (hbar * m + k);
    shifted.emplace_back(std::pair{m, k}, K.apply_to_W(w, grid_points(grid, s)));
    return shifted.back().second;
  };
  std::vector<cplx> rhs(z.size(), cplx{0.0, 0.0});
  for (const auto& t : A)
    for (const auto& [el, cl] : t.left.terms())
      for (const auto& [er, cr] : t.right.terms()) {
        const cplx coeff = cl.evaluate(q) * cr.evaluate(qv);
        const cplx s = 2.0 * pi * I * (hbar * el.first + er.first);
        const double mu = el.second + er.second / hbar;
        const auto& F = kw_at(el.first, er.first);
        for (std::size_t j = 0; j < z.size(); ++j) rhs[j] += coeff * std::exp(mu * (z[j] + s)) * F[j];
      }
  return relative_residual(lhs, rhs);
}

PentagonResult pentagon_check(std::span<const wspace::WVector> samples, const KOperator& K,
                              const PentagonOptions& opt) {
  if (samples.size() < 3) throw Error("pentagon_check needs at least 3 samples");
  const GridSpec grid = opt.grid;
  grid.validate();
  const double unit = 1.0 / (2.0 * pi * std::sqrt(K.config().hbar) * K.scale());

  std::vector<GridFunction> v0, cur;
  for (const auto& v : samples) {
    if (!(wspace::norm(v) > 1e-10)) throw DegenerateSample("pentagon_check: sample with ||v|| < 1e-10");
    v0.push_back(GridFunction::sample(v, grid));
  }
  const std::vector<cplx> z = grid_points(grid);
  for (const auto& v : samples) {
    GridFunction f{grid, K.apply_to_W(v, z)};
    for (auto& x : f.values) x *= unit;
    cur.push_back(std::move(f));
  }
  PentagonResult res;
  for (int step = 1; step < 5; ++step) {
    for (const auto& f : cur) res.max_boundary = std::max(res.max_boundary, boundary_ratio(f));
    cur = K.apply_grid(cur, opt.chain_boundary_tol);
    for (auto& f : cur)
      for (auto& x : f.values) x *= unit;
  }
  cplx sum{0.0, 0.0};
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const cplx vv = grid_inner(v0[i], v0[i]);
    const cplx lam = grid_inner(cur[i], v0[i]) / vv;
    GridFunction r{grid, cur[i].values};
    for (std::size_t k = 0; k < r.values.size(); ++k) r.values[k] -= lam * v0[i].values[k];
    res.lambdas.push_back(lam);
    res.residuals.push_back(r.norm() / v0[i].norm());
    sum += lam;
  }
  res.lambda = sum / static_cast<double>(samples.size());
  res.abs_lambda_deviation = std::abs(std::abs(res.lambda) - 1.0);
  for (double r : res.residuals) res.max_residual = std::max(res.max_residual, r);
  for (const cplx& a : res.lambdas)
    for (const cplx& b : res.lambdas) res.spread = std::max(res.spread, std::abs(a - b) / std::abs(res.lambda));
  return res;
}

}  // namespace qpent::kop
