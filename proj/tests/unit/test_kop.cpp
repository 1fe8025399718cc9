#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "qpent/kop.hpp"

using namespace qpent;
using namespace qpent::kop;

namespace {

constexpr double pi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

KConfig config(double hbar) {
  KConfig c;
  c.hbar = hbar;
  return c;
}

// Independent evaluation of K w(z) by composite Simpson on [-12, 12], calling
// Phi directly at every node.
cplx k_oracle(const wspace::WVector& w, cplx z, double hbar) {
  const specfun::PhiParams P(hbar);
  const int n = 4800;
  const double h = 24.0 / n;
  cplx s{0.0, 0.0};
  for (int k = 0; k <= n; ++k) {
    const double x = -12.0 + k * h;
    const cplx f = wspace::evaluate(w, cplx{x, 0.0}) * specfun::phi_integral(x, P) *
                   std::exp(-x * z / (2.0 * pi * I * hbar));
    s += ((k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0)) * f;
  }
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("normalization") {
  const KOperator K(config(0.5));
  CHECK(K.scale() == doctest::Approx(1.0 / (2.0 * pi * std::sqrt(0.5))).epsilon(1e-15));
  KConfig raw = config(0.5);
  raw.rescale = false;
  CHECK(KOperator(raw).scale() == 1.0);
  KConfig bad = config(-1.0);
  CHECK_THROWS_AS(KOperator{bad}, Error);
}

TEST_CASE("K on W against direct quadrature") {
  const double hbar = 0.8;
  KConfig raw = config(hbar);
  raw.rescale = false;
  const KOperator K(raw);
  const wspace::WVector w = wspace::WVector::gaussian(1.0, {0.3, 0.2}, {1.0, {0.0, 0.5}});
  const std::vector<cplx> z{{0.0, 0.0}, {2.0, 0.0}, {-3.0, 0.0}, {1.0, 0.5}};
  const auto kw = K.apply_to_W(w, z);
  for (std::size_t j = 0; j < z.size(); ++j) {
    CAPTURE(z[j]);
    CHECK(std::abs(kw[j] - k_oracle(w, z[j], hbar)) < 1e-9 * std::max(1.0, std::abs(kw[j])));
  }
}

TEST_CASE("off-axis terms integrate along a shifted line") {
  // Centre 1.5 i lies off the real axis, so apply_to_W moves the contour;
  // the real-line oracle is still well conditioned this close to the axis.
  const double hbar = 1.1;
  KConfig raw = config(hbar);
  raw.rescale = false;
  const KOperator K(raw);
  const wspace::WVector w = wspace::WVector::gaussian(1.0, {0.1, 1.5}, {1.0, {0.2, -0.3}});
  const std::vector<cplx> z{{0.0, 0.0}, {1.5, 0.0}, {-2.0, 0.3}};
  const auto kw = K.apply_to_W(w, z);
  for (std::size_t j = 0; j < z.size(); ++j) {
    CAPTURE(z[j]);
    CHECK(std::abs(kw[j] - k_oracle(w, z[j], hbar)) < 1e-9 * std::max(1.0, std::abs(kw[j])));
  }
  // A far off-axis term, as produced by X w, agrees with the identity it
  // enters: K X^{-1} w = Y^{-1} (1 + q X^{-1}) K w at hbar > 1.
  CHECK(intertwine_basic(3, KOperator(config(1.3)), wspace::WVector::gaussian(1.5, 0.0, {0.0, 0.0, 1.0})) < 1e-9);
}

TEST_CASE("linearity and zero input") {
  const KOperator K(config(1.0));
  const wspace::WVector u = wspace::WVector::gaussian(1.0), v = wspace::WVector::gaussian(0.7, 0.4);
  const std::vector<cplx> z{{-1.0, 0.0}, {0.5, 0.0}, {3.0, 0.0}};
  const auto ku = K.apply_to_W(u, z), kv = K.apply_to_W(v, z);
  const auto ks = K.apply_to_W(u + cplx{2.0, -1.0} * v, z);
  for (std::size_t j = 0; j < z.size(); ++j)
    CHECK(std::abs(ks[j] - ku[j] - cplx{2.0, -1.0} * kv[j]) < 1e-9 * std::abs(ks[j]));
  for (const cplx& x : K.apply_to_W(wspace::WVector(), z)) CHECK(x == cplx{0.0, 0.0});
}

TEST_CASE("grid transforms") {
  const KOperator K(config(1.0));
  const GridSpec grid{40.0, 2048};
  const wspace::WVector w = wspace::WVector::gaussian(1.0, 0.3);
  const GridFunction f = GridFunction::sample(w, grid);
  const GridFunction g = K.apply_grid(f);
  std::vector<cplx> z;
  for (std::size_t k = 0; k < grid.size; ++k) z.push_back(grid.point(k));
  const auto exact = K.apply_to_W(w, z);
  double err = 0.0, peak = 0.0;
  for (std::size_t k = 0; k < grid.size; ++k) {
    err = std::max(err, std::abs(g.values[k] - exact[k]));
    peak = std::max(peak, std::abs(g.values[k]));
  }
  CHECK(err < 1e-10 * peak);

#ifdef QPENT_HAVE_FFTW
  const std::vector<GridFunction> fs{f};
  const auto direct = K.apply_grid_direct(fs);
  const auto fast = K.apply_grid_fast(fs);
  double diff = 0.0;
  for (std::size_t k = 0; k < grid.size; ++k) diff = std::max(diff, std::abs(direct[0].values[k] - fast[0].values[k]));
  CHECK(diff < 1e-11 * peak);
#endif

  // An undecayed input is rejected.
  GridFunction flat{grid, std::vector<cplx>(grid.size, cplx{1.0, 0.0})};
  CHECK_THROWS_AS(K.apply_grid(flat), BoundaryLeak);
  CHECK(boundary_ratio(flat) == 1.0);
}

TEST_CASE("unitarity") {
  std::mt19937_64 rng(41);
  for (double hbar : {0.6, 1.4}) {
    const KOperator K(config(hbar));
    for (int t = 0; t < 2; ++t) {
      const wspace::WVector v = wspace::random_wvector(rng);
      CHECK(std::abs(unitarity_ratio(K, v) - 1.0) < 1e-6);
    }
  }
  const KOperator K(config(1.0));
  CHECK_THROWS_AS(unitarity_ratio(K, wspace::WVector()), DegenerateSample);
  const GridFunction f = GridFunction::sample(wspace::WVector::gaussian(1.0), {40.0, 2048});
  CHECK(std::abs(grid_unitarity_ratio(K, f) - 1.0) < 1e-9);
}

TEST_CASE("basic intertwining identities") {
  const wspace::WVector w = wspace::WVector::gaussian(1.0, {0.2, -0.1}, {1.0, 0.3});
  for (double hbar : {0.5, 1.3}) {
    const KOperator K(config(hbar));
    for (int idx = 1; idx <= 3; ++idx) {
      CAPTURE(hbar);
      CAPTURE(idx);
      CHECK(intertwine_basic(idx, K, w) < 1e-6);
    }
  }
  CHECK_THROWS_AS(intertwine_basic(4, KOperator(config(1.0)), w), Error);
}

TEST_CASE("general intertwining") {
  using qtorus::ModularDoubleElement;
  using qtorus::QT2Element;
  const KOperator K(config(0.9));
  const wspace::WVector w = wspace::WVector::gaussian(1.0, 0.1);
  CHECK(intertwine_general({ModularDoubleElement{}}, K, w) < 1e-12);
  CHECK(intertwine_general({{QT2Element::monomial(0, 1), QT2Element::scalar(1)}}, K, w) < 1e-6);
  CHECK(intertwine_general({{QT2Element::scalar(1), QT2Element::monomial(0, 1)}}, K, w) < 1e-6);
  CHECK(intertwine_general({{qtorus::canonical_IAq({1, 0}), QT2Element::scalar(1)}}, K, w) < 1e-6);
  // Y^{-1} has no Laurent image under gamma.
  CHECK_THROWS_AS(intertwine_general({{QT2Element::monomial(0, -1), QT2Element::scalar(1)}}, K, w), NonMember);
}

TEST_CASE("fifth power is a scalar") {
  const KOperator K(config(1.0));
  const std::vector<wspace::WVector> samples{wspace::WVector::gaussian(1.0), wspace::WVector::gaussian(0.8, 0.5),
                                             wspace::hermite_type(1)};
  PentagonOptions opt;
  opt.grid = {40.0, 2048};
  const PentagonResult r = pentagon_check(samples, K, opt);
  CHECK(r.lambdas.size() == 3);
  CHECK(r.abs_lambda_deviation < 1e-6);
  CHECK(r.max_residual < 1e-4);
  CHECK(r.spread < 1e-6);
  CHECK_THROWS_AS(pentagon_check(std::span(samples).first(2), K, opt), Error);
}
