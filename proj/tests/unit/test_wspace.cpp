#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "qpent/wspace.hpp"

using namespace qpent;
using namespace qpent::wspace;
using Kind = WordFactor::Kind;

namespace {

constexpr double pi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};
const double hbar = 0.7;
const cplx q = std::exp(I * pi * hbar);
const cplx qv = std::exp(I * pi / hbar);

WVector g0() { return WVector::gaussian(1.0); }

// Trapezoid quadrature of u conj(w) on [-30, 30]: an independent check of
// the closed-form inner product.
cplx inner_by_quadrature(const WVector& u, const WVector& w) {
  const int n = 6000;
  const double h = 60.0 / n;
  cplx s{0.0, 0.0};
  for (int k = 0; k <= n; ++k) {
    const double x = -30.0 + k * h;
    s += evaluate(u, cplx{x, 0.0}) * std::conj(evaluate(w, cplx{x, 0.0}));
  }
  return s * h;
}

}  // namespace

TEST_CASE("closed-form action of the generators") {
  const WVector y = op_Y(g0());
  REQUIRE(y.terms().size() == 1);
  CHECK(y.terms()[0].b == cplx{1.0, 0.0});

  const WVector x = op_X(g0(), hbar);
  REQUIRE(x.terms().size() == 1);
  CHECK(x.terms()[0].a == 1.0);
  CHECK(std::abs(x.terms()[0].b - (-2.0 * pi * I * hbar)) < 1e-15);
  CHECK(std::abs(x.terms()[0].P[0] - std::exp(2.0 * pi * pi * hbar * hbar)) < 1e-12 * std::exp(2.0 * pi * pi * hbar * hbar));

  // Definition of the shift, checked by evaluation.
  const WVector v = WVector::gaussian(0.8, {0.2, -0.1}, {1.0, {0.0, 2.0}, 0.5});
  CHECK(std::abs(evaluate(op_X(v, hbar), cplx{1.0, 0.0}) - evaluate(v, 1.0 + 2.0 * pi * I * hbar)) <
        1e-12 * std::abs(evaluate(v, 1.0 + 2.0 * pi * I * hbar)));
  CHECK(std::abs(evaluate(op_Yvee(v, hbar), 0.3) - std::exp(0.3 / hbar) * evaluate(v, 0.3)) < 1e-14);
}

TEST_CASE("Weyl relations and cross-commutation") {
  CHECK(approx_equal(op_X(op_Y(g0()), hbar), (q * q) * op_Y(op_X(g0(), hbar))));

  std::mt19937_64 rng(2024);
  for (int t = 0; t < 20; ++t) {
    const WVector v = random_wvector(rng);
    REQUIRE((op_X(op_Y(v), hbar) - (q * q) * op_Y(op_X(v, hbar))).is_zero());
    REQUIRE((op_Xvee(op_Yvee(v, hbar)) - (qv * qv) * op_Yvee(op_Xvee(v), hbar)).is_zero());
    REQUIRE((op_X(op_Xvee(v), hbar) - op_Xvee(op_X(v, hbar))).is_zero());
    REQUIRE((op_X(op_Yvee(v, hbar), hbar) - op_Yvee(op_X(v, hbar), hbar)).is_zero());
    REQUIRE((op_Y(op_Xvee(v)) - op_Xvee(op_Y(v))).is_zero());
    REQUIRE((op_Y(op_Yvee(v, hbar)) - op_Yvee(op_Y(v), hbar)).is_zero());
    // Inverses.
    REQUIRE((op_X(op_X(v, hbar), hbar, -1) - v).is_zero());
  }
}

TEST_CASE("words") {
  const TorusOperatorWord empty;
  CHECK((apply_word(empty, g0(), hbar) - g0()).is_zero());

  const TorusOperatorWord xy{{{Kind::X, 1, {}}, {Kind::Y, 1, {}}}};
  const TorusOperatorWord yx{{{Kind::Y, 1, {}}, {Kind::X, 1, {}}}};
  CHECK((apply_word(xy, g0(), hbar) - (q * q) * apply_word(yx, g0(), hbar)).is_zero());

  const TorusOperatorWord comm1{{{Kind::X, 1, {}}, {Kind::Yvee, 1, {}}}};
  const TorusOperatorWord comm2{{{Kind::Yvee, 1, {}}, {Kind::X, 1, {}}}};
  CHECK((apply_word(comm1, g0(), hbar) - apply_word(comm2, g0(), hbar)).is_zero());

  const TorusOperatorWord scaled{{{Kind::Scalar, 0, {2.0, 1.0}}, {Kind::Y, -2, {}}}};
  CHECK((apply_word(scaled, g0(), hbar) - cplx{2.0, 1.0} * op_Y(g0(), -2)).is_zero());
}

TEST_CASE("inner products") {
  CHECK(std::abs(inner_product(g0(), g0()) - std::sqrt(pi)) < 1e-15);
  CHECK(std::abs(inner_product(hermite_type(1), g0())) < 1e-15);

  std::mt19937_64 rng(99);
  for (int t = 0; t < 10; ++t) {
    const WVector u = random_wvector(rng), w = random_wvector(rng);
    const cplx exact = inner_product(u, w);
    REQUIRE(std::abs(exact - inner_by_quadrature(u, w)) < 1e-10 * (1.0 + std::abs(exact)));
    REQUIRE(std::abs(exact - std::conj(inner_product(w, u))) < 1e-13 * (1.0 + std::abs(exact)));
  }
}

TEST_CASE("the generators are symmetric") {
  const WVector u = g0();
  const WVector w = WVector::gaussian(1.0, 1.0, {0.0, 1.0});
  const cplx l = inner_product(op_X(u, hbar), w), r = inner_product(u, op_X(w, hbar));
  CHECK(std::abs(l - r) < 1e-12 * std::abs(l));

  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    const WVector a = random_wvector(rng), b = random_wvector(rng);
    auto check = [&](auto op) {
      const cplx x = inner_product(op(a), b), y = inner_product(a, op(b));
      REQUIRE(std::abs(x - y) <= 1e-10 * std::max(1.0, std::abs(x)));
    };
    check([](const WVector& v) { return op_X(v, hbar); });
    check([](const WVector& v) { return op_Y(v); });
    check([](const WVector& v) { return op_Xvee(v); });
    check([](const WVector& v) { return op_Yvee(v, hbar); });
  }
}

TEST_CASE("seminorms") {
  using qtorus::ModularDoubleElement;
  using qtorus::QT2Element;
  CHECK(std::abs(seminorm({}, g0(), hbar) - std::pow(pi, 0.25)) < 1e-15);
  CHECK(seminorm({}, WVector(), hbar) == 0.0);
  const WVector f = WVector::gaussian(1.2, {0.1, 0.3}, {1.0, 0.5});
  const ModularDoubleElement B{QT2Element::monomial(0, 1), QT2Element::scalar(1)};
  CHECK(std::abs(seminorm(B, f, hbar) - norm(multiply_exp(f, 1.0))) < 1e-15 * norm(multiply_exp(f, 1.0)));
}

TEST_CASE("evaluation is linear") {
  const WVector u = WVector::gaussian(1.0, 0.5), w = WVector::gaussian(2.0, {0.0, 1.0}, {0.0, 0.0, 1.0});
  CHECK(evaluate(g0(), cplx{0.0, 0.0}) == cplx{1.0, 0.0});
  const cplx z{0.4, -0.3};
  CHECK(std::abs(evaluate(u + w, z) - evaluate(u, z) - evaluate(w, z)) < 1e-15);
}

TEST_CASE("canonical form") {
  const WVector s = WVector::gaussian(1.0, 0.5) + WVector::gaussian(0.5) + WVector::gaussian(1.0, 0.5);
  REQUIRE(s.terms().size() == 2);
  CHECK(s.terms()[0].a == 0.5);
  CHECK(s.terms()[1].P[0] == cplx{2.0, 0.0});
  CHECK((s - s).is_zero());
  CHECK_THROWS_AS(WVector::gaussian(-1.0), Error);
}

TEST_CASE("monomial words on the Gaussian are independent") {
  // All operator monomials X^a Y^b Xv^c Yv^d of total degree <= 3.
  std::vector<WVector> vs;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 3; ++b)
      for (int c = 0; a + b + c <= 3; ++c)
        for (int d = 0; a + b + c + d <= 3; ++d) {
          const TorusOperatorWord w{{{Kind::X, a, {}}, {Kind::Y, b, {}}, {Kind::Xvee, c, {}}, {Kind::Yvee, d, {}}}};
          vs.push_back(apply_word(w, g0(), hbar));
        }
  CHECK(vs.size() == 35);
  CHECK(rank(vs) == 35);
  // A dependent family is detected.
  std::vector<WVector> dep = vs;
  dep.push_back(vs[3] + cplx{2.0, 0.0} * vs[7]);
  CHECK(rank(dep) == 35);

  // Exact Gram matrix of the normalized words of length <= 1 is nonsingular.
  std::vector<WVector> small{g0(), op_X(g0(), hbar), op_Y(g0()), op_Xvee(g0()), op_Yvee(g0(), hbar)};
  for (auto& v : small) v = cplx{1.0 / norm(v), 0.0} * v;
  const Eigen::MatrixXcd G = gram_matrix(small);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
  CHECK(es.eigenvalues().minCoeff() > 1e-8 * es.eigenvalues().maxCoeff());
}
