#include "doctest.h"

#include <random>

#include "qpent/qtorus.hpp"

using namespace qpent;
using namespace qpent::qtorus;
using qpent::cluster::TropicalPoint;

namespace {

QT2Element mono(int m, int n, const QLaurent& c = QLaurent(1)) { return QT2Element::monomial(m, n, c); }
QLaurent qp(int k, Coeff c = 1) { return QLaurent::q_power(k, c); }

QT2Element random_element(std::mt19937_64& rng, int terms = 4) {
  std::uniform_int_distribution<int> e(-3, 3), k(-4, 4), c(-5, 5);
  QT2Element u;
  for (int i = 0; i < terms; ++i) u.add_term(e(rng), e(rng), qp(k(rng), c(rng)) + qp(k(rng), c(rng)));
  return u;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("normal ordering") {
  const QT2Element X = mono(1, 0), Y = mono(0, 1);
  CHECK(Y * X == mono(1, 1, qp(-2)));
  CHECK(QT2Element::M(1, 0) * QT2Element::M(0, 1) == QT2Element::M(1, 1).scaled(qp(1)));
  // q^{-1} XY - q YX = 0
  CHECK((X * Y).scaled(qp(-1)) - (Y * X).scaled(qp(1)) == QT2Element());
  std::mt19937_64 rng(5);
  const QT2Element u = random_element(rng);
  CHECK(u * QT2Element::scalar(1) == u);
}

TEST_CASE("associativity and star antiautomorphism") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 30; ++t) {
    const QT2Element a = random_element(rng), b = random_element(rng), c = random_element(rng);
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(star(a * b) == star(b) * star(a));
    REQUIRE(star(star(a)) == a);
  }
  CHECK(star(QT2Element::M(3, -2)) == QT2Element::M(3, -2));
  CHECK(star(QT2Element::scalar(qp(1))) == QT2Element::scalar(qp(-1)));
}

TEST_CASE("membership in L'_q") {
  CHECK(is_member_Lq_prime(mono(3, 2)));
  CHECK(is_member_Lq_prime(mono(-4, 0)));
  try {
    membership_Lq_prime(mono(1, -1));
    FAIL("expected NonMember");
  } catch (const NonMember& e) {
    CHECK(e.y_degree() == -1);
  }
  // X^a Y^{-1} (1 + q X^{-1}) normal-orders to X^a (1 + q^{-1} X^{-1}) Y^{-1}.
  for (int a : {-2, 0, 3}) {
    const QT2Element u = mono(a, 0) * mono(0, -1) * (QT2Element::scalar(1) + mono(-1, 0, qp(1)));
    CHECK(u == mono(a, -1) + mono(a - 1, -1, qp(-1)));
    const auto dec = membership_Lq_prime(u);
    CHECK(dec.nonnegative_part.is_zero());
    CHECK(dec.quotients.at(1) == std::map<int, QLaurent>{{a, QLaurent(1)}});
  }
  // Second spanning family with n = 3 plus a nonnegative part.
  QT2Element w = mono(2, 0);
  for (int k = 1; k <= 3; ++k) {
    if (k == 1) w = w * mono(0, -3);
    w = w * (QT2Element::scalar(1) + mono(-1, 0, qp(2 * k - 1)));
  }
  CHECK(is_member_Lq_prime(w + mono(1, 4, qp(3))));
  CHECK_FALSE(is_member_Lq_prime(w + mono(0, -3)));
}

TEST_CASE("gamma_q on generators and spanning elements") {
  CHECK(apply_gamma_q(mono(1, 0)) == mono(0, -1));
  CHECK(apply_gamma_q(mono(0, 1)) == mono(1, 0) + mono(1, 1, qp(-1)));
  CHECK_THROWS_AS(apply_gamma_q(mono(0, -1)), NonMember);
  // gamma(X^a Y^{-n} prod (1 + q^{2k-1} X^{-1})) = q^{-2an} X^{-n} Y^{-a}
  for (int a : {-1, 2})
    for (int n : {1, 2}) {
      QT2Element w = mono(a, -n);
      for (int k = 1; k <= n; ++k) w = w * (QT2Element::scalar(1) + mono(-1, 0, qp(2 * k - 1)));
      CHECK(apply_gamma_q(w) == mono(-n, -a, qp(-2 * a * n)));
    }
  // gamma is multiplicative where defined.
  const QT2Element u = mono(2, 1) + mono(-1, 3, qp(2)), v = mono(1, 2, qp(-1));
  CHECK(apply_gamma_q(u * v) == apply_gamma_q(u) * apply_gamma_q(v));
}

TEST_CASE("quantum canonical basis: known values") {
  CHECK(canonical_IAq({-1, 1}) == mono(-1, 1, qp(1)));
  CHECK(canonical_IAq({0, -1}) == mono(0, -1) + mono(-1, -1, qp(-1)));
  CHECK(canonical_IAq({1, 0}) == mono(1, 0) + mono(1, -1, qp(1)) + mono(0, -1));
  CHECK(canonical_IAq({0, 0}) == QT2Element::scalar(1));
}

TEST_CASE("quantum canonical basis: invariants on the box") {
  for (int a = -6; a <= 6; ++a)
    for (int b = -6; b <= 6; ++b) {
      const TropicalPoint p{a, b};
      const QT2Element I = canonical_IAq(p);
      REQUIRE(star(I) == I);
      REQUIRE(specialize_q1(I) == cluster::canonical_IA(p));
      REQUIRE(apply_gamma_q(canonical_IAq(cluster::tropical_gamma(p))) == I);
      REQUIRE(I.coeff(a, b) == qp(-a * b));
      QT2Element it = I;
      for (int k = 0; k < 5; ++k) {
        REQUIRE(coefficients_nonnegative(it));
        it = apply_gamma_q(it);
      }
      REQUIRE(it == I);
    }
}

TEST_CASE("q structure constants") {
  CHECK(multiply_in_basis_q({0, 1}, {0, 1}) == std::map<TropicalPoint, QLaurent>{{{0, 2}, QLaurent(1)}});
  for (int a = -4; a <= 4; ++a)
    for (int b = -4; b <= 4; ++b)
      for (const TropicalPoint p2 : {TropicalPoint{1, 0}, TropicalPoint{-1, 2}, TropicalPoint{2, -3}}) {
        const TropicalPoint p{a, b};
        const auto sq = multiply_in_basis_q(p, p2);
        // Reassembling the expansion reproduces the product exactly.
        QT2Element sum;
        for (const auto& [r, c] : sq) sum += canonical_IAq(r).scaled(c);
        REQUIRE(sum == canonical_IAq(p) * canonical_IAq(p2));
        // q -> 1 gives the classical constants.
        const auto sc = cluster::multiply_in_basis_classical(p, p2);
        std::map<TropicalPoint, Coeff> at_one;
        for (const auto& [r, c] : sq)
          if (c.at_one() != 0) at_one[r] = c.at_one();
        REQUIRE(at_one == sc);
      }
}

TEST_CASE("termwise symmetrization agrees where coefficients are one") {
  CHECK(termwise_symmetrization({1, 0}) == canonical_IAq({1, 0}));
  CHECK(termwise_symmetrization({-2, 3}) == canonical_IAq({-2, 3}));
}

TEST_CASE("clock-shift matrix model") {
  const ClockShift g5 = clock_shift_generators(5);
  CHECK(max_abs(g5.X * g5.Y - g5.q * g5.q * g5.Y * g5.X) < 1e-13);

  const ClockShift g7 = clock_shift_generators(7, 2.0, 3.0);
  Eigen::MatrixXcd XN = Eigen::MatrixXcd::Identity(7, 7), YN = XN;
  for (int i = 0; i < 7; ++i) {
    XN = XN * g7.X;
    YN = YN * g7.Y;
  }
  CHECK(max_abs(XN - 2.0 * Eigen::MatrixXcd::Identity(7, 7)) < 1e-12);
  CHECK(max_abs(YN - 3.0 * Eigen::MatrixXcd::Identity(7, 7)) < 1e-12);

  CHECK_THROWS_AS(clock_shift_model(mono(1, 0), 4), EvenN);

  std::mt19937_64 rng(23);
  for (int N : {5, 7, 9}) {
    const QT2Element u = canonical_IAq({1, -1});
    const Eigen::MatrixXcd lhs = clock_shift_model(apply_gamma_q_power(u, 5), N);
    CHECK(max_abs(lhs - clock_shift_model(u, N)) < 1e-12);
    for (int t = 0; t < 5; ++t) {
      const QT2Element a = random_element(rng, 3), b = random_element(rng, 3);
      const Eigen::MatrixXcd ma = clock_shift_model(a, N), mb = clock_shift_model(b, N);
      const double scale = std::max(1.0, max_abs(ma) * max_abs(mb));
      REQUIRE(max_abs(clock_shift_model(a * b, N) - ma * mb) < 1e-12 * scale);
    }
  }
}

TEST_CASE("text dumps") {
  CHECK(qp(-1, 1).to_string() == "1 q^-1");
  CHECK((qp(0, 2) - qp(3)).to_string() == "2 q^0 - 1 q^3");
  CHECK(dump_line({1, 0}, canonical_IAq({1, 0})) == "1 0 : [(0, -1, 1 q^0), (1, -1, 1 q^1), (1, 0, 1 q^0)]");
}
