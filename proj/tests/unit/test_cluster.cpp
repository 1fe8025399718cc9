#include "doctest.h"

#include <random>

#include "qpent/cluster.hpp"

using namespace qpent;
using namespace qpent::cluster;

namespace {

LaurentPoly2 mono(int m, int n, Coeff c = 1) { return LaurentPoly2::monomial(m, n, c); }

}  // namespace

TEST_CASE("gamma point maps have order five") {
  auto p = gamma_X_point(1, 1);
  CHECK(p == RationalPoint{1, 2});
  for (int i = 0; i < 4; ++i) p = gamma_X_point(p.first, p.second);
  CHECK(p == RationalPoint{1, 1});

  auto a = gamma_A_point(1, 1);
  CHECK(a == RationalPoint{2, 1});
  for (int i = 0; i < 4; ++i) a = gamma_A_point(a.first, a.second);
  CHECK(a == RationalPoint{1, 1});

  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    const Rational x0 = random_positive_rational(rng, 50, 50), y0 = random_positive_rational(rng, 50, 50);
    RationalPoint px{x0, y0}, pa{x0, y0};
    for (int i = 0; i < 5; ++i) {
      px = gamma_X_point(px.first, px.second);
      pa = gamma_A_point(pa.first, pa.second);
    }
    CHECK(px == RationalPoint{x0, y0});
    CHECK(pa == RationalPoint{x0, y0});
  }
}

TEST_CASE("degenerate points are rejected") {
  CHECK_THROWS_AS(gamma_X_point(1, 0), DegeneratePoint);
  CHECK_THROWS_AS(gamma_A_point(1, 0), DegeneratePoint);
}

TEST_CASE("tropical gamma") {
  CHECK(tropical_gamma({0, 0}) == TropicalPoint{0, 0});
  CHECK(tropical_gamma({-1, 2}) == TropicalPoint{-2, -1});
  for (int a = -50; a <= 50; ++a)
    for (int b = -50; b <= 50; ++b) {
      const TropicalPoint p{a, b};
      REQUIRE(tropical_gamma_power(p, 5) == p);
      REQUIRE(tropical_gamma_inverse(tropical_gamma(p)) == p);
    }
}

TEST_CASE("cones") {
  CHECK(cone_of({-1, 2}) == std::set<int>{1});
  CHECK(cone_of({0, 0}) == std::set<int>{1, 2, 3, 4, 5});
  CHECK(cone_of({2, 2}) == std::set<int>{4, 5});
  // Every nonzero point lies in one cone or on one shared ray.
  for (int a = -10; a <= 10; ++a)
    for (int b = -10; b <= 10; ++b) {
      if (a == 0 && b == 0) continue;
      const auto c = cone_of({a, b});
      CHECK((c.size() == 1 || c.size() == 2));
    }
  // gamma permutes the cones cyclically: cone 1 goes to cone 2.
  CHECK(in_cone(tropical_gamma({-3, 5}), 2));
}

TEST_CASE("canonical basis: known values") {
  CHECK(canonical_IA({0, 0}) == LaurentPoly2::constant(1));
  CHECK(canonical_IA({-1, 1}) == mono(-1, 1));
  CHECK(canonical_IA({1, 0}) == mono(1, 0) + mono(1, -1) + mono(0, -1));
  CHECK(canonical_IA({1, 0}).to_string() == "[(0,-1,1), (1,-1,1), (1,0,1)]");
  // (1 + X)/(XY)
  CHECK(canonical_IA({0, -1}) == mono(-1, -1) + mono(0, -1));
  CHECK(canonical_IA({0, 1}) == mono(0, 1));
}

TEST_CASE("row formulas agree on shared rays and with the leading-monomial form") {
  for (int a = -20; a <= 20; ++a)
    for (int b = -20; b <= 20; ++b) {
      const TropicalPoint p{a, b};
      const auto cones = cone_of(p);
      const LaurentPoly2 ref = canonical_IA_row(p, *cones.begin());
      for (int k : cones) {
        REQUIRE(canonical_IA_row(p, k) == ref);
        if (std::abs(a) <= 8 && std::abs(b) <= 8) REQUIRE(canonical_IA_leading_form(p, k) == ref);
      }
    }
}

TEST_CASE("pullback matches the point map") {
  CHECK(pullback_gamma_X(mono(1, 0)).equals(mono(0, -1)));
  CHECK(pullback_gamma_X(mono(0, 1)).equals(mono(1, 0) + mono(1, 1)));

  std::mt19937_64 rng(11);
  const LaurentPoly2 F = mono(1, 1) + mono(-2, 3, 5) + mono(2, -3, -4) + mono(0, -1, 7);
  const LaurentFraction2 G = pullback_gamma_X(F);
  for (int t = 0; t < 50; ++t) {
    const Rational x = random_positive_rational(rng, 30, 30), y = random_positive_rational(rng, 30, 30);
    const auto img = gamma_X_point(x, y);
    REQUIRE(G.evaluate(x, y) == F.evaluate(img.first, img.second));
  }
}

TEST_CASE("equivariance, positivity, leading monomial on the box") {
  CHECK(equivariance_check({-1, 1}));
  CHECK(equivariance_check({0, 0}));
  CHECK(positivity_check({1, 0}));
  CHECK(positivity_check({0, 0}));
  CHECK(leading_monomial_check({1, 0}));
  for (int a = -8; a <= 8; ++a)
    for (int b = -8; b <= 8; ++b) {
      REQUIRE(equivariance_check({a, b}));
      REQUIRE(positivity_check({a, b}));
    }
  for (int a = -10; a <= 10; ++a)
    for (int b = -10; b <= 10; ++b) REQUIRE(leading_monomial_check({a, b}));
}

TEST_CASE("equivariance fails for a wrong candidate") {
  // Sanity check that the comparison can fail: IA(p) against IA of a
  // different point.
  const TropicalPoint p{2, -1};
  CHECK_FALSE(pullback_gamma_X(canonical_IA(tropical_gamma(p))).equals(canonical_IA({2, 0})));
}

TEST_CASE("multiplication in the basis") {
  auto sq = multiply_in_basis_classical({0, 1}, {0, 1});
  CHECK(sq == std::map<TropicalPoint, Coeff>{{{0, 2}, 1}});

  std::mt19937_64 rng(3);
  auto check_by_evaluation = [&](TropicalPoint p, TropicalPoint p2) {
    const auto sc = multiply_in_basis_classical(p, p2);
    for (int t = 0; t < 20; ++t) {
      const Rational x = random_positive_rational(rng, 20, 20), y = random_positive_rational(rng, 20, 20);
      Rational rhs = 0;
      for (const auto& [r, c] : sc) rhs += Rational(c) * canonical_IA(r).evaluate(x, y);
      REQUIRE(canonical_IA(p).evaluate(x, y) * canonical_IA(p2).evaluate(x, y) == rhs);
    }
    return sc;
  };
  const auto m = check_by_evaluation({1, 0}, {-1, 0});
  for (const auto& [r, c] : m) CHECK(c > 0);
  // X^{-1} (X + X Y^{-1} + Y^{-1}) = 1 + Y^{-1} + X^{-1} Y^{-1} = 1 + IA(0,-1)
  CHECK(m == std::map<TropicalPoint, Coeff>{{{0, 0}, 1}, {{0, -1}, 1}});
  check_by_evaluation({1, 0}, {0, 1});
  check_by_evaluation({2, -3}, {-1, 4});

  for (int a = -5; a <= 5; ++a)
    for (int b = -5; b <= 5; ++b)
      for (const TropicalPoint p2 : {TropicalPoint{1, 0}, TropicalPoint{-2, 3}, TropicalPoint{4, 5}})
        REQUIRE_NOTHROW(multiply_in_basis_classical({a, b}, p2));
}

TEST_CASE("coefficient overflow is reported") {
  const LaurentPoly2 big = LaurentPoly2::constant(Coeff{1} << 62);
  CHECK_THROWS_AS(big * LaurentPoly2::constant(4), CoefficientOverflow);
}

TEST_CASE("dump format") {
  CHECK(dump_line({1, 0}, canonical_IA({1, 0})) == "1 0 : [(0,-1,1), (1,-1,1), (1,0,1)]");
}
