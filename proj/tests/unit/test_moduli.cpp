#include "doctest.h"

#include <random>
#include <set>

#include "qpent/cluster.hpp"
#include "qpent/moduli.hpp"

using namespace qpent;
using namespace qpent::moduli;

namespace {

ProjPoint pt(const Rational& x) { return ProjPoint::finite(x); }
const ProjPoint inf = ProjPoint::infinity();

// Four pairwise distinct random points, occasionally including infinity.
std::array<ProjPoint, 4> random_quadruple(std::mt19937_64& rng) {
  for (;;) {
    std::array<ProjPoint, 4> x;
    for (auto& p : x) p = (rng() % 8 == 0) ? inf : pt(random_rational(rng, 20, 7));
    bool ok = true;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) ok = ok && !(x[i] == x[j]);
    if (ok) return x;
  }
}

}  // namespace

TEST_CASE("cross-ratio") {
  CHECK(cross_ratio(inf, pt(-1), pt(0), pt(Rational(7, 3))) == Rational(7, 3));
  // Homogeneous coordinates are scale-free.
  CHECK(cross_ratio(ProjPoint{3, 0}, ProjPoint{2, -2}, pt(0), ProjPoint{14, 6}) == Rational(7, 3));

  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    const auto [x1, x2, x3, x4] = random_quadruple(rng);
    const Rational r = cross_ratio(x1, x2, x3, x4);
    REQUIRE(r == 1 / cross_ratio(x2, x3, x4, x1));
    REQUIRE(r == -1 - cross_ratio(x1, x3, x2, x4));
  }
  CHECK_THROWS_AS(cross_ratio(pt(1), pt(2), pt(3), pt(1)), DegenerateQuadruple);
  CHECK_THROWS_AS(cross_ratio(pt(1), pt(2), pt(2), pt(4)), DegenerateQuadruple);
  CHECK(cross_ratio(pt(1), pt(1), pt(2), pt(3)) == 0);
}

TEST_CASE("charts") {
  const Config5 x = psi(2, 3, 1);
  const Config5 expected{inf, pt(-1), pt(0), pt(2), pt(8)};
  CHECK(x == expected);
  CHECK(cross_ratio(x[0], x[1], x[2], x[3]) == 2);
  CHECK(cross_ratio(x[0], x[2], x[3], x[4]) == 3);
  CHECK_THROWS_AS(psi(2, 0, 1), DegeneratePoint);
  CHECK_THROWS_AS(psi(0, 1, 3), DegeneratePoint);
  // Y = -1 sends x5 onto x3, which is not a neighbor: still a cyclic configuration.
  const Config5 y = psi(2, -1, 1);
  CHECK(y[4] == y[2]);
  CHECK(is_cyclic_config(y));

  // psi_c is psi_1 rotated by 2(c - 1).
  const Config5 z = psi(2, 3, 2);
  CHECK(z[2] == inf);
  CHECK(z[0] == pt(2));

  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    const Rational X = random_rational(rng, 9, 4), Y = random_rational(rng, 9, 4);
    if (X == 0 || Y == 0) continue;
    for (int c = 1; c <= 5; ++c) {
      const Config5 p = psi(X, Y, c);
      REQUIRE(is_cyclic_config(p));
      const int f = chart_function_index(c);
      for (int a = 0; a <= 2; ++a)
        for (int b = -2; b <= 0; ++b) REQUIRE(X_abc(p, a, b, f) == rational_pow(X, a) * rational_pow(Y, b));
    }
  }
}

TEST_CASE("the functions X_{a,b;c}") {
  CHECK(X_abc(psi(2, 3, 1), 1, 0, 1) == 2);
  CHECK(X_abc(psi(2, 3, 1), 0, -1, 1) == Rational(1, 3));
  CHECK_THROWS_AS(X_abc(psi(2, 3, 1), -1, 0, 1), SignatureViolation);
  CHECK_THROWS_AS(X_abc(psi(2, 3, 1), 0, 1, 1), SignatureViolation);

  std::mt19937_64 rng(13);
  for (int t = 0; t < 20; ++t) {
    const Config5 x = random_config(rng, 0.0);
    for (int c = 1; c <= 5; ++c) {
      REQUIRE(X_abc(x, 0, 0, c) == 1);
      // The second factor of c is the inverse first factor of c + 2.
      for (int b = -3; b < 0; ++b) REQUIRE(X_abc(x, 0, b, c) == X_abc(x, -b, 0, c + 2));
    }
  }

  // X_{1,0;1} = r(x1, x2, x3, x4) blows up along x1 = x4, a non-neighbor
  // collision inside the cyclic moduli space, while its inverse vanishes there.
  Config5 x = psi(2, 3, 1);
  x[3] = x[0];
  CHECK(is_cyclic_config(x));
  CHECK_THROWS_AS(X_abc(x, 1, 0, 1), DegenerateQuadruple);
  CHECK(regular_function(x, {1, 0, 1}) == 0);
}

TEST_CASE("the five charts cover the cyclic configurations") {
  std::mt19937_64 rng(14);
  std::set<int> used;
  int collisions = 0;
  for (int t = 0; t < 200; ++t) {
    const Config5 x = random_config(rng, 0.4);
    REQUIRE(is_cyclic_config(x));
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j) collisions += x[i] == x[j];
    const auto hit = find_chart(x);
    REQUIRE(hit.has_value());
    REQUIRE(hit->X != 0);
    REQUIRE(hit->Y != 0);
    REQUIRE(projectively_equivalent(psi(hit->X, hit->Y, hit->c), x));
    used.insert(hit->c);
  }
  CHECK(collisions > 40);
  CHECK(used.size() >= 2);

  // Every single non-neighbor collision is handled by some chart.
  for (int i = 1; i <= 5; ++i) {
    Config5 x{pt(0), pt(1), pt(3), pt(7), pt(-2)};
    x[static_cast<std::size_t>((i + 1) % 5)] = x[static_cast<std::size_t>(i - 1)];
    CHECK(find_chart(x).has_value());
  }
}

TEST_CASE("chord monomials") {
  const ChordMonomial one = ChordMonomial::from_diagonals({0, 0, 0, 0, 0});
  CHECK(one.weights == std::array<int, 10>{});
  const ChordMonomial m = ChordMonomial::from_diagonals({1, 0, 1, 0, 0});
  CHECK(m.is_h_invariant());
  CHECK_FALSE(m.is_regular());
  CHECK(m.crossing_measure() == 1);
  CHECK(m.weight(1, 2) == -1);
  CHECK(m.weight(3, 4) == -1);
  CHECK(is_diagonal(1, 3));
  CHECK(is_diagonal(5, 2));
  CHECK_FALSE(is_diagonal(5, 1));
  CHECK(chord_index(4, 2) == chord_index(2, 4));

  std::mt19937_64 rng(15);
  for (int t = 0; t < 50; ++t) REQUIRE(random_h_invariant(rng).is_h_invariant());
}

TEST_CASE("Pluecker reduction") {
  // Delta13 Delta24 / (Delta12 Delta34) = 1 + Delta14 Delta23 / (Delta12 Delta34).
  const ChordMonomial crossing = ChordMonomial::from_diagonals({1, 0, 1, 0, 0});
  ReductionStats stats;
  const ChordSum out = pluecker_reduce({crossing}, &stats);
  REQUIRE(out.size() == 2);
  CHECK(stats.steps == 1);
  for (const auto& t : out) {
    CHECK(t.coeff == 1);
    CHECK(t.is_regular());
    CHECK(t.is_h_invariant());
  }
  const bool first_is_one = out[0].weights == std::array<int, 10>{};
  const ChordMonomial& other = first_is_one ? out[1] : out[0];
  CHECK((first_is_one || out[1].weights == std::array<int, 10>{}));
  CHECK(other.weight(1, 4) == 1);
  CHECK(other.weight(2, 3) == 1);

  const ChordMonomial regular = ChordMonomial::from_diagonals({2, 1, 0, 0, 0}, 5);
  CHECK(pluecker_reduce({regular}) == ChordSum{regular});
  CHECK(pluecker_reduce({regular, ChordMonomial{regular.weights, -5}}).empty());

  ChordMonomial bad;
  bad.set_weight(1, 2, 1);
  CHECK_THROWS_AS(pluecker_reduce({bad}), NotHInvariant);

  std::mt19937_64 rng(16);
  std::vector<VectorConfig5> configs;
  for (int k = 0; k < 50; ++k) configs.push_back(random_vector_config(rng));
  for (int t = 0; t < 25; ++t) {
    ChordSum in;
    for (int k = 0; k < 3; ++k) in.push_back(random_h_invariant(rng, 3));
    const ChordSum reduced = pluecker_reduce(in);
    for (const auto& r : reduced) {
      REQUIRE(r.is_regular());
      REQUIRE(r.is_h_invariant());
    }
    for (const auto& v : configs) REQUIRE(evaluate(reduced, v) == evaluate(in, v));
  }
}

TEST_CASE("basis monomials") {
  CHECK(regular_to_basis(ChordMonomial::from_diagonals({0, 0, 0, 0, 0})) == BasisLabel{0, 0, 1});

  // The inverse of X_{1,0;1} = Delta12 Delta34 / (Delta14 Delta23).
  ChordMonomial inv;
  inv.set_weight(1, 4, 1);
  inv.set_weight(2, 3, 1);
  inv.set_weight(1, 2, -1);
  inv.set_weight(3, 4, -1);
  CHECK(regular_to_basis(inv) == BasisLabel{1, 0, 1});
  CHECK(basis_to_regular({1, 0, 1}) == inv);

  CHECK_THROWS_AS(regular_to_basis(ChordMonomial::from_diagonals({1, 0, 1, 0, 0})), NotRegular);
  CHECK_THROWS_AS(basis_to_regular({-1, 0, 1}), SignatureViolation);

  std::mt19937_64 rng(17);
  const VectorConfig5 v = random_vector_config(rng);
  for (int c = 1; c <= 5; ++c)
    for (int a = 0; a <= 5; ++a)
      for (int b = -5; b <= 0; ++b) {
        const BasisLabel l{a, b, c};
        const ChordMonomial m = basis_to_regular(l);
        REQUIRE(m.is_h_invariant());
        REQUIRE(m.is_regular());
        REQUIRE(regular_to_basis(m) == canonical_label(l));
        REQUIRE(basis_to_regular(regular_to_basis(m)) == m);
        REQUIRE(evaluate(m, v) == regular_function(v, l));
      }
}

TEST_CASE("labels match the classical canonical basis") {
  std::mt19937_64 rng(18);
  std::vector<std::pair<Rational, Rational>> points;
  for (int k = 0; k < 8; ++k) points.emplace_back(random_positive_rational(rng, 9, 7), random_positive_rational(rng, 9, 7));
  std::set<cluster::TropicalPoint> image;
  std::set<BasisLabel> canonical;
  for (int c = 1; c <= 5; ++c)
    for (int a = 0; a <= 4; ++a)
      for (int b = -4; b <= 0; ++b) {
        const BasisLabel l{a, b, c};
        const auto p = tropical_label(l);
        REQUIRE(tropical_label(canonical_label(l)) == p);
        const auto F = cluster::canonical_IA(p);
        for (const auto& [X, Y] : points) REQUIRE(regular_function(psi(X, Y, 1), l) == F.evaluate(X, Y));
        image.insert(p);
        canonical.insert(canonical_label(l));
      }
  CHECK(image.size() == canonical.size());
}

TEST_CASE("independence") {
  CHECK(exact_rank({{1, 2}, {2, 4}}) == 1);
  CHECK(exact_rank({{0, 1}, {1, 0}, {1, 1}}) == 2);

  const IndependenceReport r0 = independence_check(0);
  CHECK(r0.distinct_labels == 1);
  CHECK(r0.rank == 1);

  const IndependenceReport r = independence_check(2);
  CHECK(r.labels == 45);
  CHECK(r.distinct_labels == 31);
  CHECK(r.rank == 31);
  CHECK(r.passed());
  CHECK(r.printed_rank == 31);

  // A crossing monomial stays inside the span of its Pluecker expansion.
  const ChordMonomial f = ChordMonomial::from_diagonals({1, 0, 1, 1, 0});
  const ChordSum expansion = pluecker_reduce({f});
  std::mt19937_64 rng(19);
  std::vector<std::vector<Rational>> with, without;
  for (int s = 0; s < 20; ++s) {
    const VectorConfig5 v = random_vector_config(rng);
    std::vector<Rational> row;
    for (const auto& t : expansion) row.push_back(evaluate(ChordMonomial{t.weights, 1}, v));
    without.push_back(row);
    row.push_back(evaluate(f, v));
    with.push_back(std::move(row));
  }
  const std::size_t base = exact_rank(without);
  CHECK(base == expansion.size());
  CHECK(exact_rank(with) == base);
}
