#pragma once

// Exact geometry of configurations of five cyclically ordered points on the
// projective line: cross-ratios, the five charts psi_c, the functions
// X_{a,b;c}, and the chord-diagram reduction by Pluecker relations.

#include <array>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qpent/cluster.hpp"
#include "qpent/exact.hpp"

namespace qpent::moduli {

/// Homogeneous point (u : v) of P^1; infinity is (1 : 0).
struct ProjPoint {
  Rational u{1};
  Rational v{0};

  static ProjPoint finite(const Rational& x) { return {x, Rational(1)}; }
  static ProjPoint infinity() { return {Rational(1), Rational(0)}; }
  bool is_infinity() const { return v == 0; }
  /// Equality up to a nonzero scalar.
  bool operator==(const ProjPoint& o) const { return u * o.v == o.u * v; }
  std::string to_string() const;
};

/// u_1 v_2 - u_2 v_1: zero exactly when the points coincide.
Rational bracket(const ProjPoint& p, const ProjPoint& q);

using Config5 = std::array<ProjPoint, 5>;

/// True when no two cyclically consecutive points coincide.
bool is_cyclic_config(const Config5& x);

/// (x1 - x2)(x3 - x4) / ((x1 - x4)(x2 - x3)) in homogeneous form. Throws
/// DegenerateQuadruple when x1 = x4 or x2 = x3.
Rational cross_ratio(const ProjPoint& x1, const ProjPoint& x2, const ProjPoint& x3, const ProjPoint& x4);

/// Chart c in 1..5: psi_1(X, Y) = (inf, -1, 0, X, X(1 + Y)); psi_c moves the
/// point at position i of psi_1 to position i + 2(c - 1) mod 5. Throws
/// DegeneratePoint for X = 0 or Y = 0 (the latter collides x4 and x5).
Config5 psi(const Rational& X, const Rational& Y, int c);

/// Index of the function family whose chart is psi_c: X_{a,b;f}(psi_c(X, Y))
/// equals X^a Y^b for f = chart_function_index(c) = 2c - 1 mod 5.
int chart_function_index(int c);

/// r(x_c, x_{c+1}, x_{c+2}, x_{c+3})^a r(x_c, x_{c+2}, x_{c+3}, x_{c+4})^b for
/// any integer exponents (indices mod 5).
Rational cross_ratio_monomial(const Config5& x, int a, int b, int c);

/// X_{a,b;c} with the signature a >= 0, b <= 0 enforced (SignatureViolation).
Rational X_abc(const Config5& x, int a, int b, int c);

/// A chart containing the configuration: psi_c(X, Y) is projectively
/// equivalent to x.
struct ChartHit {
  int c = 0;
  Rational X;
  Rational Y;
};

/// The first chart c = 1..5 whose image contains x, if any.
std::optional<ChartHit> find_chart(const Config5& x);

/// True when a and b differ by a projective transformation. Both must
/// contain three distinct points at common positions.
bool projectively_equivalent(const Config5& a, const Config5& b);

/// Random cyclic configuration with rational or infinite points. With
/// probability `collision_rate` one pair of non-neighbors coincides.
Config5 random_config(std::mt19937_64& rng, double collision_rate = 0.3);

// ---------------------------------------------------------------------------
// Chord diagrams.

/// The ten pairs (i, j), 1 <= i < j <= 5, in lexicographic order.
const std::array<std::pair<int, int>, 10>& chord_pairs();
/// Position of (i, j) (either order, indices mod 5 in 1..5) in chord_pairs().
int chord_index(int i, int j);
/// True for the five diagonals (non-neighbor pairs).
bool is_diagonal(int i, int j);

/// prod_{i<j} Delta_ij^{w_ij} times an integer coefficient. Sides carry any
/// integer weight, diagonals a nonnegative one.
struct ChordMonomial {
  std::array<int, 10> weights{};
  Coeff coeff = 1;

  int weight(int i, int j) const { return weights[static_cast<std::size_t>(chord_index(i, j))]; }
  void set_weight(int i, int j, int w) { weights[static_cast<std::size_t>(chord_index(i, j))] = w; }

  /// Sum of the weights at each vertex is zero.
  bool is_h_invariant() const;
  /// No two positively weighted diagonals cross.
  bool is_regular() const;
  /// Sum over crossing diagonal pairs of the product of their weights.
  long crossing_measure() const;

  /// The unique H-invariant monomial with the given diagonal weights,
  /// ordered as (13, 14, 24, 25, 35).
  static ChordMonomial from_diagonals(const std::array<int, 5>& diagonals, Coeff coeff = 1);

  bool operator==(const ChordMonomial&) const = default;
  std::string to_string() const;
};

using ChordSum = std::vector<ChordMonomial>;

/// A vector configuration: v_i = (u_i, v_i) with Delta_ij = det(v_i, v_j).
using VectorConfig5 = Config5;

Rational delta(const VectorConfig5& v, int i, int j);
Rational evaluate(const ChordMonomial& m, const VectorConfig5& v);
Rational evaluate(const ChordSum& s, const VectorConfig5& v);

/// Random vectors with all Delta_ij nonzero.
VectorConfig5 random_vector_config(std::mt19937_64& rng);

/// Random H-invariant monomial with diagonal weights in [0, max_weight] and
/// coefficient in [-3, 3] \ {0}.
ChordMonomial random_h_invariant(std::mt19937_64& rng, int max_weight = 3);

struct ReductionStats {
  std::size_t steps = 0;
  /// Largest crossing measure seen in the input.
  long initial_measure = 0;
};

/// Rewrites crossing diagonals with the Pluecker relation
/// Delta_ac Delta_bd = Delta_ab Delta_cd + Delta_ad Delta_bc until every term
/// is regular. The crossing pair rewritten first is the lexicographically
/// lowest; like terms are merged and zero terms dropped. Each rewrite checks
/// that the crossing measure of both products is strictly smaller (throws
/// std::logic_error otherwise). Throws NotHInvariant on invalid input.
ChordSum pluecker_reduce(const ChordSum& sum, ReductionStats* stats = nullptr);

/// Label (a, b; c), a >= 0, b <= 0, of a basis monomial: weight a on the
/// diagonal (c, c+3) and -b on (c, c+2), all other diagonals zero.
struct BasisLabel {
  int a = 0;
  int b = 0;
  int c = 1;
  auto operator<=>(const BasisLabel&) const = default;
};

/// The monomial r(x_c, x_{c+1}, x_{c+2}, x_{c+3})^{-a} r(x_c, x_{c+2}, x_{c+3}, x_{c+4})^{-b}
/// in Delta's, sign included. Throws SignatureViolation for a < 0 or b > 0.
ChordMonomial basis_to_regular(const BasisLabel& label);

/// Reads the label of a regular H-invariant monomial with coefficient +-1
/// matching basis_to_regular. Canonical choice when several vertices fit:
/// the zero monomial gives (0, 0; 1) and a single diagonal (i, i+2) gives
/// (w, 0; i+2). Throws NotRegular or NotHInvariant.
BasisLabel regular_to_basis(const ChordMonomial& m);

/// The canonical representative of a label: (0, b; c) with b < 0 is the same
/// function as (-b, 0; c + 2), and every (0, 0; c) is the constant 1.
BasisLabel canonical_label(const BasisLabel& label);

/// Value of the regular function with this label: 1 / X_{a,b;c}.
Rational regular_function(const Config5& x, const BasisLabel& label);

/// Tropical point of the classical canonical basis element equal to the
/// regular function of `label` in the coordinates of chart psi_1:
///   c = 1: (-a, -b)     c = 2: (a, b)     c = 3: (-b, a - b)
///   c = 4: (b, -a)      c = 5: (a - b, a)
/// Each c covers one of the five cones.
cluster::TropicalPoint tropical_label(const BasisLabel& label);

/// Exact rank of a rational matrix (rows are samples).
std::size_t exact_rank(std::vector<std::vector<Rational>> rows);

struct IndependenceReport {
  int degree_bound = 0;
  std::size_t labels = 0;          // all (a, b; c) with 0 <= a, -b <= bound
  std::size_t distinct_labels = 0; // after canonical_label
  std::size_t samples = 0;
  std::size_t rank = 0;            // of the regular functions
  std::size_t printed_rank = 0;    // of X_{a,b;c} as defined
  bool passed() const { return rank == distinct_labels; }
};

/// Evaluates every labelled regular function on random configurations and
/// computes the exact rank of the evaluation matrix. degree_bound <= 6.
IndependenceReport independence_check(int degree_bound, std::uint64_t seed = 1);

}  // namespace qpent::moduli
