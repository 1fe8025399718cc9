#pragma once

// Classical A2 cluster engine: the order-5 mutation maps, tropical dynamics,
// the piecewise canonical basis IA and its equivariance and positivity.

#include <compare>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qpent/exact.hpp"

namespace qpent::cluster {

/// Exponent pair (m, n) of the monomial X^m Y^n.
using Exponent = std::pair<int, int>;

/// Finitely supported Laurent polynomial in commuting X, Y with integer
/// coefficients. Zero coefficients are never stored.
class LaurentPoly2 {
 public:
  LaurentPoly2() = default;
  static LaurentPoly2 monomial(int m, int n, Coeff c = 1);
  static LaurentPoly2 constant(Coeff c) { return monomial(0, 0, c); }

  const std::map<Exponent, Coeff>& terms() const { return terms_; }
  Coeff coeff(int m, int n) const;
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(int m, int n, Coeff c);

  LaurentPoly2& operator+=(const LaurentPoly2& o);
  LaurentPoly2& operator-=(const LaurentPoly2& o);
  friend LaurentPoly2 operator+(LaurentPoly2 a, const LaurentPoly2& b) { return a += b; }
  friend LaurentPoly2 operator-(LaurentPoly2 a, const LaurentPoly2& b) { return a -= b; }
  friend LaurentPoly2 operator*(const LaurentPoly2& a, const LaurentPoly2& b);
  LaurentPoly2 scaled(Coeff c) const;
  LaurentPoly2 pow(unsigned e) const;
  bool operator==(const LaurentPoly2&) const = default;

  Rational evaluate(const Rational& x, const Rational& y) const;

  /// "[(m,n,coeff), ...]" in increasing exponent order.
  std::string to_string() const;

 private:
  std::map<Exponent, Coeff> terms_;
};

/// numerator / denominator, compared by cross-multiplication.
struct LaurentFraction2 {
  LaurentPoly2 numerator;
  LaurentPoly2 denominator = LaurentPoly2::constant(1);

  bool equals(const LaurentPoly2& p) const { return numerator == p * denominator; }
  bool operator==(const LaurentFraction2& o) const {
    return numerator * o.denominator == o.numerator * denominator;
  }
  Rational evaluate(const Rational& x, const Rational& y) const;
};

struct TropicalPoint {
  int a = 0;
  int b = 0;
  auto operator<=>(const TropicalPoint&) const = default;
};

using RationalPoint = std::pair<Rational, Rational>;

/// (x, y) -> (1/y, (1 + y) x): the point map whose pullback is X -> Y^{-1},
/// Y -> (1 + Y) X. Throws DegeneratePoint at y = 0.
RationalPoint gamma_X_point(const Rational& x, const Rational& y);
/// (A, B) -> ((1 + A)/B, A). Throws DegeneratePoint at B = 0.
RationalPoint gamma_A_point(const Rational& A, const Rational& B);

/// (a, b) -> (max(a, 0) - b, a)
TropicalPoint tropical_gamma(TropicalPoint p);
/// Inverse of tropical_gamma: (a, b) -> (b, max(b, 0) - a).
TropicalPoint tropical_gamma_inverse(TropicalPoint p);
/// tropical_gamma applied k times (k may be negative).
TropicalPoint tropical_gamma_power(TropicalPoint p, int k);

/// The cones (numbered 1..5) containing p; boundary points lie in two.
std::set<int> cone_of(TropicalPoint p);
bool in_cone(TropicalPoint p, int cone);

/// The product formula of the given row, expanded. Only meaningful for p in
/// that row's cone (exponents of the binomial factors must be >= 0).
LaurentPoly2 canonical_IA_row(TropicalPoint p, int row);

/// Same function written as X^a Y^b times factors in X^{-1}, Y^{-1} (the form
/// that exhibits the leading monomial). Used as an independent cross-check.
LaurentPoly2 canonical_IA_leading_form(TropicalPoint p, int row);

/// IA(p). When p lies on a boundary both row formulas are evaluated and must
/// agree (std::logic_error otherwise).
LaurentPoly2 canonical_IA(TropicalPoint p);

/// Substitute X -> Y^{-1}, Y -> (1 + Y) X monomial by monomial, over the
/// common denominator (1 + Y)^N.
LaurentFraction2 pullback_gamma_X(const LaurentPoly2& F);

/// pullback_gamma_X(IA(tropical_gamma(p))) == IA(p)
bool equivariance_check(TropicalPoint p);
/// IA(p), IA(gamma p), ..., IA(gamma^4 p) all have positive coefficients.
bool positivity_check(TropicalPoint p);
/// X^a Y^b has coefficient 1 and dominates the rest of the support.
bool leading_monomial_check(TropicalPoint p);

/// Leading monomial in the elimination order: largest m + n, ties broken by
/// lexicographically largest (m, n).
Exponent elimination_leader(const LaurentPoly2& f);

/// Structure constants of IA(p) IA(p') in the basis {IA(r)}.
std::map<TropicalPoint, Coeff> multiply_in_basis_classical(TropicalPoint p, TropicalPoint p2,
                                                           int max_steps = 100000);

/// "a b : [(m,n,coeff), ...]"
std::string dump_line(TropicalPoint p, const LaurentPoly2& f);

}  // namespace qpent::cluster
