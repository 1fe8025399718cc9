#pragma once

// Exact quantum torus T_q (q^{-1} XY = q YX), its star structure, the
// subspace L'_q on which the order-5 automorphism gamma_q is polynomial,
// the transported canonical basis I^q, and clock-shift matrix models.

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qpent/cluster.hpp"
#include "qpent/exact.hpp"

namespace qpent::qtorus {

using cluster::Exponent;
using cluster::TropicalPoint;

/// Laurent polynomial in q with integer coefficients.
class QLaurent {
 public:
  QLaurent() = default;
  QLaurent(Coeff c) { add(0, c); }  // NOLINT(google-explicit-constructor)
  static QLaurent q_power(int k, Coeff c = 1);

  const std::map<int, Coeff>& terms() const { return terms_; }
  Coeff coeff(int k) const;
  bool is_zero() const { return terms_.empty(); }
  void add(int k, Coeff c);

  QLaurent& operator+=(const QLaurent& o);
  QLaurent& operator-=(const QLaurent& o);
  friend QLaurent operator+(QLaurent a, const QLaurent& b) { return a += b; }
  friend QLaurent operator-(QLaurent a, const QLaurent& b) { return a -= b; }
  friend QLaurent operator*(const QLaurent& a, const QLaurent& b);
  QLaurent operator-() const;
  /// Multiply by q^k.
  QLaurent shifted(int k) const;
  /// q -> q^{-1}
  QLaurent bar() const;
  bool operator==(const QLaurent&) const = default;

  std::complex<double> evaluate(std::complex<double> q) const;
  /// Value at q = 1.
  Coeff at_one() const;
  bool nonnegative() const;
  bool is_bar_invariant() const { return *this == bar(); }

  /// "c_k q^k + ..." in increasing k; "0" for the zero polynomial.
  std::string to_string() const;

 private:
  std::map<int, Coeff> terms_;
};

/// sum c_{mn}(q) X^m Y^n, normal ordered (all X to the left of all Y).
class QT2Element {
 public:
  QT2Element() = default;
  static QT2Element monomial(int m, int n, const QLaurent& c = QLaurent(1));
  /// M(m, n) = q^{-mn} X^m Y^n, the star-invariant normalization.
  static QT2Element M(int m, int n);
  static QT2Element scalar(const QLaurent& c) { return monomial(0, 0, c); }

  const std::map<Exponent, QLaurent>& terms() const { return terms_; }
  QLaurent coeff(int m, int n) const;
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  void add_term(int m, int n, const QLaurent& c);

  QT2Element& operator+=(const QT2Element& o);
  QT2Element& operator-=(const QT2Element& o);
  friend QT2Element operator+(QT2Element a, const QT2Element& b) { return a += b; }
  friend QT2Element operator-(QT2Element a, const QT2Element& b) { return a -= b; }
  friend QT2Element operator*(const QT2Element& a, const QT2Element& b);
  QT2Element scaled(const QLaurent& c) const;
  bool operator==(const QT2Element&) const = default;

  /// "[(m, n, qpoly), ...]"
  std::string to_string() const;

 private:
  std::map<Exponent, QLaurent> terms_;
};

/// Bilinear product with X^a Y^b X^c Y^d = q^{-2bc} X^{a+c} Y^{b+d}.
QT2Element multiply(const QT2Element& u, const QT2Element& v);

/// Involutive antiautomorphism with q -> q^{-1}, X -> X, Y -> Y.
QT2Element star(const QT2Element& u);

/// Pure tensor left (q-side) (x) right (q_vee-side) of the modular double.
/// Sums of tensors are represented as std::vector<ModularDoubleElement>.
struct ModularDoubleElement {
  QT2Element left = QT2Element::scalar(1);
  QT2Element right = QT2Element::scalar(1);
};
using ModularSum = std::vector<ModularDoubleElement>;

/// Decomposition of an element of L'_q:
///   u = nonnegative_part + sum_n sum_a quotient[n][a] X^a D_n(X) Y^{-n},
/// with D_n(X) = prod_{j=0}^{n-1} (1 + q^{-2j-1} X^{-1}).
struct LqDecomposition {
  QT2Element nonnegative_part;
  std::map<int, std::map<int, QLaurent>> quotients;  // n > 0 -> (a -> coefficient)
};

/// D_n(X) as a map X-exponent -> coefficient.
std::map<int, QLaurent> membership_divisor(int n);

/// Throws NonMember (carrying the offending Y-degree) when some Y^{-n}
/// component is not divisible by D_n(X).
LqDecomposition membership_Lq_prime(const QT2Element& u);
bool is_member_Lq_prime(const QT2Element& u);

/// gamma_q: X -> Y^{-1}, Y -> (1 + qY) X, on L'_q.
QT2Element apply_gamma_q(const QT2Element& u);
QT2Element apply_gamma_q_power(QT2Element u, int k);
/// gamma applied to both tensor factors of each term.
ModularSum apply_gamma_modular(const ModularSum& A);

/// I^q(p): the seed q^{-ab} X^a Y^b on cone 1, transported by gamma_q.
QT2Element canonical_IAq(TropicalPoint p);

/// Classical IA(p) with each monomial X^m Y^n replaced by M(m, n); an
/// alternative reading of the q-deformation compared against I^q in reports.
QT2Element termwise_symmetrization(TropicalPoint p);

/// q -> 1
cluster::LaurentPoly2 specialize_q1(const QT2Element& u);

/// Leading monomial in the same order as the classical elimination.
Exponent elimination_leader(const QT2Element& u);

/// Structure constants of I^q(p) I^q(p') in the basis {I^q(r)}.
std::map<TropicalPoint, QLaurent> multiply_in_basis_q(TropicalPoint p, TropicalPoint p2, int max_steps = 100000);

/// Every coefficient lies in Z_{>=0}[q, q^{-1}].
bool coefficients_nonnegative(const QT2Element& u);

/// Matrices of X and Y in the clock-shift representation with
/// q = exp(2 pi i / N): X = alpha^{1/N} diag(q^2, ..., q^{2N}),
/// Y = beta^{1/N} * cyclic shift. Throws EvenN unless N is odd and >= 3.
struct ClockShift {
  int N;
  std::complex<double> q;
  Eigen::MatrixXcd X, Xinv, Y, Yinv;
};
ClockShift clock_shift_generators(int N, std::complex<double> alpha = 1.0, std::complex<double> beta = 1.0);

Eigen::MatrixXcd clock_shift_model(const QT2Element& u, int N, std::complex<double> alpha = 1.0,
                                   std::complex<double> beta = 1.0);

/// "a b : [(m, n, qpoly), ...]"
std::string dump_line(TropicalPoint p, const QT2Element& u);

/// Interleaved "re,im,re,im,..." rows.
std::string matrix_to_csv(const Eigen::MatrixXcd& m);

}  // namespace qpent::qtorus
