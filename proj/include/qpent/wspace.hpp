#pragma once

// The test space W: finite sums of P(x) exp(-a x^2/2 + b x) with a > 0, complex b
// and complex polynomial P. The modular-double generators act on W in closed
// form, and inner products are computed from Gaussian moments.

#include <complex>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qpent/qtorus.hpp"
#include "qpent/quadrature.hpp"

namespace qpent::wspace {

/// Coefficients c_0, c_1, ... of c_0 + c_1 x + ...
using Polynomial = std::vector<cplx>;

cplx eval_poly(const Polynomial& p, cplx x);

struct GaussianTerm {
  double a = 1.0;
  cplx b{0.0, 0.0};
  Polynomial P{cplx{1.0, 0.0}};
};

/// Finite sum of GaussianTerms in canonical form: terms sorted by
/// (a, Re b, Im b), terms with equal (a, b) merged, zero terms dropped.
///
/// Coefficients are doubles, so "equal" means equal within a relative
/// 1e-12, and a coefficient that cancels to below 1e-12 of the magnitudes
/// being added is flushed to zero. Exact identities of the operator calculus
/// then hold as exact equalities of canonical forms.
class WVector {
 public:
  WVector() = default;
  explicit WVector(std::vector<GaussianTerm> terms);
  static WVector gaussian(double a, cplx b = 0.0, Polynomial P = {cplx{1.0, 0.0}});

  const std::vector<GaussianTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  WVector& operator+=(const WVector& o);
  WVector& operator-=(const WVector& o);
  friend WVector operator+(WVector u, const WVector& w) { return u += w; }
  friend WVector operator-(WVector u, const WVector& w) { return u -= w; }
  friend WVector operator*(cplx c, const WVector& w);

  /// Largest |a|, |b| and |Im b| over the terms.
  double max_a() const;
  double min_a() const;

 private:
  void canonicalize();
  std::vector<GaussianTerm> terms_;
};

/// f(x) -> f(x + lambda) for complex lambda.
WVector shift(const WVector& v, cplx lambda);
/// f(x) -> exp(mu x) f(x)
WVector multiply_exp(const WVector& v, cplx mu);

/// X: f(x) -> f(x + 2 pi i hbar)
WVector op_X(const WVector& v, double hbar, int power = 1);
/// Y: f(x) -> e^x f(x)
WVector op_Y(const WVector& v, int power = 1);
/// X_vee: f(x) -> f(x + 2 pi i)
WVector op_Xvee(const WVector& v, int power = 1);
/// Y_vee: f(x) -> e^{x/hbar} f(x)
WVector op_Yvee(const WVector& v, double hbar, int power = 1);

/// One factor of an operator word. Scalar factors ignore the exponent.
struct WordFactor {
  enum class Kind { X, Y, Xvee, Yvee, Scalar };
  Kind kind = Kind::Scalar;
  int exponent = 1;
  cplx scalar{1.0, 0.0};
};

/// Product of factors read as an operator product: the rightmost factor
/// acts first, so {X, Y} means X(Y v).
struct TorusOperatorWord {
  std::vector<WordFactor> factors;
};

WVector apply_word(const TorusOperatorWord& word, const WVector& v, double hbar);

enum class Side { Q, QVee };

/// sum c(q) X^m Y^n acting on v through (X, Y) for Side::Q or
/// (X_vee, Y_vee) for Side::QVee, with q resp. q_vee = exp(pi i / hbar).
WVector apply_element(const qtorus::QT2Element& u, Side side, const WVector& v, double hbar);
/// left (x) right, summed over the tensors.
WVector apply_modular(const qtorus::ModularSum& A, const WVector& v, double hbar);

/// integral u(x) conj(w(x)) dx over the real line, closed form.
cplx inner_product(const WVector& u, const WVector& w);
double norm(const WVector& v);

/// ||B f|| for a pure tensor B.
double seminorm(const qtorus::ModularDoubleElement& B, const WVector& f, double hbar);

std::vector<cplx> evaluate(const WVector& v, std::span<const cplx> points);
cplx evaluate(const WVector& v, cplx x);

/// ||u - w|| <= rel_tol * max(||u||, ||w||)
bool approx_equal(const WVector& u, const WVector& w, double rel_tol = 1e-12);

/// Gram matrix G_ij = (v_i, v_j).
Eigen::MatrixXcd gram_matrix(std::span<const WVector> vs);

/// Rank of the span, computed from the coefficient matrix in the basis of
/// distinct functions x^k exp(-a x^2/2 + b x) (these are linearly
/// independent), which is far better conditioned than the Gram matrix.
std::size_t rank(std::span<const WVector> vs, double rel_tol = 1e-9);

/// Options for random test vectors.
struct RandomWOptions {
  int max_terms = 2;
  int max_degree = 2;
  double a_min = 0.5, a_max = 1.5;
  double b_re_max = 0.5, b_im_max = 0.5;
  double coeff_max = 1.0;
};
WVector random_wvector(std::mt19937_64& rng, const RandomWOptions& opt = {});

/// x^n exp(-x^2/2)
WVector hermite_type(int n, double a = 1.0);

}  // namespace qpent::wspace
