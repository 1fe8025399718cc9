#pragma once

// Quantum dilogarithm Phi^hbar: contour-integral and product evaluations,
// the classical dilogarithm L2, and residual evaluators for the functional
// identities Phi satisfies.

#include <complex>
#include <span>
#include <vector>

#include "qpent/quadrature.hpp"

namespace qpent::specfun {

/// Planck parameter. Either real positive, or complex with Re > 0 and Im >= 0.
/// q and q_vee are always derived from hbar on demand.
class PhiParams {
 public:
  explicit PhiParams(cplx hbar);
  PhiParams(double hbar) : PhiParams(cplx{hbar, 0.0}) {}  // NOLINT(google-explicit-constructor)

  cplx hbar() const { return hbar_; }
  /// q = exp(pi i hbar)
  cplx q() const;
  /// q_vee = exp(pi i / hbar)
  cplx q_vee() const;
  bool is_real() const { return hbar_.imag() == 0.0; }
  /// Half-width pi (1 + Re hbar) of the strip where the integral converges.
  double strip_half_width() const;

 private:
  cplx hbar_;
};

/// Discretization of the contour: two real segments (-T, -r), (r, T) joined
/// by an upper half circle of radius r. Zero radius / truncation mean "pick
/// automatically from hbar and z".
struct QuadratureConfig {
  double semicircle_radius = 0.0;
  double truncation = 0.0;
  double rel_tol = 1e-13;
  int max_panels = 200000;

  void validate(const PhiParams& params) const;
};

/// Radius used when QuadratureConfig::semicircle_radius is zero.
double default_semicircle_radius(const PhiParams& params);

/// Truncation point used when QuadratureConfig::truncation is zero, from the
/// tail bound |integrand| <= 8 exp((|Im z| - pi(1 + Re hbar)) p) / p.
double default_truncation(cplx z, const PhiParams& params, double rel_tol);

/// The exponent  -1/4 * integral_Omega e^{-ipz} / (sh(pi p) sh(pi hbar p)) dp/p,
/// i.e. log Phi^hbar(z) on the branch continuous from the integral itself.
/// Absolute error of the exponent is controlled by cfg.rel_tol.
cplx phi_exponent(cplx z, const PhiParams& params, const QuadratureConfig& cfg = {});

/// Phi^hbar(z) from the contour integral. Throws StripViolation outside the
/// strip |Im z| < pi(1 + Re hbar), QuadratureNonConvergence if the panel
/// budget is exhausted.
cplx phi_integral(cplx z, const PhiParams& params, const QuadratureConfig& cfg = {});

struct ProductValue {
  cplx value;
  /// Bound on |log(exact) - log(value)| from the dropped factors.
  double truncation_error;
};

/// Psi^q(x) = prod_{a=1}^{n_max} (1 + q^{2a-1} x)^{-1}. n_max <= 0 picks the
/// number of factors so the dropped tail is below double precision.
ProductValue psi_q(cplx x, cplx q, int n_max = 0);

/// Phi^hbar(z) = Psi^q(e^z) / Psi^{1/q_vee}(e^{z/hbar}); requires Im hbar > 0.
cplx phi_product(cplx z, const PhiParams& params, int n_max = 0);

enum class DilogPath { Automatic, Series, Quadrature };

/// L2(x) = integral_0^x log(1+t) dt/t along the straight segment [0, x].
/// Automatic uses the alternating series for |x| <= 1/2 and adaptive
/// quadrature otherwise; Series requires |x| < 1.
cplx dilog_L2(cplx x, double rel_tol = 1e-14, DilogPath path = DilogPath::Automatic);

/// |2 pi i hbar log Phi^hbar(z) - L2(e^z)| for each hbar in hbars.
std::vector<double> asymptotic_residual(double z, std::span<const double> hbars,
                                        const QuadratureConfig& cfg = {});

/// pi i ((2m-1) + (2n-1) hbar), m, n >= 1.
cplx zero_location(int m, int n, cplx hbar);
/// -pi i ((2m-1) + (2n-1) hbar), m, n >= 1.
cplx pole_location(int m, int n, cplx hbar);

/// |Phi^hbar(z) - Phi^{1/hbar}(z/hbar)|
double duality_residual(cplx z, double hbar, const QuadratureConfig& cfg = {});

/// Relative residual of Phi(z + 2 pi i hbar) = Phi(z) (1 + q e^z).
double shift_residual_hbar(cplx z, const PhiParams& params, const QuadratureConfig& cfg = {});
/// Relative residual of Phi(z + 2 pi i) = Phi(z) (1 + q_vee e^{z/hbar}).
double shift_residual_unit(cplx z, const PhiParams& params, const QuadratureConfig& cfg = {});

/// Relative difference |a - b| / max(|a|, |b|), zero when both vanish.
double relative_difference(cplx a, cplx b);

}  // namespace qpent::specfun
