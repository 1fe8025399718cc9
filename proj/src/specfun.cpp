#include "qpent/specfun.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qpent/errors.hpp"

namespace qpent::specfun {

namespace {

constexpr double pi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

std::string describe(cplx z) {
  std::ostringstream os;
  os << "(" << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i)";
  return os.str();
}

// Folded real-axis integrand: f(p) + f(-p) for p > 0, where
// f(p) = e^{-ipz} / (sh(pi p) sh(pi hbar p) p). Written with decaying
// exponentials so nothing overflows for large p.
struct RealIntegrand {
  cplx z;
  cplx hbar;

  cplx operator()(double p) const {
    const cplx decay = -pi * (1.0 + hbar) * p;
    const cplx den = (-std::expm1(-2.0 * pi * p)) * (-cexpm1(-2.0 * pi * hbar * p)) * p;
    if (std::abs(z.imag()) * p < 20.0) {
      // 4 (e^{-ipz} - e^{ipz}) = -8 i sin(pz): avoids cancellation at small p.
      return -8.0 * I * std::sin(p * z) * std::exp(decay) / den;
    }
    return 4.0 * (std::exp(-I * p * z + decay) - std::exp(I * p * z + decay)) / den;
  }
};

// Integrand over the half circle p = r e^{i theta}, theta in [0, pi]; the 1/p
// of the measure cancels against dp = i p dtheta.
struct ArcIntegrand {
  cplx z;
  cplx hbar;
  double radius;

  cplx operator()(double theta) const {
    const cplx p = std::polar(radius, theta);
    return std::exp(-I * p * z) / (std::sinh(pi * p) * std::sinh(pi * hbar * p));
  }
};

double tail_bound(double T, double delta, const PhiParams& params) {
  const double c = (-std::expm1(-2.0 * pi * T)) * (-std::expm1(-2.0 * pi * params.hbar().real() * T));
  return 8.0 * std::exp(-delta * T) / (delta * T * c);
}

}  // namespace

PhiParams::PhiParams(cplx hbar) : hbar_(hbar) {
  if (!(std::isfinite(hbar.real()) && std::isfinite(hbar.imag())))
    throw Error("hbar must be finite");
  if (hbar.imag() == 0.0) {
    if (!(hbar.real() > 0.0)) throw Error("real hbar must be positive");
  } else if (hbar.imag() < 0.0 || !(hbar.real() > 0.0)) {
    throw Error("complex hbar needs Re hbar > 0 and Im hbar >= 0");
  }
}

cplx PhiParams::q() const { return std::exp(I * pi * hbar_); }
cplx PhiParams::q_vee() const { return std::exp(I * pi / hbar_); }
double PhiParams::strip_half_width() const { return pi * (1.0 + hbar_.real()); }

void QuadratureConfig::validate(const PhiParams& params) const {
  if (!(rel_tol > 0.0)) throw Error("QuadratureConfig.rel_tol must be positive");
  if (max_panels <= 0) throw Error("QuadratureConfig.max_panels must be positive");
  if (semicircle_radius < 0.0 || truncation < 0.0) throw Error("QuadratureConfig: negative radius or truncation");
  if (semicircle_radius > 0.0) {
    const double limit = std::min(1.0, 1.0 / std::abs(params.hbar())) / 2.0;
    if (!(semicircle_radius < limit))
      throw Error("semicircle radius must stay below min(1, 1/|hbar|)/2");
  }
}

double default_semicircle_radius(const PhiParams& params) {
  return std::min(1.0, 1.0 / std::abs(params.hbar())) / 4.0;
}

double default_truncation(cplx z, const PhiParams& params, double rel_tol) {
  const double delta = params.strip_half_width() - std::abs(z.imag());
  if (!(delta > 0.0)) throw StripViolation("z = " + describe(z) + " is outside the convergence strip");
  const double target = 0.01 * rel_tol;
  double T = std::max(1.0, 2.0 * default_semicircle_radius(params));
  while (tail_bound(T, delta, params) > target) {
    T *= 1.05;
    if (T > 1e7) throw QuadratureNonConvergence("no finite truncation meets the tail bound");
  }
  return T;
}

cplx phi_exponent(cplx z, const PhiParams& params, const QuadratureConfig& cfg) {
  cfg.validate(params);
  if (!(std::abs(z.imag()) < params.strip_half_width()))
    throw StripViolation("z = " + describe(z) + " violates |Im z| < pi(1 + Re hbar) = " +
                         std::to_string(params.strip_half_width()));
  const cplx hbar = params.hbar();
  const double r = cfg.semicircle_radius > 0.0 ? cfg.semicircle_radius : default_semicircle_radius(params);
  const double T = cfg.truncation > 0.0 ? cfg.truncation : default_truncation(z, params, cfg.rel_tol);
  if (!(T > r)) throw Error("truncation must exceed the semicircle radius");

  // The exponent is -I/4, so an absolute error 4 tol in I is tol in log Phi.
  const double tol = 2.0 * cfg.rel_tol;

  const auto arc = adaptive_gauss(ArcIntegrand{z, hbar, r}, 0.0, pi, pi / 4.0, tol, cfg.max_panels);
  const cplx arc_integral = -I * arc.value;

  const double freq = std::abs(z.real()) + pi * std::abs(hbar.imag()) + 1e-300;
  const double width = std::min(0.5, 4.0 * pi / freq);
  const auto line =
      adaptive_gauss(RealIntegrand{z, hbar}, r, T, width, tol, cfg.max_panels - arc.panels);

  return -0.25 * (arc_integral + line.value);
}

cplx phi_integral(cplx z, const PhiParams& params, const QuadratureConfig& cfg) {
  return std::exp(phi_exponent(z, params, cfg));
}

ProductValue psi_q(cplx x, cplx q, int n_max) {
  const double aq = std::abs(q);
  if (!(aq < 1.0)) throw DivergentProduct("Psi^q needs |q| < 1, got |q| = " + std::to_string(aq));
  const double ax = std::abs(x);
  if (ax == 0.0) return {{1.0, 0.0}, 0.0};
  if (n_max <= 0) {
    // Dropped tail |q|^{2n+1}|x| / (1 - |q|^2) below 1e-18.
    const double need = std::log(1e-18 * (1.0 - aq * aq) / ax) / std::log(aq);
    n_max = std::max(1, static_cast<int>(std::ceil((need - 1.0) / 2.0)) + 1);
  }
  cplx prod{1.0, 0.0};
  cplx qpow = q;  // q^{2a-1}
  const cplx q2 = q * q;
  for (int a = 1; a <= n_max; ++a) {
    const cplx term = qpow * x;
    const cplx factor = 1.0 + term;
    if (std::abs(factor) <= 1e-14 * (1.0 + std::abs(term)))
      throw PoleHit("Psi^q factor 1 + q^" + std::to_string(2 * a - 1) + " x vanishes");
    prod *= factor;
    qpow *= q2;
  }
  const double tail = std::pow(aq, 2.0 * n_max + 1.0) * ax / (1.0 - aq * aq);
  return {1.0 / prod, tail < 0.5 ? tail / (1.0 - tail) : tail};
}

cplx phi_product(cplx z, const PhiParams& params, int n_max) {
  if (!(params.hbar().imag() > 0.0)) throw DivergentProduct("the product expansion needs Im hbar > 0");
  const cplx hbar = params.hbar();
  const auto num = psi_q(std::exp(z), params.q(), n_max);
  const auto den = psi_q(std::exp(z / hbar), 1.0 / params.q_vee(), n_max);
  return num.value / den.value;
}

cplx dilog_L2(cplx x, double rel_tol, DilogPath path) {
  if (x == cplx{0.0, 0.0}) return {0.0, 0.0};
  if (x.imag() == 0.0 && x.real() <= -1.0)
    throw BranchCut("the segment [0, x] meets the cut t <= -1 of log(1 + t)");
  if (path == DilogPath::Series && !(std::abs(x) < 1.0)) throw Error("the L2 series needs |x| < 1");
  const bool series = path == DilogPath::Series || (path == DilogPath::Automatic && std::abs(x) <= 0.5);
  if (series) {
    // sum_{n>=1} (-1)^{n+1} x^n / n^2
    cplx sum{0.0, 0.0};
    cplx pw = x;
    for (int n = 1; n < 100000; ++n) {
      const cplx term = pw / static_cast<double>(n) / static_cast<double>(n);
      sum += (n % 2 == 1) ? term : -term;
      if (std::abs(term) < 0.01 * rel_tol * std::abs(sum)) break;
      pw *= x;
    }
    return sum;
  }
  const auto integrand = [x](double s) { return clog1p(s * x) / s; };
  return adaptive_gauss(integrand, 0.0, 1.0, 0.25, rel_tol * std::max(1.0, std::abs(x)), 100000).value;
}

std::vector<double> asymptotic_residual(double z, std::span<const double> hbars, const QuadratureConfig& cfg) {
  const cplx l2 = dilog_L2(std::exp(z));
  std::vector<double> out;
  out.reserve(hbars.size());
  for (double h : hbars) {
    if (!(h > 0.0 && h <= 0.5)) throw Error("asymptotic_residual expects hbar in (0, 0.5]");
    const cplx e = phi_exponent(z, PhiParams(h), cfg);
    out.push_back(std::abs(2.0 * pi * I * h * e - l2));
  }
  return out;
}

cplx zero_location(int m, int n, cplx hbar) {
  if (m < 1 || n < 1) throw Error("zero_location needs m, n >= 1");
  return pi * I * (static_cast<double>(2 * m - 1) + static_cast<double>(2 * n - 1) * hbar);
}

cplx pole_location(int m, int n, cplx hbar) {
  if (m < 1 || n < 1) throw Error("pole_location needs m, n >= 1");
  return -pi * I * (static_cast<double>(2 * m - 1) + static_cast<double>(2 * n - 1) * hbar);
}

double duality_residual(cplx z, double hbar, const QuadratureConfig& cfg) {
  const cplx a = phi_integral(z, PhiParams(hbar), cfg);
  const cplx b = phi_integral(z / hbar, PhiParams(1.0 / hbar), cfg);
  return std::abs(a - b);
}

double relative_difference(cplx a, cplx b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

double shift_residual_hbar(cplx z, const PhiParams& params, const QuadratureConfig& cfg) {
  const cplx shifted = phi_integral(z + 2.0 * pi * I * params.hbar(), params, cfg);
  const cplx rhs = phi_integral(z, params, cfg) * (1.0 + params.q() * std::exp(z));
  return relative_difference(shifted, rhs);
}

double shift_residual_unit(cplx z, const PhiParams& params, const QuadratureConfig& cfg) {
  const cplx shifted = phi_integral(z + 2.0 * pi * I, params, cfg);
  const cplx rhs = phi_integral(z, params, cfg) * (1.0 + params.q_vee() * std::exp(z / params.hbar()));
  return relative_difference(shifted, rhs);
}

}  // namespace qpent::specfun
