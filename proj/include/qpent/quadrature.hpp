#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "qpent/errors.hpp"

namespace qpent {

using cplx = std::complex<double>;

/// Full (both halves) Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// 20-point rule, built once from Boost's tabulated positive abscissae.
const GaussRule& gauss20();

/// Integral of f over [a, b] with the 20-point rule.
template <class F>
cplx gauss_panel(F&& f, double a, double b) {
  const GaussRule& g = gauss20();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < g.nodes.size(); ++i) acc += g.weights[i] * f(mid + half * g.nodes[i]);
  return acc * half;
}

/// Same as gauss_panel but also accumulates the integral of |f|, used as
/// a roundoff floor by the adaptive drivers.
template <class F>
cplx gauss_panel(F&& f, double a, double b, double& abs_acc) {
  const GaussRule& g = gauss20();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  cplx acc{0.0, 0.0};
  double aacc = 0.0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const cplx v = f(mid + half * g.nodes[i]);
    acc += g.weights[i] * v;
    aacc += g.weights[i] * std::abs(v);
  }
  abs_acc = aacc * std::abs(half);
  return acc * half;
}

struct AdaptiveResult {
  cplx value;
  /// Integral of |f|; sets the roundoff floor of the estimate.
  double abs_integral = 0.0;
  int panels = 0;
};

/// Adaptive composite Gauss-Legendre on [a, b]. Each panel is compared with
/// the sum over its two halves (a Richardson-style estimate); a panel is
/// accepted when the difference is below its share of abs_tol or below the
/// roundoff floor. Throws QuadratureNonConvergence when more than max_panels
/// panels are needed.
template <class F>
AdaptiveResult adaptive_gauss(F&& f, double a, double b, double initial_width, double abs_tol,
                              int max_panels) {
  AdaptiveResult out{{0.0, 0.0}, 0.0, 0};
  if (!(b > a)) return out;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double length = b - a;
  const int n0 = std::max(1, static_cast<int>(std::ceil(length / std::max(initial_width, 1e-300))));
  struct Panel {
    double lo, hi;
    cplx coarse;
    double coarse_abs;
  };
  std::vector<Panel> stack;
  for (int i = n0; i-- > 0;) {
    const double lo = a + length * i / n0;
    const double hi = (i + 1 == n0) ? b : a + length * (i + 1) / n0;
    double aabs = 0.0;
    const cplx c = gauss_panel(f, lo, hi, aabs);
    stack.push_back({lo, hi, c, aabs});
  }
  int evaluated = n0;
  while (!stack.empty()) {
    const Panel p = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (p.lo + p.hi);
    double abs_l = 0.0, abs_r = 0.0;
    const cplx left = gauss_panel(f, p.lo, mid, abs_l);
    const cplx right = gauss_panel(f, mid, p.hi, abs_r);
    evaluated += 2;
    const cplx fine = left + right;
    const double err = std::abs(fine - p.coarse);
    const double share = abs_tol * (p.hi - p.lo) / length;
    const double floor = 64.0 * eps * (abs_l + abs_r);
    if (err <= std::max(share, floor) || mid <= p.lo || mid >= p.hi) {
      out.value += fine;
      out.abs_integral += abs_l + abs_r;
      ++out.panels;
      continue;
    }
    if (evaluated > max_panels)
      throw QuadratureNonConvergence("adaptive quadrature exceeded " + std::to_string(max_panels) +
                                     " panels on [" + std::to_string(a) + ", " + std::to_string(b) +
                                     "]");
    stack.push_back({mid, p.hi, right, abs_r});
    stack.push_back({p.lo, mid, left, abs_l});
  }
  return out;
}

/// log(1 + w) without cancellation for small |w|.
cplx clog1p(cplx w);

/// exp(w) - 1 without cancellation for small |w|.
cplx cexpm1(cplx w);

}  // namespace qpent
