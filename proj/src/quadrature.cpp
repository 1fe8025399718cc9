#include "qpent/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

namespace qpent {

const GaussRule& gauss20() {
  static const GaussRule rule = [] {
    using G = boost::math::quadrature::gauss<double, 20>;
    GaussRule r;
    const auto& x = G::abscissa();
    const auto& w = G::weights();
    // Boost stores the non-negative half; 20 is even so there is no zero node.
    for (std::size_t i = x.size(); i-- > 0;) {
      r.nodes.push_back(-x[i]);
      r.weights.push_back(w[i]);
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
      r.nodes.push_back(x[i]);
      r.weights.push_back(w[i]);
    }
    return r;
  }();
  return rule;
}

cplx clog1p(cplx w) {
  const double re = w.real();
  const double im = w.imag();
  const double mod = 0.5 * std::log1p(2.0 * re + re * re + im * im);
  return {mod, std::atan2(im, 1.0 + re)};
}

cplx cexpm1(cplx w) {
  const double x = w.real();
  const double y = w.imag();
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

}  // namespace qpent
