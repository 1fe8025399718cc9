#pragma once

// JSON and CSV encodings of the library's values.

#include <string>

#include "json.hpp"
#include "qpent/cluster.hpp"
#include "qpent/kop.hpp"
#include "qpent/moduli.hpp"
#include "qpent/qtorus.hpp"
#include "qpent/wspace.hpp"

namespace qpent::io {

using nlohmann::json;

/// [{a, b_re, b_im, coeffs: [[re, im], ...]}, ...]
json to_json(const wspace::WVector& v);
wspace::WVector wvector_from_json(const json& j);

/// [[m, n, coeff], ...]
json to_json(const cluster::LaurentPoly2& p);
cluster::LaurentPoly2 laurent_from_json(const json& j);

/// [[k, coeff], ...]
json to_json(const qtorus::QLaurent& p);
qtorus::QLaurent qlaurent_from_json(const json& j);

/// [{m, n, coeff: <QLaurent>}, ...]
json to_json(const qtorus::QT2Element& e);
qtorus::QT2Element qt2_from_json(const json& j);

/// {weights: {"12": n, ...}, coeff: n}; zero weights are omitted.
json to_json(const moduli::ChordMonomial& m);
moduli::ChordMonomial chord_from_json(const json& j);

/// [u, v] with exact rationals written as strings "p/q".
json to_json(const moduli::ProjPoint& p);
moduli::ProjPoint projpoint_from_json(const json& j);
json to_json(const moduli::Config5& x);
moduli::Config5 config_from_json(const json& j);

/// {hbar, grid: {L, N}, lambda: [re, im], abs_lambda, spread, residuals: {...}}.
/// runtime_ms is added only when nonnegative, so reports stay reproducible.
json pentagon_report(double hbar, const kop::GridSpec& grid, const kop::PentagonResult& r, double runtime_ms = -1.0);

/// Rational from "p/q" or "p"; throws std::invalid_argument otherwise.
Rational parse_rational(const std::string& s);

}  // namespace qpent::io
