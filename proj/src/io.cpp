#include "qpent/io.hpp"

#include <regex>
#include <stdexcept>

namespace qpent::io {

namespace {

json complex_pair(cplx z) { return json::array({z.real(), z.imag()}); }
cplx complex_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

}  // namespace

json to_json(const wspace::WVector& v) {
  json out = json::array();
  for (const auto& t : v.terms()) {
    json coeffs = json::array();
    for (const cplx& c : t.P) coeffs.push_back(complex_pair(c));
    out.push_back({{"a", t.a}, {"b_re", t.b.real()}, {"b_im", t.b.imag()}, {"coeffs", coeffs}});
  }
  return out;
}

wspace::WVector wvector_from_json(const json& j) {
  std::vector<wspace::GaussianTerm> terms;
  for (const auto& t : j) {
    wspace::GaussianTerm g;
    g.a = t.at("a").get<double>();
    g.b = {t.at("b_re").get<double>(), t.at("b_im").get<double>()};
    g.P.clear();
    for (const auto& c : t.at("coeffs")) g.P.push_back(complex_from(c));
    terms.push_back(std::move(g));
  }
  return wspace::WVector(std::move(terms));
}

json to_json(const cluster::LaurentPoly2& p) {
  json out = json::array();
  for (const auto& [e, c] : p.terms()) out.push_back({e.first, e.second, c});
  return out;
}

cluster::LaurentPoly2 laurent_from_json(const json& j) {
  cluster::LaurentPoly2 p;
  for (const auto& t : j) p.add_term(t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<Coeff>());
  return p;
}

json to_json(const qtorus::QLaurent& p) {
  json out = json::array();
  for (const auto& [k, c] : p.terms()) out.push_back({k, c});
  return out;
}

qtorus::QLaurent qlaurent_from_json(const json& j) {
  qtorus::QLaurent p;
  for (const auto& t : j) p.add(t.at(0).get<int>(), t.at(1).get<Coeff>());
  return p;
}

json to_json(const qtorus::QT2Element& e) {
  json out = json::array();
  for (const auto& [mn, c] : e.terms()) out.push_back({{"m", mn.first}, {"n", mn.second}, {"coeff", to_json(c)}});
  return out;
}

qtorus::QT2Element qt2_from_json(const json& j) {
  qtorus::QT2Element e;
  for (const auto& t : j) e.add_term(t.at("m").get<int>(), t.at("n").get<int>(), qlaurent_from_json(t.at("coeff")));
  return e;
}

json to_json(const moduli::ChordMonomial& m) {
  json weights = json::object();
  const auto& pairs = moduli::chord_pairs();
  for (std::size_t k = 0; k < pairs.size(); ++k)
    if (m.weights[k] != 0) weights[std::to_string(pairs[k].first) + std::to_string(pairs[k].second)] = m.weights[k];
  return {{"weights", weights}, {"coeff", m.coeff}};
}

moduli::ChordMonomial chord_from_json(const json& j) {
  moduli::ChordMonomial m;
  m.coeff = j.value("coeff", Coeff{1});
  for (const auto& [key, w] : j.at("weights").items()) {
    if (key.size() != 2 || key[0] < '1' || key[0] > '5' || key[1] < '1' || key[1] > '5' || key[0] == key[1])
      throw std::invalid_argument("chord weight key must be two distinct digits in 1..5, got \"" + key + "\"");
    m.set_weight(key[0] - '0', key[1] - '0', w.get<int>());
  }
  return m;
}

Rational parse_rational(const std::string& s) {
  static const std::regex re(R"(\s*([+-]?\d+)(?:/(\d+))?\s*)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw std::invalid_argument("not a rational: \"" + s + "\"");
  const BigInt num(m[1].str());
  const BigInt den(m[2].matched ? m[2].str() : std::string("1"));
  if (den == 0) throw std::invalid_argument("zero denominator in \"" + s + "\"");
  return Rational(num, den);
}

json to_json(const moduli::ProjPoint& p) { return json::array({to_string(p.u), to_string(p.v)}); }

moduli::ProjPoint projpoint_from_json(const json& j) {
  auto read = [](const json& x) { return x.is_string() ? parse_rational(x.get<std::string>()) : Rational(x.get<long long>()); };
  moduli::ProjPoint p{read(j.at(0)), read(j.at(1))};
  if (p.u == 0 && p.v == 0) throw std::invalid_argument("homogeneous point (0 : 0)");
  return p;
}

json to_json(const moduli::Config5& x) {
  json out = json::array();
  for (const auto& p : x) out.push_back(to_json(p));
  return out;
}

moduli::Config5 config_from_json(const json& j) {
  if (!j.is_array() || j.size() != 5) throw std::invalid_argument("a configuration has five points");
  moduli::Config5 x;
  for (std::size_t i = 0; i < 5; ++i) x[i] = projpoint_from_json(j[i]);
  return x;
}

json pentagon_report(double hbar, const kop::GridSpec& grid, const kop::PentagonResult& r, double runtime_ms) {
  json lambdas = json::array();
  for (const cplx& l : r.lambdas) lambdas.push_back(complex_pair(l));
  json out = {
      {"hbar", hbar},
      {"grid", {{"L", grid.half_width}, {"N", grid.size}}},
      {"lambda", complex_pair(r.lambda)},
      {"abs_lambda", std::abs(r.lambda)},
      {"spread", r.spread},
      {"residuals",
       {{"abs_lambda_deviation", r.abs_lambda_deviation},
        {"max_fit_residual", r.max_residual},
        {"per_sample", r.residuals},
        {"max_boundary", r.max_boundary}}},
      {"lambdas", lambdas},
  };
  if (runtime_ms >= 0.0) out["runtime_ms"] = runtime_ms;
  return out;
}

}  // namespace qpent::io
