#include "qpent/cluster.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qpent::cluster {

LaurentPoly2 LaurentPoly2::monomial(int m, int n, Coeff c) {
  LaurentPoly2 p;
  p.add_term(m, n, c);
  return p;
}

Coeff LaurentPoly2::coeff(int m, int n) const {
  auto it = terms_.find({m, n});
  return it == terms_.end() ? 0 : it->second;
}

void LaurentPoly2::add_term(int m, int n, Coeff c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace({m, n}, c);
  if (!inserted) {
    it->second = checked_add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly2& LaurentPoly2::operator+=(const LaurentPoly2& o) {
  for (const auto& [e, c] : o.terms_) add_term(e.first, e.second, c);
  return *this;
}

LaurentPoly2& LaurentPoly2::operator-=(const LaurentPoly2& o) {
  for (const auto& [e, c] : o.terms_) add_term(e.first, e.second, checked_mul(c, -1));
  return *this;
}

LaurentPoly2 operator*(const LaurentPoly2& a, const LaurentPoly2& b) {
  LaurentPoly2 out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term(ea.first + eb.first, ea.second + eb.second, checked_mul(ca, cb));
  return out;
}

LaurentPoly2 LaurentPoly2::scaled(Coeff c) const {
  LaurentPoly2 out;
  for (const auto& [e, v] : terms_) out.add_term(e.first, e.second, checked_mul(v, c));
  return out;
}

LaurentPoly2 LaurentPoly2::pow(unsigned e) const {
  LaurentPoly2 out = constant(1);
  LaurentPoly2 base = *this;
  while (e) {
    if (e & 1u) out = out * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return out;
}

Rational LaurentPoly2::evaluate(const Rational& x, const Rational& y) const {
  Rational sum = 0;
  for (const auto& [e, c] : terms_) sum += Rational(c) * rational_pow(x, e.first) * rational_pow(y, e.second);
  return sum;
}

std::string LaurentPoly2::to_string() const {
  std::ostringstream os;
  os << '[';
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << ", ";
    first = false;
    os << '(' << e.first << ',' << e.second << ',' << c << ')';
  }
  os << ']';
  return os.str();
}

Rational LaurentFraction2::evaluate(const Rational& x, const Rational& y) const {
  const Rational den = denominator.evaluate(x, y);
  if (den == 0) throw DegeneratePoint("denominator vanishes at the evaluation point");
  return numerator.evaluate(x, y) / den;
}

RationalPoint gamma_X_point(const Rational& x, const Rational& y) {
  if (y == 0) throw DegeneratePoint("gamma_X_point: y = 0");
  return {Rational(1) / y, (1 + y) * x};
}

RationalPoint gamma_A_point(const Rational& A, const Rational& B) {
  if (B == 0) throw DegeneratePoint("gamma_A_point: B = 0");
  return {(1 + A) / B, A};
}

TropicalPoint tropical_gamma(TropicalPoint p) { return {std::max(p.a, 0) - p.b, p.a}; }

TropicalPoint tropical_gamma_inverse(TropicalPoint p) { return {p.b, std::max(p.b, 0) - p.a}; }

TropicalPoint tropical_gamma_power(TropicalPoint p, int k) {
  k %= 5;
  if (k < 0) k += 5;
  for (int i = 0; i < k; ++i) p = tropical_gamma(p);
  return p;
}

bool in_cone(TropicalPoint p, int cone) {
  const int a = p.a, b = p.b;
  switch (cone) {
    case 1: return a <= 0 && b >= 0;
    case 2: return a <= 0 && b <= 0;
    case 3: return a >= 0 && b <= 0;
    case 4: return a >= b && b >= 0;
    case 5: return b >= a && a >= 0;
    default: throw std::invalid_argument("cone index must be in 1..5");
  }
}

std::set<int> cone_of(TropicalPoint p) {
  std::set<int> out;
  for (int k = 1; k <= 5; ++k)
    if (in_cone(p, k)) out.insert(k);
  return out;
}

namespace {

const LaurentPoly2& one_plus_X() {
  static const LaurentPoly2 p = LaurentPoly2::constant(1) + LaurentPoly2::monomial(1, 0);
  return p;
}
const LaurentPoly2& one_plus_Y() {
  static const LaurentPoly2 p = LaurentPoly2::constant(1) + LaurentPoly2::monomial(0, 1);
  return p;
}
const LaurentPoly2& one_plus_X_plus_XY() {
  static const LaurentPoly2 p = one_plus_X() + LaurentPoly2::monomial(1, 1);
  return p;
}
const LaurentPoly2& one_plus_Xinv() {
  static const LaurentPoly2 p = LaurentPoly2::constant(1) + LaurentPoly2::monomial(-1, 0);
  return p;
}
const LaurentPoly2& one_plus_Yinv() {
  static const LaurentPoly2 p = LaurentPoly2::constant(1) + LaurentPoly2::monomial(0, -1);
  return p;
}
const LaurentPoly2& one_plus_Yinv_plus_XYinv() {
  static const LaurentPoly2 p = one_plus_Yinv() + LaurentPoly2::monomial(-1, -1);
  return p;
}

void require_cone(TropicalPoint p, int row) {
  if (!in_cone(p, row))
    throw std::invalid_argument("point (" + std::to_string(p.a) + "," + std::to_string(p.b) +
                                ") is not in cone " + std::to_string(row));
}

unsigned nonneg(int e) { return static_cast<unsigned>(e); }

}  // namespace

LaurentPoly2 canonical_IA_row(TropicalPoint p, int row) {
  require_cone(p, row);
  const int a = p.a, b = p.b;
  using P = LaurentPoly2;
  switch (row) {
    case 1:
      return P::monomial(a, b);
    case 2:
      // ((1 + X)/(XY))^{-b} X^a
      return one_plus_X().pow(nonneg(-b)) * P::monomial(a + b, b);
    case 3:
      // ((1 + X + XY)/Y)^a ((1 + X)/(XY))^{-b}
      return one_plus_X_plus_XY().pow(nonneg(a)) * one_plus_X().pow(nonneg(-b)) * P::monomial(b, b - a);
    case 4:
      // ((1 + Y) X)^b ((1 + X + XY)/Y)^{a - b}
      return one_plus_Y().pow(nonneg(b)) * one_plus_X_plus_XY().pow(nonneg(a - b)) * P::monomial(b, b - a);
    case 5:
      // Y^{b - a} ((1 + Y) X)^a
      return one_plus_Y().pow(nonneg(a)) * P::monomial(a, b - a);
    default:
      throw std::invalid_argument("row must be in 1..5");
  }
}

LaurentPoly2 canonical_IA_leading_form(TropicalPoint p, int row) {
  require_cone(p, row);
  const int a = p.a, b = p.b;
  const LaurentPoly2 lead = LaurentPoly2::monomial(a, b);
  switch (row) {
    case 1: return lead;
    case 2: return lead * one_plus_Xinv().pow(nonneg(-b));
    case 3: return lead * one_plus_Xinv().pow(nonneg(-b)) * one_plus_Yinv_plus_XYinv().pow(nonneg(a));
    case 4: return lead * one_plus_Yinv().pow(nonneg(b)) * one_plus_Yinv_plus_XYinv().pow(nonneg(a - b));
    case 5: return lead * one_plus_Yinv().pow(nonneg(a));
    default: throw std::invalid_argument("row must be in 1..5");
  }
}

namespace {

// IA values are reused heavily by the basis expansion, so they are memoized.
struct IACache {
  std::mutex mu;
  std::map<TropicalPoint, LaurentPoly2> values;
};

IACache& ia_cache() {
  static IACache cache;
  return cache;
}

LaurentPoly2 compute_IA(TropicalPoint p) {
  const std::set<int> cones = cone_of(p);
  const LaurentPoly2 first = canonical_IA_row(p, *cones.begin());
  for (int k : cones) {
    if (canonical_IA_row(p, k) != first)
      throw std::logic_error("row formulas disagree at (" + std::to_string(p.a) + "," + std::to_string(p.b) + ")");
  }
  return first;
}

}  // namespace

LaurentPoly2 canonical_IA(TropicalPoint p) {
  IACache& cache = ia_cache();
  {
    std::lock_guard lock(cache.mu);
    auto it = cache.values.find(p);
    if (it != cache.values.end()) return it->second;
  }
  LaurentPoly2 value = compute_IA(p);
  std::lock_guard lock(cache.mu);
  return cache.values.emplace(p, std::move(value)).first->second;
}

LaurentFraction2 pullback_gamma_X(const LaurentPoly2& F) {
  // X^m Y^n -> Y^{-m} (1 + Y)^n X^n. Negative n puts (1 + Y)^{-n} in the
  // denominator; everything is brought over (1 + Y)^N with N = max(-n, 0).
  int N = 0;
  for (const auto& [e, c] : F.terms()) N = std::max(N, -e.second);
  std::vector<LaurentPoly2> powers(1, LaurentPoly2::constant(1));
  LaurentFraction2 out;
  for (const auto& [e, c] : F.terms()) {
    const int k = e.second + N;
    while (static_cast<int>(powers.size()) <= k) powers.push_back(powers.back() * one_plus_Y());
    out.numerator += powers[static_cast<std::size_t>(k)] * LaurentPoly2::monomial(e.second, -e.first, c);
  }
  while (static_cast<int>(powers.size()) <= N) powers.push_back(powers.back() * one_plus_Y());
  out.denominator = powers[static_cast<std::size_t>(N)];
  return out;
}

bool equivariance_check(TropicalPoint p) {
  return pullback_gamma_X(canonical_IA(tropical_gamma(p))).equals(canonical_IA(p));
}

bool positivity_check(TropicalPoint p) {
  for (int i = 0; i < 5; ++i) {
    const LaurentPoly2 f = canonical_IA(tropical_gamma_power(p, i));
    for (const auto& [e, c] : f.terms())
      if (c <= 0) return false;
  }
  return true;
}

bool leading_monomial_check(TropicalPoint p) {
  const LaurentPoly2 f = canonical_IA(p);
  if (f.coeff(p.a, p.b) != 1) return false;
  for (const auto& [e, c] : f.terms()) {
    if (e == Exponent{p.a, p.b}) continue;
    if (!(e.first <= p.a && e.second <= p.b)) return false;
  }
  return true;
}

Exponent elimination_leader(const LaurentPoly2& f) {
  if (f.is_zero()) throw std::invalid_argument("zero polynomial has no leading monomial");
  Exponent best = f.terms().begin()->first;
  for (const auto& [e, c] : f.terms()) {
    const int s = e.first + e.second, sb = best.first + best.second;
    if (s > sb || (s == sb && e > best)) best = e;
  }
  return best;
}

std::map<TropicalPoint, Coeff> multiply_in_basis_classical(TropicalPoint p, TropicalPoint p2, int max_steps) {
  LaurentPoly2 rest = canonical_IA(p) * canonical_IA(p2);
  std::map<TropicalPoint, Coeff> out;
  int steps = 0;
  while (!rest.is_zero()) {
    if (++steps > max_steps) throw BasisExpansionFailure("basis expansion did not terminate");
    const Exponent lead = elimination_leader(rest);
    const Coeff c = rest.coeff(lead.first, lead.second);
    const TropicalPoint r{lead.first, lead.second};
    const LaurentPoly2 basis = canonical_IA(r);
    if (basis.coeff(r.a, r.b) != 1)
      throw BasisExpansionFailure("no basis element with leading monomial (" + std::to_string(r.a) + "," +
                                  std::to_string(r.b) + ")");
    rest -= basis.scaled(c);
    if (rest.coeff(lead.first, lead.second) != 0)
      throw BasisExpansionFailure("leading monomial did not cancel");
    Coeff& slot = out[r];
    slot = checked_add(slot, c);
    if (slot == 0) out.erase(r);
  }
  return out;
}

std::string dump_line(TropicalPoint p, const LaurentPoly2& f) {
  return std::to_string(p.a) + " " + std::to_string(p.b) + " : " + f.to_string();
}

}  // namespace qpent::cluster
