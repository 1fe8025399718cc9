#include "qpent/qtorus.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qpent::qtorus {

// ---------------------------------------------------------------- QLaurent

QLaurent QLaurent::q_power(int k, Coeff c) {
  QLaurent p;
  p.add(k, c);
  return p;
}

Coeff QLaurent::coeff(int k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? 0 : it->second;
}

void QLaurent::add(int k, Coeff c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second = checked_add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

QLaurent& QLaurent::operator+=(const QLaurent& o) {
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

QLaurent& QLaurent::operator-=(const QLaurent& o) {
  for (const auto& [k, c] : o.terms_) add(k, checked_mul(c, -1));
  return *this;
}

QLaurent operator*(const QLaurent& a, const QLaurent& b) {
  QLaurent out;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) out.add(ka + kb, checked_mul(ca, cb));
  return out;
}

QLaurent QLaurent::operator-() const {
  QLaurent out;
  for (const auto& [k, c] : terms_) out.add(k, checked_mul(c, -1));
  return out;
}

QLaurent QLaurent::shifted(int k) const {
  QLaurent out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(e + k, c);
  return out;
}

QLaurent QLaurent::bar() const {
  QLaurent out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(-e, c);
  return out;
}

std::complex<double> QLaurent::evaluate(std::complex<double> q) const {
  std::complex<double> sum{0.0, 0.0};
  for (const auto& [k, c] : terms_) sum += static_cast<double>(c) * std::pow(q, k);
  return sum;
}

Coeff QLaurent::at_one() const {
  Coeff s = 0;
  for (const auto& [k, c] : terms_) s = checked_add(s, c);
  return s;
}

bool QLaurent::nonnegative() const {
  for (const auto& [k, c] : terms_)
    if (c < 0) return false;
  return true;
}

std::string QLaurent::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << '-';
    first = false;
    os << (c < 0 ? -c : c) << " q^" << k;
  }
  return os.str();
}

// -------------------------------------------------------------- QT2Element

QT2Element QT2Element::monomial(int m, int n, const QLaurent& c) {
  QT2Element u;
  u.add_term(m, n, c);
  return u;
}

QT2Element QT2Element::M(int m, int n) { return monomial(m, n, QLaurent::q_power(-m * n)); }

QLaurent QT2Element::coeff(int m, int n) const {
  auto it = terms_.find({m, n});
  return it == terms_.end() ? QLaurent() : it->second;
}

void QT2Element::add_term(int m, int n, const QLaurent& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace({m, n}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

QT2Element& QT2Element::operator+=(const QT2Element& o) {
  for (const auto& [e, c] : o.terms_) add_term(e.first, e.second, c);
  return *this;
}

QT2Element& QT2Element::operator-=(const QT2Element& o) {
  for (const auto& [e, c] : o.terms_) add_term(e.first, e.second, -c);
  return *this;
}

QT2Element operator*(const QT2Element& u, const QT2Element& v) {
  QT2Element out;
  for (const auto& [eu, cu] : u.terms_)
    for (const auto& [ev, cv] : v.terms_) {
      // X^a Y^b X^c Y^d = q^{-2bc} X^{a+c} Y^{b+d}
      const int shift = -2 * eu.second * ev.first;
      out.add_term(eu.first + ev.first, eu.second + ev.second, (cu * cv).shifted(shift));
    }
  return out;
}

QT2Element QT2Element::scaled(const QLaurent& c) const {
  QT2Element out;
  for (const auto& [e, v] : terms_) out.add_term(e.first, e.second, v * c);
  return out;
}

std::string QT2Element::to_string() const {
  std::ostringstream os;
  os << '[';
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << ", ";
    first = false;
    os << '(' << e.first << ", " << e.second << ", " << c.to_string() << ')';
  }
  os << ']';
  return os.str();
}

QT2Element multiply(const QT2Element& u, const QT2Element& v) { return u * v; }

QT2Element star(const QT2Element& u) {
  // *(c X^m Y^n) = c(q^{-1}) Y^n X^m = c(q^{-1}) q^{-2mn} X^m Y^n
  QT2Element out;
  for (const auto& [e, c] : u.terms()) out.add_term(e.first, e.second, c.bar().shifted(-2 * e.first * e.second));
  return out;
}

// -------------------------------------------------------------- membership

std::map<int, QLaurent> membership_divisor(int n) {
  std::map<int, QLaurent> d{{0, QLaurent(1)}};
  for (int j = 0; j < n; ++j) {
    // multiply by (1 + q^{-2j-1} X^{-1})
    std::map<int, QLaurent> next = d;
    for (const auto& [a, c] : d) {
      QLaurent& slot = next[a - 1];
      slot += c.shifted(-2 * j - 1);
    }
    d = std::move(next);
  }
  return d;
}

namespace {

// Exact division of C(X) by D_n(X), both as X-exponent -> coefficient maps.
// D_n has top coefficient 1 at X^0 and bottom coefficient q^{-n^2} at X^{-n},
// so long division from the top stays in Z[q, q^{-1}].
bool divide_by_divisor(std::map<int, QLaurent> rest, int n, std::map<int, QLaurent>& quotient) {
  static std::mutex mu;
  static std::map<int, std::map<int, QLaurent>> divisors;
  std::map<int, QLaurent> D;
  {
    std::lock_guard lock(mu);
    auto it = divisors.find(n);
    if (it == divisors.end()) it = divisors.emplace(n, membership_divisor(n)).first;
    D = it->second;
  }
  quotient.clear();
  while (!rest.empty()) {
    const auto top = std::prev(rest.end());
    const int a = top->first;
    const QLaurent c = top->second;
    if (a - n < rest.begin()->first) return false;  // remainder has lower degree than D_n
    quotient[a] = c;
    for (const auto& [k, d] : D) {
      QLaurent& slot = rest[a + k];
      slot -= c * d;
      if (slot.is_zero()) rest.erase(a + k);
    }
  }
  return true;
}

}  // namespace

LqDecomposition membership_Lq_prime(const QT2Element& u) {
  LqDecomposition out;
  std::map<int, std::map<int, QLaurent>> by_degree;
  for (const auto& [e, c] : u.terms()) {
    if (e.second >= 0) out.nonnegative_part.add_term(e.first, e.second, c);
    else by_degree[-e.second][e.first] = c;
  }
  for (auto& [n, comp] : by_degree) {
    std::map<int, QLaurent> quotient;
    if (!divide_by_divisor(comp, n, quotient))
      throw NonMember("Y^{-" + std::to_string(n) + "} component is not divisible by D_" + std::to_string(n) + "(X)",
                      -n);
    out.quotients[n] = std::move(quotient);
  }
  return out;
}

bool is_member_Lq_prime(const QT2Element& u) {
  try {
    membership_Lq_prime(u);
    return true;
  } catch (const NonMember&) {
    return false;
  }
}

// ------------------------------------------------------------------- gamma

namespace {

// (1 + qY) X = X + q^{-1} X Y
const QT2Element& gamma_of_Y() {
  static const QT2Element g = QT2Element::monomial(1, 0) + QT2Element::monomial(1, 1, QLaurent::q_power(-1));
  return g;
}

QT2Element gamma_of_Y_power(int m) {
  static std::mutex mu;
  static std::vector<QT2Element> powers{QT2Element::scalar(1)};
  std::lock_guard lock(mu);
  while (static_cast<int>(powers.size()) <= m) powers.push_back(powers.back() * gamma_of_Y());
  return powers[static_cast<std::size_t>(m)];
}

}  // namespace

QT2Element apply_gamma_q(const QT2Element& u) {
  const LqDecomposition dec = membership_Lq_prime(u);
  QT2Element out;
  // First family: X^a Y^m -> Y^{-a} ((1 + qY) X)^m
  for (const auto& [e, c] : dec.nonnegative_part.terms())
    out += (QT2Element::monomial(0, -e.first) * gamma_of_Y_power(e.second)).scaled(c);
  // Second family: X^a D_n(X) Y^{-n} -> q^{-2an} X^{-n} Y^{-a}
  for (const auto& [n, quotient] : dec.quotients)
    for (const auto& [a, c] : quotient) out.add_term(-n, -a, c.shifted(-2 * a * n));
  return out;
}

QT2Element apply_gamma_q_power(QT2Element u, int k) {
  if (k < 0) throw std::invalid_argument("apply_gamma_q_power: k must be >= 0");
  for (int i = 0; i < k; ++i) u = apply_gamma_q(u);
  return u;
}

ModularSum apply_gamma_modular(const ModularSum& A) {
  ModularSum out;
  out.reserve(A.size());
  for (const auto& t : A) out.push_back({apply_gamma_q(t.left), apply_gamma_q(t.right)});
  return out;
}

// ---------------------------------------------------------- canonical basis

QT2Element canonical_IAq(TropicalPoint p) {
  static std::mutex mu;
  static std::map<TropicalPoint, QT2Element> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
  }
  int j = 0;
  TropicalPoint s = p;
  while (!cluster::in_cone(s, 1)) {
    s = cluster::tropical_gamma(s);
    if (++j > 4) throw std::logic_error("tropical orbit misses cone 1");
  }
  // gamma_q^j I^q(gamma_a^j p) = I^q(p)
  QT2Element value = apply_gamma_q_power(QT2Element::M(s.a, s.b), j);
  std::lock_guard lock(mu);
  return cache.emplace(p, std::move(value)).first->second;
}

QT2Element termwise_symmetrization(TropicalPoint p) {
  QT2Element out;
  const cluster::LaurentPoly2 classical = cluster::canonical_IA(p);
  for (const auto& [e, c] : classical.terms())
    out.add_term(e.first, e.second, QLaurent::q_power(-e.first * e.second, c));
  return out;
}

cluster::LaurentPoly2 specialize_q1(const QT2Element& u) {
  cluster::LaurentPoly2 out;
  for (const auto& [e, c] : u.terms()) out.add_term(e.first, e.second, c.at_one());
  return out;
}

Exponent elimination_leader(const QT2Element& u) {
  if (u.is_zero()) throw std::invalid_argument("zero element has no leading monomial");
  Exponent best = u.terms().begin()->first;
  for (const auto& [e, c] : u.terms()) {
    const int s = e.first + e.second, sb = best.first + best.second;
    if (s > sb || (s == sb && e > best)) best = e;
  }
  return best;
}

std::map<TropicalPoint, QLaurent> multiply_in_basis_q(TropicalPoint p, TropicalPoint p2, int max_steps) {
  QT2Element rest = canonical_IAq(p) * canonical_IAq(p2);
  std::map<TropicalPoint, QLaurent> out;
  int steps = 0;
  while (!rest.is_zero()) {
    if (++steps > max_steps) throw BasisExpansionFailure("q-basis expansion did not terminate");
    const Exponent lead = elimination_leader(rest);
    const TropicalPoint r{lead.first, lead.second};
    const QT2Element basis = canonical_IAq(r);
    if (basis.coeff(r.a, r.b) != QLaurent::q_power(-r.a * r.b))
      throw BasisExpansionFailure("no basis element with leading monomial (" + std::to_string(r.a) + "," +
                                  std::to_string(r.b) + ")");
    // basis has q^{-ab} at its leader, so the multiplier is c q^{ab}.
    const QLaurent c = rest.coeff(lead.first, lead.second).shifted(r.a * r.b);
    rest -= basis.scaled(c);
    if (!rest.coeff(lead.first, lead.second).is_zero())
      throw BasisExpansionFailure("leading monomial did not cancel");
    QLaurent& slot = out[r];
    slot += c;
    if (slot.is_zero()) out.erase(r);
  }
  return out;
}

bool coefficients_nonnegative(const QT2Element& u) {
  for (const auto& [e, c] : u.terms())
    if (!c.nonnegative()) return false;
  return true;
}

// ------------------------------------------------------------ matrix model

ClockShift clock_shift_generators(int N, std::complex<double> alpha, std::complex<double> beta) {
  if (N < 3 || N % 2 == 0) throw EvenN("clock_shift_model needs an odd N >= 3, got " + std::to_string(N));
  if (alpha == 0.0 || beta == 0.0) throw Error("clock_shift_model: alpha and beta must be nonzero");
  const double two_pi = 2.0 * std::numbers::pi;
  ClockShift g;
  g.N = N;
  g.q = std::polar(1.0, two_pi / N);
  const std::complex<double> ra = std::pow(alpha, 1.0 / N);
  const std::complex<double> rb = std::pow(beta, 1.0 / N);
  g.X = Eigen::MatrixXcd::Zero(N, N);
  g.Xinv = Eigen::MatrixXcd::Zero(N, N);
  g.Y = Eigen::MatrixXcd::Zero(N, N);
  g.Yinv = Eigen::MatrixXcd::Zero(N, N);
  for (int j = 0; j < N; ++j) {
    // q^{2(j+1)} with the exponent reduced mod N to keep the phase exact.
    const std::complex<double> d = ra * std::polar(1.0, two_pi * ((2 * (j + 1)) % N) / N);
    g.X(j, j) = d;
    g.Xinv(j, j) = 1.0 / d;
    g.Y((j + 1) % N, j) = rb;
    g.Yinv(j, (j + 1) % N) = 1.0 / rb;
  }
  return g;
}

Eigen::MatrixXcd clock_shift_model(const QT2Element& u, int N, std::complex<double> alpha, std::complex<double> beta) {
  const ClockShift g = clock_shift_generators(N, alpha, beta);
  auto power = [](const Eigen::MatrixXcd& m, const Eigen::MatrixXcd& minv, int e) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    const Eigen::MatrixXcd& base = e >= 0 ? m : minv;
    for (int i = 0; i < std::abs(e); ++i) out = out * base;
    return out;
  };
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(N, N);
  for (const auto& [e, c] : u.terms()) {
    std::complex<double> coeff{0.0, 0.0};
    for (const auto& [k, v] : c.terms()) {
      const int r = ((k % N) + N) % N;
      coeff += static_cast<double>(v) * std::polar(1.0, 2.0 * std::numbers::pi * r / N);
    }
    out += coeff * power(g.X, g.Xinv, e.first) * power(g.Y, g.Yinv, e.second);
  }
  return out;
}

std::string dump_line(TropicalPoint p, const QT2Element& u) {
  return std::to_string(p.a) + " " + std::to_string(p.b) + " : " + u.to_string();
}

std::string matrix_to_csv(const Eigen::MatrixXcd& m) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << m(i, j).real() << ',' << m(i, j).imag();
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace qpent::qtorus
