#include "qpent/wspace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qpent::wspace {

namespace {

constexpr double pi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};
constexpr double kMergeTol = 1e-12;

bool same_exponent(const GaussianTerm& s, const GaussianTerm& t) {
  const double sa = std::max(std::abs(s.a), std::abs(t.a));
  const double sb = 1.0 + std::max(std::abs(s.b), std::abs(t.b));
  return std::abs(s.a - t.a) <= kMergeTol * sa && std::abs(s.b - t.b) <= kMergeTol * sb;
}

void trim(Polynomial& p) {
  while (!p.empty() && p.back() == cplx{0.0, 0.0}) p.pop_back();
}

// p += q, flushing coefficients that cancel down to roundoff.
void add_into(Polynomial& p, const Polynomial& q) {
  if (q.size() > p.size()) p.resize(q.size(), cplx{0.0, 0.0});
  for (std::size_t k = 0; k < q.size(); ++k) {
    const cplx s = p[k] + q[k];
    const double scale = std::abs(p[k]) + std::abs(q[k]);
    p[k] = std::abs(s) <= kMergeTol * scale ? cplx{0.0, 0.0} : s;
  }
  trim(p);
}

// Coefficients of P(x + lambda).
Polynomial taylor_shift(const Polynomial& p, cplx lambda) {
  Polynomial out(p);
  // Repeated synthetic division: n passes of Horner's scheme.
  const std::size_t n = out.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t k = n - 1; k > i; --k) out[k - 1] += lambda * out[k];
  return out;
}

Polynomial multiply_conj(const Polynomial& p, const Polynomial& q) {
  if (p.empty() || q.empty()) return {};
  Polynomial out(p.size() + q.size() - 1, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * std::conj(q[j]);
  return out;
}

}  // namespace

cplx eval_poly(const Polynomial& p, cplx x) {
  cplx acc{0.0, 0.0};
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
  return acc;
}

WVector::WVector(std::vector<GaussianTerm> terms) : terms_(std::move(terms)) { canonicalize(); }

WVector WVector::gaussian(double a, cplx b, Polynomial P) { return WVector({GaussianTerm{a, b, std::move(P)}}); }

void WVector::canonicalize() {
  std::vector<GaussianTerm> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!(t.a > 0.0) || !std::isfinite(t.a)) throw Error("GaussianTerm needs a finite a > 0");
    if (!std::isfinite(t.b.real()) || !std::isfinite(t.b.imag())) throw Error("GaussianTerm needs a finite b");
    for (const cplx& c : t.P)
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw NumericalError("non-finite coefficient in WVector");
    trim(t.P);
    if (t.P.empty()) continue;
    auto it = std::find_if(merged.begin(), merged.end(), [&](const GaussianTerm& m) { return same_exponent(m, t); });
    if (it == merged.end()) merged.push_back(std::move(t));
    else add_into(it->P, t.P);
  }
  std::erase_if(merged, [](const GaussianTerm& t) { return t.P.empty(); });
  std::sort(merged.begin(), merged.end(), [](const GaussianTerm& s, const GaussianTerm& t) {
    if (s.a != t.a) return s.a < t.a;
    if (s.b.real() != t.b.real()) return s.b.real() < t.b.real();
    return s.b.imag() < t.b.imag();
  });
  terms_ = std::move(merged);
}

WVector& WVector::operator+=(const WVector& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  canonicalize();
  return *this;
}

WVector& WVector::operator-=(const WVector& o) { return *this += cplx{-1.0, 0.0} * o; }

WVector operator*(cplx c, const WVector& w) {
  std::vector<GaussianTerm> terms = w.terms_;
  for (auto& t : terms)
    for (auto& x : t.P) x *= c;
  return WVector(std::move(terms));
}

double WVector::max_a() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, t.a);
  return m;
}

double WVector::min_a() const {
  double m = terms_.empty() ? 0.0 : terms_.front().a;
  for (const auto& t : terms_) m = std::min(m, t.a);
  return m;
}

WVector shift(const WVector& v, cplx lambda) {
  // exp(-a(x+l)^2/2 + b(x+l)) = exp(-a x^2/2 + (b - a l) x) exp(-a l^2/2 + b l)
  std::vector<GaussianTerm> out;
  out.reserve(v.terms().size());
  for (const auto& t : v.terms()) {
    const cplx pref = std::exp(-0.5 * t.a * lambda * lambda + t.b * lambda);
    Polynomial P = taylor_shift(t.P, lambda);
    for (auto& c : P) c *= pref;
    out.push_back({t.a, t.b - t.a * lambda, std::move(P)});
  }
  return WVector(std::move(out));
}

WVector multiply_exp(const WVector& v, cplx mu) {
  std::vector<GaussianTerm> out = v.terms();
  for (auto& t : out) t.b += mu;
  return WVector(std::move(out));
}

WVector op_X(const WVector& v, double hbar, int power) { return shift(v, 2.0 * pi * I * hbar * double(power)); }
WVector op_Y(const WVector& v, int power) { return multiply_exp(v, double(power)); }
WVector op_Xvee(const WVector& v, int power) { return shift(v, 2.0 * pi * I * double(power)); }
WVector op_Yvee(const WVector& v, double hbar, int power) { return multiply_exp(v, double(power) / hbar); }

WVector apply_word(const TorusOperatorWord& word, const WVector& v, double hbar) {
  WVector out = v;
  for (auto it = word.factors.rbegin(); it != word.factors.rend(); ++it) {
    switch (it->kind) {
      case WordFactor::Kind::X: out = op_X(out, hbar, it->exponent); break;
      case WordFactor::Kind::Y: out = op_Y(out, it->exponent); break;
      case WordFactor::Kind::Xvee: out = op_Xvee(out, it->exponent); break;
      case WordFactor::Kind::Yvee: out = op_Yvee(out, hbar, it->exponent); break;
      case WordFactor::Kind::Scalar: out = it->scalar * out; break;
    }
  }
  return out;
}

WVector apply_element(const qtorus::QT2Element& u, Side side, const WVector& v, double hbar) {
  if (!(hbar > 0.0)) throw Error("hbar must be positive");
  const cplx q = side == Side::Q ? std::exp(I * pi * hbar) : std::exp(I * pi / hbar);
  const double unit = side == Side::Q ? 1.0 : 1.0 / hbar;
  const cplx step = side == Side::Q ? 2.0 * pi * I * hbar : 2.0 * pi * I;
  WVector out;
  for (const auto& [e, c] : u.terms()) {
    // X^m Y^n v: multiply by e^{n unit x} first, then shift by m step.
    const WVector term = shift(multiply_exp(v, double(e.second) * unit), double(e.first) * step);
    out += c.evaluate(q) * term;
  }
  return out;
}

WVector apply_modular(const qtorus::ModularSum& A, const WVector& v, double hbar) {
  WVector out;
  for (const auto& t : A) out += apply_element(t.left, Side::Q, apply_element(t.right, Side::QVee, v, hbar), hbar);
  return out;
}

cplx inner_product(const WVector& u, const WVector& w) {
  cplx total{0.0, 0.0};
  for (const auto& s : u.terms())
    for (const auto& t : w.terms()) {
      // integral exp(-alpha x^2 + beta x) R(x) dx; the moments of the
      // normalized weight are those of a normal law with mean mu, variance s2.
      const double alpha = 0.5 * (s.a + t.a);
      const cplx beta = s.b + std::conj(t.b);
      const Polynomial R = multiply_conj(s.P, t.P);
      const cplx mu = beta / (2.0 * alpha);
      const double s2 = 1.0 / (2.0 * alpha);
      cplx m_prev{1.0, 0.0}, m_cur = mu;
      cplx acc = R[0];
      for (std::size_t n = 1; n < R.size(); ++n) {
        if (n > 1) {
          const cplx m_next = mu * m_cur + double(n - 1) * s2 * m_prev;
          m_prev = m_cur;
          m_cur = m_next;
        }
        acc += R[n] * m_cur;
      }
      total += acc * std::sqrt(pi / alpha) * std::exp(beta * beta / (4.0 * alpha));
    }
  return total;
}

double norm(const WVector& v) { return std::sqrt(std::max(0.0, inner_product(v, v).real())); }

double seminorm(const qtorus::ModularDoubleElement& B, const WVector& f, double hbar) {
  return norm(apply_modular({B}, f, hbar));
}

cplx evaluate(const WVector& v, cplx x) {
  cplx sum{0.0, 0.0};
  for (const auto& t : v.terms()) sum += eval_poly(t.P, x) * std::exp(-0.5 * t.a * x * x + t.b * x);
  return sum;
}

std::vector<cplx> evaluate(const WVector& v, std::span<const cplx> points) {
  std::vector<cplx> out;
  out.reserve(points.size());
  for (cplx x : points) out.push_back(evaluate(v, x));
  return out;
}

bool approx_equal(const WVector& u, const WVector& w, double rel_tol) {
  const double scale = std::max(norm(u), norm(w));
  return norm(u - w) <= rel_tol * scale;
}

Eigen::MatrixXcd gram_matrix(std::span<const WVector> vs) {
  const auto n = static_cast<Eigen::Index>(vs.size());
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = inner_product(vs[std::size_t(i)], vs[std::size_t(j)]);
  return g;
}

std::size_t rank(std::span<const WVector> vs, double rel_tol) {
  // Rows: distinct exponents (a, b) times polynomial degree.
  std::vector<GaussianTerm> keys;
  std::vector<std::size_t> offset;
  std::size_t rows = 0;
  for (const auto& v : vs)
    for (const auto& t : v.terms()) {
      auto it = std::find_if(keys.begin(), keys.end(), [&](const GaussianTerm& k) { return same_exponent(k, t); });
      if (it == keys.end()) {
        keys.push_back(t);
        offset.push_back(0);
      } else if (it->P.size() < t.P.size()) {
        it->P.resize(t.P.size());
      }
    }
  for (std::size_t i = 0; i < keys.size(); ++i) {
    offset[i] = rows;
    rows += keys[i].P.size();
  }
  if (rows == 0) return 0;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(vs.size()));
  for (std::size_t j = 0; j < vs.size(); ++j) {
    for (const auto& t : vs[j].terms()) {
      const auto it = std::find_if(keys.begin(), keys.end(), [&](const GaussianTerm& k) { return same_exponent(k, t); });
      const std::size_t base = offset[std::size_t(it - keys.begin())];
      for (std::size_t k = 0; k < t.P.size(); ++k) m(Eigen::Index(base + k), Eigen::Index(j)) += t.P[k];
    }
    const double cn = m.col(Eigen::Index(j)).norm();
    if (cn > 0.0) m.col(Eigen::Index(j)) /= cn;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(m);
  qr.setThreshold(rel_tol);
  return static_cast<std::size_t>(qr.rank());
}

WVector random_wvector(std::mt19937_64& rng, const RandomWOptions& opt) {
  std::uniform_int_distribution<int> nterms(1, std::max(1, opt.max_terms));
  std::uniform_int_distribution<int> deg(0, std::max(0, opt.max_degree));
  std::uniform_real_distribution<double> ua(opt.a_min, opt.a_max), ubr(-opt.b_re_max, opt.b_re_max),
      ubi(-opt.b_im_max, opt.b_im_max), uc(-opt.coeff_max, opt.coeff_max);
  std::vector<GaussianTerm> terms;
  const int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    GaussianTerm t;
    t.a = ua(rng);
    t.b = {ubr(rng), ubi(rng)};
    t.P.assign(std::size_t(deg(rng) + 1), cplx{0.0, 0.0});
    for (auto& c : t.P) c = {uc(rng), uc(rng)};
    if (std::abs(t.P.back()) < 0.1 * opt.coeff_max) t.P.back() += opt.coeff_max;
    terms.push_back(std::move(t));
  }
  return WVector(std::move(terms));
}

WVector hermite_type(int n, double a) {
  if (n < 0) throw Error("hermite_type: n must be >= 0");
  Polynomial P(std::size_t(n + 1), cplx{0.0, 0.0});
  P.back() = 1.0;
  return WVector::gaussian(a, 0.0, std::move(P));
}

}  // namespace qpent::wspace
