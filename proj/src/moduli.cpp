#include "qpent/moduli.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qpent::moduli {

namespace {

// 1..5 representative of an index mod 5.
int wrap(int i) { return ((i - 1) % 5 + 5) % 5 + 1; }

const ProjPoint& at(const Config5& x, int i) { return x[static_cast<std::size_t>(wrap(i) - 1)]; }

// The five diagonals in the order used by from_diagonals.
constexpr std::array<std::pair<int, int>, 5> kDiagonals{{{1, 3}, {1, 4}, {2, 4}, {2, 5}, {3, 5}}};

// Crossing diagonal pairs (a c), (b d) with a < b < c < d, lexicographic.
struct Crossing {
  int a, b, c, d;
};
constexpr std::array<Crossing, 5> kCrossings{{{1, 2, 3, 4}, {1, 2, 3, 5}, {1, 2, 4, 5}, {1, 3, 4, 5}, {2, 3, 4, 5}}};

}  // namespace

std::string ProjPoint::to_string() const {
  if (is_infinity()) return "inf";
  return qpent::to_string(Rational(u / v));
}

Rational bracket(const ProjPoint& p, const ProjPoint& q) { return p.u * q.v - q.u * p.v; }

bool is_cyclic_config(const Config5& x) {
  for (int i = 1; i <= 5; ++i)
    if (at(x, i) == at(x, i + 1)) return false;
  return true;
}

Rational cross_ratio(const ProjPoint& x1, const ProjPoint& x2, const ProjPoint& x3, const ProjPoint& x4) {
  const Rational den = bracket(x1, x4) * bracket(x2, x3);
  if (den == 0) throw DegenerateQuadruple("cross-ratio denominator vanishes (x1 = x4 or x2 = x3)");
  return bracket(x1, x2) * bracket(x3, x4) / den;
}

Config5 psi(const Rational& X, const Rational& Y, int c) {
  if (c < 1 || c > 5) throw std::invalid_argument("chart index must be in 1..5");
  if (X == 0) throw DegeneratePoint("psi: X = 0 collides x3 and x4");
  if (Y == 0) throw DegeneratePoint("psi: Y = 0 collides x4 and x5");
  const Config5 base{ProjPoint::infinity(), ProjPoint::finite(-1), ProjPoint::finite(0), ProjPoint::finite(X),
                     ProjPoint::finite(X * (1 + Y))};
  Config5 out;
  const int shift = 2 * (c - 1);
  for (int i = 1; i <= 5; ++i) out[static_cast<std::size_t>(wrap(i + shift) - 1)] = base[static_cast<std::size_t>(i - 1)];
  return out;
}

int chart_function_index(int c) { return wrap(2 * c - 1); }

Rational cross_ratio_monomial(const Config5& x, int a, int b, int c) {
  // Numerator and denominator are accumulated separately so that a zero of
  // one factor is only an error if it ends up in the denominator.
  Rational num = 1, den = 1;
  auto factor = [&](const ProjPoint& x1, const ProjPoint& x2, const ProjPoint& x3, const ProjPoint& x4, int e) {
    if (e == 0) return;
    const Rational top = bracket(x1, x2) * bracket(x3, x4);
    const Rational bottom = bracket(x1, x4) * bracket(x2, x3);
    const unsigned n = static_cast<unsigned>(std::abs(e));
    num *= rational_pow(e > 0 ? top : bottom, static_cast<int>(n));
    den *= rational_pow(e > 0 ? bottom : top, static_cast<int>(n));
  };
  factor(at(x, c), at(x, c + 1), at(x, c + 2), at(x, c + 3), a);
  factor(at(x, c), at(x, c + 2), at(x, c + 3), at(x, c + 4), b);
  if (den == 0) throw DegenerateQuadruple("cross-ratio monomial has a pole at this configuration");
  return num / den;
}

Rational X_abc(const Config5& x, int a, int b, int c) {
  if (a < 0 || b > 0) throw SignatureViolation("X_{a,b;c} requires a >= 0 and b <= 0");
  return cross_ratio_monomial(x, a, b, wrap(c));
}

bool projectively_equivalent(const Config5& a, const Config5& b) {
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      for (int k = j + 1; k < 5; ++k) {
        auto distinct = [&](const Config5& x) { return !(x[i] == x[j]) && !(x[j] == x[k]) && !(x[i] == x[k]); };
        if (!distinct(a) || !distinct(b)) continue;
        // Send the triple to (inf, -1, 0); the image of p is r(x_i, x_j, x_k, p).
        auto normalize = [&](const Config5& x, const ProjPoint& p) {
          return ProjPoint{-bracket(p, x[k]) * bracket(x[j], x[i]), bracket(p, x[i]) * bracket(x[j], x[k])};
        };
        for (int l = 0; l < 5; ++l)
          if (!(normalize(a, a[l]) == normalize(b, b[l]))) return false;
        return true;
      }
  throw DegeneratePoint("projectively_equivalent: no common triple of distinct points");
}

std::optional<ChartHit> find_chart(const Config5& x) {
  for (int c = 1; c <= 5; ++c) {
    const int shift = 2 * (c - 1);
    auto y = [&](int i) -> const ProjPoint& { return at(x, i + shift); };
    if (y(1) == y(2) || y(2) == y(3) || y(1) == y(3)) continue;
    if (y(4) == y(1) || y(4) == y(3) || y(5) == y(1) || y(5) == y(4)) continue;
    ChartHit hit{c, cross_ratio(y(1), y(2), y(3), y(4)), cross_ratio(y(1), y(3), y(4), y(5))};
    if (!projectively_equivalent(psi(hit.X, hit.Y, c), x))
      throw std::logic_error("find_chart: chart coordinates do not reproduce the configuration");
    return hit;
  }
  return std::nullopt;
}

Config5 random_config(std::mt19937_64& rng, double collision_rate) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Config5 x;
  for (;;) {
    for (auto& p : x) p = u(rng) < 0.15 ? ProjPoint::infinity() : ProjPoint::finite(random_rational(rng, 9, 5));
    bool distinct = true;
    for (int i = 0; i < 5 && distinct; ++i)
      for (int j = i + 1; j < 5; ++j)
        if (x[i] == x[j]) {
          distinct = false;
          break;
        }
    if (distinct) break;
  }
  if (u(rng) < collision_rate) {
    const auto [i, j] = kDiagonals[std::uniform_int_distribution<int>(0, 4)(rng)];
    x[static_cast<std::size_t>(j - 1)] = x[static_cast<std::size_t>(i - 1)];
  }
  return x;
}

// ---------------------------------------------------------------------------

const std::array<std::pair<int, int>, 10>& chord_pairs() {
  static const std::array<std::pair<int, int>, 10> pairs{
      {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5}}};
  return pairs;
}

int chord_index(int i, int j) {
  i = wrap(i);
  j = wrap(j);
  if (i == j) throw std::invalid_argument("chord_index: equal endpoints");
  if (i > j) std::swap(i, j);
  const auto& pairs = chord_pairs();
  return static_cast<int>(std::find(pairs.begin(), pairs.end(), std::pair{i, j}) - pairs.begin());
}

bool is_diagonal(int i, int j) {
  const int d = wrap(j - i + 1) - 1;  // (j - i) mod 5 in 0..4
  return d == 2 || d == 3;
}

bool ChordMonomial::is_h_invariant() const {
  for (int v = 1; v <= 5; ++v) {
    int sum = 0;
    for (int w = 1; w <= 5; ++w)
      if (w != v) sum += weight(v, w);
    if (sum != 0) return false;
  }
  return true;
}

bool ChordMonomial::is_regular() const {
  for (const auto& k : kCrossings)
    if (weight(k.a, k.c) > 0 && weight(k.b, k.d) > 0) return false;
  return true;
}

long ChordMonomial::crossing_measure() const {
  long m = 0;
  for (const auto& k : kCrossings) m += static_cast<long>(weight(k.a, k.c)) * weight(k.b, k.d);
  return m;
}

ChordMonomial ChordMonomial::from_diagonals(const std::array<int, 5>& diagonals, Coeff coeff) {
  ChordMonomial m;
  m.coeff = coeff;
  std::array<int, 6> at_vertex{};
  for (std::size_t k = 0; k < 5; ++k) {
    if (diagonals[k] < 0) throw std::invalid_argument("from_diagonals: diagonal weights must be nonnegative");
    const auto [i, j] = kDiagonals[k];
    m.set_weight(i, j, diagonals[k]);
    at_vertex[i] += diagonals[k];
    at_vertex[j] += diagonals[k];
  }
  // Side s_i = (i, i+1) solves s_{i-1} + s_i = -D_i around the odd cycle.
  const int twice_s1 = -at_vertex[1] - at_vertex[2] + at_vertex[3] - at_vertex[4] + at_vertex[5];
  int s = twice_s1 / 2;  // the alternating sum has the parity of sum D_i, which is even
  m.set_weight(1, 2, s);
  for (int i = 2; i <= 5; ++i) {
    s = -at_vertex[i] - s;
    m.set_weight(i, wrap(i + 1), s);
  }
  return m;
}

std::string ChordMonomial::to_string() const {
  std::ostringstream os;
  os << coeff << " *";
  bool any = false;
  for (std::size_t k = 0; k < 10; ++k) {
    if (weights[k] == 0) continue;
    os << " D" << chord_pairs()[k].first << chord_pairs()[k].second << "^" << weights[k];
    any = true;
  }
  if (!any) os << " 1";
  return os.str();
}

Rational delta(const VectorConfig5& v, int i, int j) { return bracket(at(v, i), at(v, j)); }

Rational evaluate(const ChordMonomial& m, const VectorConfig5& v) {
  Rational out = m.coeff;
  for (std::size_t k = 0; k < 10; ++k) {
    if (m.weights[k] == 0) continue;
    const Rational d = delta(v, chord_pairs()[k].first, chord_pairs()[k].second);
    if (d == 0 && m.weights[k] < 0) throw DegenerateQuadruple("evaluate: Delta with negative weight vanishes");
    out *= rational_pow(d, m.weights[k]);
  }
  return out;
}

Rational evaluate(const ChordSum& s, const VectorConfig5& v) {
  Rational out = 0;
  for (const auto& m : s) out += evaluate(m, v);
  return out;
}

VectorConfig5 random_vector_config(std::mt19937_64& rng) {
  for (;;) {
    VectorConfig5 v;
    for (auto& p : v) {
      p.u = random_rational(rng, 7, 3);
      p.v = random_rational(rng, 7, 3);
    }
    bool ok = true;
    for (int i = 1; i <= 5 && ok; ++i)
      for (int j = i + 1; j <= 5; ++j)
        if (delta(v, i, j) == 0) {
          ok = false;
          break;
        }
    if (ok) return v;
  }
}

ChordMonomial random_h_invariant(std::mt19937_64& rng, int max_weight) {
  std::uniform_int_distribution<int> w(0, max_weight), c(1, 3), sign(0, 1);
  std::array<int, 5> d{};
  for (auto& x : d) x = w(rng);
  return ChordMonomial::from_diagonals(d, sign(rng) ? c(rng) : -c(rng));
}

ChordSum pluecker_reduce(const ChordSum& sum, ReductionStats* stats) {
  std::map<std::array<int, 10>, Coeff> terms;
  ReductionStats local;
  for (const auto& m : sum) {
    if (!m.is_h_invariant()) throw NotHInvariant("pluecker_reduce: input monomial " + m.to_string() + " is not H-invariant");
    for (const auto& [i, j] : kDiagonals)
      if (m.weight(i, j) < 0) throw std::invalid_argument("pluecker_reduce: negative diagonal weight");
    local.initial_measure = std::max(local.initial_measure, m.crossing_measure());
    terms[m.weights] = checked_add(terms[m.weights], m.coeff);
  }
  std::erase_if(terms, [](const auto& t) { return t.second == 0; });

  for (;;) {
    auto it = std::find_if(terms.begin(), terms.end(), [](const auto& t) {
      return !ChordMonomial{t.first, t.second}.is_regular();
    });
    if (it == terms.end()) break;
    const ChordMonomial m{it->first, it->second};
    terms.erase(it);
    const Crossing* k = nullptr;
    for (const auto& cand : kCrossings)
      if (m.weight(cand.a, cand.c) > 0 && m.weight(cand.b, cand.d) > 0) {
        k = &cand;
        break;
      }
    ChordMonomial base = m;
    base.set_weight(k->a, k->c, base.weight(k->a, k->c) - 1);
    base.set_weight(k->b, k->d, base.weight(k->b, k->d) - 1);
    const std::array<std::array<std::pair<int, int>, 2>, 2> products{
        {{{{k->a, k->b}, {k->c, k->d}}}, {{{k->a, k->d}, {k->b, k->c}}}}};
    for (const auto& prod : products) {
      ChordMonomial t = base;
      for (const auto& [i, j] : prod) t.set_weight(i, j, t.weight(i, j) + 1);
      if (t.crossing_measure() >= m.crossing_measure())
        throw std::logic_error("pluecker_reduce: crossing measure did not decrease");
      if (!t.is_h_invariant()) throw std::logic_error("pluecker_reduce: H-invariance lost");
      Coeff& slot = terms[t.weights];
      slot = checked_add(slot, m.coeff);
      if (slot == 0) terms.erase(t.weights);
    }
    ++local.steps;
  }
  if (stats) *stats = local;
  ChordSum out;
  out.reserve(terms.size());
  for (const auto& [w, c] : terms) out.push_back({w, c});
  return out;
}

// ---------------------------------------------------------------------------

ChordMonomial basis_to_regular(const BasisLabel& label) {
  if (label.a < 0 || label.b > 0) throw SignatureViolation("basis label requires a >= 0 and b <= 0");
  const int c = wrap(label.c);
  ChordMonomial m;
  int sign_flips = 0;
  // Delta_{ij}^p for an ordered pair; Delta_{ji} = -Delta_{ij}.
  auto put = [&](int i, int j, int p) {
    i = wrap(i);
    j = wrap(j);
    m.set_weight(i, j, m.weight(i, j) + p);
    if (i > j) sign_flips += std::abs(p);
  };
  // r(x_c, x_{c+1}, x_{c+2}, x_{c+3})^{-a}
  const int e1 = -label.a;
  put(c, c + 1, e1);
  put(c + 2, c + 3, e1);
  put(c, c + 3, -e1);
  put(c + 1, c + 2, -e1);
  // r(x_c, x_{c+2}, x_{c+3}, x_{c+4})^{-b}
  const int e2 = -label.b;
  put(c, c + 2, e2);
  put(c + 3, c + 4, e2);
  put(c, c + 4, -e2);
  put(c + 2, c + 3, -e2);
  m.coeff = sign_flips % 2 ? -1 : 1;
  return m;
}

BasisLabel regular_to_basis(const ChordMonomial& m) {
  if (!m.is_h_invariant()) throw NotHInvariant("regular_to_basis: monomial is not H-invariant");
  std::vector<std::pair<int, int>> support;
  for (const auto& [i, j] : kDiagonals) {
    if (m.weight(i, j) < 0) throw NotRegular("regular_to_basis: negative diagonal weight");
    if (m.weight(i, j) > 0) support.emplace_back(i, j);
  }
  if (!m.is_regular()) throw NotRegular("regular_to_basis: crossing diagonals " + m.to_string());
  if (support.empty()) return {0, 0, 1};
  if (support.size() == 1) {
    const auto [i, j] = support[0];
    // The diagonal {v, v+2} is (c, c+3) for c = v + 2.
    const int v = wrap(j - i) == 2 ? i : j;
    return {m.weight(i, j), 0, wrap(v + 2)};
  }
  // Two non-crossing diagonals share exactly one vertex c; they are (c, c+2) and (c, c+3).
  const auto [i1, j1] = support[0];
  const auto [i2, j2] = support[1];
  const int c = (i1 == i2 || i1 == j2) ? i1 : j1;
  return {m.weight(c, c + 3), -m.weight(c, c + 2), c};
}

BasisLabel canonical_label(const BasisLabel& label) {
  if (label.a == 0 && label.b == 0) return {0, 0, 1};
  if (label.a == 0) return {-label.b, 0, wrap(label.c + 2)};
  return {label.a, label.b, wrap(label.c)};
}

Rational regular_function(const Config5& x, const BasisLabel& label) {
  if (label.a < 0 || label.b > 0) throw SignatureViolation("basis label requires a >= 0 and b <= 0");
  return cross_ratio_monomial(x, -label.a, -label.b, wrap(label.c));
}

cluster::TropicalPoint tropical_label(const BasisLabel& label) {
  if (label.a < 0 || label.b > 0) throw SignatureViolation("basis label requires a >= 0 and b <= 0");
  const int a = label.a, b = label.b;
  switch (wrap(label.c)) {
    case 1: return {-a, -b};
    case 2: return {a, b};
    case 3: return {-b, a - b};
    case 4: return {b, -a};
    default: return {a - b, a};
  }
}

std::size_t exact_rank(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][col] == 0) continue;
      const Rational f = rows[r][col] / rows[rank][col];
      for (std::size_t k = col; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

IndependenceReport independence_check(int degree_bound, std::uint64_t seed) {
  if (degree_bound < 0 || degree_bound > 6) throw std::invalid_argument("independence_check: degree_bound must be in 0..6");
  std::vector<BasisLabel> labels;
  std::set<BasisLabel> canonical;
  for (int c = 1; c <= 5; ++c)
    for (int a = 0; a <= degree_bound; ++a)
      for (int b = 0; b >= -degree_bound; --b) {
        labels.push_back({a, b, c});
        canonical.insert(canonical_label({a, b, c}));
      }
  IndependenceReport rep;
  rep.degree_bound = degree_bound;
  rep.labels = labels.size();
  rep.distinct_labels = canonical.size();
  rep.samples = 2 * labels.size() + 10;

  std::mt19937_64 rng(seed);
  std::vector<std::vector<Rational>> regular, printed;
  for (std::size_t s = 0; s < rep.samples; ++s) {
    const Config5 x = random_config(rng, 0.0);
    std::vector<Rational> r, p;
    for (const auto& l : labels) {
      r.push_back(regular_function(x, l));
      p.push_back(X_abc(x, l.a, l.b, l.c));
    }
    regular.push_back(std::move(r));
    printed.push_back(std::move(p));
  }
  rep.rank = exact_rank(std::move(regular));
  rep.printed_rank = exact_rank(std::move(printed));
  return rep;
}

}  // namespace qpent::moduli
