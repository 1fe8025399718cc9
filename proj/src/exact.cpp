#include "qpent/exact.hpp"

namespace qpent {

Rational rational_pow(const Rational& r, int e) {
  if (e < 0) {
    if (r == 0) throw DegeneratePoint("negative power of zero");
    return rational_pow(Rational(1) / r, -e);
  }
  Rational out = 1;
  Rational base = r;
  unsigned n = static_cast<unsigned>(e);
  while (n) {
    if (n & 1u) out *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return out;
}

Rational random_rational(std::mt19937_64& rng, int max_num, int max_den) {
  std::uniform_int_distribution<int> num(-max_num, max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  return Rational(num(rng), den(rng));
}

Rational random_positive_rational(std::mt19937_64& rng, int max_num, int max_den) {
  std::uniform_int_distribution<int> num(1, max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  return Rational(num(rng), den(rng));
}

std::string to_string(const Rational& r) { return r.str(); }

}  // namespace qpent
