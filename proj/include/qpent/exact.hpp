#pragma once

// Exact scalar types shared by the algebraic modules.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <random>
#include <string>

#include "qpent/errors.hpp"

namespace qpent {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Integer coefficient of a Laurent polynomial. Arithmetic on it goes through
/// the checked helpers below, which throw CoefficientOverflow.
using Coeff = std::int64_t;

inline Coeff checked_add(Coeff a, Coeff b) {
  Coeff r;
  if (__builtin_add_overflow(a, b, &r)) throw CoefficientOverflow("coefficient overflow in addition");
  return r;
}

inline Coeff checked_mul(Coeff a, Coeff b) {
  Coeff r;
  if (__builtin_mul_overflow(a, b, &r)) throw CoefficientOverflow("coefficient overflow in multiplication");
  return r;
}

/// r^e for an integer exponent of either sign; r must be nonzero when e < 0.
Rational rational_pow(const Rational& r, int e);

/// Uniform rational num/den with |num| <= max_num, 1 <= den <= max_den.
Rational random_rational(std::mt19937_64& rng, int max_num, int max_den);

/// Strictly positive rational num/den, 1 <= num <= max_num, 1 <= den <= max_den.
Rational random_positive_rational(std::mt19937_64& rng, int max_num, int max_den);

std::string to_string(const Rational& r);

}  // namespace qpent
