#pragma once

#include <stdexcept>
#include <string>

namespace qpent {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a numerical procedure cannot reach its requested tolerance.
/// The CLI maps this family to exit code 65.
class NumericalError : public Error {
 public:
  using Error::Error;
};

#define QPENT_DEFINE_ERROR(Name, Base)        \
  class Name : public Base {                  \
   public:                                    \
    using Base::Base;                         \
  };

// specfun
QPENT_DEFINE_ERROR(StripViolation, Error)
QPENT_DEFINE_ERROR(QuadratureNonConvergence, NumericalError)
QPENT_DEFINE_ERROR(DivergentProduct, Error)
QPENT_DEFINE_ERROR(PoleHit, Error)
QPENT_DEFINE_ERROR(BranchCut, Error)

// kop
QPENT_DEFINE_ERROR(BoundaryLeak, NumericalError)
QPENT_DEFINE_ERROR(DegenerateSample, Error)

// cluster / qtorus
QPENT_DEFINE_ERROR(DegeneratePoint, Error)
QPENT_DEFINE_ERROR(BasisExpansionFailure, Error)
QPENT_DEFINE_ERROR(EvenN, Error)
QPENT_DEFINE_ERROR(CoefficientOverflow, Error)

class NonMember : public Error {
 public:
  NonMember(const std::string& what, int y_degree) : Error(what), y_degree_(y_degree) {}
  int y_degree() const noexcept { return y_degree_; }

 private:
  int y_degree_;
};

// moduli
QPENT_DEFINE_ERROR(DegenerateQuadruple, Error)
QPENT_DEFINE_ERROR(SignatureViolation, Error)
QPENT_DEFINE_ERROR(NotHInvariant, Error)
QPENT_DEFINE_ERROR(NotRegular, Error)

#undef QPENT_DEFINE_ERROR

}  // namespace qpent
